//! Exact arithmetic in the field of rational functions of the formal
//! variable `q` with integer coefficients.
//!
//! [`LaurentPoly`] is a sparse integer Laurent polynomial (negative
//! exponents allowed). [`RationalFunction`] is a fraction of two of them
//! kept in canonical form, so structural equality is field equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Integer Laurent polynomial in `q`. No stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_big(BigInt::from(c), 0)
    }

    /// The monomial `c * q^e`.
    pub fn from_big(c: BigInt, e: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        LaurentPoly { coeffs }
    }

    /// `q^e`.
    pub fn q_power(e: i64) -> Self {
        Self::from_big(BigInt::one(), e)
    }

    pub fn from_terms(terms: &[(i64, i64)]) -> Self {
        let mut p = Self::zero();
        for &(e, c) in terms {
            p.add_term(e, &BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).map_or(false, |c| c.is_one())
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    fn add_term(&mut self, e: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    /// Multiply by `q^k`.
    pub fn shifted(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Sum of coefficients, i.e. the value at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Positive gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.coeffs.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn map_coeffs(&self, f: impl Fn(&BigInt) -> BigInt) -> Self {
        let mut p = Self::zero();
        for (&e, c) in &self.coeffs {
            let v = f(c);
            if !v.is_zero() {
                p.coeffs.insert(e, v);
            }
        }
        p
    }

    /// Dense coefficient vector `[coeff(min), ..., coeff(max)]` with the
    /// minimal exponent normalized away. Empty for zero.
    fn dense(&self) -> Vec<BigInt> {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (lo..=hi).map(|e| self.coeff(e)).collect(),
            _ => Vec::new(),
        }
    }

    fn from_dense(v: &[BigInt]) -> Self {
        let mut p = Self::zero();
        for (e, c) in v.iter().enumerate() {
            if !c.is_zero() {
                p.coeffs.insert(e as i64, c.clone());
            }
        }
        p
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &other.coeffs {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &other.coeffs {
            out.add_term(e, &(-c));
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.map_coeffs(|c| -c)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &other.coeffs {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

/// `(1-q)(1-q^2)...(1-q^n)`; the empty product for `n = 0`.
pub fn q_pochhammer(n: u32) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for k in 1..=n {
        let factor = LaurentPoly::from_terms(&[(0, 1), (k as i64, -1)]);
        p = &p * &factor;
    }
    p
}

// --- dense polynomial helpers for gcd (nonnegative exponents only) ---

fn dense_degree(a: &[BigInt]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

fn dense_trim(a: &mut Vec<BigInt>) {
    while a.last().map_or(false, |c| c.is_zero()) {
        a.pop();
    }
}

/// Primitive part with positive leading coefficient.
fn dense_primitive(a: &[BigInt]) -> Vec<BigInt> {
    let deg = match dense_degree(a) {
        Some(d) => d,
        None => return Vec::new(),
    };
    let mut g = BigInt::zero();
    for c in &a[..=deg] {
        g = g.gcd(c);
    }
    if a[deg].is_negative() {
        g = -g;
    }
    a[..=deg].iter().map(|c| c / &g).collect()
}

/// Pseudo-remainder of `a` by `b` (`b` nonzero).
fn dense_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = dense_degree(b).expect("prem by zero");
    let lb = b[db].clone();
    let mut r: Vec<BigInt> = a.to_vec();
    dense_trim(&mut r);
    while let Some(dr) = dense_degree(&r) {
        if dr < db {
            break;
        }
        let lead = r[dr].clone();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for k in 0..=db {
            r[dr - db + k] -= &lead * &b[k];
        }
        dense_trim(&mut r);
    }
    r
}

/// Primitive gcd of two Laurent polynomials, normalized to lowest exponent 0
/// and positive leading coefficient. `q^k` unit factors are quotiented away.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return LaurentPoly::from_dense(&dense_primitive(&b.dense()));
    }
    if b.is_zero() {
        return LaurentPoly::from_dense(&dense_primitive(&a.dense()));
    }
    let mut x = dense_primitive(&a.dense());
    let mut y = dense_primitive(&b.dense());
    if dense_degree(&x) < dense_degree(&y) {
        std::mem::swap(&mut x, &mut y);
    }
    while dense_degree(&y).is_some() {
        let r = dense_prem(&x, &y);
        x = y;
        y = dense_primitive(&r);
    }
    LaurentPoly::from_dense(&dense_primitive(&x))
}

/// Exact division `a / b`; panics if `b` does not divide `a`.
fn poly_div_exact(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    assert!(!b.is_zero(), "division by zero polynomial");
    if a.is_zero() {
        return LaurentPoly::zero();
    }
    let shift = a.min_exp().unwrap() - b.min_exp().unwrap();
    let da = a.dense();
    let db = b.dense();
    let mut rem = da;
    let deg_b = dense_degree(&db).unwrap();
    let lb = db[deg_b].clone();
    let mut quot = vec![BigInt::zero(); rem.len()];
    while let Some(deg_r) = dense_degree(&rem) {
        assert!(deg_r >= deg_b, "inexact polynomial division");
        let (c, r) = rem[deg_r].div_rem(&lb);
        assert!(r.is_zero(), "inexact polynomial division");
        quot[deg_r - deg_b] = c.clone();
        for k in 0..=deg_b {
            rem[deg_r - deg_b + k] -= &c * &db[k];
        }
        dense_trim(&mut rem);
    }
    LaurentPoly::from_dense(&quot).shifted(shift)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = abs.is_one();
            match (e, unit_coeff) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{abs}*q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{abs}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl LaurentPoly {
    /// Parse the [`Display`](fmt::Display) format back.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut p = Self::zero();
        // split into signed terms
        let mut rest = s;
        let mut sign = 1i64;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r.trim_start();
        }
        loop {
            // a sign right after '^' belongs to the exponent, not a new term
            let term_end = rest
                .char_indices()
                .find(|&(i, c)| {
                    (c == '+' || c == '-')
                        && i > 0
                        && rest[..i].trim_end().chars().next_back() != Some('^')
                })
                .map(|(i, _)| i)
                .unwrap_or(rest.len());
            let term = rest[..term_end].trim();
            let (coeff_str, exp) = if let Some(pos) = term.find('q') {
                let c = term[..pos].trim().trim_end_matches('*').trim();
                let e_str = term[pos + 1..].trim();
                let e = if e_str.is_empty() {
                    1
                } else {
                    e_str
                        .strip_prefix('^')
                        .ok_or_else(|| Error::Parse(format!("bad exponent in `{term}`")))?
                        .trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{term}`")))?
                };
                (c, e)
            } else {
                (term, 0)
            };
            let coeff: BigInt = if coeff_str.is_empty() {
                BigInt::one()
            } else {
                coeff_str
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient in `{term}`")))?
            };
            p.add_term(exp, &(coeff * BigInt::from(sign)));
            if term_end == rest.len() {
                break;
            }
            sign = if rest.as_bytes()[term_end] == b'-' { -1 } else { 1 };
            rest = rest[term_end + 1..].trim_start();
        }
        Ok(p)
    }
}

/// Element of Q(q) in canonical form: numerator and denominator share no
/// polynomial factor or integer content, the denominator has lowest exponent
/// 0 and positive leading coefficient. The numerator may be Laurent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: LaurentPoly, den: LaurentPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RationalFunction { num, den: LaurentPoly::one() };
        }
        // move unit q^k factors out of the denominator
        let dshift = den.min_exp().unwrap();
        let den = den.shifted(-dshift);
        let num = num.shifted(-dshift);
        let nshift = num.min_exp().unwrap();
        let num0 = num.shifted(-nshift);
        let g = poly_gcd(&num0, &den);
        let (mut num, mut den) = if g.is_one() {
            (num0, den)
        } else {
            (poly_div_exact(&num0, &g), poly_div_exact(&den, &g))
        };
        let mut c = num.content().gcd(&den.content());
        if den.coeff(den.max_exp().unwrap()).is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = num.map_coeffs(|x| x / &c);
            den = den.map_coeffs(|x| x / &c);
        }
        RationalFunction { num: num.shifted(nshift), den }
    }

    pub fn zero() -> Self {
        RationalFunction { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        RationalFunction { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }

    pub fn integer(c: i64) -> Self {
        RationalFunction { num: LaurentPoly::constant(c), den: LaurentPoly::one() }
    }

    /// `q^e` as a field element.
    pub fn q_power(e: i64) -> Self {
        RationalFunction { num: LaurentPoly::q_power(e), den: LaurentPoly::one() }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RationalFunction { num: p, den: LaurentPoly::one() }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(&self.num * &other.den, &self.den * &other.num))
    }

    pub fn inv(&self) -> Result<Self> {
        Self::one().div(self)
    }

    /// Parse `(num)/(den)` or a bare polynomial.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(idx) = s.find(")/(") {
            let num_str = s
                .get(1..idx)
                .filter(|_| s.starts_with('('))
                .ok_or_else(|| Error::Parse(format!("malformed rational function `{s}`")))?;
            let den_str = s
                .get(idx + 3..s.len() - 1)
                .filter(|_| s.ends_with(')'))
                .ok_or_else(|| Error::Parse(format!("malformed rational function `{s}`")))?;
            Self::new(LaurentPoly::parse(num_str)?, LaurentPoly::parse(den_str)?)
        } else {
            Ok(Self::from_poly(LaurentPoly::parse(s)?))
        }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, other: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RationalFunction::canonical(&self.num + &other.num, self.den.clone());
        }
        let g = poly_gcd(&self.den, &other.den);
        let da = poly_div_exact(&self.den, &g);
        let db = poly_div_exact(&other.den, &g);
        let num = &(&self.num * &db) + &(&other.num * &da);
        let den = &self.den * &db;
        RationalFunction::canonical(num, den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, other: &RationalFunction) -> RationalFunction {
        self + &(-other)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, other: &RationalFunction) -> RationalFunction {
        if self.is_zero() || other.is_zero() {
            return RationalFunction::zero();
        }
        // cross-reduce before multiplying to keep intermediates small
        let g1 = poly_gcd(&self.num, &other.den);
        let g2 = poly_gcd(&other.num, &self.den);
        let n1 = poly_div_exact(&self.num, &g1);
        let d2 = poly_div_exact(&other.den, &g1);
        let n2 = poly_div_exact(&other.num, &g2);
        let d1 = poly_div_exact(&self.den, &g2);
        RationalFunction::canonical(&n1 * &n2, &d1 * &d2)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RationalFunction {
        RationalFunction::parse(s).unwrap()
    }

    #[test]
    fn pochhammer_small() {
        assert!(q_pochhammer(0).is_one());
        assert_eq!(q_pochhammer(1), LaurentPoly::from_terms(&[(0, 1), (1, -1)]));
        // frozen: (1-q)(1-q^2) expanded by hand
        assert_eq!(
            q_pochhammer(2),
            LaurentPoly::from_terms(&[(0, 1), (1, -1), (2, -1), (3, 1)])
        );
    }

    #[test]
    fn pochhammer_at_one() {
        assert_eq!(q_pochhammer(0).eval_at_one(), BigInt::from(1));
        for n in 1..6 {
            assert_eq!(q_pochhammer(n).eval_at_one(), BigInt::zero());
        }
    }

    #[test]
    fn arithmetic_examples() {
        let a = RationalFunction::new(LaurentPoly::one(), q_pochhammer(1)).unwrap();
        assert_eq!(&a + &RationalFunction::zero(), a);
        let inv = RationalFunction::from_poly(q_pochhammer(1));
        assert!((&a * &inv).is_one());
        // frozen: denominator (1-q)(1-q^2) expanded by hand
        let b = RationalFunction::new(LaurentPoly::one(), q_pochhammer(2).shifted(0)).unwrap();
        let one_minus_q2 = LaurentPoly::from_terms(&[(0, 1), (2, -1)]);
        let b2 = RationalFunction::new(LaurentPoly::one(), one_minus_q2).unwrap();
        assert_eq!(&a * &b2, b);
        assert_eq!(
            b.denominator(),
            &LaurentPoly::from_terms(&[(0, 1), (1, -1), (2, -1), (3, 1)])
        );
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let a = RationalFunction::one();
        assert!(matches!(a.div(&RationalFunction::zero()), Err(Error::DivisionByZero)));
        assert!(RationalFunction::new(LaurentPoly::one(), LaurentPoly::zero()).is_err());
    }

    #[test]
    fn canonical_form_examples() {
        // (q^2 - q^3) / (q - q^2) = q
        let num = LaurentPoly::from_terms(&[(2, 1), (3, -1)]);
        let den = LaurentPoly::from_terms(&[(1, 1), (2, -1)]);
        let r = RationalFunction::new(num, den).unwrap();
        assert_eq!(r, RationalFunction::q_power(1));
        // Laurent numerators stay Laurent: q^-2 / (1 - q)
        let r = RationalFunction::new(LaurentPoly::q_power(-2), q_pochhammer(1)).unwrap();
        assert_eq!(r.numerator().min_exp(), Some(-2));
        assert_eq!(r.denominator().min_exp(), Some(0));
    }

    #[test]
    fn display_parse_round_trip() {
        for s in [
            "0",
            "1",
            "-1 + q",
            "q^-2 + 3 - q + 2*q^3",
            "(1)/(1 - q)",
            "(q^-1)/(1 - q - q^2 + q^3)",
            "(-2 + q)/(2 - q^3)",
        ] {
            let r = rf(s);
            assert_eq!(rf(&r.to_string()), r, "round trip through `{s}`");
        }
    }

    #[test]
    fn denominator_sign_normalization() {
        // 1/(q-1) and -1/(1-q) must canonicalize identically
        let a = RationalFunction::new(
            LaurentPoly::one(),
            LaurentPoly::from_terms(&[(0, -1), (1, 1)]),
        )
        .unwrap();
        let b = -&RationalFunction::new(LaurentPoly::one(), q_pochhammer(1)).unwrap();
        assert_eq!(a, b);
        assert!(a.denominator().coeff(1) > BigInt::zero());
    }
}
