//! Quantum exponential series over `T_N`, the ordered product `T_N` over
//! the discrete tetrahedron, and the identity checks built from them:
//! Schuetzenberger, pentagon, the cyclic 4~4 identity, the mu/rho
//! symmetries of `T_N`, factor-killed reductions, and the worked N=4
//! rewriting chain.

use std::time::Instant;

use serde::Serialize;

use crate::ncalgebra::{Algebra, FactorSequence, NcPoly};
use crate::qfield::{q_pochhammer, RationalFunction};
use crate::quiver::{MapKind, Vertex, VertexMap};
use crate::{Error, Result};

/// Point of the discrete tetrahedron: `1 <= a < b < c <= N+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Lambda {
    pub a: u8,
    pub b: u8,
    pub c: u8,
}

impl Lambda {
    pub fn new(a: u8, b: u8, c: u8, n: u8) -> Result<Self> {
        if 1 <= a && a < b && b < c && c <= n + 1 {
            Ok(Lambda { a, b, c })
        } else {
            Err(Error::InvalidArgument(format!(
                "({a},{b},{c}) is not a point of Lambda_{n}"
            )))
        }
    }

    /// All points in lexicographic order; there are `binom(N+1, 3)`.
    pub fn enumerate(n: u8) -> Vec<Lambda> {
        let mut out = Vec::new();
        for a in 1..=(n + 1) {
            for b in (a + 1)..=(n + 1) {
                for c in (b + 1)..=(n + 1) {
                    out.push(Lambda { a, b, c });
                }
            }
        }
        out
    }

    /// The argument of the attached quantum exponential: the ordered
    /// product `Z_{a,b} Z_{a+1,b+1} ... Z_{a+c-b-1,c-1}`.
    pub fn factor_sequence(&self) -> FactorSequence {
        (0..self.c - self.b)
            .map(|k| (Vertex::new(self.a + k, self.b + k), 1))
            .collect()
    }
}

/// Truncated quantum exponential `sum_n (-x)^n / ((1-q)...(1-q^n))`.
/// The argument must have zero constant term so the series terminates.
pub fn qexp(arg: &NcPoly, alg: &Algebra, d: u32) -> Result<NcPoly> {
    if !arg.constant_term().is_zero() {
        return Err(Error::InvalidArgument(
            "quantum exponential of a series with nonzero constant term".into(),
        ));
    }
    let arg = arg.truncated(d);
    let mut result = NcPoly::one(alg, d);
    let mut power = NcPoly::one(alg, d);
    let minus_arg = arg.neg();
    for n in 1..=d {
        power = power.mul(&minus_arg, alg)?;
        if power.is_zero() {
            break;
        }
        let coeff = RationalFunction::from_poly(q_pochhammer(n)).inv()?;
        result = result.add(&power.scale(&coeff));
    }
    Ok(result)
}

/// Truncated inverse series `sum_n q^{n(n-1)/2} x^n / ((1-q)...(1-q^n))`.
pub fn qexp_inv(arg: &NcPoly, alg: &Algebra, d: u32) -> Result<NcPoly> {
    if !arg.constant_term().is_zero() {
        return Err(Error::InvalidArgument(
            "inverse quantum exponential of a series with nonzero constant term".into(),
        ));
    }
    let arg = arg.truncated(d);
    let mut result = NcPoly::one(alg, d);
    let mut power = NcPoly::one(alg, d);
    for n in 1..=d {
        power = power.mul(&arg, alg)?;
        if power.is_zero() {
            break;
        }
        let n_i64 = n as i64;
        let coeff = &RationalFunction::q_power(n_i64 * (n_i64 - 1) / 2)
            * &RationalFunction::from_poly(q_pochhammer(n)).inv()?;
        result = result.add(&power.scale(&coeff));
    }
    Ok(result)
}

/// The factor `<abc>` of `T_N`.
pub fn e_lambda(l: Lambda, alg: &Algebra, d: u32) -> Result<NcPoly> {
    Lambda::new(l.a, l.b, l.c, alg.n())?;
    let arg = NcPoly::from_factor_sequence(&l.factor_sequence(), alg, d);
    qexp(&arg, alg, d)
}

/// The product `<ab> = <ab,b+1> <ab,b+2> ... <ab,N+1>`.
pub fn e_ab(a: u8, b: u8, alg: &Algebra, d: u32) -> Result<NcPoly> {
    let n = alg.n();
    if !(1 <= a && a < b && b <= n) {
        return Err(Error::InvalidArgument(format!("({a},{b}) is not a vertex of Q_{n}")));
    }
    let mut out = NcPoly::one(alg, d);
    for c in (b + 1)..=(n + 1) {
        out = out.mul(&e_lambda(Lambda { a, b, c }, alg, d)?, alg)?;
    }
    Ok(out)
}

/// The element `T_N`: the lexicographically ordered product of all
/// `binom(N+1,3)` quantum exponentials `<abc>`.
pub fn build_t(alg: &Algebra, d: u32) -> Result<NcPoly> {
    let mut out = NcPoly::one(alg, d);
    for l in Lambda::enumerate(alg.n()) {
        out = out.mul(&e_lambda(l, alg, d)?, alg)?;
    }
    Ok(out)
}

/// Outcome of one exact comparison.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub equal: bool,
    pub trunc: u32,
    /// `(monomial, lhs coefficient, rhs coefficient)` of the
    /// lexicographically first mismatch.
    pub mismatch: Option<(String, String, String)>,
    pub millis: u128,
}

impl IdentityReport {
    pub fn detail(&self) -> String {
        match &self.mismatch {
            None => format!("equal up to degree {}", self.trunc),
            Some((m, l, r)) => format!("mismatch at {m}: lhs {l} vs rhs {r}"),
        }
    }
}

/// Exact coefficient comparison of two polynomials at the same truncation.
pub fn verify_identity(lhs: &NcPoly, rhs: &NcPoly, alg: &Algebra) -> IdentityReport {
    assert_eq!(lhs.n(), rhs.n(), "comparison across algebras");
    assert_eq!(lhs.trunc(), rhs.trunc(), "comparison across truncations");
    let start = Instant::now();
    let mismatch = lhs
        .first_mismatch(rhs)
        .map(|(m, a, b)| (m.label(alg), a.to_string(), b.to_string()));
    IdentityReport {
        equal: mismatch.is_none(),
        trunc: lhs.trunc(),
        mismatch,
        millis: start.elapsed().as_millis(),
    }
}

/// `T_N = mu_1(T_N) = mu_2(T_N) = mu_3(T_N) = rho(T_N) = rho^2(T_N)`.
pub fn verify_theorem1(n: u8, d: u32) -> Result<Vec<(String, IdentityReport)>> {
    let alg = Algebra::new(n)?;
    let t = build_t(&alg, d)?;
    let mut out = Vec::new();
    for kind in [MapKind::Mu1, MapKind::Mu2, MapKind::Mu3] {
        let map = VertexMap::new(kind, n);
        let image = t.apply_hom(&map, true, &alg);
        out.push((format!("T_{n} = {}(T_{n})", map_name(kind)), verify_identity(&t, &image, &alg)));
    }
    let rho = VertexMap::new(MapKind::Rho, n);
    let rho_t = t.apply_hom(&rho, false, &alg);
    out.push((format!("T_{n} = rho(T_{n})"), verify_identity(&t, &rho_t, &alg)));
    let rho2_t = rho_t.apply_hom(&rho, false, &alg);
    out.push((format!("T_{n} = rho^2(T_{n})"), verify_identity(&t, &rho2_t, &alg)));
    Ok(out)
}

fn map_name(kind: MapKind) -> &'static str {
    match kind {
        MapKind::Identity => "id",
        MapKind::Rho => "rho",
        MapKind::Mu1 => "mu1",
        MapKind::Mu2 => "mu2",
        MapKind::Mu3 => "mu3",
    }
}

/// Both sides of `T_N = rho(T_N)` with every quantum exponential whose
/// argument touches a killed vertex replaced by 1 (factor-level filtering).
pub fn verify_prop_qq(n: u8, kill: &[Vertex], d: u32) -> Result<IdentityReport> {
    let alg = Algebra::new(n)?;
    let rho = VertexMap::new(MapKind::Rho, n);
    let build_filtered = |map: Option<&VertexMap>| -> Result<NcPoly> {
        let mut out = NcPoly::one(&alg, d);
        for l in Lambda::enumerate(n) {
            let seq: FactorSequence = l
                .factor_sequence()
                .into_iter()
                .map(|(v, e)| (map.map_or(v, |m| m.apply(v)), e))
                .collect();
            if seq.iter().any(|(v, _)| kill.contains(v)) {
                continue;
            }
            let arg = NcPoly::from_factor_sequence(&seq, &alg, d);
            out = out.mul(&qexp(&arg, &alg, d)?, &alg)?;
        }
        Ok(out)
    };
    let lhs = build_filtered(None)?;
    let rhs = build_filtered(Some(&rho))?;
    Ok(verify_identity(&lhs, &rhs, &alg))
}

/// The eleven displayed expressions of the worked `T_4 = rho(T_4)`
/// derivation, as quantum-exponential factor lists. Line 11 is `rho(T_4)`
/// itself, materialized through `apply_hom`.
const T4_CHAIN: &str = include_str!("t4_chain.txt");

fn parse_chain_line(line: &str) -> Result<Vec<FactorSequence>> {
    line.split_whitespace()
        .map(|factor| {
            factor
                .split('*')
                .map(|gen| {
                    let bytes = gen.as_bytes();
                    if bytes.len() != 2 || !bytes.iter().all(u8::is_ascii_digit) {
                        return Err(Error::Parse(format!("bad generator `{gen}`")));
                    }
                    Ok((Vertex::new(bytes[0] - b'0', bytes[1] - b'0'), 1u32))
                })
                .collect()
        })
        .collect()
}

/// Materialize each chain line and compare consecutive lines pairwise.
pub fn verify_t4_chain(d: u32) -> Result<Vec<(String, IdentityReport)>> {
    let alg = Algebra::new(4)?;
    let mut exprs: Vec<(String, NcPoly)> = Vec::new();
    for (idx, line) in T4_CHAIN.lines().filter(|l| !l.trim().is_empty()).enumerate() {
        let mut poly = NcPoly::one(&alg, d);
        for seq in parse_chain_line(line)? {
            let arg = NcPoly::from_factor_sequence(&seq, &alg, d);
            poly = poly.mul(&qexp(&arg, &alg, d)?, &alg)?;
        }
        exprs.push((format!("line {}", idx + 1), poly));
    }
    let rho = VertexMap::new(MapKind::Rho, 4);
    let rho_t4 = build_t(&alg, d)?.apply_hom(&rho, false, &alg);
    exprs.push(("rho(T_4)".into(), rho_t4));

    let mut out = Vec::new();
    for pair in exprs.windows(2) {
        let (name_a, a) = &pair[0];
        let (name_b, b) = &pair[1];
        out.push((format!("{name_a} = {name_b}"), verify_identity(a, b, &alg)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalgebra::Monomial;

    fn v(i: u8, j: u8) -> Vertex {
        Vertex::new(i, j)
    }

    #[test]
    fn qexp_basics() {
        let alg = Algebra::new(3).unwrap();
        let zero = NcPoly::zero(3, 4);
        assert_eq!(qexp(&zero, &alg, 4).unwrap(), NcPoly::one(&alg, 4));

        // <Z12> at D=2: 1 - Z12/(1-q) + Z12^2/((1-q)(1-q^2))
        let z12 = NcPoly::generator(&alg, v(1, 2), 2);
        let s = qexp(&z12, &alg, 2).unwrap();
        let m1 = Monomial::from_exps(vec![1, 0, 0]);
        let m2 = Monomial::from_exps(vec![2, 0, 0]);
        let inv1 = RationalFunction::from_poly(q_pochhammer(1)).inv().unwrap();
        let inv2 = RationalFunction::from_poly(q_pochhammer(2)).inv().unwrap();
        assert_eq!(s.coeff(&m1), -&inv1);
        assert_eq!(s.coeff(&m2), inv2);

        // nonzero constant term is rejected
        assert!(qexp(&NcPoly::one(&alg, 4), &alg, 4).is_err());
    }

    #[test]
    fn qexp_inv_is_the_series_inverse() {
        let alg = Algebra::new(3).unwrap();
        let d = 10;
        let z12 = NcPoly::generator(&alg, v(1, 2), d);
        let s = qexp(&z12, &alg, d).unwrap();
        let si = qexp_inv(&z12, &alg, d).unwrap();
        assert_eq!(s.mul(&si, &alg).unwrap(), NcPoly::one(&alg, d));
        // n = 2 coefficient of the inverse: q/((1-q)(1-q^2))
        let m2 = Monomial::from_exps(vec![2, 0, 0]);
        let expected = &RationalFunction::q_power(1)
            * &RationalFunction::from_poly(q_pochhammer(2)).inv().unwrap();
        assert_eq!(si.coeff(&m2), expected);
    }

    /// Schuetzenberger: qexp(X) qexp(Y) = qexp(X+Y) whenever YX = qXY.
    #[test]
    fn schuetzenberger_on_every_edge() {
        let alg = Algebra::new(3).unwrap();
        let d = 8;
        for &(from, to) in alg.quiver().edges() {
            // edge u -> v gives Z_u Z_v = q Z_v Z_u, i.e. X = Z_v, Y = Z_u
            let x = NcPoly::generator(&alg, to, d);
            let y = NcPoly::generator(&alg, from, d);
            let lhs = qexp(&x, &alg, d)
                .unwrap()
                .mul(&qexp(&y, &alg, d).unwrap(), &alg)
                .unwrap();
            let rhs = qexp(&x.add(&y), &alg, d).unwrap();
            assert!(verify_identity(&lhs, &rhs, &alg).equal, "edge {from} -> {to}");
        }
    }

    /// Pentagon: qexp(X) qexp(XY) qexp(Y) = qexp(Y) qexp(X).
    #[test]
    fn pentagon_on_every_edge() {
        let alg = Algebra::new(3).unwrap();
        let d = 8;
        for &(from, to) in alg.quiver().edges() {
            let x = NcPoly::generator(&alg, to, d);
            let y = NcPoly::generator(&alg, from, d);
            let xy = x.mul(&y, &alg).unwrap();
            let lhs = qexp(&x, &alg, d)
                .unwrap()
                .mul(&qexp(&xy, &alg, d).unwrap(), &alg)
                .unwrap()
                .mul(&qexp(&y, &alg, d).unwrap(), &alg)
                .unwrap();
            let rhs = qexp(&y, &alg, d)
                .unwrap()
                .mul(&qexp(&x, &alg, d).unwrap(), &alg)
                .unwrap();
            assert!(verify_identity(&lhs, &rhs, &alg).equal, "edge {from} -> {to}");
        }
    }

    #[test]
    fn e_lambda_examples() {
        let alg = Algebra::new(3).unwrap();
        let d = 6;
        let z12 = NcPoly::generator(&alg, v(1, 2), d);
        assert_eq!(
            e_lambda(Lambda::new(1, 2, 3, 3).unwrap(), &alg, d).unwrap(),
            qexp(&z12, &alg, d).unwrap()
        );
        let z12_z23 = z12
            .mul(&NcPoly::generator(&alg, v(2, 3), d), &alg)
            .unwrap();
        assert_eq!(
            e_lambda(Lambda::new(1, 2, 4, 3).unwrap(), &alg, d).unwrap(),
            qexp(&z12_z23, &alg, d).unwrap()
        );
        let z13 = NcPoly::generator(&alg, v(1, 3), d);
        assert_eq!(
            e_lambda(Lambda::new(1, 3, 4, 3).unwrap(), &alg, d).unwrap(),
            qexp(&z13, &alg, d).unwrap()
        );
        assert!(Lambda::new(1, 3, 3, 3).is_err());
    }

    #[test]
    fn build_t_small() {
        let alg2 = Algebra::new(2).unwrap();
        let d = 8;
        let t2 = build_t(&alg2, d).unwrap();
        let z12 = NcPoly::generator(&alg2, v(1, 2), d);
        assert_eq!(t2, qexp(&z12, &alg2, d).unwrap());

        assert_eq!(Lambda::enumerate(3).len(), 4);
        assert_eq!(Lambda::enumerate(4).len(), 10);
        assert_eq!(Lambda::enumerate(5).len(), 20);

        // T_3 = <Z12><Z12 Z23><Z13><Z23>
        let alg3 = Algebra::new(3).unwrap();
        let factors = [
            vec![(v(1, 2), 1)],
            vec![(v(1, 2), 1), (v(2, 3), 1)],
            vec![(v(1, 3), 1)],
            vec![(v(2, 3), 1)],
        ];
        let mut expected = NcPoly::one(&alg3, d);
        for seq in &factors {
            let arg = NcPoly::from_factor_sequence(seq, &alg3, d);
            expected = expected.mul(&qexp(&arg, &alg3, d).unwrap(), &alg3).unwrap();
        }
        assert_eq!(build_t(&alg3, d).unwrap(), expected);
    }

    /// <124> and <134> have commuting arguments, so swapping them inside
    /// T_3 leaves the product unchanged.
    #[test]
    fn commuting_factors_can_swap() {
        let alg = Algebra::new(3).unwrap();
        let d = 8;
        let f = |l: (u8, u8, u8)| {
            e_lambda(Lambda::new(l.0, l.1, l.2, 3).unwrap(), &alg, d).unwrap()
        };
        let a = f((1, 2, 3))
            .mul(&f((1, 2, 4)), &alg)
            .unwrap()
            .mul(&f((1, 3, 4)), &alg)
            .unwrap()
            .mul(&f((2, 3, 4)), &alg)
            .unwrap();
        let b = f((1, 2, 3))
            .mul(&f((1, 3, 4)), &alg)
            .unwrap()
            .mul(&f((1, 2, 4)), &alg)
            .unwrap()
            .mul(&f((2, 3, 4)), &alg)
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cyclic_identity_three_ways() {
        // X = Z12, Z = Z13, Y = Z23 in T_3
        let alg = Algebra::new(3).unwrap();
        let d = 8;
        let product = |seqs: &[&[(Vertex, u32)]]| -> NcPoly {
            let mut out = NcPoly::one(&alg, d);
            for seq in seqs {
                let arg = NcPoly::from_factor_sequence(seq, &alg, d);
                out = out.mul(&qexp(&arg, &alg, d).unwrap(), &alg).unwrap();
            }
            out
        };
        let x = v(1, 2);
        let z = v(1, 3);
        let y = v(2, 3);
        let e1 = product(&[&[(x, 1)], &[(x, 1), (y, 1)], &[(z, 1)], &[(y, 1)]]);
        let e2 = product(&[&[(z, 1)], &[(z, 1), (x, 1)], &[(y, 1)], &[(x, 1)]]);
        let e3 = product(&[&[(y, 1)], &[(y, 1), (z, 1)], &[(x, 1)], &[(z, 1)]]);
        assert!(verify_identity(&e1, &e2, &alg).equal);
        assert!(verify_identity(&e2, &e3, &alg).equal);
        assert_eq!(e1, build_t(&alg, d).unwrap());
    }

    #[test]
    fn theorem1_small_n() {
        for (n, d) in [(2u8, 8u32), (3, 8)] {
            for (name, report) in verify_theorem1(n, d).unwrap() {
                assert!(report.equal, "{name}: {}", report.detail());
            }
        }
    }

    #[test]
    fn prop_qq_recovers_pentagon() {
        // killing (1,3) at N=3 must reduce the cyclic identity to the pentagon
        let report = verify_prop_qq(3, &[v(1, 3)], 8).unwrap();
        assert!(report.equal, "{}", report.detail());

        let alg = Algebra::new(3).unwrap();
        let d = 8;
        let x = NcPoly::generator(&alg, v(1, 2), d);
        let y = NcPoly::generator(&alg, v(2, 3), d);
        let xy = x.mul(&y, &alg).unwrap();
        let lhs = qexp(&x, &alg, d)
            .unwrap()
            .mul(&qexp(&xy, &alg, d).unwrap(), &alg)
            .unwrap()
            .mul(&qexp(&y, &alg, d).unwrap(), &alg)
            .unwrap();
        let rhs = qexp(&y, &alg, d)
            .unwrap()
            .mul(&qexp(&x, &alg, d).unwrap(), &alg)
            .unwrap();
        // and those filtered sides are literally the pentagon sides
        assert!(verify_identity(&lhs, &rhs, &alg).equal);

        // empty kill set is the plain rho identity
        assert!(verify_prop_qq(3, &[], 6).unwrap().equal);
    }

    #[test]
    fn perturbed_coefficient_is_located() {
        let alg = Algebra::new(3).unwrap();
        let d = 4;
        let t = build_t(&alg, d).unwrap();
        let mut bad = t.clone();
        let (first, _) = t.terms().nth(1).map(|(m, c)| (m.clone(), c.clone())).unwrap();
        bad.add_term(first.clone(), RationalFunction::q_power(1));
        let report = verify_identity(&t, &bad, &alg);
        assert!(!report.equal);
        let (m, _, _) = report.mismatch.unwrap();
        assert_eq!(m, first.label(&alg));
    }

    #[test]
    fn t4_chain_holds() {
        let reports = verify_t4_chain(4).unwrap();
        assert_eq!(reports.len(), 10);
        for (name, r) in &reports {
            assert!(r.equal, "{name}: {}", r.detail());
        }
    }
}
