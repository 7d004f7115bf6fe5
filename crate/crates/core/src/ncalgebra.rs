//! The algebra `T_N` attached to `Q_N`: generators `Z_ij` subject to
//! `Z_ij Z_i'j' = q^B Z_i'j' Z_ij`, with monomials kept in the normal
//! (lexicographic) order of the quiver vertices.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::qfield::RationalFunction;
use crate::quiver::{IncidenceMatrix, Quiver, Vertex, VertexMap};
use crate::{Error, Result};

/// Shared context: the quiver plus its incidence matrix.
#[derive(Clone, Debug)]
pub struct Algebra {
    quiver: Quiver,
    b: IncidenceMatrix,
}

impl Algebra {
    pub fn new(n: u8) -> Result<Self> {
        let quiver = Quiver::new(n)?;
        let b = quiver.incidence();
        Ok(Algebra { quiver, b })
    }

    /// Override the incidence matrix, e.g. to probe how a perturbed relation
    /// set breaks the identities.
    pub fn with_incidence(quiver: Quiver, b: IncidenceMatrix) -> Self {
        assert_eq!(b.dim(), quiver.vertex_count());
        Algebra { quiver, b }
    }

    pub fn n(&self) -> u8 {
        self.quiver.n()
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn incidence(&self) -> &IncidenceMatrix {
        &self.b
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    fn b_idx(&self, u: usize, v: usize) -> i64 {
        self.b.at(u, v) as i64
    }
}

/// Exponent vector of a normal-ordered monomial, indexed by the global
/// lexicographic vertex order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn unit(vertex_count: usize) -> Self {
        Monomial { exps: vec![0; vertex_count] }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn exp_at(&self, idx: usize) -> u32 {
        self.exps[idx]
    }

    /// The factor sequence `[(vertex, exponent), ...]` in normal order.
    pub fn factors(&self, alg: &Algebra) -> Vec<(Vertex, u32)> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(idx, &e)| (alg.quiver().vertices()[idx], e))
            .collect()
    }

    pub fn label(&self, alg: &Algebra) -> String {
        if self.degree() == 0 {
            return "1".into();
        }
        let mut s = String::new();
        for (v, e) in self.factors(alg) {
            if !s.is_empty() {
                s.push(' ');
            }
            let _ = write!(s, "Z[{},{}]", v.i, v.j);
            if e > 1 {
                let _ = write!(s, "^{e}");
            }
        }
        s
    }
}

/// An ordered, not necessarily sorted, product of generator powers.
pub type FactorSequence = Vec<(Vertex, u32)>;

/// Rewrite an arbitrary factor sequence into normal order. Returns the
/// exponent `e` such that the input product equals `q^e` times the
/// normal-ordered monomial. `e` accumulates one `B`-entry per inversion,
/// weighted by the product of exponents, so the result is independent of
/// the transposition schedule.
pub fn normal_order(seq: &[(Vertex, u32)], alg: &Algebra) -> (i64, Monomial) {
    let mut exps = vec![0u32; alg.vertex_count()];
    let mut e = 0i64;
    let indexed: Vec<(usize, u32)> = seq
        .iter()
        .map(|&(v, k)| (alg.quiver().index_of(v), k))
        .collect();
    for (pos, &(u, eu)) in indexed.iter().enumerate() {
        for &(v, ev) in &indexed[pos + 1..] {
            if u > v {
                e += alg.b_idx(u, v) * eu as i64 * ev as i64;
            }
        }
        exps[u] += eu;
    }
    (e, Monomial::from_exps(exps))
}

/// Truncated noncommutative polynomial over Q(q): a map from normal-ordered
/// monomials of total degree `<= trunc` to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcPoly {
    n: u8,
    trunc: u32,
    terms: BTreeMap<Monomial, RationalFunction>,
}

impl NcPoly {
    pub fn zero(n: u8, trunc: u32) -> Self {
        NcPoly { n, trunc, terms: BTreeMap::new() }
    }

    pub fn one(alg: &Algebra, trunc: u32) -> Self {
        let mut p = Self::zero(alg.n(), trunc);
        p.add_term(Monomial::unit(alg.vertex_count()), RationalFunction::one());
        p
    }

    pub fn generator(alg: &Algebra, v: Vertex, trunc: u32) -> NcPoly {
        let mut exps = vec![0u32; alg.vertex_count()];
        exps[alg.quiver().index_of(v)] = 1;
        let mut p = Self::zero(alg.n(), trunc);
        p.add_term(Monomial::from_exps(exps), RationalFunction::one());
        p
    }

    /// `q^e * (normal order of seq)` as a one-term polynomial; zero if the
    /// degree exceeds the truncation.
    pub fn from_factor_sequence(seq: &[(Vertex, u32)], alg: &Algebra, trunc: u32) -> NcPoly {
        let (e, mono) = normal_order(seq, alg);
        let mut p = Self::zero(alg.n(), trunc);
        if mono.degree() <= trunc {
            p.add_term(mono, RationalFunction::q_power(e));
        }
        p
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> RationalFunction {
        self.terms.get(m).cloned().unwrap_or_else(RationalFunction::zero)
    }

    pub fn constant_term(&self) -> RationalFunction {
        self.terms
            .iter()
            .find(|(m, _)| m.degree() == 0)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(RationalFunction::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: RationalFunction) {
        if c.is_zero() || m.degree() > self.trunc {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        assert_eq!(self.n, other.n, "mixed algebras in add");
        let mut out = self.clone();
        out.trunc = self.trunc.min(other.trunc);
        out.terms.retain(|m, _| m.degree() <= out.trunc);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &RationalFunction) -> NcPoly {
        let mut out = Self::zero(self.n, self.trunc);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.terms.insert(m.clone(), c * v);
        }
        out
    }

    pub fn neg(&self) -> NcPoly {
        self.scale(&RationalFunction::integer(-1))
    }

    /// Truncated product. Both operands must live in the same algebra at the
    /// same truncation degree.
    pub fn mul(&self, other: &NcPoly, alg: &Algebra) -> Result<NcPoly> {
        if self.n != other.n || alg.n() != self.n {
            return Err(Error::Mismatch(format!(
                "product of T_{} and T_{} elements",
                self.n, other.n
            )));
        }
        if self.trunc != other.trunc {
            return Err(Error::Mismatch(format!(
                "product at truncation {} vs {}",
                self.trunc, other.trunc
            )));
        }
        let mut out = Self::zero(self.n, self.trunc);
        let dim = alg.vertex_count();
        for (m1, c1) in &self.terms {
            let d1 = m1.degree();
            for (m2, c2) in &other.terms {
                if d1 + m2.degree() > self.trunc {
                    continue;
                }
                // q-power from moving every factor of m2 left past the
                // larger-vertex factors of m1
                let mut e = 0i64;
                for u in 0..dim {
                    let a = m1.exp_at(u);
                    if a == 0 {
                        continue;
                    }
                    for v in 0..u {
                        let b = m2.exp_at(v);
                        if b != 0 {
                            e += alg.b_idx(u, v) * a as i64 * b as i64;
                        }
                    }
                }
                let exps: Vec<u32> = (0..dim).map(|k| m1.exp_at(k) + m2.exp_at(k)).collect();
                let coeff = &(c1 * c2) * &RationalFunction::q_power(e);
                out.add_term(Monomial::from_exps(exps), coeff);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32, alg: &Algebra) -> Result<NcPoly> {
        let mut out = NcPoly::one(alg, self.trunc);
        for _ in 0..k {
            out = out.mul(self, alg)?;
        }
        Ok(out)
    }

    /// Apply a vertex map to every generator, reversing factor order when
    /// `anti` is set, and re-normal-order.
    pub fn apply_hom(&self, map: &VertexMap, anti: bool, alg: &Algebra) -> NcPoly {
        assert_eq!(map.n, self.n, "vertex map for wrong N");
        let mut out = Self::zero(self.n, self.trunc);
        for (m, c) in &self.terms {
            let mut seq: Vec<(Vertex, u32)> = m
                .factors(alg)
                .into_iter()
                .map(|(v, e)| (map.apply(v), e))
                .collect();
            if anti {
                seq.reverse();
            }
            let (e, mono) = normal_order(&seq, alg);
            out.add_term(mono, &*c * &RationalFunction::q_power(e));
        }
        out
    }

    /// The homomorphism `sigma_I`: drop every term whose monomial touches a
    /// killed vertex.
    pub fn sigma_kill(&self, kill: &[Vertex], alg: &Algebra) -> NcPoly {
        let kill_idx: Vec<usize> = kill.iter().map(|&v| alg.quiver().index_of(v)).collect();
        let mut out = Self::zero(self.n, self.trunc);
        for (m, c) in &self.terms {
            if kill_idx.iter().all(|&idx| m.exp_at(idx) == 0) {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Re-truncate to a lower degree.
    pub fn truncated(&self, trunc: u32) -> NcPoly {
        let mut out = Self::zero(self.n, trunc);
        for (m, c) in &self.terms {
            if m.degree() <= trunc {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Canonical text form: terms in lexicographic monomial order.
    pub fn to_text(&self, alg: &Algebra) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (m, c) in &self.terms {
            if !s.is_empty() {
                s.push_str(" + ");
            }
            if m.degree() == 0 {
                let _ = write!(s, "{c}");
            } else {
                let _ = write!(s, "{} * {}", c, m.label(alg));
            }
        }
        s
    }

    /// First Zij-position where the polynomials differ, with both
    /// coefficients, or `None` if equal.
    pub fn first_mismatch(&self, other: &NcPoly) -> Option<(Monomial, RationalFunction, RationalFunction)> {
        let mut keys: Vec<&Monomial> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        for m in keys {
            let a = self.coeff(m);
            let b = other.coeff(m);
            if a != b {
                return Some((m.clone(), a, b));
            }
        }
        None
    }
}


#[cfg(test)]
mod prop_tests {
    use super::*;
    use crate::quiver::MapKind;
    use proptest::prelude::*;

    fn arb_seq(n: u8) -> impl Strategy<Value = FactorSequence> {
        let verts: Vec<Vertex> = Quiver::new(n).unwrap().vertices().to_vec();
        proptest::collection::vec(
            (0..verts.len(), 1u32..3).prop_map(move |(idx, e)| (verts[idx], e)),
            0..6,
        )
    }

    fn arb_poly(n: u8, trunc: u32) -> impl Strategy<Value = NcPoly> {
        proptest::collection::vec((arb_seq(n), -3i64..4), 1..3).prop_map(move |parts| {
            let alg = Algebra::new(n).unwrap();
            let mut p = NcPoly::zero(n, trunc);
            for (seq, c) in parts {
                let term = NcPoly::from_factor_sequence(&seq, &alg, trunc)
                    .scale(&RationalFunction::integer(c));
                p = p.add(&term);
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        /// Reordering is schedule independent: a randomized sequence of valid
        /// adjacent transpositions reaches the same q-power and monomial.
        #[test]
        fn normal_order_schedule_independent(seq in arb_seq(4), shuffles in proptest::collection::vec(0usize..64, 0..40)) {
            let alg = Algebra::new(4).unwrap();
            let (e, mono) = normal_order(&seq, &alg);

            // oracle: apply adjacent transpositions one at a time
            let mut work: Vec<(Vertex, u32)> = seq.clone();
            let mut acc = 0i64;
            let q = alg.quiver();
            for s in shuffles {
                if work.len() < 2 { break; }
                let pos = s % (work.len() - 1);
                let (u, eu) = work[pos];
                let (w, ew) = work[pos + 1];
                if q.index_of(u) > q.index_of(w) {
                    acc += alg.incidence().at(q.index_of(u), q.index_of(w)) as i64 * eu as i64 * ew as i64;
                    work.swap(pos, pos + 1);
                }
            }
            // finish with a full bubble pass
            loop {
                let mut swapped = false;
                for pos in 0..work.len().saturating_sub(1) {
                    let (u, eu) = work[pos];
                    let (w, ew) = work[pos + 1];
                    if q.index_of(u) > q.index_of(w) {
                        acc += alg.incidence().at(q.index_of(u), q.index_of(w)) as i64 * eu as i64 * ew as i64;
                        work.swap(pos, pos + 1);
                        swapped = true;
                    }
                }
                if !swapped { break; }
            }
            let (e2, mono2) = normal_order(&work, &alg);
            prop_assert_eq!(e2, 0, "oracle result must be sorted");
            prop_assert_eq!(mono2, mono);
            prop_assert_eq!(acc, e);
        }

        /// apply_hom is multiplicative, with reversed order for the
        /// anti-automorphisms.
        #[test]
        fn hom_respects_products(a in arb_poly(4, 5), b in arb_poly(4, 5)) {
            let alg = Algebra::new(4).unwrap();
            let ab = a.mul(&b, &alg).unwrap();
            let rho = VertexMap::new(MapKind::Rho, 4);
            prop_assert_eq!(
                ab.apply_hom(&rho, false, &alg),
                a.apply_hom(&rho, false, &alg).mul(&b.apply_hom(&rho, false, &alg), &alg).unwrap()
            );
            let mu1 = VertexMap::new(MapKind::Mu1, 4);
            prop_assert_eq!(
                ab.apply_hom(&mu1, true, &alg),
                b.apply_hom(&mu1, true, &alg).mul(&a.apply_hom(&mu1, true, &alg), &alg).unwrap()
            );
        }

        #[test]
        fn sigma_kill_is_multiplicative(a in arb_poly(4, 5), b in arb_poly(4, 5)) {
            let alg = Algebra::new(4).unwrap();
            let kill = [Vertex::new(1, 3), Vertex::new(2, 4)];
            let lhs = a.mul(&b, &alg).unwrap().sigma_kill(&kill, &alg);
            let rhs = a.sigma_kill(&kill, &alg).mul(&b.sigma_kill(&kill, &alg), &alg).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        /// Truncating inputs then multiplying agrees with multiplying at a
        /// higher degree and truncating after.
        #[test]
        fn truncation_coherent(a in arb_poly(4, 8), b in arb_poly(4, 8)) {
            let alg = Algebra::new(4).unwrap();
            let d = 4u32;
            let exact = a.mul(&b, &alg).unwrap().truncated(d);
            let trunc = a.truncated(d).mul(&b.truncated(d), &alg).unwrap();
            // terms of degree <= d agree wherever both factors were fully
            // represented; since inputs have degree <= 8 and 4+4 >= 8 covers
            // every product of degree <= 4, the truncated path is exact here.
            prop_assert_eq!(exact, trunc);
        }
    }
}
