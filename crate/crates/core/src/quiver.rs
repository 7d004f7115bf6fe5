//! The triangular quiver `Q_N`: vertices `(i,j)` with `1 <= i < j <= N`,
//! directed edges `(i,j) -> (i,j+1)`, `(i,j) -> (i+1,j)`, and
//! `(i+1,j+1) -> (i,j)`, its skew-symmetric incidence matrix, and the
//! rotation/reflection vertex maps.

use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result};

/// Quiver vertex `(i,j)` with `1 <= i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub i: u8,
    pub j: u8,
}

impl Vertex {
    pub fn new(i: u8, j: u8) -> Self {
        debug_assert!(i < j, "vertex ({i},{j}) violates i < j");
        Vertex { i, j }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// `Q_N` with vertices in lexicographic order. This single order is shared
/// by the algebra normal form and the center's weight vectors.
#[derive(Clone, Debug)]
pub struct Quiver {
    n: u8,
    vertices: Vec<Vertex>,
    index: BTreeMap<Vertex, usize>,
    edges: Vec<(Vertex, Vertex)>,
}

impl Quiver {
    pub fn new(n: u8) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("quiver needs N >= 2, got {n}")));
        }
        let mut vertices = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                vertices.push(Vertex::new(i, j));
            }
        }
        let index = vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let mut quiver = Quiver { n, vertices, index, edges: Vec::new() };
        let mut edges = Vec::new();
        for &v in &quiver.vertices {
            let (i, j) = (v.i, v.j);
            for target in [(i, j + 1), (i + 1, j)] {
                if quiver.contains(target.0, target.1) {
                    edges.push((v, Vertex::new(target.0, target.1)));
                }
            }
            if quiver.contains(i + 1, j + 1) {
                edges.push((Vertex::new(i + 1, j + 1), v));
            }
        }
        edges.sort();
        quiver.edges = edges;
        Ok(quiver)
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn contains(&self, i: u8, j: u8) -> bool {
        1 <= i && i < j && j <= self.n
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Position of `v` in the global lexicographic order.
    pub fn index_of(&self, v: Vertex) -> usize {
        *self
            .index
            .get(&v)
            .unwrap_or_else(|| panic!("vertex {v} not in Q_{}", self.n))
    }

    pub fn incidence(&self) -> IncidenceMatrix {
        let dim = self.vertex_count();
        let mut b = vec![vec![0i8; dim]; dim];
        for &(from, to) in &self.edges {
            let r = self.index_of(from);
            let c = self.index_of(to);
            b[r][c] = 1;
            b[c][r] = -1;
        }
        IncidenceMatrix { b }
    }

    /// GraphViz rendering with vertices labeled `"(i,j)"`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph Q {\n");
        for v in &self.vertices {
            out.push_str(&format!("  \"{v}\";\n"));
        }
        for (from, to) in &self.edges {
            out.push_str(&format!("  \"{from}\" -> \"{to}\";\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Skew-symmetric incidence matrix of `Q_N` on the lexicographic basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    b: Vec<Vec<i8>>,
}

impl IncidenceMatrix {
    pub fn dim(&self) -> usize {
        self.b.len()
    }

    pub fn at(&self, row: usize, col: usize) -> i8 {
        self.b[row][col]
    }

    pub fn rows(&self) -> &[Vec<i8>] {
        &self.b
    }

    /// Copy with entry `(row, col)` (and its mirror) flipped in sign, for
    /// negative-control experiments on the defining relations.
    pub fn with_flipped_entry(&self, row: usize, col: usize) -> Self {
        let mut b = self.b.clone();
        b[row][col] = -b[row][col];
        b[col][row] = -b[col][row];
        IncidenceMatrix { b }
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let d = self.dim();
        (0..d).all(|r| (0..d).all(|c| self.b[r][c] == -self.b[c][r]))
    }
}

/// The vertex maps of `Q_N`: the rotation `rho` and the three reflections
/// `mu_1`, `mu_2`, `mu_3` (which reverse all arrows).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Identity,
    Rho,
    Mu1,
    Mu2,
    Mu3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexMap {
    pub kind: MapKind,
    pub n: u8,
}

impl VertexMap {
    pub fn new(kind: MapKind, n: u8) -> Self {
        VertexMap { kind, n }
    }

    /// Whether the map reverses products when extended to the algebra.
    pub fn is_anti(&self) -> bool {
        matches!(self.kind, MapKind::Mu1 | MapKind::Mu2 | MapKind::Mu3)
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        let (i, j) = (v.i, v.j);
        let n = self.n;
        debug_assert!(j <= n, "vertex {v} not in Q_{n}");
        match self.kind {
            MapKind::Identity => v,
            MapKind::Rho => Vertex::new(j - i, n + 1 - i),
            MapKind::Mu1 => Vertex::new(j - i, j),
            MapKind::Mu2 => Vertex::new(n + 1 - j, n + 1 - i),
            MapKind::Mu3 => Vertex::new(i, n + 1 + i - j),
        }
    }

    /// Permutation matrix of the map on the lexicographic vertex basis:
    /// `P[index(map(v))][index(v)] = 1`.
    pub fn permutation_matrix(&self, quiver: &Quiver) -> Vec<Vec<i8>> {
        let d = quiver.vertex_count();
        let mut p = vec![vec![0i8; d]; d];
        for &v in quiver.vertices() {
            p[quiver.index_of(self.apply(v))][quiver.index_of(v)] = 1;
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u8, j: u8) -> Vertex {
        Vertex::new(i, j)
    }

    #[test]
    fn q3_structure() {
        let q = Quiver::new(3).unwrap();
        assert_eq!(q.vertices(), &[v(1, 2), v(1, 3), v(2, 3)]);
        let mut edges = q.edges().to_vec();
        edges.sort();
        assert_eq!(
            edges,
            vec![(v(1, 2), v(1, 3)), (v(1, 3), v(2, 3)), (v(2, 3), v(1, 2))]
        );
    }

    #[test]
    fn q2_and_q4_counts() {
        let q2 = Quiver::new(2).unwrap();
        assert_eq!(q2.vertex_count(), 1);
        assert!(q2.edges().is_empty());
        let q4 = Quiver::new(4).unwrap();
        assert_eq!(q4.vertex_count(), 6);
        assert_eq!(q4.edges().len(), 9);
        assert!(Quiver::new(1).is_err());
    }

    #[test]
    fn edge_count_formula() {
        for n in 3..=8u8 {
            let q = Quiver::new(n).unwrap();
            let expected = 3 * (n as usize - 1) * (n as usize - 2) / 2;
            assert_eq!(q.edges().len(), expected, "edge count of Q_{n}");
        }
    }

    #[test]
    fn incidence_q3_q4() {
        let q3 = Quiver::new(3).unwrap();
        let b = q3.incidence();
        assert!(b.is_skew_symmetric());
        assert_eq!(b.at(0, 1), 1); // (1,2) -> (1,3)
        assert_eq!(b.at(1, 2), 1); // (1,3) -> (2,3)
        assert_eq!(b.at(2, 0), 1); // (2,3) -> (1,2)

        let q2 = Quiver::new(2).unwrap();
        assert_eq!(q2.incidence().at(0, 0), 0);

        let q4 = Quiver::new(4).unwrap();
        let b4 = q4.incidence();
        assert!(b4.is_skew_symmetric());
        // (1,2) and (3,4) are not adjacent
        assert_eq!(b4.at(q4.index_of(v(1, 2)), q4.index_of(v(3, 4))), 0);
    }

    #[test]
    fn vertex_map_examples() {
        let rho3 = VertexMap::new(MapKind::Rho, 3);
        assert_eq!(rho3.apply(v(1, 2)), v(1, 3));
        let mu2_4 = VertexMap::new(MapKind::Mu2, 4);
        assert_eq!(mu2_4.apply(v(1, 3)), v(2, 4));
        let mu1_5 = VertexMap::new(MapKind::Mu1, 5);
        assert_eq!(mu1_5.apply(v(2, 4)), v(2, 4));
    }

    #[test]
    fn map_composition_laws() {
        for n in 2..=7u8 {
            let q = Quiver::new(n).unwrap();
            let rho = VertexMap::new(MapKind::Rho, n);
            let mus = [
                VertexMap::new(MapKind::Mu1, n),
                VertexMap::new(MapKind::Mu2, n),
                VertexMap::new(MapKind::Mu3, n),
            ];
            for &v in q.vertices() {
                assert_eq!(rho.apply(rho.apply(rho.apply(v))), v, "rho^3 = id");
                for mu in &mus {
                    assert_eq!(mu.apply(mu.apply(v)), v, "mu^2 = id");
                }
                // mu1 o mu2 = mu2 o mu3 = mu3 o mu1 = rho
                assert_eq!(mus[0].apply(mus[1].apply(v)), rho.apply(v));
                assert_eq!(mus[1].apply(mus[2].apply(v)), rho.apply(v));
                assert_eq!(mus[2].apply(mus[0].apply(v)), rho.apply(v));
            }
        }
    }

    #[test]
    fn maps_are_bijections() {
        for n in 2..=7u8 {
            let q = Quiver::new(n).unwrap();
            for kind in [MapKind::Rho, MapKind::Mu1, MapKind::Mu2, MapKind::Mu3] {
                let m = VertexMap::new(kind, n);
                let mut images: Vec<_> = q.vertices().iter().map(|&v| m.apply(v)).collect();
                images.sort();
                assert_eq!(images, q.vertices(), "{kind:?} permutes the vertices");
            }
        }
    }

    /// U B U^-1 = B for the rotation and K B K = -B for each reflection.
    #[test]
    fn incidence_commutation_with_symmetries() {
        for n in 2..=6u8 {
            let q = Quiver::new(n).unwrap();
            let b = q.incidence();
            let d = q.vertex_count();
            let matmul = |x: &Vec<Vec<i8>>, y: &Vec<Vec<i8>>| -> Vec<Vec<i32>> {
                let mut out = vec![vec![0i32; d]; d];
                for r in 0..d {
                    for k in 0..d {
                        if x[r][k] == 0 {
                            continue;
                        }
                        for c in 0..d {
                            out[r][c] += x[r][k] as i32 * y[k][c] as i32;
                        }
                    }
                }
                out
            };
            let as_i8 = |m: &IncidenceMatrix| m.rows().to_vec();

            let u = VertexMap::new(MapKind::Rho, n).permutation_matrix(&q);
            // U B = B U
            let ub = matmul(&u, &as_i8(&b));
            let bu = matmul(&as_i8(&b), &u);
            assert_eq!(ub, bu, "B commutes with U at N={n}");

            for kind in [MapKind::Mu1, MapKind::Mu2, MapKind::Mu3] {
                let k = VertexMap::new(kind, n).permutation_matrix(&q);
                let kb = matmul(&k, &as_i8(&b));
                let kbk: Vec<Vec<i32>> = {
                    let kb_i8: Vec<Vec<i8>> =
                        kb.iter().map(|row| row.iter().map(|&x| x as i8).collect()).collect();
                    matmul(&kb_i8, &k)
                };
                let minus_b: Vec<Vec<i32>> = as_i8(&b)
                    .iter()
                    .map(|row| row.iter().map(|&x| -(x as i32)).collect())
                    .collect();
                assert_eq!(kbk, minus_b, "K B K = -B for {kind:?} at N={n}");
            }
        }
    }

    #[test]
    fn dot_export_mentions_all_vertices() {
        let q = Quiver::new(3).unwrap();
        let dot = q.to_dot();
        for v in q.vertices() {
            assert!(dot.contains(&format!("\"{v}\"")));
        }
        assert!(dot.contains("\"(1,2)\" -> \"(1,3)\""));
    }
}
