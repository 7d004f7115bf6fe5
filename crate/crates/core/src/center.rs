//! The monomial center of `T_N`: a normally ordered monomial `M(alpha)`
//! is central iff `B alpha = 0`. The kernel has dimension `chi(N)`
//! (`N/2` rounded down), every central weight vector inherits the
//! rotation and reflection symmetries of the quiver, and a central
//! monomial is pinned down by its first `chi(N)` boundary weights.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ncalgebra::{Algebra, Monomial, NcPoly};
use crate::quiver::{MapKind, Quiver, Vertex, VertexMap};
use crate::report::Check;
use crate::{Error, Result};

/// Integer weight per vertex, in the global lexicographic order.
pub type WeightVector = Vec<i64>;

/// `chi(N)`: the dimension of the monomial center.
pub fn chi(n: u8) -> usize {
    n as usize / 2
}

/// `B alpha` as integers.
pub fn b_times(alg: &Algebra, alpha: &[i64]) -> Vec<i64> {
    let dim = alg.vertex_count();
    assert_eq!(alpha.len(), dim);
    (0..dim)
        .map(|r| (0..dim).map(|c| alg.incidence().at(r, c) as i64 * alpha[c]).sum())
        .collect()
}

/// Central-monomial test: all weights nonnegative and `B alpha = 0`.
pub fn is_central(alg: &Algebra, alpha: &[i64]) -> Result<bool> {
    if alpha.iter().any(|&a| a < 0) {
        return Err(Error::InvalidArgument(
            "central-monomial weights must be nonnegative".into(),
        ));
    }
    Ok(b_times(alg, alpha).iter().all(|&x| x == 0))
}

/// The monomial `M(alpha)` as a one-term polynomial.
pub fn monomial_poly(alg: &Algebra, alpha: &[i64], trunc: u32) -> NcPoly {
    let exps: Vec<u32> =
        alpha.iter().map(|&a| u32::try_from(a).expect("nonnegative weight")).collect();
    let mut p = NcPoly::zero(alg.n(), trunc);
    p.add_term(Monomial::from_exps(exps), crate::qfield::RationalFunction::one());
    p
}

/// Exact commutation oracle: `M(alpha) Z_v = Z_v M(alpha)` for every
/// generator, computed in the algebra itself.
pub fn commutes_with_all_generators(alg: &Algebra, alpha: &[i64]) -> bool {
    let deg: i64 = alpha.iter().sum();
    let trunc = (deg + 1) as u32;
    let m = monomial_poly(alg, alpha, trunc);
    alg.quiver().vertices().iter().all(|&v| {
        let z = NcPoly::generator(alg, v, trunc);
        m.mul(&z, alg).expect("same algebra") == z.mul(&m, alg).expect("same algebra")
    })
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
fn rank_bareiss(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let pivot = (row..rows).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(row, p);
        for r in (row + 1)..rows {
            for c in (col + 1)..cols {
                let num = &m[row][col] * &m[r][c] - &m[r][col] * &m[row][c];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                m[r][c] = q;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[row][col].clone();
        row += 1;
        rank += 1;
        if row == rows {
            break;
        }
    }
    rank
}

/// Kernel dimension of the incidence matrix, by exact elimination.
pub fn kernel_dimension(alg: &Algebra) -> usize {
    let dim = alg.vertex_count();
    let m: Vec<Vec<BigInt>> = (0..dim)
        .map(|r| (0..dim).map(|c| BigInt::from(alg.incidence().at(r, c))).collect())
        .collect();
    dim - rank_bareiss(m)
}

fn vertex_index(q: &Quiver, i: u8, j: u8) -> Option<usize> {
    q.contains(i, j).then(|| q.index_of(Vertex::new(i, j)))
}

/// Reconstruct the unique weight vector with `alpha~_{1j} = beta_{j-1}`
/// for `j = 2..chi(N)+1`: fill the boundary through the rotation and
/// reflection symmetries, then peel inward row by row with the
/// commutation recursion. Returns the minimal shift `m` making all
/// weights nonnegative together with the shifted vector.
pub fn reconstruct_weights(n: u8, beta: &[i64]) -> Result<(i64, WeightVector)> {
    if beta.len() != chi(n) {
        return Err(Error::InvalidArgument(format!(
            "expected {} boundary weights for N = {n}, got {}",
            chi(n),
            beta.len()
        )));
    }
    let alg = Algebra::new(n)?;
    let q = alg.quiver();
    let dim = q.vertex_count();
    let mut alpha: Vec<Option<i64>> = vec![None; dim];

    let set = |alpha: &mut Vec<Option<i64>>, idx: usize, val: i64| match alpha[idx] {
        None => alpha[idx] = Some(val),
        Some(old) => assert_eq!(old, val, "inconsistent weight"),
    };

    // half of the first boundary side
    for (k, &b) in beta.iter().enumerate() {
        set(&mut alpha, vertex_index(q, 1, k as u8 + 2).unwrap(), b);
    }
    // its mirror under the reflection fixing the first row
    for j in 2..=n {
        let mirror = n + 2 - j;
        if let Some(idx) = vertex_index(q, 1, j) {
            if alpha[idx].is_none() {
                let src = vertex_index(q, 1, mirror).unwrap();
                let val = alpha[src].expect("mirror source must be set");
                set(&mut alpha, idx, val);
            }
        }
    }
    // propagate around the rotation orbits; this covers every boundary
    // vertex
    let rho = VertexMap::new(MapKind::Rho, n);
    loop {
        let mut changed = false;
        for &v in q.vertices() {
            let idx = q.index_of(v);
            if let Some(val) = alpha[idx] {
                let img = q.index_of(rho.apply(v));
                if alpha[img].is_none() {
                    set(&mut alpha, img, val);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    // inward recursion: the commutation equation at (i,j) fixes
    // alpha_{i+1,j+1} from the two rows above; absent vertices count 0.
    // Boundary cells reached again must agree, which cross-checks the
    // symmetry fill.
    let get = |alpha: &[Option<i64>], i: u8, j: u8| -> i64 {
        vertex_index(q, i, j).map_or(0, |idx| alpha[idx].expect("raster order exposes set cells"))
    };
    for i in 1..n.saturating_sub(1) {
        for j in (i + 2)..n {
            let val = get(&alpha, i + 1, j) + get(&alpha, i, j + 1) - get(&alpha, i, j - 1)
                + get(&alpha, i - 1, j - 1)
                - get(&alpha, i - 1, j);
            set(&mut alpha, vertex_index(q, i + 1, j + 1).unwrap(), val);
        }
    }

    let tilde: Vec<i64> = alpha
        .iter()
        .map(|v| v.expect("every vertex reached by symmetry or recursion"))
        .collect();
    debug_assert!(b_times(&alg, &tilde).iter().all(|&x| x == 0), "reconstruction not in kernel");
    let m = (-tilde.iter().copied().min().unwrap_or(0)).max(0);
    let shifted = tilde.iter().map(|&x| x + m).collect();
    Ok((m, shifted))
}

/// Basis of the monomial center: the kernel of `B`, presented through
/// nonnegative primitive vectors reconstructed from unit boundary
/// sequences.
#[derive(Clone, Debug)]
pub struct CenterBasis {
    pub n: u8,
    pub basis: Vec<WeightVector>,
}

pub fn kernel_basis(n: u8) -> Result<CenterBasis> {
    let alg = Algebra::new(n)?;
    let dim = kernel_dimension(&alg);
    assert_eq!(dim, chi(n), "kernel dimension disagrees with chi(N)");
    let mut basis = Vec::with_capacity(dim);
    for k in 0..dim {
        let mut beta = vec![0i64; dim];
        beta[k] = 1;
        let (_, v) = reconstruct_weights(n, &beta)?;
        assert!(b_times(&alg, &v).iter().all(|&x| x == 0));
        let content = v.iter().fold(0i64, |g, &x| g.gcd(&x));
        assert_eq!(content, 1, "basis vector not primitive");
        basis.push(v);
    }
    // the boundary windows are unit vectors plus a constant shift, so the
    // reconstructions are independent and span the kernel
    let m: Vec<Vec<BigInt>> =
        basis.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    assert_eq!(rank_bareiss(m), dim, "reconstructed vectors must span the kernel");
    Ok(CenterBasis { n, basis })
}

/// Triangular weight-grid rendering: row `i` lists `alpha_{i,i+1..N}`.
pub fn weight_grid(n: u8, alpha: &[i64]) -> String {
    let q = Quiver::new(n).expect("valid N");
    let mut out = String::new();
    for i in 1..n {
        out.push_str(&"  ".repeat(i as usize - 1));
        for j in (i + 1)..=n {
            out.push_str(&format!("{:>3}", alpha[q.index_of(Vertex::new(i, j))]));
        }
        out.push('\n');
    }
    out
}

/// Orbits of the vertex set under the rotation and the reflections.
pub fn symmetry_orbits(n: u8) -> Vec<Vec<Vertex>> {
    let q = Quiver::new(n).expect("valid N");
    let maps: Vec<VertexMap> = [MapKind::Rho, MapKind::Mu1, MapKind::Mu2, MapKind::Mu3]
        .into_iter()
        .map(|k| VertexMap::new(k, n))
        .collect();
    let mut seen = vec![false; q.vertex_count()];
    let mut orbits = Vec::new();
    for &v in q.vertices() {
        if seen[q.index_of(v)] {
            continue;
        }
        let mut orbit = vec![v];
        seen[q.index_of(v)] = true;
        let mut stack = vec![v];
        while let Some(w) = stack.pop() {
            for m in &maps {
                let img = m.apply(w);
                if !seen[q.index_of(img)] {
                    seen[q.index_of(img)] = true;
                    orbit.push(img);
                    stack.push(img);
                }
            }
        }
        orbit.sort();
        orbits.push(orbit);
    }
    orbits
}

/// The five weight symmetries of every kernel basis vector, the exact
/// invariance of the basis monomials under the algebra maps, and the
/// same for random nonnegative combinations.
pub fn verify_center_symmetries(n: u8, seed: u64) -> Result<Vec<Check>> {
    let alg = Algebra::new(n)?;
    let q = alg.quiver();
    let cb = kernel_basis(n)?;
    let mut checks = Vec::new();

    let weight_symmetries = |alpha: &[i64]| -> bool {
        q.vertices().iter().all(|&v| {
            [MapKind::Rho, MapKind::Mu1, MapKind::Mu2, MapKind::Mu3].into_iter().all(|k| {
                let img = VertexMap::new(k, n).apply(v);
                alpha[q.index_of(v)] == alpha[q.index_of(img)]
            })
        })
    };
    let monomial_invariant = |alpha: &[i64]| -> bool {
        let deg: i64 = alpha.iter().sum();
        let m = monomial_poly(&alg, alpha, (deg + 1) as u32);
        let rho_ok = m.apply_hom(&VertexMap::new(MapKind::Rho, n), false, &alg) == m;
        let mu_ok = [MapKind::Mu1, MapKind::Mu2, MapKind::Mu3]
            .into_iter()
            .all(|k| m.apply_hom(&VertexMap::new(k, n), true, &alg) == m);
        rho_ok && mu_ok
    };

    for (k, alpha) in cb.basis.iter().enumerate() {
        checks.push(Check::new(
            format!("basis[{k}] weight symmetries"),
            weight_symmetries(alpha),
            format!("alpha = {alpha:?}"),
        ));
        checks.push(Check::new(
            format!("basis[{k}] monomial fixed by rho and mu (q-power 1)"),
            monomial_invariant(alpha),
            String::new(),
        ));
        checks.push(Check::new(
            format!("basis[{k}] commutes with all generators"),
            commutes_with_all_generators(&alg, alpha),
            String::new(),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..3 {
        let mut alpha = vec![0i64; q.vertex_count()];
        for v in &cb.basis {
            let c = rng.gen_range(0..3i64);
            for (a, &x) in alpha.iter_mut().zip(v) {
                *a += c * x;
            }
        }
        let central = is_central(&alg, &alpha)?;
        let agrees = central == commutes_with_all_generators(&alg, &alpha);
        checks.push(Check::new(
            format!("random combination {t} central and oracle-consistent"),
            central && agrees && weight_symmetries(&alpha) && monomial_invariant(&alpha),
            format!("alpha = {alpha:?}"),
        ));
    }

    let ones = vec![1i64; q.vertex_count()];
    checks.push(Check::new(
        "all-ones vector fixed by every map",
        weight_symmetries(&ones) && monomial_invariant(&ones) && is_central(&alg, &ones)?,
        String::new(),
    ));
    Ok(checks)
}
