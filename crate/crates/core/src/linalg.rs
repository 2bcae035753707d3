//! Dense complex linear algebra helpers shared by the Fock-space code.

use nalgebra::{Complex, DMatrix, DVector, SymmetricEigen};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn real(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues in ascending order.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub values: Vec<f64>,
    /// Eigenvectors as columns, in the order of `values`.
    pub vectors: CMatrix,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Rebuilds `sum_k f(lambda_k) |v_k><v_k|`.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.dim();
        let mut scaled = self.vectors.clone();
        for (k, &v) in self.values.iter().enumerate() {
            let w = f(v);
            for i in 0..n {
                scaled[(i, k)] *= w;
            }
        }
        &scaled * self.vectors.adjoint()
    }
}

/// `(m + m^dagger) / 2`.
pub fn hermitize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Largest entrywise deviation `|m_ij - conj(m_ji)|`.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Hermitian eigensolve after hermitization; eigenpairs sorted ascending,
/// ties kept in solver order. The matrix is split into the connected
/// components of its nonzero pattern and each block is solved separately.
pub fn eigh(m: &CMatrix) -> Spectrum {
    let n = m.nrows();
    let h = hermitize(m);
    let mut pairs: Vec<(f64, usize, CVector)> = Vec::with_capacity(n);
    for block in components(&h) {
        let k = block.len();
        if k == 1 {
            let mut v = CVector::zeros(n);
            v[block[0]] = ONE;
            pairs.push((h[(block[0], block[0])].re, pairs.len(), v));
            continue;
        }
        let sub = CMatrix::from_fn(k, k, |r, c| h[(block[r], block[c])]);
        let (values, vectors) = block_eigh(sub);
        for j in 0..k {
            let mut v = CVector::zeros(n);
            for (r, &i) in block.iter().enumerate() {
                v[i] = vectors[(r, j)];
            }
            pairs.push((values[j], pairs.len(), v));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let values = pairs.iter().map(|p| p.0).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (k, p) in pairs.iter().enumerate() {
        vectors.set_column(k, &p.2);
    }
    Spectrum { values, vectors }
}

/// Index sets of the connected components of the graph `i ~ j` iff
/// `m_ij != 0`, each sorted, ordered by smallest index.
fn components(m: &CMatrix) -> Vec<Vec<usize>> {
    let n = m.nrows();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if m[(i, j)] != ZERO {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = root(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

fn block_eigh(h: CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = SymmetricEigen::new(h.clone());
    let finite = eig.eigenvalues.iter().all(|v| v.is_finite())
        && eig
            .eigenvectors
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite());
    if finite {
        (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
    } else {
        jacobi_eigh(h)
    }
}

/// Cyclic complex Jacobi; slow but unconditionally convergent.
pub(crate) fn jacobi_eigh(mut a: CMatrix) -> (Vec<f64>, CMatrix) {
    let n = a.nrows();
    let mut v = CMatrix::identity(n, n);
    let scale = a.norm().max(f64::MIN_POSITIVE);
    for _ in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += a[(i, j)].norm_sqr();
            }
        }
        if off.sqrt() <= 1e-16 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let g = a[(p, q)];
                let mag = g.norm();
                if mag == 0.0 {
                    continue;
                }
                let phase = g / mag;
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
                let t =
                    if tau >= 0.0 { 1.0 } else { -1.0 } / (tau.abs() + (1.0 + tau * tau).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * cs;
                // J = diag(1, conj(phase)) [[c, s], [-s, c]]
                let j = [
                    [real(cs), real(sn)],
                    [-phase.conj() * sn, phase.conj() * cs],
                ];
                for r in 0..n {
                    let (x, y) = (a[(r, p)], a[(r, q)]);
                    a[(r, p)] = x * j[0][0] + y * j[1][0];
                    a[(r, q)] = x * j[0][1] + y * j[1][1];
                    let (x, y) = (v[(r, p)], v[(r, q)]);
                    v[(r, p)] = x * j[0][0] + y * j[1][0];
                    v[(r, q)] = x * j[0][1] + y * j[1][1];
                }
                for cidx in 0..n {
                    let (x, y) = (a[(p, cidx)], a[(q, cidx)]);
                    a[(p, cidx)] = j[0][0].conj() * x + j[1][0].conj() * y;
                    a[(q, cidx)] = j[0][1].conj() * x + j[1][1].conj() * y;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
            }
        }
    }
    ((0..n).map(|k| a[(k, k)].re).collect(), v)
}

/// `max |(U^dagger U - I)_ij|`.
pub fn unitarity_deviation(u: &CMatrix) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    let g = u.adjoint() * u;
    max_abs_deviation_from_identity(&g)
}

/// `max |(R R^dagger - I)_ij|` for a row matrix.
pub fn row_orthonormality_deviation(rows: &CMatrix) -> f64 {
    let g = rows * rows.adjoint();
    max_abs_deviation_from_identity(&g)
}

fn max_abs_deviation_from_identity(g: &CMatrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..g.nrows() {
        for j in 0..g.ncols() {
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((g[(i, j)] - target).norm());
        }
    }
    worst
}

/// Determinant by partial-pivot LU; the empty matrix has determinant 1.
pub fn det(m: &CMatrix) -> C64 {
    let n = m.nrows();
    match n {
        0 => ONE,
        1 => m[(0, 0)],
        2 => m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)],
        _ => {
            let mut a = m.clone();
            let mut acc = ONE;
            for col in 0..n {
                let mut piv = col;
                let mut best = a[(col, col)].norm();
                for r in col + 1..n {
                    let v = a[(r, col)].norm();
                    if v > best {
                        best = v;
                        piv = r;
                    }
                }
                if best == 0.0 {
                    return ZERO;
                }
                if piv != col {
                    a.swap_rows(piv, col);
                    acc = -acc;
                }
                let p = a[(col, col)];
                acc *= p;
                for r in col + 1..n {
                    let factor = a[(r, col)] / p;
                    if factor == ZERO {
                        continue;
                    }
                    for k in col + 1..n {
                        let sub = factor * a[(col, k)];
                        a[(r, k)] -= sub;
                    }
                }
            }
            acc
        }
    }
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm(m: &CMatrix) -> f64 {
    eigh(m).values.iter().map(|v| v.abs()).sum()
}

/// `max_ij |a_ij - b_ij|`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn trace(m: &CMatrix) -> C64 {
    (0..m.nrows()).map(|i| m[(i, i)]).sum()
}

/// Extends orthonormal rows (`n x d`) to a `d x d` unitary whose first `n`
/// columns are the rows, transposed (not conjugated).
pub fn complete_to_unitary(rows: &CMatrix) -> CMatrix {
    let n = rows.nrows();
    let d = rows.ncols();
    let mut cols: Vec<CVector> = (0..n).map(|k| rows.row(k).transpose()).collect();
    for e in 0..d {
        if cols.len() == d {
            break;
        }
        let mut v = CVector::zeros(d);
        v[e] = ONE;
        for _ in 0..2 {
            for u in &cols {
                let proj = u.dotc(&v);
                v -= u * proj;
            }
        }
        let norm = v.norm();
        if norm > 1e-6 {
            cols.push(v / real(norm));
        }
    }
    CMatrix::from_columns(&cols)
}

/// Fixes the global phase of a vector so that its first component with
/// modulus above `tol` is real and positive.
pub fn fix_phase(v: &mut CVector, tol: f64) {
    if let Some(first) = v.iter().find(|z| z.norm() > tol).copied() {
        let phase = first.conj() / real(first.norm());
        for z in v.iter_mut() {
            *z *= phase;
        }
    }
}

/// Binary entropy `-p ln p - (1-p) ln(1-p)` in nats, with `0 ln 0 = 0`.
pub fn binary_entropy(p: f64) -> f64 {
    xlogx_neg(p) + xlogx_neg(1.0 - p)
}

/// `-x ln x`, zero for `x <= 0`.
#[inline]
pub fn xlogx_neg(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_matches_closed_form_3x3() {
        let m = CMatrix::from_row_slice(
            3,
            3,
            &[
                c(1.0, 1.0),
                c(2.0, 0.0),
                c(0.0, -1.0),
                c(0.5, 0.0),
                c(-1.0, 2.0),
                c(3.0, 0.0),
                c(0.0, 0.0),
                c(1.0, 1.0),
                c(2.0, -2.0),
            ],
        );
        let expect = m[(0, 0)] * (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)])
            - m[(0, 1)] * (m[(1, 0)] * m[(2, 2)] - m[(1, 2)] * m[(2, 0)])
            + m[(0, 2)] * (m[(1, 0)] * m[(2, 1)] - m[(1, 1)] * m[(2, 0)]);
        assert!((det(&m) - expect).norm() < 1e-12);
    }

    fn random_hermitian(n: usize, seed: u64) -> CMatrix {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = CMatrix::from_fn(n, n, |_, _| {
            c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        hermitize(&g)
    }

    #[test]
    fn jacobi_matches_reconstruction() {
        for (n, seed) in [(1, 1), (2, 2), (5, 3), (9, 4)] {
            let h = random_hermitian(n, seed);
            let (vals, vecs) = jacobi_eigh(h.clone());
            let d =
                CMatrix::from_diagonal(&CVector::from_iterator(n, vals.iter().map(|&x| real(x))));
            assert!(max_abs_diff(&(&vecs * d * vecs.adjoint()), &h) < 1e-12);
            assert!(unitarity_deviation(&vecs) < 1e-12);
        }
    }

    #[test]
    fn eigh_survives_zero_rows() {
        // rank one with most rows zero, which trips the dense QR solver
        let mut v = CVector::zeros(40);
        for (k, i) in [3usize, 7, 11, 20, 33].iter().enumerate() {
            v[*i] = c(0.1 * (k + 1) as f64, -0.05 * k as f64);
        }
        let v = &v / real(v.norm());
        let m = &v * v.adjoint();
        let s = eigh(&m);
        assert!(s.values.iter().all(|x| x.is_finite()));
        assert!((s.values[39] - 1.0).abs() < 1e-14);
        assert!(s.values[..39].iter().all(|x| x.abs() < 1e-14));
        assert!(max_abs_diff(&s.apply(|x| x), &m) < 1e-14);
    }

    #[test]
    fn eigh_sorted_and_reconstructs() {
        let m = CMatrix::from_row_slice(2, 2, &[real(2.0), c(0.0, 1.0), c(0.0, -1.0), real(2.0)]);
        let s = eigh(&m);
        assert!((s.values[0] - 1.0).abs() < 1e-12);
        assert!((s.values[1] - 3.0).abs() < 1e-12);
        assert!(max_abs_diff(&s.apply(|x| x), &m) < 1e-12);
    }

    #[test]
    fn completion_is_unitary() {
        let s = 0.5f64.sqrt();
        let rows = CMatrix::from_row_slice(1, 3, &[real(s), c(0.0, s), ZERO]);
        let u = complete_to_unitary(&rows);
        assert!(unitarity_deviation(&u) < 1e-12);
        assert_eq!(u[(1, 0)], c(0.0, s));
    }

    #[test]
    fn binary_entropy_endpoints() {
        assert_eq!(binary_entropy(0.0), 0.0);
        assert_eq!(binary_entropy(1.0), 0.0);
        assert!((binary_entropy(0.5) - std::f64::consts::LN_2).abs() < 1e-15);
    }
}
