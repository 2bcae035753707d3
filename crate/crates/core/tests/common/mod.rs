//! Independent reference implementations used as test oracles. Nothing
//! here calls into the library's Fock-space or entropy code.
#![allow(dead_code)]

use nalgebra::Complex;
use nalgebra::{DMatrix, SymmetricEigen};

pub type C = Complex<f64>;

pub type M = DMatrix<C>;

pub fn creator(i: usize, d: usize) -> M {
    let dim = 1usize << d;
    let mut m = M::zeros(dim, dim);
    for b in 0..dim {
        if b >> (i - 1) & 1 == 1 {
            continue;
        }
        let below = (b & ((1 << (i - 1)) - 1)).count_ones();
        let sign = if below.is_multiple_of(2) { 1.0 } else { -1.0 };
        m[(b | 1 << (i - 1), b)] = C::new(sign, 0.0);
    }
    m
}

pub fn annihilator(i: usize, d: usize) -> M {
    creator(i, d).adjoint()
}

pub fn trace(m: &M) -> C {
    (0..m.nrows()).map(|k| m[(k, k)]).sum()
}

/// `gamma_ij = Tr(rho a*_j a_i)` by dense operator products.
pub fn one_pdm(rho: &M, d: usize) -> M {
    M::from_fn(d, d, |i, j| {
        trace(&(rho * creator(j + 1, d) * annihilator(i + 1, d)))
    })
}

pub fn eigenvalues(m: &M) -> Vec<f64> {
    let h = (m + m.adjoint()) * C::new(0.5, 0.0);
    let mut v: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| a.total_cmp(b));
    v
}

pub fn h(p: f64) -> f64 {
    let t = |x: f64| if x <= 0.0 { 0.0 } else { -x * x.ln() };
    t(p) + t(1.0 - p)
}

pub fn entropy(rho: &M) -> f64 {
    eigenvalues(rho)
        .into_iter()
        .map(|x| if x > 1e-14 { -x * x.ln() } else { 0.0 })
        .sum()
}

/// Nonfreeness as `sum h(natural occupations) - S(rho)`, all in test code.
pub fn nonfreeness(rho: &M, d: usize) -> f64 {
    let occ: f64 = eigenvalues(&one_pdm(rho, d))
        .into_iter()
        .map(|p| h(p.clamp(0.0, 1.0)))
        .sum();
    occ - entropy(rho)
}

/// `prod_k (sum_j rows[k][j] a*_j) |vacuum>` as a density matrix.
pub fn slater(rows: &M, d: usize) -> M {
    let dim = 1usize << d;
    let mut psi = DMatrix::<C>::zeros(dim, 1);
    psi[(0, 0)] = C::new(1.0, 0.0);
    for k in (0..rows.nrows()).rev() {
        let mut op = M::zeros(dim, dim);
        for j in 0..d {
            op += creator(j + 1, d) * rows[(k, j)];
        }
        psi = op * psi;
    }
    &psi * psi.adjoint()
}

pub fn trace_norm(m: &M) -> f64 {
    eigenvalues(m).into_iter().map(f64::abs).sum()
}

pub fn max_abs(m: &M) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
