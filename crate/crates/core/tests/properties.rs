mod common;

use fermifree::correlation::{correlation_renyi, correlation_sandwiched, nonfreeness_with};
use fermifree::entropy::{cross_entropy, DivergenceValue};
use fermifree::fock::{annihilator, creator};
use fermifree::linalg::{real, CMatrix};
use fermifree::sample::{
    haar_unitary, random_free_state, random_occupations, random_parity_even_state,
    random_parity_pure_state, random_subset,
};
use fermifree::{
    basis_change_unitary, free_from_pdm, gamma_of, mixture, one_pdm, relative_entropy,
    renyi_divergence, restrict, sandwiched_renyi, tensor_product, von_neumann, DensityOperator,
    FreeStateSpec, OnePdm, OrbitalSpace,
};
use nalgebra::SymmetricEigen;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn space(d: usize) -> OrbitalSpace {
    OrbitalSpace::new(d).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn diff(a: &CMatrix, b: &CMatrix) -> f64 {
    common::max_abs(&(a - b))
}

fn val(v: DivergenceValue) -> f64 {
    v.finite().expect("finite divergence")
}

fn rotate(rho: &DensityOperator, u: &CMatrix) -> DensityOperator {
    let uh = basis_change_unitary(u, rho.space()).unwrap();
    DensityOperator::new(rho.space().clone(), uh.conjugate(rho.matrix())).unwrap()
}

fn nf(rho: &DensityOperator) -> f64 {
    nonfreeness_with(rho, false).unwrap().nonfreeness.value()
}

fn functionals(rho: &DensityOperator) -> [f64; 5] {
    [
        nf(rho),
        val(correlation_renyi(rho, 0.5).unwrap()),
        val(correlation_renyi(rho, 2.0).unwrap()),
        val(correlation_sandwiched(rho, 0.5).unwrap()),
        val(correlation_sandwiched(rho, 2.0).unwrap()),
    ]
}

fn hermitian_sqrt(m: &CMatrix) -> CMatrix {
    let e = SymmetricEigen::new(m.clone());
    let w = CMatrix::from_diagonal(&e.eigenvalues.map(|x| real(x.max(0.0).sqrt())));
    &e.eigenvectors * w * e.eigenvectors.adjoint()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn fock_unitary_is_a_representation(seed: u64, d in 1usize..=4) {
        let mut r = rng(seed);
        let sp = space(d);
        let (u1, u2) = (haar_unitary(d, &mut r), haar_unitary(d, &mut r));
        let lhs = basis_change_unitary(&(&u1 * &u2), &sp).unwrap().to_dense();
        let rhs = basis_change_unitary(&u1, &sp).unwrap().to_dense() * basis_change_unitary(&u2, &sp).unwrap().to_dense();
        prop_assert!(diff(&lhs, &rhs) < 1e-10);
    }

    #[test]
    fn fock_unitary_rotates_creators(seed: u64, d in 1usize..=4) {
        let mut r = rng(seed);
        let sp = space(d);
        let u = haar_unitary(d, &mut r);
        let uh = basis_change_unitary(&u, &sp).unwrap();
        for i in 1..=d {
            let lhs = uh.conjugate(&creator(i, &sp).unwrap());
            let mut rhs = CMatrix::zeros(sp.dim(), sp.dim());
            for j in 1..=d {
                rhs += common::creator(j, d) * u[(j - 1, i - 1)];
            }
            prop_assert!(diff(&lhs, &rhs) < 1e-10);
        }
    }

    #[test]
    fn ladder_operators_match_oracle(d in 1usize..=5) {
        let sp = space(d);
        for i in 1..=d {
            prop_assert!(diff(&creator(i, &sp).unwrap(), &common::creator(i, d)) == 0.0);
            prop_assert!(diff(&annihilator(i, &sp).unwrap(), &common::annihilator(i, d)) == 0.0);
        }
    }

    #[test]
    fn pdm_matches_oracle(seed: u64, d in 1usize..=4) {
        let rho = random_parity_even_state(&space(d), &mut rng(seed));
        prop_assert!(diff(one_pdm(&rho).matrix(), &common::one_pdm(rho.matrix(), d)) < 1e-12);
    }

    #[test]
    fn pdm_is_linear(seed: u64, d in 1usize..=4, w in 0.0f64..=1.0) {
        let mut r = rng(seed);
        let a = random_parity_even_state(&space(d), &mut r);
        let b = random_parity_even_state(&space(d), &mut r);
        let mix = mixture(&[(w, a.clone()), (1.0 - w, b.clone())]).unwrap();
        let expected = one_pdm(&a).matrix() * real(w) + one_pdm(&b).matrix() * real(1.0 - w);
        prop_assert!(diff(one_pdm(&mix).matrix(), &expected) < 1e-12);
    }

    #[test]
    fn pdm_compresses_under_restriction(seed: u64, d in 1usize..=5) {
        let mut r = rng(seed);
        let rho = random_parity_pure_state(&space(d), &mut r);
        let keep = random_subset(d, &mut r);
        let sub = restrict(&rho, &keep).unwrap();
        prop_assert!(diff(one_pdm(&sub).matrix(), &one_pdm(&rho).compress(&keep)) < 1e-12);
    }

    #[test]
    fn pdm_is_covariant(seed: u64, d in 1usize..=4) {
        let mut r = rng(seed);
        let rho = random_parity_even_state(&space(d), &mut r);
        let u = haar_unitary(d, &mut r);
        let expected = &u * one_pdm(&rho).matrix() * u.adjoint();
        prop_assert!(diff(one_pdm(&rotate(&rho, &u)).matrix(), &expected) < 1e-10);
    }

    #[test]
    fn free_state_is_determined_by_its_pdm(seed: u64, d in 1usize..=4) {
        let f = random_free_state(&space(d), &mut rng(seed));
        let again = free_from_pdm(&one_pdm(&f.density)).density;
        prop_assert!(f.density.trace_distance(&again) < 1e-9);
        prop_assert!(nf(&f.density) < 1e-9);
    }

    #[test]
    fn free_entropy_is_sum_of_binary_entropies(seed: u64, d in 1usize..=4) {
        let f = random_free_state(&space(d), &mut rng(seed));
        let expected: f64 = f.spec.occupations().iter().map(|&p| common::h(p)).sum();
        prop_assert!((von_neumann(&f.density) - expected).abs() < 1e-10);
        prop_assert!((common::entropy(f.density.matrix()) - expected).abs() < 1e-9);
    }

    #[test]
    fn free_log_is_quadratic(seed: u64, d in 1usize..=4) {
        let mut r = rng(seed);
        let sp = space(d);
        let p = random_occupations(d, 0.05, &mut r);
        let v = haar_unitary(d, &mut r);
        let gamma = FreeStateSpec::new(sp.clone(), p.clone(), v.clone()).unwrap().density();
        let e = SymmetricEigen::new(gamma.matrix().clone());
        let log = &e.eigenvectors * CMatrix::from_diagonal(&e.eigenvalues.map(|x| real(x.ln()))) * e.eigenvectors.adjoint();
        let h = &v * CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(d, p.iter().map(|&x| real((x / (1.0 - x)).ln())))) * v.adjoint();
        let constant: f64 = p.iter().map(|&x| (1.0 - x).ln()).sum();
        let mut quad = CMatrix::identity(sp.dim(), sp.dim()) * real(constant);
        for i in 1..=d {
            for j in 1..=d {
                quad += common::creator(i, d) * common::annihilator(j, d) * h[(i - 1, j - 1)];
            }
        }
        prop_assert!(diff(&log, &quad) < 1e-8);
    }

    #[test]
    fn free_diagonal_occupations_are_independent(seed: u64, d in 1usize..=5) {
        let mut r = rng(seed);
        let p = random_occupations(d, 0.0, &mut r);
        let gamma = FreeStateSpec::diagonal(space(d), p.clone()).unwrap().density();
        let keep = random_subset(d, &mut r);
        let sub = restrict(&gamma, &keep).unwrap();
        let expected = FreeStateSpec::diagonal(space(keep.len()), keep.iter().map(|&k| p[k - 1]).collect()).unwrap().density();
        prop_assert!(sub.trace_distance(&expected) < 1e-12);
    }

    #[test]
    fn functionals_are_additive(seed: u64, d1 in 1usize..=2, d2 in 1usize..=2) {
        let mut r = rng(seed);
        let a = random_parity_even_state(&space(d1), &mut r);
        let b = random_parity_even_state(&space(d2), &mut r);
        let ab = tensor_product(&a, &b).unwrap();
        let (fa, fb, fab) = (functionals(&a), functionals(&b), functionals(&ab));
        for k in 0..5 {
            prop_assert!((fab[k] - fa[k] - fb[k]).abs() < 1e-7, "functional {k}");
        }
    }

    #[test]
    fn functionals_are_monotone(seed: u64, d in 1usize..=4) {
        let mut r = rng(seed);
        let rho = random_parity_even_state(&space(d), &mut r);
        let keep = random_subset(d, &mut r);
        let (full, part) = (functionals(&rho), functionals(&restrict(&rho, &keep).unwrap()));
        for k in 0..5 {
            prop_assert!(part[k] <= full[k] + 1e-7, "functional {k}");
        }
    }

    #[test]
    fn functionals_are_basis_invariant(seed: u64, d in 1usize..=4) {
        let mut r = rng(seed);
        let rho = random_parity_even_state(&space(d), &mut r);
        let u = haar_unitary(d, &mut r);
        let (a, b) = (functionals(&rho), functionals(&rotate(&rho, &u)));
        for k in 0..5 {
            prop_assert!((a[k] - b[k]).abs() < 1e-7, "functional {k}");
        }
    }

    #[test]
    fn nonfreeness_matches_oracle(seed: u64, d in 1usize..=4) {
        let rho = random_parity_even_state(&space(d), &mut rng(seed));
        prop_assert!((nf(&rho) - common::nonfreeness(rho.matrix(), d)).abs() < 1e-8);
    }

    #[test]
    fn divergences_are_unitarily_invariant(seed: u64, d in 1usize..=3, alpha in 0.1f64..=2.0) {
        prop_assume!((alpha - 1.0).abs() > 1e-9);
        let mut r = rng(seed);
        let sp = space(d);
        let a = random_parity_even_state(&sp, &mut r);
        let b = random_parity_even_state(&sp, &mut r);
        let u = haar_unitary(d, &mut r);
        let (ra, rb) = (rotate(&a, &u), rotate(&b, &u));
        prop_assert!((val(relative_entropy(&a, &b).unwrap()) - val(relative_entropy(&ra, &rb).unwrap())).abs() < 1e-8);
        prop_assert!((val(renyi_divergence(alpha, &a, &b).unwrap()) - val(renyi_divergence(alpha, &ra, &rb).unwrap())).abs() < 1e-8);
        if alpha >= 0.5 {
            prop_assert!((val(sandwiched_renyi(alpha, &a, &b).unwrap()) - val(sandwiched_renyi(alpha, &ra, &rb).unwrap())).abs() < 1e-8);
        }
    }

    #[test]
    fn divergences_are_additive(seed: u64, alpha in 0.5f64..=2.0) {
        prop_assume!((alpha - 1.0).abs() > 1e-9);
        let mut r = rng(seed);
        let (s1, s2) = (space(1), space(2));
        let (a1, b1) = (random_parity_even_state(&s1, &mut r), random_parity_even_state(&s1, &mut r));
        let (a2, b2) = (random_parity_even_state(&s2, &mut r), random_parity_even_state(&s2, &mut r));
        let a = tensor_product(&a1, &a2).unwrap();
        let b = tensor_product(&b1, &b2).unwrap();
        let petz = |x: &DensityOperator, y: &DensityOperator| val(renyi_divergence(alpha, x, y).unwrap());
        let sand = |x: &DensityOperator, y: &DensityOperator| val(sandwiched_renyi(alpha, x, y).unwrap());
        let rel = |x: &DensityOperator, y: &DensityOperator| val(relative_entropy(x, y).unwrap());
        prop_assert!((petz(&a, &b) - petz(&a1, &b1) - petz(&a2, &b2)).abs() < 1e-8);
        prop_assert!((sand(&a, &b) - sand(&a1, &b1) - sand(&a2, &b2)).abs() < 1e-8);
        prop_assert!((rel(&a, &b) - rel(&a1, &b1) - rel(&a2, &b2)).abs() < 1e-8);
    }

    #[test]
    fn renyi_tends_to_relative_entropy(seed: u64, d in 1usize..=3) {
        let mut r = rng(seed);
        let a = random_parity_even_state(&space(d), &mut r);
        let b = random_parity_even_state(&space(d), &mut r);
        let rel = val(relative_entropy(&a, &b).unwrap());
        for alpha in [1.0 - 1e-5, 1.0 + 1e-5] {
            prop_assert!((val(renyi_divergence(alpha, &a, &b).unwrap()) - rel).abs() < 1e-3);
            prop_assert!((val(sandwiched_renyi(alpha, &a, &b).unwrap()) - rel).abs() < 1e-3);
        }
    }

    #[test]
    fn petz_is_monotone_in_alpha(seed: u64, d in 1usize..=3, lo in 0.05f64..1.99, step in 0.01f64..1.0) {
        let mut r = rng(seed);
        let a = random_parity_even_state(&space(d), &mut r);
        let b = random_parity_even_state(&space(d), &mut r);
        let hi = (lo + step).min(2.0);
        prop_assume!((lo - 1.0).abs() > 1e-9 && (hi - 1.0).abs() > 1e-9);
        let (x, y) = (val(renyi_divergence(lo, &a, &b).unwrap()), val(renyi_divergence(hi, &a, &b).unwrap()));
        prop_assert!(x <= y + 1e-9);
    }

    #[test]
    fn entropy_bounded_by_cross_entropy(seed: u64, d in 1usize..=4) {
        let mut r = rng(seed);
        let a = random_parity_even_state(&space(d), &mut r);
        let b = random_free_state(&space(d), &mut r).density;
        prop_assert!(von_neumann(&a) <= val(cross_entropy(&a, &b).unwrap()) + 1e-10);
    }

    #[test]
    fn sandwiched_half_is_fidelity(seed: u64, d in 1usize..=3) {
        let mut r = rng(seed);
        let a = random_parity_even_state(&space(d), &mut r);
        let b = random_parity_even_state(&space(d), &mut r);
        let sb = hermitian_sqrt(b.matrix());
        let fidelity: f64 = common::eigenvalues(&(&sb * a.matrix() * &sb)).into_iter().map(|x| x.max(0.0).sqrt()).sum();
        prop_assert!((val(sandwiched_renyi(0.5, &a, &b).unwrap()) + 2.0 * fidelity.ln()).abs() < 1e-8);
    }

    #[test]
    fn pdm_and_free_state_round_trip(seed: u64, d in 1usize..=4) {
        let mut r = rng(seed);
        let u = haar_unitary(d, &mut r);
        let p = random_occupations(d, 0.0, &mut r);
        let g = OnePdm::new(space(d), &u * CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(d, p.iter().map(|&x| real(x)))) * u.adjoint()).unwrap();
        let f = free_from_pdm(&g);
        prop_assert!(diff(one_pdm(&f.density).matrix(), g.matrix()) < 1e-10);
        prop_assert!(gamma_of(&f.density).trace_distance(&f.density) < 1e-9);
    }
}
