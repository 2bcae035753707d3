//! Ladder operators in the occupation basis and the Fock representation of
//! a one-particle basis change.

use fermifree::fock::{annihilator, creator, enumerate_basis, SparseLadder};
use fermifree::linalg::max_abs_diff;
use fermifree::sample::haar_unitary;
use fermifree::{basis_change_unitary, OrbitalSpace};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> fermifree::Result<()> {
    let space = OrbitalSpace::new(2)?;
    let labels: Vec<String> = enumerate_basis(&space)
        .iter()
        .map(|n| {
            (1..=2)
                .map(|i| if n.is_occupied(i) { '1' } else { '0' })
                .collect()
        })
        .collect();
    println!("basis {labels:?}");
    let a2 = creator(2, &space)?;
    for (col, label) in labels.iter().enumerate() {
        for (row, out) in labels.iter().enumerate() {
            let z = a2[(row, col)];
            if z.norm() > 0.0 {
                println!("a*_2 |{label}> = {:+} |{out}>", z.re);
            }
        }
    }

    let space = OrbitalSpace::new(4)?;
    let dim = space.dim();
    let mut worst = 0.0f64;
    for i in 1..=4 {
        for j in 1..=4 {
            let ai = annihilator(i, &space)?;
            let cj = creator(j, &space)?;
            let anti = &ai * &cj + &cj * &ai;
            let expect = if i == j {
                fermifree::linalg::CMatrix::identity(dim, dim)
            } else {
                fermifree::linalg::CMatrix::zeros(dim, dim)
            };
            worst = worst.max(max_abs_diff(&anti, &expect));
        }
    }
    println!("largest CAR deviation on 4 orbitals {worst:.1e}");
    println!(
        "sparse creator nonzeros {}",
        SparseLadder::creator(1, &space)?.nnz()
    );

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let u = haar_unitary(4, &mut rng);
    let v = haar_unitary(4, &mut rng);
    let lhs = basis_change_unitary(&(&u * &v), &space)?.to_dense();
    let rhs =
        basis_change_unitary(&u, &space)?.to_dense() * basis_change_unitary(&v, &space)?.to_dense();
    println!(
        "Fock representation is multiplicative to {:.1e}",
        max_abs_diff(&lhs, &rhs)
    );
    Ok(())
}
