//! Free states satisfy the gauge-invariant Wick relations; paired and
//! parity-coherent states do not.

use fermifree::linalg::{c, CVector};
use fermifree::sample::random_free_state;
use fermifree::{paired_state, pure_density, wick_check, OrbitalSpace, PureState};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> fermifree::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let free = random_free_state(&OrbitalSpace::new(4)?, &mut rng);
    let coherent = pure_density(&PureState::new(
        OrbitalSpace::new(1)?,
        CVector::from_vec(vec![c(0.6, 0.0), c(0.0, 0.8)]),
    )?);

    for (name, rho) in [
        ("random free", free.density),
        ("paired", paired_state()),
        ("|0> + |1>", coherent),
    ] {
        let w = wick_check(&rho, 2, 1e-10);
        println!(
            "{name:<12} passed {:<5} worst violation {:.3e} at {}",
            w.passed, w.worst_violation, w.worst_term
        );
    }
    Ok(())
}
