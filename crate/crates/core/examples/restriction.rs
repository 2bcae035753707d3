//! Substates on orbital subsets: the 1-pdm compresses and nonfreeness can
//! only drop.

use fermifree::sample::{random_parity_pure_state, random_subset};
use fermifree::{nonfreeness, one_pdm, paired_state, restrict, OrbitalSpace};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> fermifree::Result<()> {
    let pair = paired_state();
    for keep in [vec![1, 2], vec![1, 3], vec![2, 3, 4], vec![1, 2, 3, 4]] {
        let sub = restrict(&pair, &keep)?;
        println!(
            "paired state on {keep:?}: nonfreeness {:.6}",
            nonfreeness(&sub)?.nonfreeness.value()
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let space = OrbitalSpace::new(5)?;
    for _ in 0..5 {
        let rho = random_parity_pure_state(&space, &mut rng);
        let keep = random_subset(5, &mut rng);
        let sub = restrict(&rho, &keep)?;
        let gap = (one_pdm(&sub).matrix() - one_pdm(&rho).compress(&keep)).norm();
        println!(
            "keep {keep:?}: {:.6} <= {:.6}, 1-pdm compression error {gap:.1e}",
            nonfreeness(&sub)?.nonfreeness.value(),
            nonfreeness(&rho)?.nonfreeness.value()
        );
    }
    Ok(())
}
