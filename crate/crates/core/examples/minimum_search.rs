//! Random search over free states never beats the free state with the same
//! 1-pdm, and the best candidates converge to it.

use fermifree::sample::random_parity_even_state;
use fermifree::verify::{min_relent_search, SearchConfig};
use fermifree::{gamma_of, nonfreeness, OrbitalSpace};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> fermifree::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cfg = SearchConfig::default();
    for d in [1, 2, 3] {
        let rho = random_parity_even_state(&OrbitalSpace::new(d)?, &mut rng);
        let exact = nonfreeness(&rho)?.nonfreeness.value();
        let out = min_relent_search(&rho, &cfg);
        let dist = out.best.density().trace_distance(&gamma_of(&rho));
        println!(
            "d = {d}: nonfreeness {exact:.8}, search {:.8} after {} evaluations, distance {dist:.1e}",
            out.value, out.evaluations
        );
    }
    Ok(())
}
