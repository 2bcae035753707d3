//! For alpha != 1 the closest free state in Rényi divergence need not be
//! the one sharing the 1-pdm. A grid over diagonal free states shows it.

use fermifree::entropy::sandwiched_renyi;
use fermifree::verify::{diagonal_grid_search, renyi_min_search, DivergenceFamily, SearchConfig};
use fermifree::{gamma_of, one_particle_mixture};

fn main() -> fermifree::Result<()> {
    let rho = one_particle_mixture(2.0 / 3.0)?;
    let own = gamma_of(&rho);
    for alpha in [0.5, 0.75, 1.0, 2.0] {
        let at_own = sandwiched_renyi(alpha, &rho, &own)?.value();
        let grid = diagonal_grid_search(&rho, DivergenceFamily::Sandwiched, alpha)?;
        println!(
            "alpha {alpha:<5} at own free state {at_own:.6}  grid minimum {:.6} at p = ({:.3}, {:.3})",
            grid.value, grid.occupations[0], grid.occupations[1]
        );
    }

    let cfg = SearchConfig {
        samples: 200,
        ..SearchConfig::default()
    };
    let out = renyi_min_search(&rho, 0.5, DivergenceFamily::Sandwiched, &cfg)?;
    println!(
        "search at alpha 1/2: best {:.6} vs {:.6}, improved = {}",
        out.value,
        out.at_own_free.value(),
        out.improved
    );
    Ok(())
}
