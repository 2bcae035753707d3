//! Free states from 1-pdms and energies, their entropy, and the Slater
//! purification on a doubled orbital space.

use fermifree::linalg::binary_entropy;
use fermifree::sample::haar_unitary;
use fermifree::state::{gibbs_from_energies, occupations_from_energies};
use fermifree::{
    free_from_pdm, natural_spectrum, one_pdm, purify_free, restrict, slater_density, von_neumann,
    FreeStateSpec, OnePdm, OrbitalSpace,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> fermifree::Result<()> {
    let space = OrbitalSpace::new(3)?;
    let energies = [-1.0, 0.2, 1.5];
    let gibbs = gibbs_from_energies(&energies, &space)?;
    println!(
        "occupations from energies {:?}",
        occupations_from_energies(&energies)
    );

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let spec = FreeStateSpec::new(
        space.clone(),
        vec![0.9, 0.4, 0.1],
        haar_unitary(3, &mut rng),
    )?;
    let gamma = OnePdm::new(space.clone(), spec.pdm_matrix())?;
    let free = free_from_pdm(&gamma);
    let ns = natural_spectrum(&one_pdm(&free.density));
    let h: f64 = ns.occupations.iter().map(|&p| binary_entropy(p)).sum();
    println!(
        "natural occupations {:?}, entropy {:.6} = sum of binary entropies {:.6}",
        ns.occupations,
        von_neumann(&free.density),
        h
    );
    println!("gibbs state entropy {:.6}", von_neumann(&gibbs));

    let (doubled, rows) = purify_free(&spec)?;
    let slater = slater_density(&rows, &doubled)?;
    let back = restrict(&slater, &[1, 2, 3])?;
    println!(
        "purification on {} orbitals restricts back with error {:.1e}",
        doubled.d(),
        back.trace_distance(&free.density)
    );
    Ok(())
}
