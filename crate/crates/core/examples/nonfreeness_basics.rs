//! Nonfreeness of a few hand-built states, in nats and bits.

use fermifree::linalg::real;
use fermifree::{
    mixture, nonfreeness, one_particle_mixture, paired_state, pure_density, slater_density,
    OrbitalSpace, PureState,
};

fn main() -> fermifree::Result<()> {
    let space = OrbitalSpace::new(3)?;

    // one particle in (h1 + h3) / sqrt 2
    let s = 0.5f64.sqrt();
    let rows = fermifree::linalg::CMatrix::from_row_slice(1, 3, &[real(s), real(0.0), real(s)]);
    let slater = slater_density(&rows, &space)?;

    let vacuum = pure_density(&PureState::basis(space.clone(), 0)?);
    let full = pure_density(&PureState::basis(space.clone(), 0b111)?);
    let cat = mixture(&[(0.5, vacuum), (0.5, full)])?;

    let states = [
        ("slater", slater),
        ("vacuum/full mixture", cat),
        ("one particle, 2/3 : 1/3", one_particle_mixture(2.0 / 3.0)?),
        ("paired state", paired_state()),
    ];
    println!("{:<26} {:>10} {:>10}  occupations", "state", "nats", "bits");
    for (name, rho) in &states {
        let r = nonfreeness(rho)?;
        let occ: Vec<String> = r.occupations.iter().map(|p| format!("{p:.4}")).collect();
        println!(
            "{name:<26} {:>10.6} {:>10.6}  [{}]",
            r.nonfreeness.value(),
            r.in_bits().nonfreeness.value(),
            occ.join(", ")
        );
    }
    Ok(())
}
