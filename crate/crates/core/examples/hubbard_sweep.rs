//! Nonfreeness of open Hubbard chain ground states as the interaction grows.

use fermifree::{hubbard_ground_state, nonfreeness, HubbardParams};

fn main() -> fermifree::Result<()> {
    let grid = [0.0, 1.0, 2.0, 4.0, 8.0, 16.0];
    print!("{:>6}", "U");
    for sites in 2..=4 {
        print!("{:>12}", format!("L = {sites}"));
    }
    println!();
    for u in grid {
        print!("{u:>6}");
        for sites in 2..=4 {
            let rho = hubbard_ground_state(&HubbardParams::half_filled(sites, 1.0, u))?;
            print!("{:>12.6}", nonfreeness(&rho)?.nonfreeness.value());
        }
        println!();
    }
    Ok(())
}
