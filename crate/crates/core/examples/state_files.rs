//! Writes state, 1-pdm and free-spec documents and reads them back.

use fermifree::io::{
    load_free_spec, load_pdm, load_state, save, FreeSpecDocument, PdmDocument, StateDocument,
    StatePayload,
};
use fermifree::{free_from_pdm, one_pdm, paired_state};

fn main() -> fermifree::Result<()> {
    let dir = std::env::temp_dir().join(format!("fermifree-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| fermifree::Error::Io(e.to_string()))?;

    let gibbs = StateDocument::new(
        2,
        StatePayload::Gibbs {
            occupations: vec![0.25, 0.5],
        },
    );
    let path = dir.join("gibbs.json");
    save(&path, &gibbs)?;
    let rho = load_state(path.to_str().unwrap(), 12)?;
    println!("gibbs document -> {}x{} density", rho.dim(), rho.dim());

    let pair = paired_state();
    let path = dir.join("pair.json");
    save(&path, &StateDocument::from_density(&pair))?;
    let back = load_state(path.to_str().unwrap(), 12)?;
    println!(
        "paired state round trip exact: {}",
        back.matrix() == pair.matrix()
    );

    let gamma = one_pdm(&pair);
    let path = dir.join("pdm.json");
    save(&path, &PdmDocument::from_pdm(&gamma))?;
    let free = free_from_pdm(&load_pdm(path.to_str().unwrap(), 12)?);
    let path = dir.join("free.json");
    save(&path, &FreeSpecDocument::from_spec(&free.spec))?;
    let spec = load_free_spec(path.to_str().unwrap(), 12)?;
    println!("free spec occupations {:?}", spec.occupations());

    println!(
        "{}",
        std::fs::read_to_string(dir.join("gibbs.json")).unwrap()
    );
    let _ = std::fs::remove_dir_all(&dir);
    Ok(())
}
