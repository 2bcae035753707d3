use fermifree::fock::DEFAULT_D_MAX;
use fermifree::io::{
    load_free_spec, load_pdm, load_state, parse, save, to_json, FreeSpecDocument, PdmDocument,
    StateDocument,
};
use fermifree::sample::{random_free_state, random_parity_even_state, random_parity_pure_state};
use fermifree::{one_pdm, OrbitalSpace, PureState};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

fn space(d: usize) -> OrbitalSpace {
    OrbitalSpace::new(d).unwrap()
}

#[test]
fn density_documents_are_bit_exact() {
    let mut r = ChaCha8Rng::seed_from_u64(11);
    let dir = TempDir::new().unwrap();
    for d in 1..=4 {
        let rho = random_parity_even_state(&space(d), &mut r);
        let path = dir.path().join(format!("rho{d}.json"));
        save(&path, &StateDocument::from_density(&rho)).unwrap();
        let back = load_state(path.to_str().unwrap(), DEFAULT_D_MAX).unwrap();
        assert_eq!(back.matrix(), rho.matrix());
    }
}

#[test]
fn pure_documents_are_bit_exact() {
    let mut r = ChaCha8Rng::seed_from_u64(12);
    for d in 1..=4 {
        let rho = random_parity_pure_state(&space(d), &mut r);
        let spec = rho.spectrum();
        let psi =
            PureState::new(space(d), spec.vectors.column(spec.dim() - 1).into_owned()).unwrap();
        let doc = StateDocument::from_pure(&psi);
        let again: StateDocument = parse(&to_json(&doc)).unwrap();
        assert_eq!(to_json(&again), to_json(&doc));
        assert_eq!(
            again.to_density(DEFAULT_D_MAX).unwrap().matrix(),
            doc.to_density(DEFAULT_D_MAX).unwrap().matrix()
        );
    }
}

#[test]
fn pdm_documents_are_bit_exact() {
    let mut r = ChaCha8Rng::seed_from_u64(13);
    let dir = TempDir::new().unwrap();
    for d in 1..=4 {
        let g = one_pdm(&random_parity_even_state(&space(d), &mut r));
        let path = dir.path().join("g.json");
        save(&path, &PdmDocument::from_pdm(&g)).unwrap();
        let back = load_pdm(path.to_str().unwrap(), DEFAULT_D_MAX).unwrap();
        assert_eq!(back.matrix(), g.matrix());
    }
}

#[test]
fn free_spec_documents_are_bit_exact() {
    let mut r = ChaCha8Rng::seed_from_u64(14);
    let dir = TempDir::new().unwrap();
    for d in 1..=4 {
        let f = random_free_state(&space(d), &mut r);
        let path = dir.path().join("spec.json");
        save(&path, &FreeSpecDocument::from_spec(&f.spec)).unwrap();
        let back = load_free_spec(path.to_str().unwrap(), DEFAULT_D_MAX).unwrap();
        assert_eq!(back.occupations(), f.spec.occupations());
        assert_eq!(back.orbitals(), f.spec.orbitals());
    }
}

#[test]
fn labels_survive_a_round_trip() {
    let text =
        r#"{"version":1,"d":2,"labels":["up","down"],"kind":"gibbs","occupations":[0.25,0.75]}"#;
    let rho = parse::<StateDocument>(text)
        .unwrap()
        .to_density(DEFAULT_D_MAX)
        .unwrap();
    let again: StateDocument = parse(&to_json(&StateDocument::from_density(&rho))).unwrap();
    assert_eq!(
        again.labels.as_deref(),
        Some(&["up".to_string(), "down".to_string()][..])
    );
    let g: PdmDocument = parse(&to_json(&PdmDocument::from_pdm(&one_pdm(&rho)))).unwrap();
    assert_eq!(
        g.to_pdm(DEFAULT_D_MAX).unwrap().space().labels().unwrap()[1],
        "down"
    );
}
