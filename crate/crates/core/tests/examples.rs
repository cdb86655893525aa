#[allow(dead_code)]
mod matchings {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/matchings.rs"));
}

#[allow(dead_code)]
mod multiplicities {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/multiplicities.rs"));
}

#[allow(dead_code)]
mod fpl_census {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/fpl_census.rs"));
}

#[allow(dead_code)]
mod groundstate {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/groundstate.rs"));
}

#[allow(dead_code)]
mod polynomials {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/polynomials.rs"));
}

#[allow(dead_code)]
mod tableaux {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/tableaux.rs"));
}

#[allow(dead_code)]
mod qkz_psi {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/qkz_psi.rs"));
}

#[allow(dead_code)]
mod verify {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/verify.rs"));
}

#[test]
fn matchings_runs() {
    assert!(!matchings::run_example().expect("matchings").is_empty());
}

#[test]
fn multiplicities_runs() {
    assert!(!multiplicities::run_example().expect("multiplicities").is_empty());
}

#[test]
fn fpl_census_runs() {
    assert!(!fpl_census::run_example().expect("fpl_census").is_empty());
}

#[test]
fn groundstate_runs() {
    assert!(!groundstate::run_example().expect("groundstate").is_empty());
}

#[test]
fn polynomials_runs() {
    assert!(!polynomials::run_example().expect("polynomials").is_empty());
}

#[test]
fn tableaux_runs() {
    assert!(!tableaux::run_example().expect("tableaux").is_empty());
}

#[test]
fn qkz_psi_runs() {
    assert!(!qkz_psi::run_example().expect("qkz_psi").is_empty());
}

#[test]
fn verify_runs() {
    assert!(!verify::run_example().expect("verify").is_empty());
}
