//! Long reproductions, excluded from the default run:
//! `cargo test --release --test extended -- --ignored`.

use weno_maim::problems::{ProblemId, ProblemSpec};
use weno_maim::runner::solve;
use weno_maim::MappingKind;

fn l1_within(id: ProblemId, n: usize, t_final: f64, scheme: MappingKind, published: f64) {
    let mut spec = ProblemSpec::new(id).with_grid(n, 1);
    spec.t_final = t_final;
    let r = solve(&spec, &scheme).unwrap().report;
    let l1 = r.norms.expect("periodic problem").l1;
    let rel = (l1 - published).abs() / published;
    assert!(
        rel < 0.03,
        "{} {scheme} N={n} t={t_final}: L1 {l1:.6e} vs {published:.6e} ({:.1}%)",
        id.name(),
        100.0 * rel
    );
}

#[test]
#[ignore]
fn slp_t2000_js() {
    l1_within(ProblemId::Slp, 200, 2000.0, MappingKind::Identity, 6.12899e-1);
}

#[test]
#[ignore]
fn slp_t2000_maim3() {
    l1_within(ProblemId::Slp, 200, 2000.0, MappingKind::maim3_default(), 2.17339e-1);
}

#[test]
#[ignore]
fn bicwp_t2000_js() {
    l1_within(ProblemId::Bicwp, 200, 2000.0, MappingKind::Identity, 5.89672e-1);
}

#[test]
#[ignore]
fn bicwp_t2000_maim3() {
    l1_within(ProblemId::Bicwp, 200, 2000.0, MappingKind::maim3_default(), 1.78226e-1);
}

#[test]
#[ignore]
fn slp_n1600_t200() {
    for (scheme, l1) in [
        (MappingKind::Identity, 1.26804e-1),
        (MappingKind::Henrick, 4.21095e-2),
        (MappingKind::improved_default(), 1.26519e-2),
        (MappingKind::maim3_default(), 1.23903e-2),
    ] {
        l1_within(ProblemId::Slp, 1600, 200.0, scheme, l1);
    }
}

#[test]
#[ignore]
fn bicwp_n1600_t200() {
    for (scheme, l1) in [
        (MappingKind::Identity, 1.47671e-1),
        (MappingKind::maim3_default(), 2.39789e-2),
    ] {
        l1_within(ProblemId::Bicwp, 1600, 200.0, scheme, l1);
    }
}

#[test]
#[ignore]
fn slp_n6400_t200_maim3() {
    l1_within(ProblemId::Slp, 6400, 200.0, MappingKind::maim3_default(), 3.49736e-3);
}

fn smoke_2d(id: ProblemId, nx: usize, ny: usize) {
    let spec = ProblemSpec::new(id).with_grid(nx, ny);
    let out = solve(&spec, &MappingKind::maim3_default()).unwrap();
    assert!(out.report.blow_up.is_none(), "{:?}", out.report.blow_up);
    let rho = out.field.unwrap().interior_component(0);
    assert!(rho.iter().all(|&r| r.is_finite() && (0.1..=25.0).contains(&r)));
}

#[test]
#[ignore]
fn riemann2d_maim3() {
    smoke_2d(ProblemId::Riemann2d, 200, 200);
}

#[test]
#[ignore]
fn dmr_maim3() {
    smoke_2d(ProblemId::Dmr, 400, 100);
}

#[test]
#[ignore]
fn ffs_maim3() {
    smoke_2d(ProblemId::Ffs, 180, 60);
}
