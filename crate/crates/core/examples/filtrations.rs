// The built-in filtrations and the laws they are checked against.

use lattice_lab::filtration::Filtration;
use lattice_lab::{Law, Result, DEFAULT_TOL};

pub fn run_example() -> Result<()> {
    let filtrations = [
        ("truncation(6)", Filtration::truncation(6)?),
        ("pairing(3)", Filtration::pairing(3)?),
        ("dyadic(3)", Filtration::dyadic(3)?),
        ("random_nested(8, 4, seed 7)", Filtration::random_nested(8, 4, 7)?),
    ];
    for (name, f) in &filtrations {
        let report = f.validate(true, DEFAULT_TOL);
        println!(
            "{name:<28} dim {:>2}  horizon {}  laws ok: {}  band projections: {}  dense: {}",
            f.space().dim(),
            f.horizon(),
            report.all_passed(),
            f.all_band_projections(DEFAULT_TOL),
            f.is_dense(DEFAULT_TOL),
        );
        assert!(report.all_passed());
    }

    // EₙEₘ = E_min(n,m) fails once the ranges are not nested
    let (_, pairing) = &filtrations[1];
    let swapped = Filtration::new(pairing.space(), pairing.operators().iter().rev().cloned().collect())?;
    let report = swapped.validate(true, DEFAULT_TOL);
    let order = report.check(Law::OrderLaw).expect("order law is always checked");
    println!("pairing reversed: order law passed = {}, worst = {:?}", order.passed, order.worst);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("filtrations");
}
