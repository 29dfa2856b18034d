// Running the structural checks programmatically.

use lattice_lab::filtration::Filtration;
use lattice_lab::verify::{run_suite, verify_band_propositions, Status, TheoremId};
use lattice_lab::{ClassifyOptions, Result, DEFAULT_TOL};

pub fn run_example() -> Result<()> {
    for r in run_suite(Some(TheoremId::MeNotClosed), 0, 0, DEFAULT_TOL)? {
        println!("{r}");
    }
    let results = run_suite(None, 1, 25, DEFAULT_TOL)?;
    let count = |s: Status| results.iter().filter(|r| r.status == s).count();
    println!(
        "{} results: {} confirmed, {} inconclusive, {} violated",
        results.len(),
        count(Status::Confirmed),
        count(Status::Inconclusive),
        count(Status::Violated)
    );
    assert_eq!(count(Status::Violated), 0);

    // a single check on a custom filtration, with its witness
    let f = Filtration::random_nested(6, 3, 11)?;
    let r = verify_band_propositions(&f, 3, 20, &ClassifyOptions::default())?;
    println!("{r}\n{}", serde_json::to_string_pretty(&r.witness).expect("json"));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("theorem suite");
}
