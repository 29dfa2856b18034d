// Eventual martingales converging to a sequence that is not one.
//
// With truncation projections on N coordinates, A = (y₁, …, y_N) where
// yₙ = Σ_{k<n} eₖ/k is an X-martingale with defects 1/n. Replacing the
// tail of A after m by yₖ/m gives Aᵐ, a martingale from index m + 1 on,
// with ‖Aᵐ − A‖ = 1/m.

use lattice_lab::martingale::{classify, e_witness, gen_harmonic_tail};
use lattice_lab::{ClassifyOptions, Result, DEFAULT_TOL};

pub fn run_example() -> Result<()> {
    let n = 64;
    let h = gen_harmonic_tail(n)?;
    for m in [1, 2, 4, 8, 16, 32, n - 2, n - 1] {
        let member = h.member(m);
        println!(
            "A^{m:<2}  witness {:>9}  ‖A^{m} − A‖ = {:.5}",
            format!("{:?}", e_witness(member, &h.filtration, DEFAULT_TOL)?),
            member.distance(&h.limit)?
        );
    }
    let report = classify(&h.limit, &h.filtration, &ClassifyOptions::default())?;
    println!("A      witness {:?}, X verdict {:?}", report.e_witness, report.x_verdict);
    println!("defects d1..d4 = {:?}", &report.x_defects[..4]);
    // A^(N−1) only differs from A in the last term, which no witness can see
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("harmonic tail");
}
