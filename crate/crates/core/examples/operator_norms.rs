// Positive operators, their induced norms, and the inputs attaining them.

use lattice_lab::{LatticeSpace, LatticeVector, Operator, Partition, Result};

pub fn run_example() -> Result<()> {
    let sup = LatticeSpace::sup(2)?;
    let t = Operator::from_rows(&sup, &[vec![0.5, 0.25], vec![0.0, 1.0]])?;
    println!("T = {:?}", t.rows());
    println!("positive: {}, ‖T‖∞ = {}", t.is_positive(0.0), t.operator_norm());
    // the all-ones vector attains the maximal row sum of a positive matrix
    let ones = LatticeVector::from_fn(&sup, |_| 1.0);
    println!("‖T·1‖∞ = {}", t.apply(&ones)?.norm());

    let l1 = LatticeSpace::weighted_l1(vec![0.25, 0.75])?;
    let s = Operator::from_rows(&l1, &[vec![0.5, 0.5], vec![0.5, 0.5]])?;
    println!("S = {:?} on L1 with weights (0.25, 0.75)", s.rows());
    println!("‖S‖₁,w = {}", s.operator_norm());
    for j in 0..2 {
        let e = LatticeVector::basis(&l1, j)?.scaled(1.0 / l1.cell_weight(j));
        println!("  ‖S e{j}/w{j}‖ = {}", s.apply(&e)?.norm());
    }

    // block averaging is a positive contractive projection for its own weights
    let p = Partition::new(2, vec![vec![0, 1]])?;
    let avg = Operator::conditional_expectation(&l1, &p)?;
    println!(
        "weighted average: projection={}, contractive={}, norm={}",
        avg.is_projection(1e-12),
        avg.is_contractive(1e-12),
        avg.operator_norm()
    );

    let band = Operator::diagonal(&sup, &[1.0, 0.0])?;
    println!("diag(1, 0) is a band projection: {}", band.is_band_projection(0.0));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("operator norms");
}
