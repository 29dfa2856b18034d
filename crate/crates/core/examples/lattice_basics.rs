// Lattice operations and norms in the two coordinate models.

use lattice_lab::{LatticeSpace, LatticeVector, Result};

pub fn run_example() -> Result<()> {
    let sup = LatticeSpace::sup(4)?;
    let x = LatticeVector::new(&sup, vec![1.0, -2.0, 0.5, 0.0])?;
    let y = LatticeVector::new(&sup, vec![-1.0, 1.0, 2.0, 0.0])?;

    println!("x        = {x}");
    println!("y        = {y}");
    println!("x ∨ y    = {}", x.join(&y)?);
    println!("x ∧ y    = {}", x.meet(&y)?);
    println!("|x|      = {}", x.abs());
    println!("x⁺ − x⁻  = {}", x.positive_part().minus(&x.negative_part())?);
    println!("‖x‖∞     = {}", x.norm());

    // the same coordinates in a weighted L1 space
    let l1 = LatticeSpace::weighted_l1(vec![0.1, 0.2, 0.3, 0.4])?;
    let x1 = LatticeVector::new(&l1, x.coords().to_vec())?;
    println!("‖x‖₁,w   = {}", x1.norm());

    // |x| and x share a norm; |x| ≤ |y| forces ‖x‖ ≤ ‖y‖
    assert_eq!(x.abs().norm(), x.norm());
    assert!(x.abs().leq(&x.abs().join(&y.abs())?)?);

    let e1 = LatticeVector::basis(&sup, 0)?;
    let e2 = LatticeVector::basis(&sup, 1)?;
    println!("e1 ⟂ e2: {}", e1.is_disjoint(&e2, 0.0)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("lattice basics");
}
