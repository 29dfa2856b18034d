// A martingale whose modulus is not even eventually a martingale.
//
// Eₙ averages neighbouring pairs beyond the first 2n coordinates, and
// xₙ alternates −1, 1 on those first 2n coordinates. On the block
// {2n+1, 2n+2} we have xₙ₊₁ = (−1, 1), so Eₙxₙ₊₁ = 0 = xₙ there, while
// Eₙ|xₙ₊₁| = 1 ≠ 0 = |xₙ|.

use lattice_lab::martingale::{e_witness, gen_pairing_example, one_step_defects};
use lattice_lab::{Result, DEFAULT_TOL};

pub fn run_example() -> Result<()> {
    let (f, a) = gen_pairing_example(4)?;
    for n in 1..=f.horizon() {
        println!("x{n} = {}", a.get(n));
    }
    let abs = a.abs_seq();
    println!("A   e-witness: {:?}", e_witness(&a, &f, DEFAULT_TOL)?);
    println!("|A| e-witness: {:?}", e_witness(&abs, &f, DEFAULT_TOL)?);
    println!("|A| one-step defects: {:?}", one_step_defects(&abs, &f)?);
    assert_eq!(e_witness(&abs, &f, DEFAULT_TOL)?, None);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("pairing counterexample");
}
