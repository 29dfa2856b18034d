// The dyadic martingale built from Haar functions, and its modulus.
//
// On 2^L cells of [0, 1], xₙ = 2ⁿ − 1 on the first 2^(L−n) cells and −1
// elsewhere. Each xₙ has mean zero and xₙ₊₁ averages back to xₙ, but
// E₁|x₂| differs from |x₁| by 1/2 in L₁.

use lattice_lab::martingale::{classify, gen_haar, one_step_defects, DefectTable};
use lattice_lab::{ClassifyOptions, Result};

pub fn run_example() -> Result<()> {
    let (f, a) = gen_haar(3)?;
    for n in 1..=f.horizon() {
        println!("x{n} = {}  ‖x{n}‖₁ = {}", a.get(n), a.get(n).norm());
    }
    let opts = ClassifyOptions::default();
    let report = classify(&a, &f, &opts)?;
    println!("A:   martingale {}, e-witness {:?}", report.is_martingale, report.e_witness);

    let abs = a.abs_seq();
    let table = DefectTable::compute(&abs, &f)?;
    println!("|A|: ‖E1|x2| − |x1|‖ = {}", table.get(1, 2));
    println!("|A|: one-step defects {:?}", one_step_defects(&abs, &f)?);
    println!("|A|: e-witness {:?}", classify(&abs, &f, &opts)?.e_witness);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("haar counterexample");
}
