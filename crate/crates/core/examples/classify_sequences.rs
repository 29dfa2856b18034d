// Classifying random and hand-built sequences against one filtration.

use lattice_lab::filtration::Filtration;
use lattice_lab::martingale::classify;
use lattice_lab::random::{random_e_martingale, random_martingale, random_sequence, random_x_martingale, trial_rng};
use lattice_lab::{ClassifyOptions, LatticeVector, MartingaleSeq, Result};

pub fn run_example() -> Result<()> {
    let f = Filtration::truncation(32)?;
    let mut rng = trial_rng(42, 0);
    let opts = ClassifyOptions::default();

    let (eventual, head) = random_e_martingale(&f, &mut rng);
    let e1 = LatticeVector::basis(f.space(), 0)?;
    let cases = [
        ("martingale", random_martingale(&f, &mut rng)),
        ("eventual martingale", eventual),
        ("perturbed by a null sequence", random_x_martingale(&f, &mut rng)),
        ("null(e1)", MartingaleSeq::null(&e1, 32)?),
        ("arbitrary", random_sequence(&f, &mut rng)),
    ];
    println!("eventual martingale modified up to index {head}");
    for (name, seq) in &cases {
        let r = classify(seq, &f, &opts)?;
        println!(
            "{name:<30} martingale {:<5}  e-witness {:<8}  X {:?}",
            r.is_martingale,
            format!("{:?}", r.e_witness),
            r.x_verdict
        );
    }

    let strict = ClassifyOptions { eps_x: Some(1e-3), ..opts };
    let r = classify(&cases[3].1, &f, &strict)?;
    println!("null(e1) with eps_x = 1e-3: {:?}", r.x_verdict);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("classification");
}
