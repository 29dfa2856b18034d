// Writing an instance to JSON, reading it back and classifying it.

use std::sync::Arc;

use lattice_lab::io::{instance_to_json, parse_instance, Instance};
use lattice_lab::martingale::{classify, gen_haar};
use lattice_lab::{ClassifyOptions, Result};

pub fn run_example() -> Result<()> {
    let (f, a) = gen_haar(2)?;
    let instance = Instance { space: Arc::clone(f.space()), filtration: Some(f), sequence: Some(a.scaled(0.1)) };
    let text = instance_to_json(&instance);
    println!("{text}");

    let back = parse_instance(&text).expect("written instances parse");
    assert_eq!(back, instance);
    let (f, a) = (back.filtration.expect("filtration"), back.sequence.expect("sequence"));
    let report = classify(&a, &f, &ClassifyOptions::default())?;
    println!("{}", serde_json::to_string_pretty(&report).expect("json"));

    let broken = r#"{"space": {"dim": 2, "norm": "sup"}, "sequence": {"vectors": [[1, 2, 3]]}}"#;
    let err = parse_instance(broken).unwrap_err();
    let cause = std::error::Error::source(&err).map(|e| e.to_string()).unwrap_or_default();
    println!("rejected: {err}: {cause}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("instance files");
}
