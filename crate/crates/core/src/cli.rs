//! The `lattice-lab` command line.
//!
//! Exit codes: 0 success, 1 a verification reported `VIOLATED` (or
//! `validate` found a failing law), 2 bad input.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::filtration::Filtration;
use crate::io::{instance_to_json, read_instance, Instance};
use crate::lattice::{LatticeVector, DEFAULT_TOL};
use crate::martingale::{classify, gen_haar, gen_harmonic_tail, gen_pairing_example, ClassifyOptions, MartingaleSeq};
use crate::random::FiltrationSpec;
use crate::verify::{run_suite, TheoremId};

/// Environment variable overriding the default tolerance.
pub const TOL_ENV: &str = "LATTICE_LAB_TOL";

#[derive(Debug, Parser)]
#[command(name = "lattice-lab", version, about = "Martingale-like sequences in finite Banach lattices")]
pub struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the filtration laws of a filtration or instance file.
    Validate {
        path: PathBuf,
        /// Also require every operator to be contractive.
        #[arg(long)]
        contractive: bool,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Classify the sequence of an instance file.
    Classify {
        path: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        /// Absolute X-martingale threshold (default 0.05·max(1, ‖A‖)).
        #[arg(long)]
        eps_x: Option<f64>,
        /// Fraction of the horizon used as the tail window.
        #[arg(long, default_value_t = 0.25)]
        window: f64,
    },
    /// Build and classify one of the constructed examples.
    Demo {
        name: Demo,
        #[arg(long)]
        size: Option<usize>,
    },
    /// Run structural checks on default instances.
    Verify {
        /// A check id or `all`.
        #[arg(default_value = "all")]
        id: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Write an instance file.
    Gen {
        builder: Builder,
        #[arg(long)]
        size: Option<usize>,
        /// Number of operators for `random-nested`.
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Demo {
    Haar,
    Pairing,
    Harmonic,
    Null,
    ScaleHead,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Builder {
    Truncation,
    Pairing,
    Dyadic,
    RandomNested,
    Haar,
    PairingExample,
    Harmonic,
    Null,
    ScaleHead,
}

/// Default tolerance, from `LATTICE_LAB_TOL` when set.
pub fn default_tol() -> anyhow::Result<f64> {
    match std::env::var(TOL_ENV) {
        Ok(v) => {
            let tol: f64 = v.trim().parse().with_context(|| format!("{TOL_ENV}={v:?} is not a number"))?;
            if !(tol >= 0.0 && tol.is_finite()) {
                bail!("{TOL_ENV}={v:?} must be a finite non-negative number");
            }
            Ok(tol)
        }
        Err(_) => Ok(DEFAULT_TOL),
    }
}

fn tol_or_default(tol: Option<f64>) -> anyhow::Result<f64> {
    tol.map_or_else(default_tol, Ok)
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

fn dispatch(cli: &Cli) -> anyhow::Result<i32> {
    match &cli.command {
        Command::Validate { path, contractive, tol } => validate(path, *contractive, tol_or_default(*tol)?, cli.json),
        Command::Classify { path, tol, eps_x, window } => {
            let opts = ClassifyOptions { tol: tol_or_default(*tol)?, eps_x: *eps_x, window_fraction: *window };
            classify_file(path, &opts, cli.json)
        }
        Command::Demo { name, size } => demo(*name, *size, cli.json),
        Command::Verify { id, seed, trials, tol } => verify(id, *seed, *trials, tol_or_default(*tol)?, cli.json),
        Command::Gen { builder, size, depth, seed, out } => gen(*builder, *size, *depth, *seed, out.as_ref()),
    }
}

fn print_json(value: &impl serde::Serialize) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn validate(path: &Path, contractive: bool, tol: f64, json: bool) -> anyhow::Result<i32> {
    let instance = read_instance(path)?;
    let Some(f) = instance.filtration else { bail!("{} has no filtration", path.display()) };
    let report = f.validate(contractive, tol);
    if json {
        print_json(&report)?;
    } else {
        println!("horizon {}, tol {:e}", report.horizon, report.tol);
        for c in &report.checks {
            let worst = match &c.worst {
                Some(w) => match w.m {
                    Some(m) => format!("worst {:.3e} at (n={}, m={m})", w.magnitude, w.n),
                    None => format!("worst {:.3e} at n={}", w.magnitude, w.n),
                },
                None => String::new(),
            };
            println!("{:<14} {:<4} {worst}", format!("{:?}", c.law), if c.passed { "ok" } else { "FAIL" });
        }
    }
    Ok(if report.all_passed() { 0 } else { 1 })
}

fn classify_file(path: &Path, opts: &ClassifyOptions, json: bool) -> anyhow::Result<i32> {
    let instance = read_instance(path)?;
    let (Some(f), Some(seq)) = (&instance.filtration, &instance.sequence) else {
        bail!("{} needs both a filtration and a sequence", path.display());
    };
    let report = classify(seq, f, opts)?;
    if json {
        print_json(&report)?;
    } else {
        print_report("A", &report);
    }
    Ok(0)
}

fn print_report(label: &str, r: &crate::martingale::ClassificationReport) {
    let witness = r.e_witness.map_or("none".to_string(), |l| l.to_string());
    println!(
        "{label}: martingale={} (defect {:.3e}), e-witness={witness}, X={:?}, ‖A‖={:.4}",
        r.is_martingale, r.martingale_defect, r.x_verdict, r.seq_norm
    );
}

fn demo_instances(name: Demo, size: Option<usize>) -> anyhow::Result<(Filtration, Vec<(&'static str, MartingaleSeq)>)> {
    Ok(match name {
        Demo::Haar | Demo::ScaleHead => {
            let (f, a) = gen_haar(size.unwrap_or(3) as u32)?;
            let seqs = if name == Demo::Haar {
                vec![("A", a.clone()), ("|A|", a.abs_seq())]
            } else {
                vec![("A", a.clone()), ("2·x1 head", a.scale_head(2.0))]
            };
            (f, seqs)
        }
        Demo::Pairing => {
            let (f, a) = gen_pairing_example(size.unwrap_or(3))?;
            (f, vec![("A", a.clone()), ("|A|", a.abs_seq())])
        }
        Demo::Harmonic => {
            let n = size.unwrap_or(64);
            if n < 3 {
                bail!("the harmonic demo needs --size of at least 3");
            }
            let h = gen_harmonic_tail(n)?;
            let seqs = vec![("A", h.limit.clone()), ("A^1", h.member(1).clone()), ("A^(N-2)", h.member(n - 2).clone())];
            (h.filtration, seqs)
        }
        Demo::Null => {
            let n = size.unwrap_or(64);
            let f = Filtration::truncation(n)?;
            let e1 = LatticeVector::basis(f.space(), 0)?;
            let a = MartingaleSeq::null(&e1, n)?;
            (f, vec![("null(e1)", a)])
        }
    })
}

fn demo(name: Demo, size: Option<usize>, json: bool) -> anyhow::Result<i32> {
    let (f, seqs) = demo_instances(name, size)?;
    let opts = ClassifyOptions::with_tol(default_tol()?);
    let mut reports = Vec::new();
    for (label, seq) in &seqs {
        reports.push((*label, classify(seq, &f, &opts)?));
    }
    if json {
        let body: Vec<_> = reports.iter().map(|(l, r)| json!({"sequence": l, "report": r})).collect();
        print_json(&json!({"demo": format!("{name:?}"), "horizon": f.horizon(), "reports": body}))?;
    } else {
        println!("{name:?}: dim {}, horizon {}", f.space().dim(), f.horizon());
        if name == Demo::Pairing {
            println!("E_n fixes the first 2n coordinates and averages later pairs; the index-0 operator that averages every pair is not stored");
        }
        for (label, r) in &reports {
            print_report(label, r);
        }
    }
    Ok(0)
}

fn verify(id: &str, seed: u64, trials: usize, tol: f64, json: bool) -> anyhow::Result<i32> {
    let id = match id {
        "all" => None,
        other => Some(other.parse::<TheoremId>().map_err(anyhow::Error::msg)?),
    };
    let results = run_suite(id, seed, trials, tol)?;
    if json {
        print_json(&results)?;
    } else {
        for r in &results {
            println!("{r}");
        }
    }
    Ok(if results.iter().any(|r| r.is_violated()) { 1 } else { 0 })
}

fn gen(builder: Builder, size: Option<usize>, depth: Option<usize>, seed: u64, out: Option<&PathBuf>) -> anyhow::Result<i32> {
    let filtration_only = |f: Filtration| Instance { space: Arc::clone(f.space()), filtration: Some(f), sequence: None };
    let with_sequence =
        |f: Filtration, s: MartingaleSeq| Instance { space: Arc::clone(f.space()), filtration: Some(f), sequence: Some(s) };
    let instance = match builder {
        Builder::Truncation => filtration_only(Filtration::truncation(size.unwrap_or(8))?),
        Builder::Pairing => filtration_only(Filtration::pairing(size.unwrap_or(3))?),
        Builder::Dyadic => filtration_only(Filtration::dyadic(size.unwrap_or(3) as u32)?),
        Builder::RandomNested => {
            let dim = size.unwrap_or(8);
            let spec = FiltrationSpec::RandomNested { dim, depth: depth.unwrap_or(dim.min(4)), seed, sup: false };
            filtration_only(spec.build()?)
        }
        Builder::Haar | Builder::ScaleHead => {
            let (f, a) = gen_haar(size.unwrap_or(3) as u32)?;
            let a = if builder == Builder::ScaleHead { a.scale_head(2.0) } else { a };
            with_sequence(f, a)
        }
        Builder::PairingExample => {
            let (f, a) = gen_pairing_example(size.unwrap_or(3))?;
            with_sequence(f, a)
        }
        Builder::Harmonic => {
            let h = gen_harmonic_tail(size.unwrap_or(64))?;
            with_sequence(h.filtration, h.limit)
        }
        Builder::Null => {
            let n = size.unwrap_or(64);
            let f = Filtration::truncation(n)?;
            let a = MartingaleSeq::null(&LatticeVector::basis(f.space(), 0)?, n)?;
            with_sequence(f, a)
        }
    };
    let text = instance_to_json(&instance);
    match out {
        Some(path) => fs::write(path, text + "\n").with_context(|| format!("cannot write {}", path.display()))?,
        None => println!("{text}"),
    }
    Ok(0)
}
