//! Seeded random instances for property trials.
//!
//! Every trial draws from its own ChaCha stream derived from `(seed, trial)`,
//! so trials can run in any order or in parallel and still reproduce.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::filtration::Filtration;
use crate::lattice::{LatticeSpace, LatticeVector};
use crate::martingale::MartingaleSeq;

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Which builder produced a filtration, with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "builder", rename_all = "snake_case")]
pub enum FiltrationSpec {
    Truncation { n: usize },
    Pairing { k: usize },
    Dyadic { levels: u32 },
    RandomNested { dim: usize, depth: usize, seed: u64, sup: bool },
}

impl FiltrationSpec {
    pub fn build(&self) -> Result<Filtration> {
        match *self {
            FiltrationSpec::Truncation { n } => Filtration::truncation(n),
            FiltrationSpec::Pairing { k } => Filtration::pairing(k),
            FiltrationSpec::Dyadic { levels } => Filtration::dyadic(levels),
            FiltrationSpec::RandomNested { dim, depth, seed, sup: false } => Filtration::random_nested(dim, depth, seed),
            FiltrationSpec::RandomNested { dim, depth, seed, sup: true } => {
                let space = LatticeSpace::sup(dim)?;
                Filtration::random_nested_in(&space, depth, &mut ChaCha8Rng::seed_from_u64(seed))
            }
        }
    }
}

impl fmt::Display for FiltrationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiltrationSpec::Truncation { n } => write!(f, "truncation(n={n})"),
            FiltrationSpec::Pairing { k } => write!(f, "pairing(k={k})"),
            FiltrationSpec::Dyadic { levels } => write!(f, "dyadic(levels={levels})"),
            FiltrationSpec::RandomNested { dim, depth, seed, sup } => {
                write!(f, "random_nested(dim={dim}, depth={depth}, seed={seed}, norm={})", if *sup { "sup" } else { "l1" })
            }
        }
    }
}

/// Draws one of the four builders with small random parameters.
pub fn random_filtration_spec<R: Rng + ?Sized>(rng: &mut R) -> FiltrationSpec {
    match rng.random_range(0..4) {
        0 => FiltrationSpec::Truncation { n: rng.random_range(2..=16) },
        1 => FiltrationSpec::Pairing { k: rng.random_range(2..=8) },
        2 => FiltrationSpec::Dyadic { levels: rng.random_range(2..=5) },
        _ => {
            let dim = rng.random_range(2..=16);
            FiltrationSpec::RandomNested { dim, depth: rng.random_range(2..=dim), seed: rng.random(), sup: rng.random() }
        }
    }
}

/// Coordinates uniform in `[-1, 1]`.
pub fn random_vector<R: Rng + ?Sized>(space: &std::sync::Arc<LatticeSpace>, rng: &mut R) -> LatticeVector {
    LatticeVector::from_fn(space, |_| rng.random_range(-1.0..=1.0))
}

/// A nonzero random vector scaled to norm 1.
pub fn random_unit_vector<R: Rng + ?Sized>(space: &std::sync::Arc<LatticeSpace>, rng: &mut R) -> LatticeVector {
    loop {
        let v = random_vector(space, rng);
        let n = v.norm();
        if n > 1e-6 {
            return v.scaled(1.0 / n);
        }
    }
}

/// `Eₙx` for a random `x`.
pub fn random_martingale<R: Rng + ?Sized>(filtration: &Filtration, rng: &mut R) -> MartingaleSeq {
    let x = random_vector(filtration.space(), rng);
    MartingaleSeq::from_terminal(filtration, &x).expect("same space")
}

/// A random martingale whose first `head` terms are replaced by noise, with
/// `head ≤ N − 2`. The 𝓔-witness is then at most `head + 1`.
pub fn random_e_martingale<R: Rng + ?Sized>(filtration: &Filtration, rng: &mut R) -> (MartingaleSeq, usize) {
    let base = random_martingale(filtration, rng);
    let horizon = filtration.horizon();
    let head = rng.random_range(0..=horizon.saturating_sub(2));
    let vectors = base
        .vectors()
        .iter()
        .enumerate()
        .map(|(i, v)| if i < head { random_vector(filtration.space(), rng) } else { v.clone() })
        .collect();
    (MartingaleSeq::new(filtration.space(), vectors).expect("same space"), head)
}

/// `xₙ = Eₙx + z/n` with `‖z‖ = 1`. Its defect profile satisfies
/// `dₙ ≤ 2/n` on a contractive filtration.
pub fn random_x_martingale<R: Rng + ?Sized>(filtration: &Filtration, rng: &mut R) -> MartingaleSeq {
    let base = random_martingale(filtration, rng);
    let z = random_unit_vector(filtration.space(), rng);
    let null = MartingaleSeq::null(&z, filtration.horizon()).expect("horizon >= 1");
    base.plus(&null).expect("same horizon")
}

/// Independent noise vectors, almost surely in no class.
pub fn random_sequence<R: Rng + ?Sized>(filtration: &Filtration, rng: &mut R) -> MartingaleSeq {
    let vectors = (0..filtration.horizon()).map(|_| random_vector(filtration.space(), rng)).collect();
    MartingaleSeq::new(filtration.space(), vectors).expect("same space")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::DEFAULT_TOL;
    use crate::martingale::{e_witness, DefectTable};

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<u64> = (0..4).map(|_| trial_rng(7, 3).random()).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        assert_ne!(trial_rng(7, 3).random::<u64>(), trial_rng(7, 4).random::<u64>());
    }

    #[test]
    fn generated_filtrations_are_valid() {
        for trial in 0..64 {
            let spec = random_filtration_spec(&mut trial_rng(1, trial));
            let f = spec.build().unwrap();
            let report = f.validate(true, DEFAULT_TOL);
            assert!(report.all_passed(), "{spec}: {report:?}");
        }
    }

    #[test]
    fn e_martingale_head_bound() {
        for trial in 0..32 {
            let mut rng = trial_rng(2, trial);
            let f = random_filtration_spec(&mut rng).build().unwrap();
            let (a, head) = random_e_martingale(&f, &mut rng);
            let l = e_witness(&a, &f, DEFAULT_TOL).unwrap().expect("eventual martingale");
            assert!(l <= head + 1);
        }
    }

    #[test]
    fn x_martingale_profile_bound() {
        for trial in 0..32 {
            let mut rng = trial_rng(3, trial);
            let f = random_filtration_spec(&mut rng).build().unwrap();
            let a = random_x_martingale(&f, &mut rng);
            let profile = DefectTable::compute(&a, &f).unwrap().profile();
            for (i, d) in profile.iter().enumerate() {
                assert!(*d <= 2.0 / (i + 1) as f64 + 1e-12);
            }
        }
    }
}
