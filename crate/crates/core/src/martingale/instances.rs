//! The concrete sequences used as counterexamples: the dyadic L₁ martingale,
//! the alternating-sign martingale on the pairing filtration, and the harmonic
//! tail family that shows bounded 𝓔-martingales are not closed.

use super::MartingaleSeq;
use crate::error::{Error, Result};
use crate::filtration::{Filtration, MAX_DYADIC_DEPTH};
use crate::lattice::LatticeVector;

/// Dyadic filtration on `2^levels` cells together with
/// `xₙ = 2ⁿ·1_{[0, 2⁻ⁿ]} − 1`, n = 1..levels.
pub fn gen_haar(levels: u32) -> Result<(Filtration, MartingaleSeq)> {
    if !(1..=MAX_DYADIC_DEPTH).contains(&levels) {
        return Err(Error::InvalidParameter(format!("haar depth must be in 1..={MAX_DYADIC_DEPTH}")));
    }
    let filtration = Filtration::dyadic(levels)?;
    let space = filtration.space();
    let vectors = (1..=levels)
        .map(|n| {
            let spike_cells = 1usize << (levels - n);
            let peak = (1u64 << n) as f64 - 1.0;
            LatticeVector::from_fn(space, |i| if i < spike_cells { peak } else { -1.0 })
        })
        .collect();
    let seq = MartingaleSeq::new(space, vectors)?;
    Ok((filtration, seq))
}

/// Pairing filtration on `2k` coordinates with
/// `xₙ = (−1, 1, .., −1, 1, 0, ..)`, alternating on the first `2n`.
pub fn gen_pairing_example(k: usize) -> Result<(Filtration, MartingaleSeq)> {
    let filtration = Filtration::pairing(k)?;
    let space = filtration.space();
    let vectors = (1..=k)
        .map(|n| LatticeVector::from_fn(space, |i| if i >= 2 * n { 0.0 } else if i % 2 == 0 { -1.0 } else { 1.0 }))
        .collect();
    let seq = MartingaleSeq::new(space, vectors)?;
    Ok((filtration, seq))
}

/// The harmonic tail instance on the truncation filtration of dimension `N`.
#[derive(Clone, Debug)]
pub struct HarmonicTail {
    pub filtration: Filtration,
    /// `xₙ = Σ_{i=n}^{N} eᵢ / i`, not an 𝓔-martingale.
    pub limit: MartingaleSeq,
    /// The martingale `yₙ = Σ_{i=1}^{n} eᵢ / i`.
    pub harmonic: MartingaleSeq,
    /// `family[m-1] = Aᵐ` for m = 1..N−1: `xₙ` for `n ≤ m`, `yₙ / m` after.
    pub family: Vec<MartingaleSeq>,
}

impl HarmonicTail {
    /// `Aᵐ`, 1-based.
    pub fn member(&self, m: usize) -> &MartingaleSeq {
        &self.family[m - 1]
    }
}

pub fn gen_harmonic_tail(n: usize) -> Result<HarmonicTail> {
    if n < 2 {
        return Err(Error::InvalidParameter("harmonic tail needs N >= 2".into()));
    }
    let filtration = Filtration::truncation(n)?;
    let space = filtration.space();
    let recip = |i: usize| 1.0 / (i + 1) as f64;

    let limit = MartingaleSeq::new(
        space,
        (1..=n).map(|k| LatticeVector::from_fn(space, |i| if i + 1 >= k { recip(i) } else { 0.0 })).collect(),
    )?;
    let harmonic = MartingaleSeq::new(
        space,
        (1..=n).map(|k| LatticeVector::from_fn(space, |i| if i < k { recip(i) } else { 0.0 })).collect(),
    )?;
    let family = (1..n)
        .map(|m| {
            let vectors = (1..=n)
                .map(|k| if k <= m { limit.get(k).clone() } else { harmonic.get(k).scaled(1.0 / m as f64) })
                .collect();
            MartingaleSeq::new(space, vectors)
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(HarmonicTail { filtration, limit, harmonic, family })
}
