//! Martingale-like sequences `x₁, .., x_N` and their classification against a
//! filtration of the same horizon.

mod classify;
mod instances;

use std::sync::Arc;

pub use classify::{
    classify, classify_x, e_witness, is_martingale, one_step_defects, two_index_witness, ClassifyOptions,
    ClassificationReport, DefectTable, XVerdict, DEFAULT_EPS_X_FACTOR, DEFAULT_WINDOW_FRACTION,
};
pub use instances::{gen_haar, gen_harmonic_tail, gen_pairing_example, HarmonicTail};

use crate::error::{Error, Result};
use crate::filtration::Filtration;
use crate::lattice::{LatticeSpace, LatticeVector};

#[derive(Clone, Debug, PartialEq)]
pub struct MartingaleSeq {
    space: Arc<LatticeSpace>,
    vectors: Vec<LatticeVector>,
}

impl MartingaleSeq {
    pub fn new(space: &Arc<LatticeSpace>, vectors: Vec<LatticeVector>) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::InvalidSequence("a sequence needs at least one vector".into()));
        }
        for v in &vectors {
            space.check_same(v.space())?;
        }
        Ok(MartingaleSeq { space: Arc::clone(space), vectors })
    }

    pub fn from_coords(space: &Arc<LatticeSpace>, coords: Vec<Vec<f64>>) -> Result<Self> {
        let vectors = coords.into_iter().map(|c| LatticeVector::new(space, c)).collect::<Result<Vec<_>>>()?;
        Self::new(space, vectors)
    }

    /// `xₙ = Eₙx`, a martingale by the filtration law.
    pub fn from_terminal(filtration: &Filtration, x: &LatticeVector) -> Result<Self> {
        let vectors = filtration.operators().iter().map(|e| e.apply(x)).collect::<Result<Vec<_>>>()?;
        Self::new(filtration.space(), vectors)
    }

    /// `xₙ = x / n` for n = 1..horizon.
    pub fn null(x: &LatticeVector, horizon: usize) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::InvalidParameter("horizon must be at least 1".into()));
        }
        Self::new(x.space(), (1..=horizon).map(|n| x.scaled(1.0 / n as f64)).collect())
    }

    pub fn space(&self) -> &Arc<LatticeSpace> {
        &self.space
    }

    pub fn horizon(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[LatticeVector] {
        &self.vectors
    }

    /// `xₙ`, 1-based.
    pub fn get(&self, n: usize) -> &LatticeVector {
        &self.vectors[n - 1]
    }

    pub fn coords(&self) -> Vec<Vec<f64>> {
        self.vectors.iter().map(|v| v.coords().to_vec()).collect()
    }

    /// `‖A‖ = maxₙ ‖xₙ‖`.
    pub fn seq_norm(&self) -> f64 {
        self.vectors.iter().map(LatticeVector::norm).fold(0.0, f64::max)
    }

    /// `|A| = (|xₙ|)`.
    pub fn abs_seq(&self) -> Self {
        MartingaleSeq { space: Arc::clone(&self.space), vectors: self.vectors.iter().map(LatticeVector::abs).collect() }
    }

    /// Replaces `x₁` by `c·x₁`.
    pub fn scale_head(&self, c: f64) -> Self {
        let mut vectors = self.vectors.clone();
        vectors[0] = vectors[0].scaled(c);
        MartingaleSeq { space: Arc::clone(&self.space), vectors }
    }

    /// Keeps `x₁..x_m` and continues with `Eₙx` for `n > m`.
    pub fn tail_modify(&self, filtration: &Filtration, x: &LatticeVector, m: usize) -> Result<Self> {
        self.check_horizon(filtration)?;
        let vectors = self
            .vectors
            .iter()
            .enumerate()
            .map(|(i, v)| if i < m { Ok(v.clone()) } else { filtration.op(i + 1).apply(x) })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&self.space, vectors)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&LatticeVector, &LatticeVector) -> Result<LatticeVector>) -> Result<Self> {
        if self.horizon() != other.horizon() {
            return Err(Error::HorizonMismatch { sequence: other.horizon(), filtration: self.horizon() });
        }
        let vectors = self.vectors.iter().zip(&other.vectors).map(|(a, b)| f(a, b)).collect::<Result<Vec<_>>>()?;
        Self::new(&self.space, vectors)
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.plus(b))
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.minus(b))
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.join(b))
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.meet(b))
    }

    pub fn scaled(&self, c: f64) -> Self {
        MartingaleSeq { space: Arc::clone(&self.space), vectors: self.vectors.iter().map(|v| v.scaled(c)).collect() }
    }

    /// Sup-norm distance `‖A − B‖` in `ℓ∞(X)`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.minus(other)?.seq_norm())
    }

    pub(crate) fn check_horizon(&self, filtration: &Filtration) -> Result<()> {
        self.space.check_same(filtration.space())?;
        if self.horizon() != filtration.horizon() {
            return Err(Error::HorizonMismatch { sequence: self.horizon(), filtration: filtration.horizon() });
        }
        Ok(())
    }
}
