//! Finite-dimensional coordinate-ordered vector lattices.
//!
//! Two norms are supported: the sup norm, which models truncations of `c₀`,
//! and a weighted L₁ norm `Σ wᵢ|xᵢ|`, which models `L₁[0,1]` on a partition
//! of the interval into cells of measure `wᵢ`. Order and lattice operations
//! are coordinate-wise in both cases.

use std::fmt;
use std::sync::Arc;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance for norm-valued equalities. Order comparisons are exact.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NormKind {
    #[serde(rename = "sup")]
    Sup,
    #[serde(rename = "l1")]
    WeightedL1,
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormKind::Sup => f.write_str("sup"),
            NormKind::WeightedL1 => f.write_str("l1"),
        }
    }
}

/// The JSON shape of a space: `{"dim": n, "norm": "sup"|"l1", "weights": [..]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    pub dim: usize,
    pub norm: NormKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpaceDescriptor", into = "SpaceDescriptor")]
pub struct LatticeSpace {
    dim: usize,
    norm: NormKind,
    // Only populated for weighted L₁ spaces.
    weights: Option<Vec<f64>>,
}

impl LatticeSpace {
    pub fn sup(dim: usize) -> Result<Arc<Self>> {
        if dim == 0 {
            return Err(Error::InvalidSpace("dimension must be at least 1".into()));
        }
        Ok(Arc::new(LatticeSpace { dim, norm: NormKind::Sup, weights: None }))
    }

    /// Weighted L₁ space with one strictly positive weight per coordinate.
    pub fn weighted_l1(weights: Vec<f64>) -> Result<Arc<Self>> {
        if weights.is_empty() {
            return Err(Error::InvalidSpace("dimension must be at least 1".into()));
        }
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidSpace(format!("weight {i} is {w}; weights must be finite and > 0")));
        }
        Ok(Arc::new(LatticeSpace { dim: weights.len(), norm: NormKind::WeightedL1, weights: Some(weights) }))
    }

    /// `dim` equal cells of `[0,1]`, each of measure `1/dim`.
    pub fn uniform_l1(dim: usize) -> Result<Arc<Self>> {
        if dim == 0 {
            return Err(Error::InvalidSpace("dimension must be at least 1".into()));
        }
        Self::weighted_l1(vec![1.0 / dim as f64; dim])
    }

    pub fn from_descriptor(desc: SpaceDescriptor) -> Result<Arc<Self>> {
        Self::try_from(desc).map(Arc::new)
    }

    pub fn descriptor(&self) -> SpaceDescriptor {
        self.clone().into()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn norm_kind(&self) -> NormKind {
        self.norm
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    /// Cell measure used for averaging. Sup spaces weight every cell equally.
    pub fn cell_weight(&self, i: usize) -> f64 {
        match &self.weights {
            Some(w) => w[i],
            None => 1.0,
        }
    }

    pub fn norm_of(&self, coords: &DVector<f64>) -> f64 {
        match &self.weights {
            None => coords.iter().fold(0.0_f64, |acc, c| acc.max(c.abs())),
            Some(w) => coords.iter().zip(w).map(|(c, w)| w * c.abs()).sum(),
        }
    }

    pub(crate) fn check_same(self: &Arc<Self>, other: &Arc<Self>) -> Result<()> {
        if Arc::ptr_eq(self, other) || **self == **other {
            Ok(())
        } else if self.dim != other.dim {
            Err(Error::DimensionMismatch { expected: self.dim, found: other.dim })
        } else {
            Err(Error::SpaceMismatch)
        }
    }
}

impl TryFrom<SpaceDescriptor> for LatticeSpace {
    type Error = Error;

    fn try_from(desc: SpaceDescriptor) -> Result<Self> {
        let space = match desc.norm {
            // Weights are ignored for sup spaces.
            NormKind::Sup => LatticeSpace::sup(desc.dim)?,
            NormKind::WeightedL1 => {
                let weights = desc
                    .weights
                    .ok_or_else(|| Error::InvalidSpace("l1 space requires weights".into()))?;
                if weights.len() != desc.dim {
                    return Err(Error::DimensionMismatch { expected: desc.dim, found: weights.len() });
                }
                LatticeSpace::weighted_l1(weights)?
            }
        };
        Ok(Arc::unwrap_or_clone(space))
    }
}

impl From<LatticeSpace> for SpaceDescriptor {
    fn from(space: LatticeSpace) -> Self {
        SpaceDescriptor { dim: space.dim, norm: space.norm, weights: space.weights }
    }
}

/// An element of a [`LatticeSpace`].
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeVector {
    space: Arc<LatticeSpace>,
    coords: DVector<f64>,
}

impl LatticeVector {
    pub fn new(space: &Arc<LatticeSpace>, coords: Vec<f64>) -> Result<Self> {
        if coords.len() != space.dim() {
            return Err(Error::DimensionMismatch { expected: space.dim(), found: coords.len() });
        }
        Ok(LatticeVector { space: Arc::clone(space), coords: DVector::from_vec(coords) })
    }

    pub(crate) fn from_dvector(space: &Arc<LatticeSpace>, coords: DVector<f64>) -> Self {
        debug_assert_eq!(coords.len(), space.dim());
        LatticeVector { space: Arc::clone(space), coords }
    }

    pub fn zeros(space: &Arc<LatticeSpace>) -> Self {
        Self::from_dvector(space, DVector::zeros(space.dim()))
    }

    /// The `i`-th unit vector (0-based).
    pub fn basis(space: &Arc<LatticeSpace>, i: usize) -> Result<Self> {
        if i >= space.dim() {
            return Err(Error::InvalidParameter(format!("basis index {i} out of range for dim {}", space.dim())));
        }
        let mut v = DVector::zeros(space.dim());
        v[i] = 1.0;
        Ok(Self::from_dvector(space, v))
    }

    pub fn from_fn(space: &Arc<LatticeSpace>, f: impl FnMut(usize) -> f64) -> Self {
        let mut f = f;
        Self::from_dvector(space, DVector::from_fn(space.dim(), |i, _| f(i)))
    }

    pub fn space(&self) -> &Arc<LatticeSpace> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        self.coords.as_slice()
    }

    pub(crate) fn as_dvector(&self) -> &DVector<f64> {
        &self.coords
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.space.check_same(&other.space)?;
        Ok(Self::from_dvector(&self.space, self.coords.zip_map(&other.coords, f)))
    }

    /// Supremum `x ∨ y`.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, f64::max)
    }

    /// Infimum `x ∧ y`.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, f64::min)
    }

    /// Modulus `|x| = x ∨ (−x)`.
    pub fn abs(&self) -> Self {
        Self::from_dvector(&self.space, self.coords.abs())
    }

    pub fn negate(&self) -> Self {
        Self::from_dvector(&self.space, -&self.coords)
    }

    pub fn positive_part(&self) -> Self {
        Self::from_dvector(&self.space, self.coords.map(|c| c.max(0.0)))
    }

    pub fn negative_part(&self) -> Self {
        Self::from_dvector(&self.space, self.coords.map(|c| (-c).max(0.0)))
    }

    /// `x ≤ y` in the coordinate order. Exact, no tolerance.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.space.check_same(&other.space)?;
        Ok(self.coords.iter().zip(other.coords.iter()).all(|(a, b)| a <= b))
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|c| *c >= 0.0)
    }

    pub fn norm(&self) -> f64 {
        self.space.norm_of(&self.coords)
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self::from_dvector(&self.space, &self.coords * c)
    }

    /// `‖x − y‖`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        self.space.check_same(&other.space)?;
        Ok(self.space.norm_of(&(&self.coords - &other.coords)))
    }

    /// `x ⊥ y` iff `‖ |x| ∧ |y| ‖ ≤ tol`.
    pub fn is_disjoint(&self, other: &Self, tol: f64) -> Result<bool> {
        Ok(self.abs().meet(&other.abs())?.norm() <= tol)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}
