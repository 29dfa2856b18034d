//! Linear operators on a [`LatticeSpace`], stored as dense matrices with the
//! convention `(Tx)ᵢ = Σⱼ Tᵢⱼ xⱼ`.
//!
//! Under the coordinate order an operator is positive iff its matrix is
//! entrywise nonnegative, and the band projections are exactly the diagonal
//! 0/1 masks. Both facts are used structurally below.

use std::sync::Arc;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::lattice::{LatticeSpace, LatticeVector, NormKind};
use crate::partition::Partition;

#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    space: Arc<LatticeSpace>,
    matrix: DMatrix<f64>,
}

impl Operator {
    pub fn new(space: &Arc<LatticeSpace>, matrix: DMatrix<f64>) -> Result<Self> {
        let dim = space.dim();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::InvalidOperator(format!(
                "matrix is {}x{}, space has dim {dim}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if matrix.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidOperator("matrix entries must be finite".into()));
        }
        Ok(Operator { space: Arc::clone(space), matrix })
    }

    pub fn from_rows(space: &Arc<LatticeSpace>, rows: &[Vec<f64>]) -> Result<Self> {
        let dim = space.dim();
        if rows.len() != dim {
            return Err(Error::InvalidOperator(format!("{} rows, space has dim {dim}", rows.len())));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != dim) {
            return Err(Error::InvalidOperator(format!("row {i} has {} entries, expected {dim}", r.len())));
        }
        Self::new(space, DMatrix::from_fn(dim, dim, |i, j| rows[i][j]))
    }

    pub fn identity(space: &Arc<LatticeSpace>) -> Self {
        Operator { space: Arc::clone(space), matrix: DMatrix::identity(space.dim(), space.dim()) }
    }

    pub fn zero(space: &Arc<LatticeSpace>) -> Self {
        Operator { space: Arc::clone(space), matrix: DMatrix::zeros(space.dim(), space.dim()) }
    }

    pub fn diagonal(space: &Arc<LatticeSpace>, diag: &[f64]) -> Result<Self> {
        if diag.len() != space.dim() {
            return Err(Error::DimensionMismatch { expected: space.dim(), found: diag.len() });
        }
        Self::new(space, DMatrix::from_fn(diag.len(), diag.len(), |i, j| if i == j { diag[i] } else { 0.0 }))
    }

    /// Conditional expectation onto the functions constant on the blocks of
    /// `partition`: each block is replaced by its weighted average
    /// `Σ wᵢxᵢ / Σ wᵢ`. Sup spaces use equal weights.
    pub fn conditional_expectation(space: &Arc<LatticeSpace>, partition: &Partition) -> Result<Self> {
        if partition.dim() != space.dim() {
            return Err(Error::DimensionMismatch { expected: space.dim(), found: partition.dim() });
        }
        let dim = space.dim();
        let mut matrix = DMatrix::zeros(dim, dim);
        for block in partition.blocks() {
            let mass: f64 = block.iter().map(|&j| space.cell_weight(j)).sum();
            for &i in block {
                for &j in block {
                    matrix[(i, j)] = space.cell_weight(j) / mass;
                }
            }
        }
        Ok(Operator { space: Arc::clone(space), matrix })
    }

    pub fn space(&self) -> &Arc<LatticeSpace> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.matrix.row_iter().map(|r| r.iter().copied().collect()).collect()
    }

    pub fn apply(&self, x: &LatticeVector) -> Result<LatticeVector> {
        self.space.check_same(x.space())?;
        Ok(LatticeVector::from_dvector(&self.space, &self.matrix * x.as_dvector()))
    }

    /// The product `self · other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Operator) -> Result<Operator> {
        self.space.check_same(&other.space)?;
        Ok(Operator { space: Arc::clone(&self.space), matrix: &self.matrix * &other.matrix })
    }

    /// Largest absolute entry of `self − other`.
    pub fn max_entry_distance(&self, other: &Operator) -> Result<f64> {
        self.space.check_same(&other.space)?;
        Ok(self.matrix.zip_fold(&other.matrix, 0.0_f64, |acc, a, b| acc.max((a - b).abs())))
    }

    pub fn min_entry(&self) -> f64 {
        self.matrix.min()
    }

    pub fn is_positive(&self, tol: f64) -> bool {
        self.min_entry() >= -tol
    }

    /// `max |T² − T|` entrywise.
    pub fn idempotence_defect(&self) -> f64 {
        let square = &self.matrix * &self.matrix;
        square.zip_fold(&self.matrix, 0.0_f64, |acc, a, b| acc.max((a - b).abs()))
    }

    pub fn is_projection(&self, tol: f64) -> bool {
        self.idempotence_defect() <= tol
    }

    /// Norm induced by the space norm.
    ///
    /// ```text
    /// sup:          max_i Σ_j |T_ij|
    /// weighted L1:  max_j (Σ_i w_i |T_ij|) / w_j
    /// ```
    pub fn operator_norm(&self) -> f64 {
        match self.space.norm_kind() {
            NormKind::Sup => self
                .matrix
                .row_iter()
                .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
                .fold(0.0, f64::max),
            NormKind::WeightedL1 => {
                let w = self.space.weights().expect("l1 spaces carry weights");
                self.matrix
                    .column_iter()
                    .enumerate()
                    .map(|(j, col)| col.iter().zip(w).map(|(v, wi)| wi * v.abs()).sum::<f64>() / w[j])
                    .fold(0.0, f64::max)
            }
        }
    }

    pub fn is_contractive(&self, tol: f64) -> bool {
        self.operator_norm() <= 1.0 + tol
    }

    /// Diagonal with every diagonal entry within `tol` of 0 or 1.
    pub fn is_band_projection(&self, tol: f64) -> bool {
        self.matrix.iter().enumerate().all(|(k, v)| {
            let (i, j) = (k % self.dim(), k / self.dim());
            if i == j {
                v.abs() <= tol || (v - 1.0).abs() <= tol
            } else {
                v.abs() <= tol
            }
        })
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.max_entry_distance(&Operator::identity(&self.space)).map(|d| d <= tol).unwrap_or(false)
    }
}
