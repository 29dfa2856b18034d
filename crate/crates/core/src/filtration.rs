//! Finite filtrations `E₁, .., E_N` and builders for the standard families.
//!
//! A filtration is a list of positive projections with `EₙEₘ = E_{min(n,m)}`.
//! [`Filtration::new`] only checks shapes so that broken inputs can still be
//! inspected; [`Filtration::validate`] checks the laws and reports the worst
//! offender for each.
//!
//! Indices are 1-based everywhere in the public API.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{LatticeSpace, LatticeVector};
use crate::operator::Operator;
use crate::partition::Partition;

/// Largest dyadic depth accepted by [`Filtration::dyadic`] (`2^10` cells).
pub const MAX_DYADIC_DEPTH: u32 = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct Filtration {
    space: Arc<LatticeSpace>,
    ops: Vec<Operator>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    Positivity,
    Idempotence,
    OrderLaw,
    Contractivity,
}

/// Worst observed deviation for one law, whether or not it passed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawWitness {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub magnitude: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawCheck {
    pub law: Law,
    pub passed: bool,
    pub worst: Option<LawWitness>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub horizon: usize,
    pub tol: f64,
    pub checks: Vec<LawCheck>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, law: Law) -> Option<&LawCheck> {
        self.checks.iter().find(|c| c.law == law)
    }
}

fn worst_of(items: impl Iterator<Item = LawWitness>) -> Option<LawWitness> {
    items.fold(None, |best: Option<LawWitness>, w| match best {
        Some(b) if b.magnitude >= w.magnitude => Some(b),
        _ => Some(w),
    })
}

impl Filtration {
    pub fn new(space: &Arc<LatticeSpace>, ops: Vec<Operator>) -> Result<Self> {
        if ops.is_empty() {
            return Err(Error::InvalidFiltration("a filtration needs at least one operator".into()));
        }
        for op in &ops {
            space.check_same(op.space())?;
        }
        Ok(Filtration { space: Arc::clone(space), ops })
    }

    /// Conditional expectations onto a chain of partitions, coarsest first.
    pub fn from_partitions(space: &Arc<LatticeSpace>, partitions: &[Partition]) -> Result<Self> {
        for pair in partitions.windows(2) {
            if !pair[1].refines(&pair[0]) {
                return Err(Error::InvalidPartition("partitions must refine along the chain".into()));
            }
        }
        let ops = partitions
            .iter()
            .map(|p| Operator::conditional_expectation(space, p))
            .collect::<Result<Vec<_>>>()?;
        Self::new(space, ops)
    }

    /// Sup space of dimension `n`; `Eₙ` keeps the first `n` coordinates.
    pub fn truncation(n: usize) -> Result<Self> {
        let space = LatticeSpace::sup(n)?;
        let ops = (1..=n)
            .map(|k| Operator::diagonal(&space, &(0..n).map(|i| if i < k { 1.0 } else { 0.0 }).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(&space, ops)
    }

    /// Sup space of dimension `2k`. `Eₙ` (n = 1..k) is the identity on the
    /// first `2n` coordinates and averages each later pair `(2j−1, 2j)`, so
    /// `E_k` is the identity. The all-pairs operator of index 0 is not stored.
    pub fn pairing(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("pairing needs k >= 1".into()));
        }
        let dim = 2 * k;
        let space = LatticeSpace::sup(dim)?;
        let partitions = (1..=k)
            .map(|n| {
                let blocks = (0..2 * n).map(|i| vec![i]).chain((n..k).map(|j| vec![2 * j, 2 * j + 1])).collect();
                Partition::new(dim, blocks)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_partitions(&space, &partitions)
    }

    /// `2^levels` equal cells of `[0,1]` under the L₁ norm; `Eₙ` averages over
    /// the dyadic intervals of length `2^{−n}`, n = 1..levels.
    pub fn dyadic(levels: u32) -> Result<Self> {
        if levels == 0 || levels > MAX_DYADIC_DEPTH {
            return Err(Error::InvalidParameter(format!("dyadic depth must be in 1..={MAX_DYADIC_DEPTH}")));
        }
        let dim = 1usize << levels;
        let space = LatticeSpace::uniform_l1(dim)?;
        let partitions = (1..=levels)
            .map(|n| Partition::contiguous(dim, 1 << (levels - n)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_partitions(&space, &partitions)
    }

    /// Random chain of `depth` strictly refining partitions of a weighted L₁
    /// space with random cell measures. Deterministic in `seed`.
    pub fn random_nested(dim: usize, depth: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if dim == 0 {
            return Err(Error::InvalidParameter("dim must be at least 1".into()));
        }
        let raw: Vec<f64> = (0..dim).map(|_| rng.random_range(0.25..1.0)).collect();
        let total: f64 = raw.iter().sum();
        let space = LatticeSpace::weighted_l1(raw.into_iter().map(|w| w / total).collect())?;
        Self::random_nested_in(&space, depth, &mut rng)
    }

    /// Random chain of `depth` strictly refining partitions of `space`.
    /// With `depth == dim` the last partition is all singletons.
    pub fn random_nested_in<R: Rng + ?Sized>(space: &Arc<LatticeSpace>, depth: usize, rng: &mut R) -> Result<Self> {
        let dim = space.dim();
        if depth == 0 || depth > dim {
            return Err(Error::InvalidParameter(format!("depth {depth} must be in 1..={dim}")));
        }
        let mut order: Vec<usize> = (0..dim).collect();
        order.shuffle(rng);
        let mut cuts: Vec<usize> = (1..dim).collect();
        cuts.shuffle(rng);
        // Number of active cuts per level; strictly increasing, so every
        // level strictly refines the one before.
        let mut counts = rand::seq::index::sample(rng, dim, depth).into_vec();
        counts.sort_unstable();

        let partitions = counts
            .into_iter()
            .map(|count| {
                let mut active = cuts[..count].to_vec();
                active.sort_unstable();
                let mut blocks = Vec::with_capacity(count + 1);
                let mut start = 0;
                for c in active.into_iter().chain(std::iter::once(dim)) {
                    blocks.push(order[start..c].to_vec());
                    start = c;
                }
                Partition::new(dim, blocks)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_partitions(space, &partitions)
    }

    pub fn space(&self) -> &Arc<LatticeSpace> {
        &self.space
    }

    pub fn horizon(&self) -> usize {
        self.ops.len()
    }

    pub fn operators(&self) -> &[Operator] {
        &self.ops
    }

    /// `Eₙ`, 1-based. Panics if `n` is outside `1..=horizon`.
    pub fn op(&self, n: usize) -> &Operator {
        &self.ops[n - 1]
    }

    pub fn last(&self) -> &Operator {
        self.ops.last().expect("filtrations are nonempty")
    }

    pub fn is_contractive(&self, tol: f64) -> bool {
        self.ops.iter().all(|e| e.is_contractive(tol))
    }

    /// Band-projection test on every operator that is not the identity.
    pub fn all_band_projections(&self, tol: f64) -> bool {
        self.ops.iter().all(|e| e.is_identity(tol) || e.is_band_projection(tol))
    }

    /// Finite-horizon density: `E_N` acts as the identity on every basis
    /// vector, up to `tol` in norm. Ranges are nested, so this is the
    /// strongest statement available from `E_N` alone.
    pub fn is_dense(&self, tol: f64) -> bool {
        self.density_defect() <= tol
    }

    /// `max_i ‖E_N eᵢ − eᵢ‖`.
    pub fn density_defect(&self) -> f64 {
        let last = self.last();
        (0..self.space.dim())
            .map(|i| {
                let e = LatticeVector::basis(&self.space, i).expect("index in range");
                last.apply(&e).and_then(|v| v.distance(&e)).expect("same space")
            })
            .fold(0.0, f64::max)
    }

    pub fn validate(&self, require_contractive: bool, tol: f64) -> ValidationReport {
        let horizon = self.horizon();
        let mut checks = Vec::with_capacity(4);

        let positivity = worst_of(
            self.ops.iter().enumerate().map(|(i, e)| LawWitness { n: i + 1, m: None, magnitude: (-e.min_entry()).max(0.0) }),
        );
        checks.push(LawCheck { law: Law::Positivity, passed: positivity.as_ref().is_none_or(|w| w.magnitude <= tol), worst: positivity });

        let idempotence = worst_of(
            self.ops.iter().enumerate().map(|(i, e)| LawWitness { n: i + 1, m: None, magnitude: e.idempotence_defect() }),
        );
        checks.push(LawCheck { law: Law::Idempotence, passed: idempotence.as_ref().is_none_or(|w| w.magnitude <= tol), worst: idempotence });

        // EₙEₘ = E_{min(n,m)} for n ≠ m; the diagonal is idempotence.
        let order = worst_of((1..=horizon).flat_map(|n| {
            (1..=horizon).filter(move |m| *m != n).map(move |m| {
                let product = self.op(n).compose(self.op(m)).expect("same space");
                let magnitude = product.max_entry_distance(self.op(n.min(m))).expect("same space");
                LawWitness { n, m: Some(m), magnitude }
            })
        }));
        checks.push(LawCheck { law: Law::OrderLaw, passed: order.as_ref().is_none_or(|w| w.magnitude <= tol), worst: order });

        if require_contractive {
            let contractivity = worst_of(
                self.ops
                    .iter()
                    .enumerate()
                    .map(|(i, e)| LawWitness { n: i + 1, m: None, magnitude: (e.operator_norm() - 1.0).max(0.0) }),
            );
            checks.push(LawCheck {
                law: Law::Contractivity,
                passed: contractivity.as_ref().is_none_or(|w| w.magnitude <= tol),
                worst: contractivity,
            });
        }

        ValidationReport { horizon, tol, checks }
    }
}
