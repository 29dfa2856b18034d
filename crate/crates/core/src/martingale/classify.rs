//! Classification of a finite sequence as a martingale, an 𝓔-martingale or an
//! X-martingale.
//!
//! The exact classes are decided with an absolute tolerance `tol`. The
//! X-martingale class is a limit statement, so on a finite horizon it is
//! judged from the tail of the defect profile
//! `dₙ = max_{n ≤ m ≤ N} ‖Eₙxₘ − xₙ‖` and may come out inconclusive.

use serde::{Deserialize, Serialize};

use super::MartingaleSeq;
use crate::error::{Error, Result};
use crate::filtration::Filtration;
use crate::lattice::DEFAULT_TOL;

/// `eps_x` defaults to this factor times `max(1, ‖A‖)`.
pub const DEFAULT_EPS_X_FACTOR: f64 = 0.05;
pub const DEFAULT_WINDOW_FRACTION: f64 = 0.25;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassifyOptions {
    pub tol: f64,
    /// Absolute X-martingale threshold; `None` means relative to `‖A‖`.
    pub eps_x: Option<f64>,
    pub window_fraction: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { tol: DEFAULT_TOL, eps_x: None, window_fraction: DEFAULT_WINDOW_FRACTION }
    }
}

impl ClassifyOptions {
    pub fn with_tol(tol: f64) -> Self {
        ClassifyOptions { tol, ..Default::default() }
    }

    pub fn eps_for(&self, seq: &MartingaleSeq) -> f64 {
        self.eps_x.unwrap_or_else(|| DEFAULT_EPS_X_FACTOR * seq.seq_norm().max(1.0))
    }

    /// First index of the tail window, `ceil((1 − fraction)·N)`, at least 1.
    pub fn window_start(&self, horizon: usize) -> usize {
        (((1.0 - self.window_fraction) * horizon as f64).ceil() as usize).clamp(1, horizon)
    }

    fn check(&self) -> Result<()> {
        if !(self.window_fraction > 0.0 && self.window_fraction <= 1.0) {
            return Err(Error::InvalidParameter(format!("window fraction {} must be in (0, 1]", self.window_fraction)));
        }
        if self.tol.is_nan() || self.tol < 0.0 {
            return Err(Error::InvalidParameter(format!("tolerance {} must be >= 0", self.tol)));
        }
        if let Some(eps) = self.eps_x {
            if eps.is_nan() || eps <= 0.0 {
                return Err(Error::InvalidParameter(format!("eps_x {eps} must be > 0")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum XVerdict {
    XMartingale,
    NotX,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub tol: f64,
    pub eps_x: f64,
    pub window_fraction: f64,
    pub window_start: usize,
}

/// Verdicts and defect data for one (sequence, filtration) pair.
///
/// `x_defects[N-1]` only sees the pair `(N, N)`, so it is `‖E_N x_N − x_N‖`,
/// which vanishes whenever `E_N` is the identity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub horizon: usize,
    pub is_martingale: bool,
    pub martingale_defect: f64,
    pub e_witness: Option<usize>,
    pub one_step_defects: Vec<f64>,
    pub terminal_defect: f64,
    pub x_defects: Vec<f64>,
    pub x_verdict: XVerdict,
    pub seq_norm: f64,
    pub tolerances: Tolerances,
}

/// All pairwise defects `‖Eₙxₘ − xₙ‖` for `1 ≤ n ≤ m ≤ N`.
#[derive(Clone, Debug, PartialEq)]
pub struct DefectTable {
    // rows[n-1][m-n]
    rows: Vec<Vec<f64>>,
}

impl DefectTable {
    pub fn compute(seq: &MartingaleSeq, filtration: &Filtration) -> Result<Self> {
        seq.check_horizon(filtration)?;
        let space = seq.space();
        let horizon = seq.horizon();
        let rows = (1..=horizon)
            .map(|n| {
                let e = filtration.op(n).matrix();
                let xn = seq.get(n).as_dvector();
                (n..=horizon).map(|m| space.norm_of(&(e * seq.get(m).as_dvector() - xn))).collect()
            })
            .collect();
        Ok(DefectTable { rows })
    }

    pub fn horizon(&self) -> usize {
        self.rows.len()
    }

    /// `‖Eₙxₘ − xₙ‖`, requires `n ≤ m`.
    pub fn get(&self, n: usize, m: usize) -> f64 {
        assert!(n <= m, "defects are only defined for n <= m");
        self.rows[n - 1][m - n]
    }

    pub fn max_defect(&self) -> f64 {
        self.rows.iter().flatten().copied().fold(0.0, f64::max)
    }

    /// `dₙ = max_{m ≥ n} ‖Eₙxₘ − xₙ‖`.
    pub fn profile(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.iter().copied().fold(0.0, f64::max)).collect()
    }
}

fn require_classifiable(seq: &MartingaleSeq, filtration: &Filtration) -> Result<()> {
    seq.check_horizon(filtration)?;
    if seq.horizon() < 2 {
        return Err(Error::InvalidSequence("classification needs a horizon of at least 2".into()));
    }
    Ok(())
}

/// `Eₙxₘ = xₙ` for every `m ≥ n`, within `tol`.
pub fn is_martingale(seq: &MartingaleSeq, filtration: &Filtration, tol: f64) -> Result<bool> {
    Ok(DefectTable::compute(seq, filtration)?.max_defect() <= tol)
}

/// `‖Eₘx_{m+1} − xₘ‖` for m = 1..N−1.
pub fn one_step_defects(seq: &MartingaleSeq, filtration: &Filtration) -> Result<Vec<f64>> {
    seq.check_horizon(filtration)?;
    let space = seq.space();
    Ok((1..seq.horizon())
        .map(|m| space.norm_of(&(filtration.op(m).matrix() * seq.get(m + 1).as_dvector() - seq.get(m).as_dvector())))
        .collect())
}

fn terminal_defect(seq: &MartingaleSeq, filtration: &Filtration) -> f64 {
    let n = seq.horizon();
    let x = seq.get(n).as_dvector();
    seq.space().norm_of(&(filtration.op(n).matrix() * x - x))
}

fn witness_from(one_step: &[f64], terminal: f64, horizon: usize, tol: f64) -> Option<usize> {
    // x_N has to lie in the range of E_N for the sequence to continue as a
    // martingale past the horizon.
    if terminal > tol {
        return None;
    }
    let l = one_step.iter().rposition(|d| *d > tol).map_or(1, |m| m + 2);
    // A witness at N constrains nothing.
    (l < horizon).then_some(l)
}

/// Minimal `l < N` with `Eₘx_{m+1} = xₘ` for `l ≤ m < N` and `E_N x_N = x_N`,
/// or `None`.
pub fn e_witness(seq: &MartingaleSeq, filtration: &Filtration, tol: f64) -> Result<Option<usize>> {
    require_classifiable(seq, filtration)?;
    let one_step = one_step_defects(seq, filtration)?;
    Ok(witness_from(&one_step, terminal_defect(seq, filtration), seq.horizon(), tol))
}

/// Minimal `l < N` with `Eₙxₘ = xₙ` whenever `m ≥ n ≥ l`, by checking every
/// pair. Agrees with [`e_witness`] on contractive filtrations.
pub fn two_index_witness(seq: &MartingaleSeq, filtration: &Filtration, tol: f64) -> Result<Option<usize>> {
    require_classifiable(seq, filtration)?;
    let table = DefectTable::compute(seq, filtration)?;
    let horizon = seq.horizon();
    Ok((1..horizon).find(|&l| (l..=horizon).all(|n| (n..=horizon).all(|m| table.get(n, m) <= tol))))
}

fn x_verdict(profile: &[f64], eps: f64, window_start: usize) -> XVerdict {
    let horizon = profile.len();
    let tail = &profile[window_start - 1..];
    let small = tail.iter().all(|d| *d <= eps);
    let settling = tail.windows(2).all(|w| w[1] <= w[0] + eps);
    if small && settling {
        return XVerdict::XMartingale;
    }
    // The last entry only sees the pair (N, N), so it is left out here.
    let lo = window_start.min(horizon - 1);
    if profile[lo - 1..horizon - 1].iter().all(|d| *d > 10.0 * eps) {
        XVerdict::NotX
    } else {
        XVerdict::Inconclusive
    }
}

fn require_contractive(filtration: &Filtration, tol: f64) -> Result<()> {
    for (i, e) in filtration.operators().iter().enumerate() {
        if !e.is_contractive(tol) {
            return Err(Error::NotContractive { index: i + 1, norm: e.operator_norm() });
        }
    }
    Ok(())
}

/// Finite-horizon X-martingale verdict. The filtration must be contractive.
pub fn classify_x(seq: &MartingaleSeq, filtration: &Filtration, opts: &ClassifyOptions) -> Result<XVerdict> {
    opts.check()?;
    require_classifiable(seq, filtration)?;
    require_contractive(filtration, opts.tol)?;
    let profile = DefectTable::compute(seq, filtration)?.profile();
    Ok(x_verdict(&profile, opts.eps_for(seq), opts.window_start(seq.horizon())))
}

pub fn classify(seq: &MartingaleSeq, filtration: &Filtration, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    opts.check()?;
    require_classifiable(seq, filtration)?;
    require_contractive(filtration, opts.tol)?;

    let horizon = seq.horizon();
    let table = DefectTable::compute(seq, filtration)?;
    let one_step = one_step_defects(seq, filtration)?;
    let terminal = terminal_defect(seq, filtration);
    let profile = table.profile();
    let eps_x = opts.eps_for(seq);
    let window_start = opts.window_start(horizon);
    let martingale_defect = table.max_defect();

    Ok(ClassificationReport {
        horizon,
        is_martingale: martingale_defect <= opts.tol,
        martingale_defect,
        e_witness: witness_from(&one_step, terminal, horizon, opts.tol),
        one_step_defects: one_step,
        terminal_defect: terminal,
        x_verdict: x_verdict(&profile, eps_x, window_start),
        x_defects: profile,
        seq_norm: seq.seq_norm(),
        tolerances: Tolerances { tol: opts.tol, eps_x, window_fraction: opts.window_fraction, window_start },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{LatticeSpace, LatticeVector};
    use crate::martingale::{gen_haar, gen_harmonic_tail};
    use crate::operator::Operator;

    #[test]
    fn from_terminal_is_a_martingale() {
        let f = Filtration::dyadic(3).unwrap();
        let x = LatticeVector::from_fn(f.space(), |i| (i as f64 - 3.5).powi(3));
        let a = MartingaleSeq::from_terminal(&f, &x).unwrap();
        let report = classify(&a, &f, &ClassifyOptions::default()).unwrap();
        assert!(report.is_martingale);
        assert_eq!(report.e_witness, Some(1));
        assert_eq!(report.x_verdict, XVerdict::XMartingale);
        assert!(report.x_defects.iter().all(|d| *d <= 1e-12));
    }

    #[test]
    fn scaled_head_is_eventual() {
        let (f, haar) = gen_haar(3).unwrap();
        let y = haar.scale_head(2.0);
        assert!(!is_martingale(&y, &f, DEFAULT_TOL).unwrap());
        assert_eq!(e_witness(&y, &f, DEFAULT_TOL).unwrap(), Some(2));
        assert_eq!(two_index_witness(&y, &f, DEFAULT_TOL).unwrap(), Some(2));
    }

    #[test]
    fn null_sequence_profile() {
        let n = 64;
        let f = Filtration::truncation(n).unwrap();
        let e1 = LatticeVector::basis(f.space(), 0).unwrap();
        let a = MartingaleSeq::null(&e1, n).unwrap();
        let profile = DefectTable::compute(&a, &f).unwrap().profile();
        for (i, d) in profile.iter().enumerate() {
            let k = (i + 1) as f64;
            assert!((d - (1.0 / k - 1.0 / n as f64)).abs() <= 1e-12, "d_{} = {d}", i + 1);
        }
        assert_eq!(classify_x(&a, &f, &ClassifyOptions::default()).unwrap(), XVerdict::XMartingale);
        assert_eq!(e_witness(&a, &f, DEFAULT_TOL).unwrap(), None);
    }

    #[test]
    fn harmonic_tail_is_x_but_not_e() {
        let h = gen_harmonic_tail(64).unwrap();
        let report = classify(&h.limit, &h.filtration, &ClassifyOptions::default()).unwrap();
        assert_eq!(report.e_witness, None);
        assert_eq!(report.x_verdict, XVerdict::XMartingale);
        for n in 1..64 {
            assert!((report.x_defects[n - 1] - 1.0 / n as f64).abs() <= 1e-12);
        }
        assert_eq!(report.x_defects[63], 0.0);
    }

    #[test]
    fn constant_last_basis_vector_is_not_x() {
        let f = Filtration::truncation(16).unwrap();
        let e = LatticeVector::basis(f.space(), 15).unwrap();
        let a = MartingaleSeq::new(f.space(), vec![e; 16]).unwrap();
        let profile = DefectTable::compute(&a, &f).unwrap().profile();
        assert!(profile[..15].iter().all(|d| *d == 1.0));
        assert_eq!(classify_x(&a, &f, &ClassifyOptions::default()).unwrap(), XVerdict::NotX);
    }

    #[test]
    fn inconclusive_when_window_is_mixed() {
        // d = 1 until late, then exact: the window sees both.
        let f = Filtration::truncation(8).unwrap();
        let e8 = LatticeVector::basis(f.space(), 7).unwrap();
        let mut v = vec![e8.clone(); 6];
        v.push(LatticeVector::zeros(f.space()));
        v.push(LatticeVector::zeros(f.space()));
        let a = MartingaleSeq::new(f.space(), v).unwrap();
        assert_eq!(classify_x(&a, &f, &ClassifyOptions::default()).unwrap(), XVerdict::Inconclusive);
    }

    #[test]
    fn witness_at_horizon_is_vacuous() {
        let f = Filtration::truncation(4).unwrap();
        let zero = LatticeVector::zeros(f.space());
        let e3 = LatticeVector::basis(f.space(), 2).unwrap();
        let e4 = LatticeVector::basis(f.space(), 3).unwrap();
        // only the last one-step check fails
        let a = MartingaleSeq::new(f.space(), vec![zero.clone(), zero.clone(), e3, zero.clone()]).unwrap();
        assert_eq!(one_step_defects(&a, &f).unwrap(), vec![0.0, 0.0, 1.0]);
        assert_eq!(e_witness(&a, &f, DEFAULT_TOL).unwrap(), None);
        assert_eq!(two_index_witness(&a, &f, DEFAULT_TOL).unwrap(), None);
        // x₄ is free: it only has to lie in the range of E₄ = I
        let b = MartingaleSeq::new(f.space(), vec![zero.clone(), zero.clone(), zero, e4.scaled(0.5)]).unwrap();
        assert_eq!(e_witness(&b, &f, DEFAULT_TOL).unwrap(), Some(1));
    }

    #[test]
    fn terminal_vector_outside_last_range_has_no_witness() {
        let f = Filtration::truncation(3).unwrap();
        let f2 = Filtration::new(f.space(), f.operators()[..2].iter().cloned().chain([f.op(2).clone()]).collect()).unwrap();
        let e3 = LatticeVector::basis(f.space(), 2).unwrap();
        let a = MartingaleSeq::new(f.space(), vec![LatticeVector::zeros(f.space()); 2].into_iter().chain([e3]).collect())
            .unwrap();
        assert_eq!(e_witness(&a, &f2, DEFAULT_TOL).unwrap(), None);
        assert_eq!(two_index_witness(&a, &f2, DEFAULT_TOL).unwrap(), None);
        assert_eq!(e_witness(&a, &f, DEFAULT_TOL).unwrap(), Some(1));
    }

    #[test]
    fn non_contractive_filtration_is_rejected() {
        let space = LatticeSpace::sup(2).unwrap();
        // (x₁, x₂) ↦ (x₁ + x₂, 0) is a positive projection of norm 2
        let e = Operator::from_rows(&space, &[vec![1.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(e.is_projection(0.0));
        let f = Filtration::new(&space, vec![e.clone(), e]).unwrap();
        let a = MartingaleSeq::new(&space, vec![LatticeVector::zeros(&space); 2]).unwrap();
        assert!(matches!(classify_x(&a, &f, &ClassifyOptions::default()), Err(Error::NotContractive { index: 1, .. })));
        assert!(e_witness(&a, &f, DEFAULT_TOL).is_ok());
    }

    #[test]
    fn short_horizon_and_bad_options() {
        let f = Filtration::truncation(1).unwrap();
        let a = MartingaleSeq::new(f.space(), vec![LatticeVector::zeros(f.space())]).unwrap();
        assert!(classify(&a, &f, &ClassifyOptions::default()).is_err());
        let f = Filtration::truncation(4).unwrap();
        let a = MartingaleSeq::new(f.space(), vec![LatticeVector::zeros(f.space()); 4]).unwrap();
        let bad = ClassifyOptions { window_fraction: 0.0, ..Default::default() };
        assert!(classify(&a, &f, &bad).is_err());
        let bad = ClassifyOptions { eps_x: Some(-1.0), ..Default::default() };
        assert!(classify(&a, &f, &bad).is_err());
    }

    #[test]
    fn window_start_rounding() {
        let o = ClassifyOptions::default();
        assert_eq!(o.window_start(64), 48);
        assert_eq!(o.window_start(16), 12);
        assert_eq!(o.window_start(3), 3);
        assert_eq!(ClassifyOptions { window_fraction: 1.0, ..o }.window_start(10), 1);
    }
}
