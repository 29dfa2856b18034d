use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::{Status, TheoremId, TheoremResult};
use crate::error::{Error, Result};
use crate::filtration::Filtration;
use crate::lattice::LatticeVector;
use crate::martingale::{
    classify, classify_x, e_witness, gen_haar, gen_harmonic_tail, gen_pairing_example, one_step_defects,
    two_index_witness, ClassificationReport, ClassifyOptions, DefectTable, MartingaleSeq, XVerdict,
};
use crate::random::{
    random_e_martingale, random_filtration_spec, random_martingale, random_sequence, random_unit_vector,
    random_vector, random_x_martingale, trial_rng,
};

const FINITE_NOTE: &str = "finite-horizon evidence, consistent with the infinite statement";

fn describe(f: &Filtration) -> String {
    format!("{} space, dim {}, horizon {}", f.space().norm_kind(), f.space().dim(), f.horizon())
}

fn result(id: TheoremId, instance: String, status: Status, witness: serde_json::Value, seed: Option<u64>, note: &str) -> TheoremResult {
    TheoremResult { id, instance, status, witness, seed, note: note.to_string() }
}

// ---------------------------------------------------------------------------
// nesting

/// Classification of one instance together with every nesting implication it
/// breaks (normally none).
#[derive(Clone, Debug, Serialize)]
pub struct NestingCheck {
    pub report: ClassificationReport,
    pub two_index_witness: Option<usize>,
    pub broken: Vec<&'static str>,
}

impl NestingCheck {
    pub fn holds(&self) -> bool {
        self.broken.is_empty()
    }
}

/// Martingale ⇒ witness 1 ⇒ X-martingale, plus agreement of the one-step and
/// two-index 𝓔-witnesses. Only implications are checked.
pub fn check_nesting(seq: &MartingaleSeq, filtration: &Filtration, opts: &ClassifyOptions) -> Result<NestingCheck> {
    let report = classify(seq, filtration, opts)?;
    let two = two_index_witness(seq, filtration, opts.tol)?;
    let mut broken = Vec::new();
    if report.is_martingale && report.e_witness != Some(1) {
        broken.push("martingale => e-witness 1");
    }
    if report.e_witness == Some(1) && report.x_verdict != XVerdict::XMartingale {
        broken.push("e-witness 1 => X_MARTINGALE");
    }
    if matches!(report.e_witness, Some(l) if l <= report.tolerances.window_start)
        && report.x_verdict != XVerdict::XMartingale
    {
        broken.push("e-witness before tail window => X_MARTINGALE");
    }
    if report.e_witness != two {
        broken.push("one-step witness = two-index witness");
    }
    Ok(NestingCheck { report, two_index_witness: two, broken })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum SeqKind {
    Martingale,
    Eventual,
    XPerturbed,
    Null,
    ScaleHead,
    Arbitrary,
}

#[derive(Debug)]
struct NestingTrial {
    label: String,
    is_martingale: bool,
    e_member: bool,
    x_member: bool,
    broken: Vec<&'static str>,
}

fn nesting_trial(seed: u64, trial: u64, opts: &ClassifyOptions) -> Result<NestingTrial> {
    let mut rng = trial_rng(seed, trial);
    let spec = random_filtration_spec(&mut rng);
    let f = spec.build()?;
    let kind = match rng.random_range(0..6) {
        0 => SeqKind::Martingale,
        1 => SeqKind::Eventual,
        2 => SeqKind::XPerturbed,
        3 => SeqKind::Null,
        4 => SeqKind::ScaleHead,
        _ => SeqKind::Arbitrary,
    };
    let seq = match kind {
        SeqKind::Martingale => random_martingale(&f, &mut rng),
        SeqKind::Eventual => random_e_martingale(&f, &mut rng).0,
        SeqKind::XPerturbed => random_x_martingale(&f, &mut rng),
        SeqKind::Null => MartingaleSeq::null(&random_unit_vector(f.space(), &mut rng), f.horizon())?,
        SeqKind::ScaleHead => random_martingale(&f, &mut rng).scale_head(rng.random_range(1.5..3.0)),
        SeqKind::Arbitrary => random_sequence(&f, &mut rng),
    };
    let check = check_nesting(&seq, &f, opts)?;
    Ok(NestingTrial {
        label: format!("trial {trial}: {spec}, {kind:?}"),
        is_martingale: check.report.is_martingale,
        e_member: check.report.e_witness.is_some(),
        x_member: check.report.x_verdict == XVerdict::XMartingale,
        broken: check.broken,
    })
}

/// The constructed instances: dyadic, pairing, harmonic tail and its family,
/// a null sequence and a scaled head.
fn fixed_nesting_instances() -> Result<Vec<(String, Filtration, MartingaleSeq)>> {
    let mut out = Vec::new();
    let (f, haar) = gen_haar(3)?;
    out.push(("haar(3)".to_string(), f.clone(), haar.clone()));
    out.push(("haar(3).abs".to_string(), f.clone(), haar.abs_seq()));
    out.push(("scale_head(haar(3), 2)".to_string(), f, haar.scale_head(2.0)));
    let (f, pairing) = gen_pairing_example(3)?;
    out.push(("pairing(3)".to_string(), f.clone(), pairing.clone()));
    out.push(("pairing(3).abs".to_string(), f, pairing.abs_seq()));
    let h = gen_harmonic_tail(64)?;
    out.push(("harmonic(64).limit".to_string(), h.filtration.clone(), h.limit.clone()));
    for (m, member) in h.family.iter().enumerate() {
        out.push((format!("harmonic(64).A^{}", m + 1), h.filtration.clone(), member.clone()));
    }
    let e1 = LatticeVector::basis(h.filtration.space(), 0)?;
    out.push(("null(e1, 64)".to_string(), h.filtration.clone(), MartingaleSeq::null(&e1, 64)?));
    Ok(out)
}

/// Random instances from every builder and sequence generator, followed by
/// the fixed constructed instances.
pub fn verify_nesting(seed: u64, trials: usize, opts: &ClassifyOptions) -> Result<TheoremResult> {
    let mut outcomes =
        (0..trials as u64).into_par_iter().map(|t| nesting_trial(seed, t, opts)).collect::<Result<Vec<_>>>()?;
    for (label, f, seq) in fixed_nesting_instances()? {
        let check = check_nesting(&seq, &f, opts)?;
        outcomes.push(NestingTrial {
            label,
            is_martingale: check.report.is_martingale,
            e_member: check.report.e_witness.is_some(),
            x_member: check.report.x_verdict == XVerdict::XMartingale,
            broken: check.broken,
        });
    }

    let count = |p: &dyn Fn(&NestingTrial) -> bool| outcomes.iter().filter(|o| p(o)).count();
    let violations: Vec<_> = outcomes
        .iter()
        .filter(|o| !o.broken.is_empty())
        .map(|o| json!({"instance": o.label, "broken": o.broken}))
        .collect();
    let witness = json!({
        "instances": outcomes.len(),
        "random_trials": trials,
        "martingales": count(&|o| o.is_martingale),
        "e_not_martingale": count(&|o| o.e_member && !o.is_martingale),
        "x_not_e": count(&|o| o.x_member && !o.e_member),
        "outside_x": count(&|o| !o.x_member),
        "violations": violations,
    });
    let status = if violations.is_empty() { Status::Confirmed } else { Status::Violated };
    Ok(result(
        TheoremId::Nesting,
        format!("{trials} random instances over all builders plus {} constructed", outcomes.len() - trials),
        status,
        witness,
        Some(seed),
        FINITE_NOTE,
    ))
}

// ---------------------------------------------------------------------------
// closedness of M_X

/// Random base X-martingale `A` and the family `Aᵏ = A + Bᵏ` with null
/// perturbations of size `1/k²`, k = 1..8.
pub fn verify_mx_closed(filtration: &Filtration, seed: u64, opts: &ClassifyOptions) -> Result<TheoremResult> {
    let mut rng = trial_rng(seed, 0);
    let limit = random_x_martingale(filtration, &mut rng);
    let w = random_unit_vector(filtration.space(), &mut rng);
    let perturbation = MartingaleSeq::null(&w, filtration.horizon())?;
    let family = (1..=8)
        .map(|k| limit.plus(&perturbation.scaled(1.0 / (k * k) as f64)))
        .collect::<Result<Vec<_>>>()?;
    let mut r = verify_mx_closed_family(filtration, &family, &limit, opts)?;
    r.seed = Some(seed);
    Ok(r)
}

/// Closedness check for an explicit family converging to `limit`.
///
/// Premise: every member is an X-martingale and the last member is within
/// `eps_x` of the limit. The proof's estimate
/// `dₙ(A) ≤ 2‖Aᵏ − A‖ + dₙ(Aᵏ)` is replayed for every member and index.
pub fn verify_mx_closed_family(
    filtration: &Filtration,
    family: &[MartingaleSeq],
    limit: &MartingaleSeq,
    opts: &ClassifyOptions,
) -> Result<TheoremResult> {
    let instance = format!("{} members on {}", family.len(), describe(filtration));
    if family.is_empty() {
        return Err(Error::InvalidParameter("the family must have at least one member".into()));
    }
    let eps = opts.eps_for(limit);

    for (k, member) in family.iter().enumerate() {
        let verdict = classify_x(member, filtration, opts)?;
        if verdict != XVerdict::XMartingale {
            return Ok(result(
                TheoremId::MxClosed,
                instance,
                Status::Inconclusive,
                json!({"premise": "members are X-martingales", "member": k + 1, "verdict": verdict}),
                None,
                "premise unmet",
            ));
        }
    }
    let distances = family.iter().map(|m| m.distance(limit)).collect::<Result<Vec<_>>>()?;
    let last = *distances.last().expect("nonempty");
    if last > eps {
        return Ok(result(
            TheoremId::MxClosed,
            instance,
            Status::Inconclusive,
            json!({"premise": "family approaches the limit", "last_distance": last, "eps_x": eps}),
            None,
            "premise unmet",
        ));
    }

    let limit_profile = DefectTable::compute(limit, filtration)?.profile();
    let mut worst = (f64::NEG_INFINITY, 0, 0);
    for (k, member) in family.iter().enumerate() {
        let profile = DefectTable::compute(member, filtration)?.profile();
        for n in 0..profile.len() {
            let slack = limit_profile[n] - (2.0 * distances[k] + profile[n]);
            if slack > worst.0 {
                worst = (slack, k + 1, n + 1);
            }
        }
    }
    let limit_verdict = classify_x(limit, filtration, opts)?;
    let witness = json!({
        "distances": distances,
        "limit_verdict": limit_verdict,
        "limit_profile_tail": &limit_profile[opts.window_start(limit.horizon()) - 1..],
        "estimate_worst_slack": {"value": worst.0, "member": worst.1, "n": worst.2},
    });
    let status = if worst.0 > opts.tol || limit_verdict == XVerdict::NotX {
        Status::Violated
    } else if limit_verdict == XVerdict::XMartingale {
        Status::Confirmed
    } else {
        Status::Inconclusive
    };
    Ok(result(TheoremId::MxClosed, instance, status, witness, None, FINITE_NOTE))
}

// ---------------------------------------------------------------------------
// convergent X-martingales

/// Premise shared by the lemma and the approximation result: `A` is an
/// X-martingale and its tail stays within `eps_x` of `x`.
fn convergent_premise(
    seq: &MartingaleSeq,
    x: &LatticeVector,
    filtration: &Filtration,
    opts: &ClassifyOptions,
) -> Result<Option<serde_json::Value>> {
    let verdict = classify_x(seq, filtration, opts)?;
    if verdict != XVerdict::XMartingale {
        return Ok(Some(json!({"premise": "A is an X-martingale", "verdict": verdict})));
    }
    let start = opts.window_start(seq.horizon());
    let tail_gap =
        (start..=seq.horizon()).map(|n| seq.get(n).distance(x)).collect::<Result<Vec<_>>>()?.into_iter().fold(0.0, f64::max);
    let eps = opts.eps_for(seq);
    if tail_gap > eps {
        return Ok(Some(json!({"premise": "x_n -> x over the tail", "tail_gap": tail_gap, "eps_x": eps})));
    }
    Ok(None)
}

/// `gₙ = ‖Eₙx − xₙ‖` for n = 1..N.
fn limit_gaps(seq: &MartingaleSeq, x: &LatticeVector, filtration: &Filtration) -> Result<Vec<f64>> {
    (1..=seq.horizon()).map(|n| filtration.op(n).apply(x)?.distance(seq.get(n))).collect()
}

fn suffix_max(values: &[f64]) -> Vec<f64> {
    let mut out = values.to_vec();
    for i in (0..out.len().saturating_sub(1)).rev() {
        out[i] = out[i].max(out[i + 1]);
    }
    out
}

/// Checks `eₙ = max_{m ≥ n} ‖Eₘx − xₘ‖` is small over the tail and replays
/// `‖Eₙx − xₙ‖ ≤ ‖x − xₘ‖ + ‖Eₙxₘ − xₙ‖` for every `m ≥ n`.
pub fn verify_lemma_convergent(
    seq: &MartingaleSeq,
    x: &LatticeVector,
    filtration: &Filtration,
    opts: &ClassifyOptions,
) -> Result<TheoremResult> {
    let instance = describe(filtration);
    if let Some(w) = convergent_premise(seq, x, filtration, opts)? {
        return Ok(result(TheoremId::LemmaConvergent, instance, Status::Inconclusive, w, None, "premise unmet"));
    }
    let gaps = limit_gaps(seq, x, filtration)?;
    let table = DefectTable::compute(seq, filtration)?;
    let horizon = seq.horizon();
    let mut worst = (f64::NEG_INFINITY, 0, 0);
    for n in 1..=horizon {
        for m in n..=horizon {
            let slack = gaps[n - 1] - (seq.get(m).distance(x)? + table.get(n, m));
            if slack > worst.0 {
                worst = (slack, n, m);
            }
        }
    }
    let tail = suffix_max(&gaps);
    let start = opts.window_start(horizon);
    let tail_max = tail[start - 1];
    let eps = opts.eps_for(seq);
    let witness = json!({
        "e": tail,
        "tail_max": tail_max,
        "eps_x": eps,
        "estimate_worst_slack": {"value": worst.0, "n": worst.1, "m": worst.2},
    });
    let status = if worst.0 > opts.tol {
        Status::Violated
    } else if tail_max <= eps {
        Status::Confirmed
    } else {
        Status::Inconclusive
    };
    Ok(result(TheoremId::LemmaConvergent, instance, status, witness, None, FINITE_NOTE))
}

/// Builds `Aᵐ = tail_modify(A, x, m)` for m = 1..N−1 and checks that each is
/// an 𝓔-martingale with witness at most `m + 1` and that
/// `‖Aᵐ − A‖ = max_{n>m} ‖Eₙx − xₙ‖` decreases to within `eps_x`.
///
/// For `m = N − 1` the witness would sit at the horizon, where it constrains
/// nothing, so that member is only used for the distance.
pub fn verify_halfdense(
    seq: &MartingaleSeq,
    x: &LatticeVector,
    filtration: &Filtration,
    opts: &ClassifyOptions,
) -> Result<TheoremResult> {
    let instance = describe(filtration);
    if let Some(w) = convergent_premise(seq, x, filtration, opts)? {
        return Ok(result(TheoremId::Halfdense, instance, Status::Inconclusive, w, None, "premise unmet"));
    }
    let horizon = seq.horizon();
    let tail = suffix_max(&limit_gaps(seq, x, filtration)?);
    let mut distances = Vec::with_capacity(horizon - 1);
    let mut bad_witness = Vec::new();
    let mut bad_distance = Vec::new();
    for m in 1..horizon {
        let approx = seq.tail_modify(filtration, x, m)?;
        if m + 1 < horizon {
            let l = e_witness(&approx, filtration, opts.tol)?;
            if !matches!(l, Some(l) if l <= m + 1) {
                bad_witness.push(json!({"m": m, "witness": l}));
            }
        }
        let d = approx.distance(seq)?;
        if (d - tail[m]).abs() > opts.tol {
            bad_distance.push(json!({"m": m, "distance": d, "expected": tail[m]}));
        }
        distances.push(d);
    }
    let monotone = distances.windows(2).all(|w| w[1] <= w[0] + opts.tol);
    let eps = opts.eps_for(seq);
    let start = opts.window_start(horizon);
    let tail_distance = distances[(start - 1).min(distances.len() - 1)];
    let witness = json!({
        "distances": distances,
        "tail_distance": tail_distance,
        "eps_x": eps,
        "witness_failures": bad_witness,
        "distance_mismatches": bad_distance,
        "horizon_limited_member": horizon - 1,
    });
    let status = if !bad_witness.is_empty() || !bad_distance.is_empty() || !monotone {
        Status::Violated
    } else if tail_distance <= eps {
        Status::Confirmed
    } else {
        Status::Inconclusive
    };
    Ok(result(TheoremId::Halfdense, instance, status, witness, None, FINITE_NOTE))
}

// ---------------------------------------------------------------------------
// the harmonic tail family

/// Reproduces the harmonic tail counterexample at horizon `n`: every `Aᵐ`
/// with a non-vacuous witness (m ≤ N−2) is an 𝓔-martingale with witness at
/// most `m + 1`, `‖Aᵐ − A‖ = 1/m` for m = 1..N−1, and the limit `A` has no
/// 𝓔-witness while its defect profile is `1/n`.
///
/// `A^{N−1}` differs from `A` only in its last term, so the two have the same
/// one-step pattern and no finite-horizon rule can give one a witness and
/// not the other; it is reported under `horizon_limited`.
pub fn verify_me_not_closed(n: usize, opts: &ClassifyOptions) -> Result<TheoremResult> {
    let h = gen_harmonic_tail(n)?;
    let f = &h.filtration;
    let mut failures = Vec::new();
    let mut witnesses = Vec::new();
    for m in 1..n {
        let member = h.member(m);
        let l = e_witness(member, f, opts.tol)?;
        witnesses.push(l);
        if m + 1 < n && !matches!(l, Some(l) if l <= m + 1) {
            failures.push(json!({"check": "e-witness <= m+1", "m": m, "witness": l}));
        }
        let d = member.distance(&h.limit)?;
        if (d - 1.0 / m as f64).abs() > opts.tol {
            failures.push(json!({"check": "distance = 1/m", "m": m, "distance": d}));
        }
    }
    let report = classify(&h.limit, f, opts)?;
    if report.e_witness.is_some() {
        failures.push(json!({"check": "limit has no e-witness", "witness": report.e_witness}));
    }
    if report.x_verdict != XVerdict::XMartingale {
        failures.push(json!({"check": "limit is an X-martingale", "verdict": report.x_verdict}));
    }
    for k in 1..n {
        if (report.x_defects[k - 1] - 1.0 / k as f64).abs() > opts.tol {
            failures.push(json!({"check": "d_n = 1/n", "n": k, "d": report.x_defects[k - 1]}));
        }
    }
    let last_one_step = one_step_defects(h.member(n - 1), f)?;
    let witness = json!({
        "member_witnesses": witnesses,
        "limit_witness": report.e_witness,
        "limit_verdict": report.x_verdict,
        "failures": failures,
        "horizon_limited": {"m": n - 1, "witness": witnesses[n - 2], "one_step_defects": last_one_step},
    });
    let status = if failures.is_empty() { Status::Confirmed } else { Status::Violated };
    Ok(result(TheoremId::MeNotClosed, format!("harmonic tail, N = {n}"), status, witness, None, FINITE_NOTE))
}

// ---------------------------------------------------------------------------
// lattice structure

/// Closure mode on `F` plus the two counterexamples (pairing, dyadic) where
/// `|A|` leaves the 𝓔-martingales, so `M_E` is not a vector lattice there.
///
/// Closure failures on a band-projection filtration are violations. A
/// non-band filtration whose random trials all stay closed is flagged as a
/// candidate for the open characterization question; nothing is claimed
/// about it.
pub fn verify_vl_equivalence(
    filtration: &Filtration,
    seed: u64,
    trials: usize,
    opts: &ClassifyOptions,
) -> Result<TheoremResult> {
    let closed = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let (a, _) = random_e_martingale(filtration, &mut rng);
            Ok(e_witness(&a.abs_seq(), filtration, opts.tol)?.is_some())
        })
        .collect::<Result<Vec<bool>>>()?;
    let closed_count = closed.iter().filter(|c| **c).count();
    let first_open = closed.iter().position(|c| !*c);
    let band = filtration.all_band_projections(opts.tol);

    let mut counterexamples = Vec::new();
    let mut reproduced = true;
    let cases: [(&str, (Filtration, MartingaleSeq)); 2] = [("pairing(3)", gen_pairing_example(3)?), ("haar(3)", gen_haar(3)?)];
    for (name, (f, a)) in cases {
        let a_witness = e_witness(&a, &f, opts.tol)?;
        let abs = a.abs_seq();
        let abs_witness = e_witness(&abs, &f, opts.tol)?;
        let defects = one_step_defects(&abs, &f)?;
        reproduced &= a_witness.is_some() && abs_witness.is_none();
        counterexamples.push(json!({
            "instance": name,
            "a_witness": a_witness,
            "abs_witness": abs_witness,
            "abs_one_step_defects": defects,
        }));
    }

    let witness = json!({
        "closure_trials": trials,
        "closure_holds": closed_count,
        "first_open_trial": first_open,
        "band_projections": band,
        "open_question_candidate": !band && trials > 0 && closed_count == trials,
        "counterexamples": counterexamples,
    });
    let status = if !reproduced || (band && closed_count < trials) { Status::Violated } else { Status::Confirmed };
    Ok(result(TheoremId::VlEquivalence, describe(filtration), status, witness, Some(seed), FINITE_NOTE))
}

/// Random 𝓔-martingales keep an 𝓔-witness under `|·|` no later than their
/// own, and random X-martingales satisfy
/// `‖Eₙ|xₘ| − |xₙ|‖ ≤ ‖Eₙxₘ − xₙ‖` for every pair. Requires every
/// non-identity operator to be a band projection.
pub fn verify_band_propositions(
    filtration: &Filtration,
    seed: u64,
    trials: usize,
    opts: &ClassifyOptions,
) -> Result<TheoremResult> {
    let instance = describe(filtration);
    if !filtration.all_band_projections(opts.tol) {
        let offender = filtration
            .operators()
            .iter()
            .position(|e| !(e.is_identity(opts.tol) || e.is_band_projection(opts.tol)))
            .map(|i| i + 1);
        return Ok(result(
            TheoremId::BandPropositions,
            instance,
            Status::Inconclusive,
            json!({"premise": "band projections", "first_non_band_operator": offender}),
            Some(seed),
            "premise unmet",
        ));
    }

    let failures = (0..trials as u64)
        .into_par_iter()
        .map(|t| -> Result<Vec<serde_json::Value>> {
            let mut rng = trial_rng(seed, t);
            let mut out = Vec::new();

            let (a, _) = random_e_martingale(filtration, &mut rng);
            let l = e_witness(&a, filtration, opts.tol)?;
            let l_abs = e_witness(&a.abs_seq(), filtration, opts.tol)?;
            let ok = match (l, l_abs) {
                (Some(l), Some(l_abs)) => l_abs <= l,
                (None, _) => true,
                _ => false,
            };
            if !ok {
                out.push(json!({"trial": t, "check": "abs keeps e-witness", "witness": l, "abs_witness": l_abs}));
            }

            let b = random_x_martingale(filtration, &mut rng);
            let abs = b.abs_seq();
            let table = DefectTable::compute(&b, filtration)?;
            let abs_table = DefectTable::compute(&abs, filtration)?;
            let horizon = b.horizon();
            for n in 1..=horizon {
                for m in n..=horizon {
                    if abs_table.get(n, m) > table.get(n, m) + opts.tol {
                        out.push(json!({"trial": t, "check": "pair domination", "n": n, "m": m,
                                        "abs": abs_table.get(n, m), "orig": table.get(n, m)}));
                    }
                }
            }
            if classify_x(&b, filtration, opts)? == XVerdict::XMartingale
                && classify_x(&abs, filtration, opts)? != XVerdict::XMartingale
            {
                out.push(json!({"trial": t, "check": "abs keeps X verdict"}));
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();

    let status = if failures.is_empty() { Status::Confirmed } else { Status::Violated };
    let witness = json!({"trials": trials, "failures": failures});
    Ok(result(TheoremId::BandPropositions, instance, status, witness, Some(seed), FINITE_NOTE))
}

// ---------------------------------------------------------------------------
// dense filtrations

/// Minimal `l` with `‖|Eₙx| − Eₙ|x|‖ ≤ tol` for every `n ≥ l`, if any.
pub fn filt_char_index(filtration: &Filtration, x: &LatticeVector, tol: f64) -> Result<Option<usize>> {
    let abs_x = x.abs();
    let mut l = None;
    for n in (1..=filtration.horizon()).rev() {
        let e = filtration.op(n);
        if e.apply(x)?.abs().distance(&e.apply(&abs_x)?)? > tol {
            break;
        }
        l = Some(n);
    }
    Ok(l)
}

/// Computes the commutation index for every basis vector and `samples`
/// random vectors. The hypotheses (density, and closure of `|·|` on the
/// martingales `(Eₙx)`) are checked first; if they fail the indices are still
/// reported but the status is inconclusive.
pub fn verify_filt_char(
    filtration: &Filtration,
    seed: u64,
    samples: usize,
    opts: &ClassifyOptions,
) -> Result<TheoremResult> {
    let space = filtration.space();
    let dense = filtration.is_dense(opts.tol);
    let mut closure_failures = 0;
    let mut random_xs = Vec::with_capacity(samples);
    for t in 0..samples as u64 {
        let mut rng = trial_rng(seed, t);
        let x = random_vector(space, &mut rng);
        let a = MartingaleSeq::from_terminal(filtration, &x)?;
        if e_witness(&a.abs_seq(), filtration, opts.tol)?.is_none() {
            closure_failures += 1;
        }
        random_xs.push(x);
    }
    let basis_indices = (0..space.dim())
        .map(|i| filt_char_index(filtration, &LatticeVector::basis(space, i)?, opts.tol))
        .collect::<Result<Vec<_>>>()?;
    let random_indices =
        random_xs.iter().map(|x| filt_char_index(filtration, x, opts.tol)).collect::<Result<Vec<_>>>()?;
    let all_found = basis_indices.iter().chain(&random_indices).all(Option::is_some);

    let premises = dense && closure_failures == 0;
    let witness = json!({
        "dense": dense,
        "closure_failures": closure_failures,
        "samples": samples,
        "basis_indices": basis_indices,
        "random_indices": random_indices,
    });
    let (status, note) = match (premises, all_found) {
        (true, true) => (Status::Confirmed, FINITE_NOTE),
        (true, false) => (Status::Violated, FINITE_NOTE),
        (false, _) => (Status::Inconclusive, "premise unmet; indices reported as data"),
    };
    Ok(result(TheoremId::FiltChar, describe(filtration), status, witness, Some(seed), note))
}

// ---------------------------------------------------------------------------
