use super::theorems::*;
use super::{TheoremId, TheoremResult};
use crate::error::Result;
use crate::filtration::Filtration;
use crate::lattice::LatticeVector;
use crate::martingale::{gen_harmonic_tail, ClassifyOptions, MartingaleSeq};
use crate::random::{random_vector, trial_rng};

const HORIZON: usize = 64;

fn labelled(mut r: TheoremResult, label: &str) -> TheoremResult {
    r.instance = format!("{label}: {}", r.instance);
    r
}

/// Runs one check (or all of them) on the default instances.
pub fn run_suite(id: Option<TheoremId>, seed: u64, trials: usize, tol: f64) -> Result<Vec<TheoremResult>> {
    let opts = ClassifyOptions::with_tol(tol);
    let ids: Vec<TheoremId> = match id {
        Some(id) => vec![id],
        None => TheoremId::ALL.to_vec(),
    };
    let mut out = Vec::new();
    for id in ids {
        match id {
            TheoremId::Nesting => out.push(verify_nesting(seed, trials, &opts)?),
            TheoremId::MxClosed => {
                let h = gen_harmonic_tail(HORIZON)?;
                let r = verify_mx_closed_family(&h.filtration, &h.family, &h.limit, &opts)?;
                out.push(labelled(r, "harmonic tail family"));
                let t = Filtration::truncation(HORIZON)?;
                out.push(labelled(verify_mx_closed(&t, seed, &opts)?, "truncation, null perturbations"));
            }
            TheoremId::LemmaConvergent | TheoremId::Halfdense => {
                let check = if id == TheoremId::LemmaConvergent { verify_lemma_convergent } else { verify_halfdense };
                let t = Filtration::truncation(HORIZON)?;
                let e1 = LatticeVector::basis(t.space(), 0)?;
                let null = MartingaleSeq::null(&e1, HORIZON)?;
                out.push(labelled(check(&null, &LatticeVector::zeros(t.space()), &t, &opts)?, "null(e1)"));
                let h = gen_harmonic_tail(HORIZON)?;
                let zero = LatticeVector::zeros(h.filtration.space());
                out.push(labelled(check(&h.limit, &zero, &h.filtration, &opts)?, "harmonic tail"));
                let d = Filtration::dyadic(5)?;
                // averaged at the tail window so that x_n = x there
                let x = d.op(4).apply(&random_vector(d.space(), &mut trial_rng(seed, 0)))?;
                let a = MartingaleSeq::from_terminal(&d, &x)?;
                out.push(labelled(check(&a, &x, &d, &opts)?, "dyadic terminal martingale"));
            }
            TheoremId::MeNotClosed => out.push(verify_me_not_closed(HORIZON, &opts)?),
            TheoremId::VlEquivalence | TheoremId::BandPropositions | TheoremId::FiltChar => {
                let instances =
                    [("truncation", Filtration::truncation(8)?), ("pairing", Filtration::pairing(4)?), ("dyadic", Filtration::dyadic(3)?)];
                for (name, f) in instances {
                    let r = match id {
                        TheoremId::VlEquivalence => verify_vl_equivalence(&f, seed, trials, &opts)?,
                        TheoremId::BandPropositions => verify_band_propositions(&f, seed, trials, &opts)?,
                        _ => verify_filt_char(&f, seed, trials, &opts)?,
                    };
                    out.push(labelled(r, name));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::DEFAULT_TOL;
    use crate::verify::Status;

    #[test]
    fn full_suite_has_no_violations() {
        let results = run_suite(None, 1, 50, DEFAULT_TOL).unwrap();
        for r in &results {
            assert!(!r.is_violated(), "{r}\n{}", r.witness);
        }
        assert!(results.iter().any(|r| r.status == Status::Inconclusive));
        for id in TheoremId::ALL {
            assert!(results.iter().any(|r| r.id == id));
        }
    }
}
