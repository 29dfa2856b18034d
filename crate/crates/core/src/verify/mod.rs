//! Executable checks of the structural results about martingale-like
//! sequences.
//!
//! Each check confirms a conclusion on concrete instances; it is evidence,
//! not a proof. A `Violated` status means a proved statement failed on an
//! instance satisfying its premises, which can only be an implementation bug,
//! and always comes with a witness reproducible from the instance descriptor
//! and seed. No check asserts a converse (an X-martingale is never required
//! to be an 𝓔-martingale, for instance).

mod suite;
mod theorems;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use suite::run_suite;
pub use theorems::{
    check_nesting, filt_char_index, verify_band_propositions, verify_filt_char, verify_halfdense,
    verify_lemma_convergent, verify_me_not_closed, verify_mx_closed, verify_mx_closed_family, verify_nesting,
    verify_vl_equivalence, NestingCheck,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    /// Martingale ⇒ 𝓔-martingale ⇒ X-martingale.
    Nesting,
    /// Bounded X-martingales are closed in `ℓ∞(X)`.
    MxClosed,
    /// `sup_{m≥n} ‖Eₘx − xₘ‖ → 0` for a convergent X-martingale.
    LemmaConvergent,
    /// Convergent X-martingales are limits of tail-modified 𝓔-martingales.
    Halfdense,
    /// The harmonic tail family: bounded 𝓔-martingales are not closed.
    MeNotClosed,
    /// `M_E` is a vector lattice iff it is closed under `|·|` coordinate-wise.
    VlEquivalence,
    /// Band-projection filtrations make `M_E` and `M_X` lattices.
    BandPropositions,
    /// Dense filtration with lattice `M_E` ⇒ `|Eₙx| = Eₙ|x|` eventually.
    FiltChar,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::Nesting,
        TheoremId::MxClosed,
        TheoremId::LemmaConvergent,
        TheoremId::Halfdense,
        TheoremId::MeNotClosed,
        TheoremId::VlEquivalence,
        TheoremId::BandPropositions,
        TheoremId::FiltChar,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TheoremId::Nesting => "nesting",
            TheoremId::MxClosed => "mx-closed",
            TheoremId::LemmaConvergent => "lemma-convergent",
            TheoremId::Halfdense => "halfdense",
            TheoremId::MeNotClosed => "me-not-closed",
            TheoremId::VlEquivalence => "vl-equivalence",
            TheoremId::BandPropositions => "band-propositions",
            TheoremId::FiltChar => "filt-char",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = TheoremId::ALL.iter().map(TheoremId::name).collect();
                format!("unknown theorem id {s:?}; expected one of {} or all", names.join(", "))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Confirmed,
    Violated,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Confirmed => "CONFIRMED",
            Status::Violated => "VIOLATED",
            Status::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremResult {
    pub id: TheoremId,
    pub instance: String,
    pub status: Status,
    pub witness: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub note: String,
}

impl TheoremResult {
    pub fn is_violated(&self) -> bool {
        self.status == Status::Violated
    }
}

impl fmt::Display for TheoremResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<13} {:<18} {}", self.status.to_string(), self.id.name(), self.instance)?;
        if let Some(seed) = self.seed {
            write!(f, " [seed {seed}]")?;
        }
        if !self.note.is_empty() {
            write!(f, ": {}", self.note)?;
        }
        Ok(())
    }
}
