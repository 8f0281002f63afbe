//! Scripted end-to-end checks of the counterexample constructions, with
//! replayable evidence.

mod report;
mod scenarios;
mod shape;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

pub use report::{CatalogCheck, Check, CheckStatus, Evidence, InclusionCertificate, Query, Report, ReportStatus};
pub use scenarios::run_scenario;
pub use shape::{
    balance_identity, balancing_power_identities, find_power_factor, find_shaped_identity, has_shape,
    shaped_candidates, ShapeError, ShapedSearch,
};

use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scenario {
    S1,
    S2,
    S3,
    S4,
}

impl Scenario {
    pub const ALL: [Scenario; 4] = [Scenario::S1, Scenario::S2, Scenario::S3, Scenario::S4];

    pub fn title(self) -> &'static str {
        match self {
            Scenario::S1 => "lower-modularity counterexample, V = LRB, n = 2",
            Scenario::S2 => "power-law case, m = 2",
            Scenario::S3 => "non-completely-regular case, V = E, k = 2",
            Scenario::S4 => "special-element implications over the lattice catalog",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown scenario '{0}' (expected S1, S2, S3 or S4)")]
pub struct UnknownScenario(pub String);

impl FromStr for Scenario {
    type Err = UnknownScenario;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownScenario(s.to_string()))
    }
}

fn word_set<'a>(words: impl IntoIterator<Item = &'a Word>) -> BTreeSet<Word> {
    words.into_iter().cloned().collect()
}
