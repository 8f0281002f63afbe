use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use crate::lattice::{builtin_catalog, check_implications, elements_with, is_sublattice, ElementProperty};
use crate::rewrite::{
    class_closure_verify, isoterm_exact, verify_certificate, DerivationCertificate, Identity, Presentation,
    SearchBounds,
};
use crate::variety::{isoterm_for, satisfies, VarietyHandle, Verdict};
use crate::word::{format_word, Word};

use super::{find_power_factor, Scenario};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Verified,
    Failed,
    Assumed,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Verified => "VERIFIED",
            CheckStatus::Failed => "FAILED",
            CheckStatus::Assumed => "ASSUMED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    Satisfies(Identity),
    Isoterm(Word),
}

/// Sweeps over the built-in lattice catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogCheck {
    Implications,
    NeutralSublattice,
    StandardSublattice,
    BoundsNeutral,
}

/// One piece of evidence. Everything except an assumption can be recomputed
/// with [`Evidence::replay`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    /// A derivation search; `certificate` is `None` when nothing was found.
    Derivation {
        system: Presentation,
        lhs: Word,
        rhs: Word,
        certificate: Option<DerivationCertificate>,
    },
    ClassSet {
        system: Presentation,
        seed: Word,
        class: BTreeSet<Word>,
        exact: bool,
    },
    Isoterm {
        system: Presentation,
        word: Word,
        isoterm: bool,
    },
    Decider {
        handle: VarietyHandle,
        query: Query,
        bounds: SearchBounds,
        answer: Verdict,
    },
    PowerScan {
        word: Word,
        exponent: usize,
        found: Option<Word>,
    },
    Catalog {
        check: CatalogCheck,
        lattices: usize,
        failures: Vec<String>,
    },
    Assumption(String),
    Error(String),
}

impl Evidence {
    /// Recomputes the evidence and compares with what was recorded.
    pub fn replay(&self) -> Result<(), String> {
        match self {
            Evidence::Derivation { system, lhs, rhs, certificate } => match certificate {
                None => Ok(()),
                Some(cert) => {
                    if (&cert.start, &cert.end) != (lhs, rhs) {
                        return Err(format!("certificate does not connect {lhs} and {rhs}"));
                    }
                    verify_certificate(system, cert).map_err(|e| e.to_string())?;
                    let text = cert.to_string();
                    let back = crate::rewrite::parse_certificate(&text).map_err(|e| e.to_string())?;
                    if &back != cert {
                        return Err("certificate does not survive its text form".into());
                    }
                    Ok(())
                }
            },
            Evidence::ClassSet { system, seed, class, exact } => {
                let now = class_closure_verify(class, seed, system).map_err(|e| e.to_string())?.is_exact();
                expect_same("class check", *exact, now)
            }
            Evidence::Isoterm { system, word, isoterm } => {
                let now = isoterm_exact(word, system).map_err(|e| e.to_string())?;
                expect_same("isoterm check", *isoterm, now)
            }
            Evidence::Decider { handle, query, bounds, answer } => {
                let now = match query {
                    Query::Satisfies(id) => satisfies(handle, id, bounds),
                    Query::Isoterm(w) => isoterm_for(handle, w, bounds),
                };
                expect_same("decider", *answer, now)
            }
            Evidence::PowerScan { word, exponent, found } => {
                let now = find_power_factor(word, *exponent).map(|(_, s)| s);
                expect_same("power scan", found.clone(), now)
            }
            Evidence::Catalog { check, failures, .. } => {
                let (_, now) = sweep_catalog(*check);
                expect_same("catalog sweep", failures.clone(), now)
            }
            Evidence::Assumption(_) => Ok(()),
            Evidence::Error(e) => Err(e.clone()),
        }
    }
}

fn expect_same<T: PartialEq + fmt::Debug>(what: &str, recorded: T, now: T) -> Result<(), String> {
    if recorded == now {
        Ok(())
    } else {
        Err(format!("{what}: recorded {recorded:?}, recomputed {now:?}"))
    }
}

/// Runs one catalog sweep, returning the number of lattices and a
/// description of each failure.
pub(crate) fn sweep_catalog(check: CatalogCheck) -> (usize, Vec<String>) {
    let catalog = builtin_catalog();
    let mut failures = Vec::new();
    for entry in &catalog {
        let l = &entry.lattice;
        match check {
            CatalogCheck::Implications => {
                for v in check_implications(l) {
                    failures.push(format!("{}: {} is {} but not {}", entry.name, l.label(v.element), v.has, v.lacks));
                }
            }
            CatalogCheck::NeutralSublattice | CatalogCheck::StandardSublattice => {
                let p = if check == CatalogCheck::NeutralSublattice {
                    ElementProperty::Neutral
                } else {
                    ElementProperty::Standard
                };
                if !is_sublattice(l, &elements_with(l, p)) {
                    failures.push(format!("{}: {p} elements are not a sublattice", entry.name));
                }
            }
            CatalogCheck::BoundsNeutral => {
                let neutral = elements_with(l, ElementProperty::Neutral);
                if !neutral.contains(&l.bottom()) || !neutral.contains(&l.top()) {
                    failures.push(format!("{}: a bound is not neutral", entry.name));
                }
            }
        }
    }
    (catalog.len(), failures)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub status: CheckStatus,
    pub evidence: Vec<Evidence>,
}

/// The identity `identity` holds in `lower` but fails in `upper`, so the
/// inclusion `lower ⊆ upper` is strict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InclusionCertificate {
    pub lower: String,
    pub upper: String,
    pub identity: Identity,
    pub holds_in_lower: Vec<Evidence>,
    pub fails_in_upper: Vec<Evidence>,
    pub argument: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportStatus {
    Pass,
    Fail,
    PassWithAssumptions,
}

impl ReportStatus {
    pub fn is_success(self) -> bool {
        self != ReportStatus::Fail
    }
}

impl fmt::Display for ReportStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportStatus::Pass => "PASS",
            ReportStatus::Fail => "FAIL",
            ReportStatus::PassWithAssumptions => "PASS_WITH_ASSUMPTIONS",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub scenario: Scenario,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub conclusion: Option<InclusionCertificate>,
}

impl Report {
    pub fn status(&self) -> ReportStatus {
        if self.checks.iter().any(|c| c.status == CheckStatus::Failed) {
            ReportStatus::Fail
        } else if self.checks.iter().any(|c| c.status == CheckStatus::Assumed) {
            ReportStatus::PassWithAssumptions
        } else {
            ReportStatus::Pass
        }
    }

    pub fn assumptions(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Assumed)
    }

    pub fn verified_count(&self) -> usize {
        self.checks.iter().filter(|c| c.status == CheckStatus::Verified).count()
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Every certificate recorded anywhere in the report.
    pub fn certificates(&self) -> Vec<(&Presentation, &DerivationCertificate)> {
        let conclusion = self.conclusion.iter().flat_map(|c| c.holds_in_lower.iter().chain(&c.fails_in_upper));
        self.checks
            .iter()
            .flat_map(|c| &c.evidence)
            .chain(conclusion)
            .filter_map(|e| match e {
                Evidence::Derivation { system, certificate: Some(cert), .. } => Some((system, cert)),
                _ => None,
            })
            .collect()
    }

    /// Replays every piece of evidence of every verified check and of the
    /// conclusion.
    pub fn replay(&self) -> Result<(), String> {
        for check in self.checks.iter().filter(|c| c.status == CheckStatus::Verified) {
            for e in &check.evidence {
                e.replay().map_err(|msg| format!("check {}: {msg}", check.id))?;
            }
        }
        if let Some(c) = &self.conclusion {
            for e in c.holds_in_lower.iter().chain(&c.fails_in_upper) {
                e.replay().map_err(|msg| format!("conclusion: {msg}"))?;
            }
        }
        Ok(())
    }
}

fn set_text(set: &BTreeSet<Word>) -> String {
    let items: Vec<String> = set.iter().map(format_word).collect();
    format!("{{{}}}", items.join(", "))
}

fn system_text(p: &Presentation) -> String {
    let items: Vec<String> = p.identities().iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join("; "))
}

fn write_evidence(out: &mut String, e: &Evidence) -> fmt::Result {
    match e {
        Evidence::Derivation { system, lhs, rhs, certificate } => {
            writeln!(out, "    derivation {lhs} -> {rhs} from {}", system_text(system))?;
            match certificate {
                Some(cert) => {
                    for line in cert.annotated(system).lines() {
                        writeln!(out, "      {line}")?;
                    }
                }
                None => writeln!(out, "      not found within bounds")?,
            }
        }
        Evidence::ClassSet { system, seed, class, exact } => {
            let verdict = if *exact { "the exact class" } else { "not the class" };
            writeln!(out, "    class of {seed} under {}: {} is {verdict}", system_text(system), set_text(class))?;
        }
        Evidence::Isoterm { system, word, isoterm } => {
            let verdict = if *isoterm { "an isoterm" } else { "not an isoterm" };
            writeln!(out, "    {word} is {verdict} for {}", system_text(system))?;
        }
        Evidence::Decider { handle, query, answer, .. } => match query {
            Query::Satisfies(id) => writeln!(out, "    {handle} satisfies {id}: {answer}")?,
            Query::Isoterm(w) => writeln!(out, "    {w} is an isoterm for {handle}: {answer}")?,
        },
        Evidence::PowerScan { word, exponent, found } => match found {
            Some(s) => writeln!(out, "    {word} contains the power ({s})^{exponent}")?,
            None => writeln!(out, "    {word} has no factor that is a {exponent}th power")?,
        },
        Evidence::Catalog { check, lattices, failures } => {
            writeln!(out, "    {check:?} over {lattices} catalog lattices: {} failures", failures.len())?;
            for f in failures {
                writeln!(out, "      {f}")?;
            }
        }
        Evidence::Assumption(text) => writeln!(out, "    assumption: {text}")?,
        Evidence::Error(text) => writeln!(out, "    error: {text}")?,
    }
    Ok(())
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        writeln!(out, "SCENARIO {}: {}", self.scenario, self.scenario.title())?;
        for c in &self.checks {
            writeln!(out, "CHECK {}: {} ... {}", c.id, c.description, c.status)?;
            for e in &c.evidence {
                write_evidence(&mut out, e)?;
            }
        }
        for n in &self.notes {
            writeln!(out, "NOTE: {n}")?;
        }
        if let Some(c) = &self.conclusion {
            writeln!(out, "CONCLUSION: {} is strictly contained in {}", c.lower, c.upper)?;
            writeln!(out, "  separating identity: {}", c.identity)?;
            writeln!(out, "  holds in {}:", c.lower)?;
            for e in &c.holds_in_lower {
                write_evidence(&mut out, e)?;
            }
            writeln!(out, "  fails in {}:", c.upper)?;
            for e in &c.fails_in_upper {
                write_evidence(&mut out, e)?;
            }
            writeln!(out, "  argument:")?;
            for line in &c.argument {
                writeln!(out, "    {line}")?;
            }
        }
        writeln!(out, "STATUS: {}", self.status())?;
        f.write_str(&out)
    }
}
