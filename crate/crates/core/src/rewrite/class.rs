use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::step::RuleSet;
use super::{DerivationSearch, Presentation, RewriteError, SearchBounds};
use crate::word::Word;

/// Result of checking whether a finite set of words is exactly one class of
/// the fully invariant congruence of a presented variety.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassVerdict {
    /// Closed under one-step rewriting and connected from the seed.
    ExactClass(BTreeSet<Word>),
    /// `member` rewrites in one step to `escaping`, which is outside the set.
    NotClosed { member: Word, escaping: Word },
    /// `unreached` cannot be reached from the seed without leaving the set.
    NotConnected { unreached: Word },
}

impl ClassVerdict {
    pub fn is_exact(&self) -> bool {
        matches!(self, ClassVerdict::ExactClass(_))
    }
}

/// Decides whether `candidate` is precisely the class of `seed`.
///
/// Closure is checked on the complete (unbounded) successor sets, which are
/// finite because every identity is content-balanced; together with
/// connectivity this pins the class down exactly.
pub fn class_closure_verify(
    candidate: &BTreeSet<Word>,
    seed: &Word,
    sigma: &Presentation,
) -> Result<ClassVerdict, RewriteError> {
    if !candidate.contains(seed) {
        return Err(RewriteError::SeedNotInCandidate(seed.clone()));
    }
    let rules = RuleSet::compile(sigma)?;
    let mut edges: BTreeMap<&Word, BTreeSet<Word>> = BTreeMap::new();
    for member in candidate {
        let (succ, _) = rules.successors(member, None);
        if let Some(escaping) = succ.keys().find(|q| !candidate.contains(*q)) {
            return Ok(ClassVerdict::NotClosed { member: member.clone(), escaping: escaping.clone() });
        }
        edges.insert(member, succ.into_keys().collect());
    }
    let mut reached = BTreeSet::from([seed.clone()]);
    let mut queue = VecDeque::from([seed.clone()]);
    while let Some(p) = queue.pop_front() {
        for q in &edges[&p] {
            if reached.insert(q.clone()) {
                queue.push_back(q.clone());
            }
        }
    }
    if let Some(unreached) = candidate.iter().find(|w| !reached.contains(*w)) {
        return Ok(ClassVerdict::NotConnected { unreached: unreached.clone() });
    }
    Ok(ClassVerdict::ExactClass(candidate.clone()))
}

/// Whether the class of `w` is `{w}`.
pub fn isoterm_exact(w: &Word, sigma: &Presentation) -> Result<bool, RewriteError> {
    let singleton = BTreeSet::from([w.clone()]);
    Ok(class_closure_verify(&singleton, w, sigma)?.is_exact())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassEnumeration {
    /// The whole class, saturated without touching any bound.
    Complete(BTreeSet<Word>),
    /// Some bound was hit; the set holds the words found so far.
    CapExceeded(BTreeSet<Word>),
}

impl ClassEnumeration {
    pub fn words(&self) -> &BTreeSet<Word> {
        match self {
            ClassEnumeration::Complete(s) | ClassEnumeration::CapExceeded(s) => s,
        }
    }

    pub fn complete(&self) -> Option<&BTreeSet<Word>> {
        match self {
            ClassEnumeration::Complete(s) => Some(s),
            ClassEnumeration::CapExceeded(_) => None,
        }
    }
}

/// Closes `{w}` under one-step rewriting. A successor longer than
/// `max_word_length` counts as hitting the bound, since it belongs to the
/// class but cannot be recorded.
pub fn enumerate_class(
    w: &Word,
    sigma: &Presentation,
    bounds: &SearchBounds,
) -> Result<ClassEnumeration, RewriteError> {
    let search = DerivationSearch::explore(sigma, w, bounds, None)?;
    let words = search.visited().cloned().collect();
    Ok(if search.saturated() { ClassEnumeration::Complete(words) } else { ClassEnumeration::CapExceeded(words) })
}
