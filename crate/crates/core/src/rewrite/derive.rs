use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use super::step::{RewriteStep, RuleSet};
use super::{Presentation, RewriteError, SearchBounds};
use crate::word::Word;

/// A replayable chain of rewrite steps from `start` to `end`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationCertificate {
    pub start: Word,
    pub end: Word,
    pub steps: Vec<RewriteStep>,
}

impl DerivationCertificate {
    /// The zero-step certificate of `w = w`.
    pub fn reflexive(w: Word) -> Self {
        DerivationCertificate { start: w.clone(), end: w, steps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The intermediate words `start, w1, ..., end`, replayed against `sigma`.
    pub fn words(&self, sigma: &Presentation) -> Result<Vec<Word>, Rejection> {
        let mut words = vec![self.start.clone()];
        for (i, step) in self.steps.iter().enumerate() {
            let (source, target) = step
                .endpoints(sigma)
                .ok_or(Rejection { step: i, reason: RejectReason::UnknownIdentity(step.identity) })?;
            if &source != words.last().unwrap() {
                return Err(Rejection {
                    step: i,
                    reason: RejectReason::SourceMismatch { expected: words.pop().unwrap(), found: source },
                });
            }
            words.push(target);
        }
        Ok(words)
    }

    /// The certificate of `end = start`.
    pub fn reversed(&self) -> DerivationCertificate {
        DerivationCertificate {
            start: self.end.clone(),
            end: self.start.clone(),
            steps: self.steps.iter().rev().map(RewriteStep::reversed).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectReason {
    UnknownIdentity(usize),
    SourceMismatch { expected: Word, found: Word },
    RepeatedWord(Word),
    EndMismatch { claimed: Word, reached: Word },
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::UnknownIdentity(i) => write!(f, "no identity with index {i}"),
            RejectReason::SourceMismatch { expected, found } => {
                write!(f, "step rewrites {found} but the current word is {expected}")
            }
            RejectReason::RepeatedWord(w) => write!(f, "word {w} occurs twice"),
            RejectReason::EndMismatch { claimed, reached } => {
                write!(f, "chain ends at {reached}, not at the claimed {claimed}")
            }
        }
    }
}

/// Why a certificate failed to replay. `step` is the index of the first
/// offending step (`steps.len()` when only the final word is wrong).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("step {step}: {reason}")]
pub struct Rejection {
    pub step: usize,
    pub reason: RejectReason,
}

/// Replays `cert` against `sigma`: every step must rewrite the current word,
/// all words in the chain must be distinct and the last must be `cert.end`.
pub fn verify_certificate(sigma: &Presentation, cert: &DerivationCertificate) -> Result<(), Rejection> {
    let words = cert.words(sigma)?;
    let mut seen = HashSet::new();
    for (i, w) in words.iter().enumerate() {
        if !seen.insert(w) {
            return Err(Rejection { step: i - 1, reason: RejectReason::RepeatedWord(w.clone()) });
        }
    }
    let reached = words.last().unwrap();
    if *reached != cert.end {
        return Err(Rejection {
            step: cert.steps.len(),
            reason: RejectReason::EndMismatch { claimed: cert.end.clone(), reached: reached.clone() },
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DerivationOutcome {
    Proved(DerivationCertificate),
    /// The bounded search gave up. This is not a refutation.
    NotFoundWithinBounds,
}

impl DerivationOutcome {
    pub fn certificate(&self) -> Option<&DerivationCertificate> {
        match self {
            DerivationOutcome::Proved(c) => Some(c),
            DerivationOutcome::NotFoundWithinBounds => None,
        }
    }

    pub fn is_proved(&self) -> bool {
        matches!(self, DerivationOutcome::Proved(_))
    }
}

/// Breadth-first exploration of the words derivable from a start word.
///
/// Levels are expanded in shortlex order, so the parent recorded for each
/// word, and hence every certificate, is deterministic. Words longer than
/// `max_word_length` are never entered.
pub struct DerivationSearch {
    start: Word,
    parents: HashMap<Word, (Word, RewriteStep)>,
    depth: HashMap<Word, usize>,
    saturated: bool,
}

impl DerivationSearch {
    /// Explores from `start`, stopping early once `target` is reached.
    pub fn explore(
        sigma: &Presentation,
        start: &Word,
        bounds: &SearchBounds,
        target: Option<&Word>,
    ) -> Result<DerivationSearch, RewriteError> {
        bounds.validate()?;
        let rules = RuleSet::compile(sigma)?;
        let mut search = DerivationSearch {
            start: start.clone(),
            parents: HashMap::new(),
            depth: HashMap::from([(start.clone(), 0)]),
            saturated: false,
        };
        if target == Some(start) {
            return Ok(search);
        }
        let mut frontier = vec![start.clone()];
        let mut pruned = start.len() > bounds.max_word_length;
        for level in 1..=bounds.max_depth {
            let mut next: BTreeMap<Word, (Word, RewriteStep)> = BTreeMap::new();
            for p in &frontier {
                pruned |= rules.for_each_successor(p, Some(bounds.max_word_length), |q, step| {
                    if !search.depth.contains_key(&q) && !next.contains_key(&q) {
                        next.insert(q, (p.clone(), step()));
                    }
                });
            }
            if next.is_empty() {
                search.saturated = !pruned;
                return Ok(search);
            }
            frontier.clear();
            for (q, parent) in next {
                if search.depth.len() >= bounds.max_states {
                    return Ok(search);
                }
                search.depth.insert(q.clone(), level);
                search.parents.insert(q.clone(), parent);
                if target == Some(&q) {
                    return Ok(search);
                }
                frontier.push(q);
            }
        }
        Ok(search)
    }

    pub fn start(&self) -> &Word {
        &self.start
    }

    pub fn reached(&self, w: &Word) -> bool {
        self.depth.contains_key(w)
    }

    /// Number of steps on the shortest chain found to `w`.
    pub fn distance(&self, w: &Word) -> Option<usize> {
        self.depth.get(w).copied()
    }

    pub fn visited(&self) -> impl Iterator<Item = &Word> {
        self.depth.keys()
    }

    pub fn visited_count(&self) -> usize {
        self.depth.len()
    }

    /// True when the search ran out of words without touching any bound,
    /// i.e. the visited set is the whole class of the start word.
    pub fn saturated(&self) -> bool {
        self.saturated
    }

    pub fn certificate_to(&self, w: &Word) -> Option<DerivationCertificate> {
        if !self.reached(w) {
            return None;
        }
        let mut steps = Vec::new();
        let mut cur = w;
        while let Some((parent, step)) = self.parents.get(cur) {
            steps.push(step.clone());
            cur = parent;
        }
        steps.reverse();
        Some(DerivationCertificate { start: self.start.clone(), end: w.clone(), steps })
    }
}

/// Bounded breadth-first search for a derivation of `u = v` from `sigma`.
pub fn derive(
    sigma: &Presentation,
    u: &Word,
    v: &Word,
    bounds: &SearchBounds,
) -> Result<DerivationOutcome, RewriteError> {
    let search = DerivationSearch::explore(sigma, u, bounds, Some(v))?;
    Ok(match search.certificate_to(v) {
        Some(cert) => DerivationOutcome::Proved(cert),
        None => DerivationOutcome::NotFoundWithinBounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::Direction;
    use crate::word::{w, Substitution, Variable};

    fn bounds(len: usize, depth: usize) -> SearchBounds {
        SearchBounds::new(len, depth, 1_000_000).unwrap()
    }

    /// Shortest distance by plain BFS over the one-step relation, without
    /// the search's parent bookkeeping.
    fn bfs_distance(sigma: &Presentation, u: &Word, v: &Word, max_len: usize, max_depth: usize) -> Option<usize> {
        let mut seen = HashSet::from([u.clone()]);
        let mut level = vec![u.clone()];
        for d in 0..=max_depth {
            if level.contains(v) {
                return Some(d);
            }
            let mut next = Vec::new();
            for p in &level {
                for q in crate::rewrite::one_step_successors(p, sigma).unwrap().into_keys() {
                    if q.len() <= max_len && seen.insert(q.clone()) {
                        next.push(q);
                    }
                }
            }
            level = next;
        }
        None
    }

    #[test]
    fn cube_identity_moves_powers_across_y() {
        let sigma = Presentation::from_strs(&["x = x^3"]);
        let (u, v) = (w("x^9yx^3"), w("x^7yx^5"));
        assert_eq!(bfs_distance(&sigma, &u, &v, 13, 4), Some(2));
        let out = derive(&sigma, &u, &v, &bounds(13, 4)).unwrap();
        let cert = out.certificate().unwrap();
        assert_eq!(cert.len(), 2);
        assert_eq!(verify_certificate(&sigma, cert), Ok(()));
    }

    #[test]
    fn reflexive_derivation_is_empty() {
        let sigma = Presentation::from_strs(&["x = x^3"]);
        let out = derive(&sigma, &w("xy"), &w("xy"), &bounds(1, 1)).unwrap();
        assert_eq!(out, DerivationOutcome::Proved(DerivationCertificate::reflexive(w("xy"))));
    }

    #[test]
    fn three_step_chain_through_both_systems() {
        let sigma = Presentation::from_strs(&["xyxyx = yxyxx", "xyyxx = yxxyx", "xyxyx = xyyxx"]);
        let out = derive(&sigma, &w("yxyxx"), &w("yxxyx"), &bounds(6, 4)).unwrap();
        let cert = out.certificate().unwrap();
        assert_eq!(cert.words(&sigma).unwrap(), vec![w("yxyxx"), w("xyxyx"), w("xyyxx"), w("yxxyx")]);
        assert_eq!(verify_certificate(&sigma, cert), Ok(()));
        let back = cert.reversed();
        assert_eq!(verify_certificate(&sigma, &back), Ok(()));
    }

    #[test]
    fn not_found_is_reported() {
        let sigma = Presentation::from_strs(&["x = x^3"]);
        let out = derive(&sigma, &w("x"), &w("xx"), &bounds(9, 10)).unwrap();
        assert_eq!(out, DerivationOutcome::NotFoundWithinBounds);
    }

    #[test]
    fn tampered_certificates_are_rejected() {
        let sigma = Presentation::from_strs(&["x = x^3"]);
        let out = derive(&sigma, &w("x^9yx^3"), &w("x^7yx^5"), &bounds(13, 4)).unwrap();
        let mut cert = out.certificate().unwrap().clone();
        cert.steps[1].subst = Substitution::identity().with(Variable::letter('x'), w("y"));
        let err = verify_certificate(&sigma, &cert).unwrap_err();
        assert_eq!(err.step, 1);
        assert!(matches!(err.reason, RejectReason::SourceMismatch { .. }));

        let empty = DerivationCertificate { start: w("x"), end: w("x^3"), steps: vec![] };
        let err = verify_certificate(&sigma, &empty).unwrap_err();
        assert!(matches!(err.reason, RejectReason::EndMismatch { .. }));

        let mut bad_index = out.certificate().unwrap().clone();
        bad_index.steps[0].identity = 7;
        assert_eq!(verify_certificate(&sigma, &bad_index).unwrap_err().reason, RejectReason::UnknownIdentity(7));
    }

    #[test]
    fn repeated_words_are_rejected() {
        let sigma = Presentation::from_strs(&["x = x^3"]);
        let step = RewriteStep {
            prefix: Word::empty(),
            suffix: Word::empty(),
            identity: 0,
            direction: Direction::Forward,
            subst: Substitution::identity().with(Variable::letter('x'), w("x")),
        };
        let cert = DerivationCertificate { start: w("x"), end: w("x"), steps: vec![step.clone(), step.reversed()] };
        let err = verify_certificate(&sigma, &cert).unwrap_err();
        assert_eq!(err.step, 1);
        assert!(matches!(err.reason, RejectReason::RepeatedWord(_)));
    }

    #[test]
    fn state_cap_stops_search() {
        let sigma = Presentation::from_strs(&["x = x^3", "xy = yx"]);
        let search = DerivationSearch::explore(&sigma, &w("xy"), &bounds(8, 10), None).unwrap();
        assert!(!search.saturated());
        let capped = DerivationSearch::explore(&sigma, &w("xy"), &SearchBounds::new(8, 10, 3).unwrap(), None).unwrap();
        assert!(capped.visited_count() <= 3);
    }
}
