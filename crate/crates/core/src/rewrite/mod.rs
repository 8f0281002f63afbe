//! Equational deduction in the free monoid.
//!
//! An identity `s = t` of a presentation rewrites a word `a·ξ(s)·b` into
//! `a·ξ(t)·b` (and back) for any factorisation and any endomorphism `ξ`.
//! Two words are equal in the variety defined by the presentation exactly
//! when a finite chain of such steps connects them. Everything in this
//! module is built on that one-step relation.

mod certificate;
mod class;
mod derive;
mod matching;
mod step;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::word::{parse_word, ParseError, Word};

pub use certificate::{parse_certificate, CertificateParseError};
pub use class::{class_closure_verify, enumerate_class, isoterm_exact, ClassEnumeration, ClassVerdict};
pub use derive::{
    derive, verify_certificate, DerivationCertificate, DerivationOutcome, DerivationSearch, RejectReason, Rejection,
};
pub use matching::match_pattern;
pub use step::{one_step_successors, Direction, RewriteStep};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("identity {0} has different content on its two sides")]
    ContentUnbalanced(Identity),
    #[error("search bounds must be strictly positive")]
    InvalidBounds,
    #[error("word {0} is not a member of the candidate set")]
    SeedNotInCandidate(Word),
}

/// An identity `lhs = rhs`, stored with the shortlex-smaller side on the left.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Identity {
    lhs: Word,
    rhs: Word,
}

impl Identity {
    pub fn new(a: Word, b: Word) -> Self {
        if b < a {
            Identity { lhs: b, rhs: a }
        } else {
            Identity { lhs: a, rhs: b }
        }
    }

    pub fn lhs(&self) -> &Word {
        &self.lhs
    }

    pub fn rhs(&self) -> &Word {
        &self.rhs
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn is_content_balanced(&self) -> bool {
        self.lhs.content() == self.rhs.content()
    }

    /// The two sides oriented for `dir`: (source pattern, replacement).
    pub fn oriented(&self, dir: Direction) -> (&Word, &Word) {
        match dir {
            Direction::Forward => (&self.lhs, &self.rhs),
            Direction::Backward => (&self.rhs, &self.lhs),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityParseError {
    #[error("expected '<word> = <word>'")]
    MissingEquals,
    #[error(transparent)]
    Word(#[from] ParseError),
}

impl FromStr for Identity {
    type Err = IdentityParseError;

    /// Accepts `=`, `≈` or `~` between the two sides.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s
            .split_once('=')
            .or_else(|| s.split_once('≈'))
            .or_else(|| s.split_once('~'))
            .ok_or(IdentityParseError::MissingEquals)?;
        Ok(Identity::new(parse_word(a)?, parse_word(b)?))
    }
}

/// A finite identity system. Duplicates (after orientation) are dropped and
/// insertion order is kept, so identity indices are stable.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Presentation {
    identities: Vec<Identity>,
}

impl Presentation {
    pub fn empty() -> Self {
        Presentation::default()
    }

    pub fn new<I: IntoIterator<Item = Identity>>(identities: I) -> Self {
        let mut p = Presentation::empty();
        for id in identities {
            p.push(id);
        }
        p
    }

    /// Builds a presentation from `"u = v"` strings. Panics on malformed input.
    pub fn from_strs(lines: &[&str]) -> Self {
        Presentation::new(lines.iter().map(|l| l.parse::<Identity>().expect("valid identity")))
    }

    /// Adds an identity unless it is already present; returns its index.
    pub fn push(&mut self, id: Identity) -> usize {
        if let Some(i) = self.identities.iter().position(|e| *e == id) {
            return i;
        }
        self.identities.push(id);
        self.identities.len() - 1
    }

    pub fn identities(&self) -> &[Identity] {
        &self.identities
    }

    pub fn get(&self, index: usize) -> Option<&Identity> {
        self.identities.get(index)
    }

    pub fn len(&self) -> usize {
        self.identities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.identities.is_empty()
    }

    pub fn union(&self, other: &Presentation) -> Presentation {
        let mut p = self.clone();
        for id in &other.identities {
            p.push(id.clone());
        }
        p
    }

    pub fn longest_side(&self) -> usize {
        self.identities.iter().map(|id| id.lhs.len().max(id.rhs.len())).max().unwrap_or(0)
    }

    pub fn check_balanced(&self) -> Result<(), RewriteError> {
        match self.identities.iter().find(|id| !id.is_content_balanced()) {
            Some(id) => Err(RewriteError::ContentUnbalanced(id.clone())),
            None => Ok(()),
        }
    }

    /// Parses the identity-system file format: one identity per line, `#`
    /// starts a comment, blank lines are ignored.
    pub fn parse(text: &str) -> Result<Presentation, PresentationParseError> {
        let mut p = Presentation::empty();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let id = line.parse::<Identity>().map_err(|source| PresentationParseError { line: n + 1, source })?;
            p.push(id);
        }
        Ok(p)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for id in &self.identities {
            writeln!(f, "{id}")?;
        }
        Ok(())
    }
}

impl FromIterator<Identity> for Presentation {
    fn from_iter<I: IntoIterator<Item = Identity>>(iter: I) -> Self {
        Presentation::new(iter)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {source}")]
pub struct PresentationParseError {
    pub line: usize,
    #[source]
    pub source: IdentityParseError,
}

/// Limits that make a derivation or class search terminate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_word_length: usize,
    pub max_depth: usize,
    pub max_states: usize,
}

impl SearchBounds {
    pub fn new(max_word_length: usize, max_depth: usize, max_states: usize) -> Result<Self, RewriteError> {
        if max_word_length == 0 || max_depth == 0 || max_states == 0 {
            return Err(RewriteError::InvalidBounds);
        }
        Ok(SearchBounds { max_word_length, max_depth, max_states })
    }

    /// Twice the longest word involved, depth 10, a million states.
    pub fn default_for(sigma: &Presentation, words: &[&Word]) -> Self {
        let longest = words.iter().map(|w| w.len()).chain(std::iter::once(sigma.longest_side())).max().unwrap_or(0);
        SearchBounds { max_word_length: (2 * longest).max(1), max_depth: 10, max_states: 1_000_000 }
    }

    pub fn validate(&self) -> Result<(), RewriteError> {
        SearchBounds::new(self.max_word_length, self.max_depth, self.max_states).map(|_| ())
    }
}
