//! Equational reasoning over monoid varieties.
//!
//! * [`word`]: words of the free monoid, substitutions, `ini`/`fin`.
//! * [`rewrite`]: one-step rewriting, bounded derivation search with
//!   replayable certificates, exact class and isoterm checks.
//! * [`variety`]: varieties as queryable handles (built-in deciders,
//!   presentations, meets and joins).
//! * [`lattice`]: finite lattices and brute-force special-element tests.
//! * [`verify`]: scripted end-to-end checks of the lower-modularity
//!   counterexample constructions.

pub mod lattice;
pub mod rewrite;
pub mod variety;
pub mod verify;
pub mod word;

pub use rewrite::{
    class_closure_verify, derive, enumerate_class, isoterm_exact, match_pattern, one_step_successors,
    verify_certificate, ClassEnumeration, ClassVerdict, DerivationCertificate, DerivationOutcome, Identity,
    Presentation, RewriteError, RewriteStep, SearchBounds,
};
pub use word::{format_word, parse_word, Substitution, Variable, Word};
