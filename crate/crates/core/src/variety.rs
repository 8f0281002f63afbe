//! Varieties of monoids as queryable handles.
//!
//! A handle is a built-in variety with a complete word-problem decider, a
//! finite presentation (queried through bounded derivation search and exact
//! class checks), or a meet or join of handles. Answers are three-valued:
//! `Unknown` is returned whenever the available evidence is not conclusive.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::rewrite::{derive, enumerate_class, isoterm_exact, Identity, Presentation, RewriteError, SearchBounds};
use crate::word::{Variable, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BuiltinVariety {
    /// Trivial monoids.
    T,
    /// Semilattice monoids: `x^2 = x, xy = yx`.
    SL,
    /// `x^2 = x^3, xy = yx`.
    C,
    /// Left regular band monoids: `xy = xyx`.
    LRB,
    /// Right regular band monoids: `xy = yxy`.
    RRB,
}

impl BuiltinVariety {
    pub const ALL: [BuiltinVariety; 5] =
        [BuiltinVariety::T, BuiltinVariety::SL, BuiltinVariety::C, BuiltinVariety::LRB, BuiltinVariety::RRB];

    /// The defining identities, when they are content-balanced. `T` is
    /// defined by `x = y` and has none.
    pub fn reference_presentation(self) -> Option<Presentation> {
        let lines: &[&str] = match self {
            BuiltinVariety::T => return None,
            BuiltinVariety::SL => &["x^2 = x", "xy = yx"],
            BuiltinVariety::C => &["x^2 = x^3", "xy = yx"],
            BuiltinVariety::LRB => &["xy = xyx"],
            BuiltinVariety::RRB => &["xy = yxy"],
        };
        Some(Presentation::from_strs(lines))
    }

    /// Exact word problem.
    pub fn holds(self, u: &Word, v: &Word) -> bool {
        match self {
            BuiltinVariety::T => true,
            BuiltinVariety::SL => u.content() == v.content(),
            BuiltinVariety::C => c_normal_form(u) == c_normal_form(v),
            BuiltinVariety::LRB => u.ini() == v.ini(),
            BuiltinVariety::RRB => u.fin() == v.fin(),
        }
    }

    /// Whether the class of `w` is a singleton.
    pub fn is_isoterm(self, w: &Word) -> bool {
        match self {
            // every word is identified with every other
            BuiltinVariety::T => false,
            // w = w·x for any x in the content
            BuiltinVariety::SL | BuiltinVariety::LRB | BuiltinVariety::RRB => w.is_empty(),
            // a square collapses with the cube, two distinct letters commute
            BuiltinVariety::C => w.len() <= 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BuiltinVariety::T => "T",
            BuiltinVariety::SL => "SL",
            BuiltinVariety::C => "C",
            BuiltinVariety::LRB => "LRB",
            BuiltinVariety::RRB => "RRB",
        }
    }
}

/// Normal form modulo `x^2 = x^3, xy = yx`: variables in token order, each
/// with exponent `min(occ, 2)`.
pub fn c_normal_form(w: &Word) -> Word {
    let mut counts: BTreeMap<Variable, usize> = BTreeMap::new();
    for &v in w.letters() {
        *counts.entry(v).or_default() += 1;
    }
    counts.into_iter().flat_map(|(v, k)| std::iter::repeat_n(v, k.min(2))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarietyHandle {
    Builtin(BuiltinVariety),
    Presented(Presentation),
    Meet(Vec<VarietyHandle>),
    Join(Vec<VarietyHandle>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnknownReason {
    /// A bounded search gave up.
    Bounds,
    /// The components do not combine into a conclusive answer.
    Composition,
    /// A presentation has an identity with different content on its sides.
    Unbalanced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    Unknown(UnknownReason),
}

impl Verdict {
    fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes => f.write_str("Yes"),
            Verdict::No => f.write_str("No"),
            Verdict::Unknown(UnknownReason::Bounds) => f.write_str("Unknown (search bounds)"),
            Verdict::Unknown(UnknownReason::Composition) => f.write_str("Unknown (composition)"),
            Verdict::Unknown(UnknownReason::Unbalanced) => f.write_str("Unknown (unbalanced presentation)"),
        }
    }
}

impl VarietyHandle {
    /// The variety of all monoids.
    pub fn mon() -> Self {
        VarietyHandle::Presented(Presentation::empty())
    }

    /// Panics on an empty list.
    pub fn meet(parts: Vec<VarietyHandle>) -> Self {
        assert!(!parts.is_empty(), "meet of no varieties");
        VarietyHandle::Meet(parts)
    }

    /// Panics on an empty list.
    pub fn join(parts: Vec<VarietyHandle>) -> Self {
        assert!(!parts.is_empty(), "join of no varieties");
        VarietyHandle::Join(parts)
    }

    /// A presentation whose consequences are exactly this handle's identities,
    /// if one is at hand: presented handles, built-ins other than `T`, and
    /// meets of those (the union of the presentations).
    pub fn equational_basis(&self) -> Option<Presentation> {
        match self {
            VarietyHandle::Builtin(b) => b.reference_presentation(),
            VarietyHandle::Presented(p) => Some(p.clone()),
            VarietyHandle::Meet(parts) => parts
                .iter()
                .map(VarietyHandle::equational_basis)
                .try_fold(Presentation::empty(), |acc, p| Some(acc.union(&p?))),
            VarietyHandle::Join(_) => None,
        }
    }

    /// Default search bounds for queries about `words` on this handle.
    pub fn default_bounds(&self, words: &[&Word]) -> SearchBounds {
        let mut all = Presentation::empty();
        self.collect_presentations(&mut all);
        SearchBounds::default_for(&all, words)
    }

    fn collect_presentations(&self, acc: &mut Presentation) {
        match self {
            VarietyHandle::Builtin(b) => {
                if let Some(p) = b.reference_presentation() {
                    *acc = acc.union(&p);
                }
            }
            VarietyHandle::Presented(p) => *acc = acc.union(p),
            VarietyHandle::Meet(parts) | VarietyHandle::Join(parts) => {
                for h in parts {
                    h.collect_presentations(acc);
                }
            }
        }
    }
}

/// Does the variety satisfy `id`?
///
/// Built-ins answer exactly. A presentation answers `Yes` when a derivation
/// is found and never `No`. A join's identities are those of all its
/// components; a meet satisfies everything any component does, plus the
/// consequences of the union of the components' presentations.
pub fn satisfies(h: &VarietyHandle, id: &Identity, bounds: &SearchBounds) -> Verdict {
    if id.is_trivial() {
        return Verdict::Yes;
    }
    match h {
        VarietyHandle::Builtin(b) => Verdict::from_bool(b.holds(id.lhs(), id.rhs())),
        VarietyHandle::Presented(sigma) => derive_verdict(sigma, id, bounds),
        VarietyHandle::Join(parts) => {
            let verdicts: Vec<Verdict> = parts.iter().map(|p| satisfies(p, id, bounds)).collect();
            if verdicts.contains(&Verdict::No) {
                Verdict::No
            } else if verdicts.iter().all(|v| *v == Verdict::Yes) {
                Verdict::Yes
            } else {
                Verdict::Unknown(UnknownReason::Composition)
            }
        }
        VarietyHandle::Meet(parts) => {
            if parts.iter().any(|p| satisfies(p, id, bounds) == Verdict::Yes) {
                return Verdict::Yes;
            }
            match h.equational_basis() {
                Some(sigma) => derive_verdict(&sigma, id, bounds),
                None => Verdict::Unknown(UnknownReason::Composition),
            }
        }
    }
}

fn derive_verdict(sigma: &Presentation, id: &Identity, bounds: &SearchBounds) -> Verdict {
    match derive(sigma, id.lhs(), id.rhs(), bounds) {
        Ok(out) if out.is_proved() => Verdict::Yes,
        Ok(_) => Verdict::Unknown(UnknownReason::Bounds),
        Err(RewriteError::ContentUnbalanced(_)) => Verdict::Unknown(UnknownReason::Unbalanced),
        Err(_) => Verdict::Unknown(UnknownReason::Bounds),
    }
}

/// Is `w` an isoterm for the variety?
///
/// Meets: the congruence of a meet is generated by the components'
/// congruences, so `w` is an isoterm iff it is one for every component.
/// Joins: the class of `w` is the intersection of the components' classes;
/// it is computed from a component with a finite, completely enumerated
/// class by asking the remaining components about each candidate.
pub fn isoterm_for(h: &VarietyHandle, w: &Word, bounds: &SearchBounds) -> Verdict {
    match h {
        VarietyHandle::Builtin(b) => Verdict::from_bool(b.is_isoterm(w)),
        VarietyHandle::Presented(sigma) => match isoterm_exact(w, sigma) {
            Ok(b) => Verdict::from_bool(b),
            Err(RewriteError::ContentUnbalanced(_)) => Verdict::Unknown(UnknownReason::Unbalanced),
            Err(_) => Verdict::Unknown(UnknownReason::Bounds),
        },
        VarietyHandle::Meet(parts) => {
            let verdicts: Vec<Verdict> = parts.iter().map(|p| isoterm_for(p, w, bounds)).collect();
            if verdicts.contains(&Verdict::No) {
                Verdict::No
            } else if verdicts.iter().all(|v| *v == Verdict::Yes) {
                Verdict::Yes
            } else {
                Verdict::Unknown(UnknownReason::Composition)
            }
        }
        VarietyHandle::Join(parts) => join_isoterm(parts, w, bounds),
    }
}

fn join_isoterm(parts: &[VarietyHandle], w: &Word, bounds: &SearchBounds) -> Verdict {
    if parts.iter().any(|p| isoterm_for(p, w, bounds) == Verdict::Yes) {
        return Verdict::Yes;
    }
    for (i, part) in parts.iter().enumerate() {
        let VarietyHandle::Presented(sigma) = part else {
            continue;
        };
        let Ok(enumeration) = enumerate_class(w, sigma, bounds) else {
            continue;
        };
        let Some(class) = enumeration.complete() else {
            continue;
        };
        let mut undecided = false;
        for other in class.iter().filter(|q| *q != w) {
            let id = Identity::new(w.clone(), other.clone());
            let verdicts: Vec<Verdict> =
                parts.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| satisfies(p, &id, bounds)).collect();
            if verdicts.iter().all(|v| *v == Verdict::Yes) {
                return Verdict::No;
            }
            if !verdicts.contains(&Verdict::No) {
                undecided = true;
            }
        }
        if !undecided {
            return Verdict::Yes;
        }
    }
    Verdict::Unknown(UnknownReason::Composition)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessSearch {
    Found(usize),
    NoneWithinBounds,
}

/// Least `n <= n_max` such that `x = x^(1+n)` is derivable from `sigma`.
pub fn completely_regular_witness(
    sigma: &Presentation,
    n_max: usize,
    bounds: &SearchBounds,
) -> Result<WitnessSearch, RewriteError> {
    power_witness(sigma, n_max, bounds, |n| (1, 1 + n))
}

/// Least `n <= n_max` such that `x^n = x^(n+1)` is derivable from `sigma`.
pub fn combinatorial_witness(
    sigma: &Presentation,
    n_max: usize,
    bounds: &SearchBounds,
) -> Result<WitnessSearch, RewriteError> {
    power_witness(sigma, n_max, bounds, |n| (n, n + 1))
}

fn power_witness(
    sigma: &Presentation,
    n_max: usize,
    bounds: &SearchBounds,
    exponents: impl Fn(usize) -> (usize, usize),
) -> Result<WitnessSearch, RewriteError> {
    sigma.check_balanced()?;
    let x = Variable::letter('x');
    for n in 1..=n_max {
        let (a, b) = exponents(n);
        if derive(sigma, &Word::power_of(x, a), &Word::power_of(x, b), bounds)?.is_proved() {
            return Ok(WitnessSearch::Found(n));
        }
    }
    Ok(WitnessSearch::NoneWithinBounds)
}

impl fmt::Display for VarietyHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, name: &str, parts: &[VarietyHandle]| {
            write!(f, "{name}(")?;
            for (i, p) in parts.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")
        };
        match self {
            VarietyHandle::Builtin(b) => f.write_str(b.name()),
            VarietyHandle::Presented(p) if p.is_empty() => f.write_str("MON"),
            VarietyHandle::Presented(p) => {
                let ids: Vec<String> = p.identities().iter().map(|i| i.to_string()).collect();
                write!(f, "var{{{}}}", ids.join(", "))
            }
            VarietyHandle::Meet(parts) => list(f, "meet", parts),
            VarietyHandle::Join(parts) => list(f, "join", parts),
        }
    }
}

#[derive(Debug, Error)]
pub enum HandleParseError {
    #[error("unexpected end of expression")]
    UnexpectedEnd,
    #[error("unexpected '{found}' at byte {at}")]
    Unexpected { found: char, at: usize },
    #[error("unknown variety name '{0}'")]
    UnknownName(String),
    #[error("'{0}' needs at least one argument")]
    EmptyComposition(String),
    #[error("cannot load presentation '{path}': {msg}")]
    Load { path: String, msg: String },
}

/// Parses a handle expression: `T`, `SL`, `C`, `LRB`, `RRB`, `MON`,
/// `@path` (presentation file) and `meet(...)`, `join(...)`. Presentation
/// files are read through `load`.
pub fn parse_handle_with<F>(text: &str, load: &mut F) -> Result<VarietyHandle, HandleParseError>
where
    F: FnMut(&str) -> Result<Presentation, String>,
{
    let mut parser = HandleParser { text, pos: 0 };
    let h = parser.expr(load)?;
    parser.skip_ws();
    match parser.peek() {
        None => Ok(h),
        Some(c) => Err(HandleParseError::Unexpected { found: c, at: parser.pos }),
    }
}

/// [`parse_handle_with`] reading presentation files from disk.
pub fn parse_handle(text: &str) -> Result<VarietyHandle, HandleParseError> {
    parse_handle_with(text, &mut |path| {
        let body = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        Presentation::parse(&body).map_err(|e| e.to_string())
    })
}

impl FromStr for VarietyHandle {
    type Err = HandleParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_handle(s)
    }
}

struct HandleParser<'a> {
    text: &'a str,
    pos: usize,
}

impl HandleParser<'_> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek().filter(|c| c.is_whitespace()) {
            self.pos += c.len_utf8();
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &str {
        let start = self.pos;
        while let Some(c) = self.peek().filter(|&c| pred(c)) {
            self.pos += c.len_utf8();
        }
        &self.text[start..self.pos]
    }

    fn expr<F>(&mut self, load: &mut F) -> Result<VarietyHandle, HandleParseError>
    where
        F: FnMut(&str) -> Result<Presentation, String>,
    {
        self.skip_ws();
        match self.peek() {
            None => Err(HandleParseError::UnexpectedEnd),
            Some('@') => {
                self.pos += 1;
                let path = self.take_while(|c| c != ',' && c != ')' && !c.is_whitespace()).to_string();
                if path.is_empty() {
                    return Err(HandleParseError::UnexpectedEnd);
                }
                let p = load(&path).map_err(|msg| HandleParseError::Load { path, msg })?;
                Ok(VarietyHandle::Presented(p))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.take_while(|c| c.is_ascii_alphanumeric()).to_string();
                self.skip_ws();
                if self.peek() == Some('(') {
                    self.pos += 1;
                    let mut parts = Vec::new();
                    loop {
                        self.skip_ws();
                        if self.peek() == Some(')') && parts.is_empty() {
                            return Err(HandleParseError::EmptyComposition(name));
                        }
                        parts.push(self.expr(load)?);
                        self.skip_ws();
                        match self.peek() {
                            Some(',') => self.pos += 1,
                            Some(')') => {
                                self.pos += 1;
                                break;
                            }
                            Some(c) => return Err(HandleParseError::Unexpected { found: c, at: self.pos }),
                            None => return Err(HandleParseError::UnexpectedEnd),
                        }
                    }
                    return match name.to_ascii_lowercase().as_str() {
                        "meet" => Ok(VarietyHandle::Meet(parts)),
                        "join" => Ok(VarietyHandle::Join(parts)),
                        _ => Err(HandleParseError::UnknownName(name)),
                    };
                }
                match name.as_str() {
                    "T" => Ok(VarietyHandle::Builtin(BuiltinVariety::T)),
                    "SL" => Ok(VarietyHandle::Builtin(BuiltinVariety::SL)),
                    "C" => Ok(VarietyHandle::Builtin(BuiltinVariety::C)),
                    "LRB" => Ok(VarietyHandle::Builtin(BuiltinVariety::LRB)),
                    "RRB" => Ok(VarietyHandle::Builtin(BuiltinVariety::RRB)),
                    "MON" => Ok(VarietyHandle::mon()),
                    _ => Err(HandleParseError::UnknownName(name)),
                }
            }
            Some(c) => Err(HandleParseError::Unexpected { found: c, at: self.pos }),
        }
    }
}
