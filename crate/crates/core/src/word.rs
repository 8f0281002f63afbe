//! Words of the free monoid over a countable alphabet.
//!
//! Variables are single lowercase letters, optionally followed by a decimal
//! index (`x`, `y`, `x1`, `x2`, ...). The empty word is written `1` and
//! repeated letters may be written with an exponent (`x^9yx^3`).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("unexpected character {found:?} at byte {at}")]
    Unexpected { found: char, at: usize },
    #[error("exponent at byte {at} must be at least 1")]
    ZeroExponent { at: usize },
    #[error("missing exponent after '^' at byte {at}")]
    MissingExponent { at: usize },
    #[error("number at byte {at} is out of range")]
    Overflow { at: usize },
    #[error("index at byte {at} has a leading zero")]
    LeadingZero { at: usize },
}

/// A variable: a letter `a`-`z` with an optional numeric index.
///
/// Ordering is by letter, then by index with the unindexed variable first,
/// so `x < x1 < x2 < y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    letter: u8,
    index: Option<u32>,
}

impl Variable {
    /// Panics if `letter` is not an ASCII lowercase letter.
    pub fn letter(letter: char) -> Self {
        assert!(letter.is_ascii_lowercase(), "variable letter must be a-z");
        Variable { letter: letter as u8, index: None }
    }

    pub fn indexed(letter: char, index: u32) -> Self {
        Variable { index: Some(index), ..Variable::letter(letter) }
    }

    pub fn base(&self) -> char {
        self.letter as char
    }

    pub fn index(&self) -> Option<u32> {
        self.index
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            None => write!(f, "{}", self.letter as char),
            Some(i) => write!(f, "{}{}", self.letter as char, i),
        }
    }
}

impl FromStr for Variable {
    type Err = ParseError;

    /// A single token without exponent, e.g. `x` or `x12`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let mut chars = t.char_indices();
        let letter = match chars.next() {
            None => return Err(ParseError::Empty),
            Some((_, c)) if c.is_ascii_lowercase() => c,
            Some((at, c)) => return Err(ParseError::Unexpected { found: c, at }),
        };
        let digits = &t[1..];
        if digits.is_empty() {
            return Ok(Variable::letter(letter));
        }
        if let Some((at, c)) = digits.char_indices().find(|(_, c)| !c.is_ascii_digit()) {
            return Err(ParseError::Unexpected { found: c, at: at + 1 });
        }
        if digits.len() > 1 && digits.starts_with('0') {
            return Err(ParseError::LeadingZero { at: 1 });
        }
        let index = digits.parse().map_err(|_| ParseError::Overflow { at: 1 })?;
        Ok(Variable::indexed(letter, index))
    }
}

/// An element of the free monoid: a finite, possibly empty, sequence of
/// variables.
///
/// Words are ordered shortlex (by length, then lexicographically), which is
/// the order every search in this crate visits them in.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Variable>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    /// The empty word.
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Variable>) -> Self {
        Word(letters)
    }

    pub fn from_slice(letters: &[Variable]) -> Self {
        Word(letters.to_vec())
    }

    /// `v` repeated `k` times.
    pub fn power_of(v: Variable, k: usize) -> Self {
        Word(vec![v; k])
    }

    pub fn letters(&self) -> &[Variable] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Variable> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `self` repeated `k` times.
    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// The factor occupying positions `start..end`.
    pub fn factor(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// The set of variables occurring in the word.
    pub fn content(&self) -> BTreeSet<Variable> {
        self.0.iter().copied().collect()
    }

    /// Number of occurrences of `v`.
    pub fn occ(&self, v: Variable) -> usize {
        self.0.iter().filter(|&&u| u == v).count()
    }

    /// Keeps only the first occurrence of each variable.
    pub fn ini(&self) -> Word {
        let mut seen = BTreeSet::new();
        Word(self.0.iter().copied().filter(|v| seen.insert(*v)).collect())
    }

    /// Keeps only the last occurrence of each variable.
    pub fn fin(&self) -> Word {
        let mut seen = BTreeSet::new();
        let mut letters: Vec<Variable> = self.0.iter().rev().copied().filter(|v| seen.insert(*v)).collect();
        letters.reverse();
        Word(letters)
    }

    /// Whether `needle` occurs as a contiguous factor.
    pub fn contains_factor(&self, needle: &Word) -> bool {
        needle.is_empty() || self.0.windows(needle.len()).any(|w| w == needle.0.as_slice())
    }

    /// Swaps the occurrences of two variables.
    pub fn swap_variables(&self, a: Variable, b: Variable) -> Word {
        Word(
            self.0
                .iter()
                .map(|&v| {
                    if v == a {
                        b
                    } else if v == b {
                        a
                    } else {
                        v
                    }
                })
                .collect(),
        )
    }
}

impl From<Vec<Variable>> for Word {
    fn from(letters: Vec<Variable>) -> Self {
        Word(letters)
    }
}

impl FromIterator<Variable> for Word {
    fn from_iter<I: IntoIterator<Item = Variable>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Parses word syntax: variable tokens with an optional `^k`, or `1` for the
/// empty word. Whitespace between tokens is ignored.
pub fn parse_word(text: &str) -> Result<Word, ParseError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(ParseError::Empty);
    }
    if trimmed == "1" {
        return Ok(Word::empty());
    }
    let offset = text.len() - text.trim_start().len();
    let bytes = trimmed.as_bytes();
    let mut letters = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if !c.is_ascii_lowercase() {
            return Err(ParseError::Unexpected { found: trimmed[i..].chars().next().unwrap(), at: offset + i });
        }
        i += 1;
        let index = match read_number(bytes, &mut i, offset)? {
            Some((n, start)) => {
                if n != 0 && bytes[start] == b'0' {
                    return Err(ParseError::LeadingZero { at: offset + start });
                }
                Some(n)
            }
            None => None,
        };
        let var = Variable { letter: c, index };
        let mut k = 1;
        if i < bytes.len() && bytes[i] == b'^' {
            let caret = i;
            i += 1;
            match read_number(bytes, &mut i, offset)? {
                None => return Err(ParseError::MissingExponent { at: offset + caret }),
                Some((0, _)) => return Err(ParseError::ZeroExponent { at: offset + caret }),
                Some((n, _)) => k = n as usize,
            }
        }
        letters.extend(std::iter::repeat_n(var, k));
    }
    Ok(Word(letters))
}

fn read_number(bytes: &[u8], i: &mut usize, offset: usize) -> Result<Option<(u32, usize)>, ParseError> {
    let start = *i;
    while *i < bytes.len() && bytes[*i].is_ascii_digit() {
        *i += 1;
    }
    if *i == start {
        return Ok(None);
    }
    let digits = std::str::from_utf8(&bytes[start..*i]).expect("ascii digits");
    digits.parse::<u32>().map(|n| Some((n, start))).map_err(|_| ParseError::Overflow { at: offset + start })
}

/// Canonical text: maximal runs compressed to `^k`, `1` for the empty word.
pub fn format_word(w: &Word) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let mut out = String::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let v = letters[i];
        let mut j = i + 1;
        while j < letters.len() && letters[j] == v {
            j += 1;
        }
        out.push_str(&v.to_string());
        if j - i > 1 {
            out.push('^');
            out.push_str(&(j - i).to_string());
        }
        i = j;
    }
    out
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(self))
    }
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

/// An endomorphism of the free monoid, given by the images of finitely many
/// variables. Variables without a binding are fixed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Substitution(BTreeMap<Variable, Word>);

impl Substitution {
    pub fn identity() -> Self {
        Substitution(BTreeMap::new())
    }

    pub fn bind(&mut self, v: Variable, image: Word) -> Option<Word> {
        self.0.insert(v, image)
    }

    pub fn with(mut self, v: Variable, image: Word) -> Self {
        self.bind(v, image);
        self
    }

    pub fn image(&self, v: Variable) -> Option<&Word> {
        self.0.get(&v)
    }

    pub fn bindings(&self) -> impl Iterator<Item = (Variable, &Word)> {
        self.0.iter().map(|(v, w)| (*v, w))
    }

    pub fn domain(&self) -> BTreeSet<Variable> {
        self.0.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Applies the endomorphism to `w`.
    pub fn apply(&self, w: &Word) -> Word {
        let mut out = Vec::with_capacity(w.len());
        for v in w.letters() {
            match self.0.get(v) {
                Some(image) => out.extend_from_slice(image.letters()),
                None => out.push(*v),
            }
        }
        Word(out)
    }
}

impl FromIterator<(Variable, Word)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (Variable, Word)>>(iter: I) -> Self {
        Substitution(iter.into_iter().collect())
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("{}");
        }
        let parts: Vec<String> = self.0.iter().map(|(v, w)| format!("{v}->{w}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// Free-function form of [`Substitution::apply`].
pub fn apply(s: &Substitution, w: &Word) -> Word {
    s.apply(w)
}

#[cfg(test)]
pub(crate) fn w(text: &str) -> Word {
    parse_word(text).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x() -> Variable {
        Variable::letter('x')
    }
    fn y() -> Variable {
        Variable::letter('y')
    }

    #[test]
    fn parse_expands_exponents() {
        let u = w("x^9yx^3");
        assert_eq!(u.len(), 13);
        assert_eq!(u, Word::power_of(x(), 9).concat(&w("y")).concat(&Word::power_of(x(), 3)));
        assert_eq!(w("1"), Word::empty());
        assert_eq!(w("xyxyx").len(), 5);
        assert_eq!(w(" x y "), w("xy"));
    }

    #[test]
    fn parse_indexed_variables() {
        let u = w("x1x2^2x");
        assert_eq!(
            u.letters(),
            &[Variable::indexed('x', 1), Variable::indexed('x', 2), Variable::indexed('x', 2), x()]
        );
        assert_eq!(format_word(&u), "x1x2^2x");
        assert!(Variable::letter('x') < Variable::indexed('x', 1));
        assert!(Variable::indexed('x', 7) < Variable::letter('y'));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_word(""), Err(ParseError::Empty));
        assert_eq!(parse_word("   "), Err(ParseError::Empty));
        assert!(matches!(parse_word("x^0"), Err(ParseError::ZeroExponent { .. })));
        assert!(matches!(parse_word("x^"), Err(ParseError::MissingExponent { .. })));
        assert!(matches!(parse_word("xY"), Err(ParseError::Unexpected { found: 'Y', .. })));
        assert!(matches!(parse_word("1x"), Err(ParseError::Unexpected { .. })));
        assert!(matches!(parse_word("x01"), Err(ParseError::LeadingZero { .. })));
        assert!(matches!(parse_word("^2"), Err(ParseError::Unexpected { .. })));
    }

    #[test]
    fn format_compresses_runs() {
        assert_eq!(format_word(&Word::empty()), "1");
        assert_eq!(format_word(&w("xxxxxxxxxyxxx")), "x^9yx^3");
        assert_eq!(format_word(&w("xyx")), "xyx");
    }

    #[test]
    fn content_and_occurrences() {
        assert!(Word::empty().content().is_empty());
        assert_eq!(w("xyxyx").content(), [x(), y()].into_iter().collect());
        assert_eq!(w("x^9yx^3").content(), [x(), y()].into_iter().collect());
        assert_eq!(Word::empty().occ(x()), 0);
        assert_eq!(w("xyxyx").occ(x()), 3);
        assert_eq!(w("xyxyx").occ(y()), 2);
        assert_eq!(w("x^9yx^3").occ(x()), 12);
    }

    #[test]
    fn ini_and_fin() {
        assert_eq!(Word::empty().ini(), Word::empty());
        assert_eq!(w("xyxyx").ini(), w("xy"));
        assert_eq!(w("yxyxx").ini(), w("yx"));
        assert_eq!(w("xxyxz").ini(), w("xyz"));
        assert_eq!(Word::empty().fin(), Word::empty());
        assert_eq!(w("xyxyx").fin(), w("yx"));
        assert_eq!(w("xxyxz").fin(), w("yxz"));
        assert_eq!(w("xxyxz").fin(), w("xxyxz").reversed().ini().reversed());
    }

    #[test]
    fn substitution_application() {
        let swap = Substitution::identity().with(x(), w("y")).with(y(), w("x"));
        assert_eq!(swap.apply(&w("xyxy")), w("yxyx"));
        assert_eq!(Substitution::identity().apply(&w("xyz")), w("xyz"));
        let erase = Substitution::identity().with(x(), Word::empty());
        assert_eq!(apply(&erase, &w("xyxyx")), w("yy"));
        assert_eq!(erase.apply(&Word::empty()), Word::empty());
    }

    #[test]
    fn shortlex_order() {
        assert!(w("y") < w("xx"));
        assert!(w("xy") < w("yx"));
        assert!(Word::empty() < w("x"));
    }

    fn arb_var() -> impl Strategy<Value = Variable> {
        prop_oneof![
            (0u8..4).prop_map(|c| Variable::letter((b'x' + c.min(2)) as char)),
            (0u32..3).prop_map(|i| Variable::indexed('a', i)),
        ]
    }

    fn arb_word(max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(arb_var(), 0..=max).prop_map(Word::new)
    }

    fn arb_subst() -> impl Strategy<Value = Substitution> {
        prop::collection::vec((arb_var(), arb_word(3)), 0..4).prop_map(|pairs| pairs.into_iter().collect())
    }

    proptest! {
        #[test]
        fn apply_is_homomorphism(s in arb_subst(), u in arb_word(10), v in arb_word(10)) {
            prop_assert_eq!(s.apply(&u.concat(&v)), s.apply(&u).concat(&s.apply(&v)));
            prop_assert_eq!(s.apply(&Word::empty()), Word::empty());
        }

        #[test]
        fn ini_properties(u in arb_word(12)) {
            let i = u.ini();
            prop_assert_eq!(i.ini(), i.clone());
            prop_assert_eq!(i.content(), u.content());
            for v in u.content() {
                prop_assert!(i.occ(v) <= 1);
            }
            prop_assert_eq!(u.fin(), u.reversed().ini().reversed());
        }

        #[test]
        fn occurrences_sum_to_length(u in arb_word(12)) {
            let total: usize = u.content().into_iter().map(|v| u.occ(v)).sum();
            prop_assert_eq!(total, u.len());
        }

        #[test]
        fn format_parse_roundtrip(u in arb_word(12)) {
            let text = format_word(&u);
            prop_assert_eq!(parse_word(&text).unwrap(), u.clone());
            prop_assert_eq!(format_word(&parse_word(&text).unwrap()), text);
        }
    }
}
