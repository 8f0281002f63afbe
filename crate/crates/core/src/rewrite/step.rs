use std::collections::BTreeMap;
use std::fmt;

use super::matching::Pattern;
use super::{Presentation, RewriteError};
use crate::word::{Substitution, Variable, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// Rewrite an instance of the left side into the right side.
    Forward,
    /// Rewrite an instance of the right side into the left side.
    Backward,
}

impl Direction {
    pub fn reversed(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        })
    }
}

/// One application of an identity: `prefix·ξ(s)·suffix -> prefix·ξ(t)·suffix`
/// where `(s, t)` is the identity oriented by `direction`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RewriteStep {
    pub prefix: Word,
    pub suffix: Word,
    pub identity: usize,
    pub direction: Direction,
    pub subst: Substitution,
}

impl RewriteStep {
    /// Source and target words, or `None` if the identity index is unknown.
    pub fn endpoints(&self, sigma: &Presentation) -> Option<(Word, Word)> {
        let id = sigma.get(self.identity)?;
        let (s, t) = id.oriented(self.direction);
        let wrap = |core: Word| self.prefix.concat(&core).concat(&self.suffix);
        Some((wrap(self.subst.apply(s)), wrap(self.subst.apply(t))))
    }

    /// The same step read in the opposite direction.
    pub fn reversed(&self) -> RewriteStep {
        RewriteStep { direction: self.direction.reversed(), ..self.clone() }
    }
}

struct Rule {
    identity: usize,
    direction: Direction,
    source: Pattern,
    /// Replacement side as variable ids of `source`.
    replacement: Vec<usize>,
    /// Occurrences of each source variable in the replacement.
    weight: Vec<usize>,
}

/// A content-balanced presentation compiled into oriented rules.
pub(crate) struct RuleSet {
    rules: Vec<Rule>,
}

impl RuleSet {
    pub(crate) fn compile(sigma: &Presentation) -> Result<RuleSet, RewriteError> {
        sigma.check_balanced()?;
        let mut rules = Vec::new();
        for (index, id) in sigma.identities().iter().enumerate() {
            if id.is_trivial() {
                continue;
            }
            for direction in [Direction::Forward, Direction::Backward] {
                let (s, t) = id.oriented(direction);
                let source = Pattern::compile(s);
                let replacement: Vec<usize> =
                    t.letters().iter().map(|&v| source.var_id(v).expect("balanced identity")).collect();
                let mut weight = vec![0; source.vars().len()];
                for &i in &replacement {
                    weight[i] += 1;
                }
                rules.push(Rule { identity: index, direction, source, replacement, weight });
            }
        }
        Ok(RuleSet { rules })
    }

    /// Calls `visit` for every word other than `p` reachable in one step,
    /// skipping results longer than `max_len`. Returns whether anything was
    /// skipped for length. The same word may be reported more than once.
    pub(crate) fn for_each_successor<F>(&self, p: &Word, max_len: Option<usize>, mut visit: F) -> bool
    where
        F: FnMut(Word, &dyn Fn() -> RewriteStep),
    {
        let text = p.letters();
        let mut pruned = false;
        for rule in &self.rules {
            for start in 0..=text.len() {
                rule.source.for_each_match_at(text, start, &mut |end, images| {
                    let grown: usize = rule.weight.iter().zip(images).map(|(k, (_, l))| k * l).sum();
                    let new_len = text.len() - (end - start) + grown;
                    if max_len.is_some_and(|m| new_len > m) {
                        pruned = true;
                        return;
                    }
                    let mut out: Vec<Variable> = Vec::with_capacity(new_len);
                    out.extend_from_slice(&text[..start]);
                    for &v in &rule.replacement {
                        let (off, len) = images[v];
                        out.extend_from_slice(&text[off..off + len]);
                    }
                    out.extend_from_slice(&text[end..]);
                    if out == text {
                        return;
                    }
                    let build = || RewriteStep {
                        prefix: Word::from_slice(&text[..start]),
                        suffix: Word::from_slice(&text[end..]),
                        identity: rule.identity,
                        direction: rule.direction,
                        subst: rule.source.substitution(text, images),
                    };
                    visit(Word::new(out), &build);
                });
            }
        }
        pruned
    }

    /// Distinct successors of `p` (excluding `p`), each with the first step
    /// found for it.
    pub(crate) fn successors(&self, p: &Word, max_len: Option<usize>) -> (BTreeMap<Word, RewriteStep>, bool) {
        let mut out = BTreeMap::new();
        let pruned = self.for_each_successor(p, max_len, |q, step| {
            out.entry(q).or_insert_with(step);
        });
        (out, pruned)
    }
}

/// Every word reachable from `p` in exactly one non-trivial rewrite step,
/// each paired with a step that replays it. Requires every identity to have
/// the same content on both sides.
pub fn one_step_successors(p: &Word, sigma: &Presentation) -> Result<BTreeMap<Word, RewriteStep>, RewriteError> {
    let rules = RuleSet::compile(sigma)?;
    Ok(rules.successors(p, None).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;
    use proptest::prelude::*;

    fn words(m: &BTreeMap<Word, RewriteStep>) -> Vec<Word> {
        m.keys().cloned().collect()
    }

    #[test]
    fn single_letter_under_cube_identity() {
        let sigma = Presentation::from_strs(&["x = x^3"]);
        let succ = one_step_successors(&w("x"), &sigma).unwrap();
        assert_eq!(words(&succ), vec![w("x^3")]);
    }

    #[test]
    fn balanced_pair_has_single_successor() {
        let sigma = Presentation::from_strs(&["xyxyx = yxyxx", "xyyxx = yxxyx"]);
        let succ = one_step_successors(&w("xyxyx"), &sigma).unwrap();
        assert_eq!(words(&succ), vec![w("yxyxx")]);
    }

    #[test]
    fn empty_word_is_fixed() {
        let sigma = Presentation::from_strs(&["x^2 = x^3", "x^2y = xyx", "x^2y^2 = y^2x^2"]);
        assert!(one_step_successors(&Word::empty(), &sigma).unwrap().is_empty());
    }

    #[test]
    fn unbalanced_is_rejected() {
        let sigma = Presentation::from_strs(&["xy = x"]);
        assert!(matches!(one_step_successors(&w("x"), &sigma), Err(RewriteError::ContentUnbalanced(_))));
    }

    #[test]
    fn steps_replay() {
        let sigma = Presentation::from_strs(&["x^2 = x^3", "x^2y = xyx", "x^2y^2 = y^2x^2"]);
        let p = w("xyxyy");
        for (q, step) in one_step_successors(&p, &sigma).unwrap() {
            assert_eq!(step.endpoints(&sigma), Some((p.clone(), q)));
        }
    }

    fn xy_word(max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(prop::bool::ANY, 0..=max)
            .prop_map(|bits| bits.into_iter().map(|b| Variable::letter(if b { 'x' } else { 'y' })).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn one_step_relation_is_symmetric(p in xy_word(6), which in 0usize..3) {
            let sigma = match which {
                0 => Presentation::from_strs(&["xyxyx = yxyxx", "xyyxx = yxxyx", "xyxyx = xyyxx"]),
                1 => Presentation::from_strs(&["x^2 = x^3", "x^2y = xyx", "x^2y^2 = y^2x^2"]),
                _ => Presentation::from_strs(&["x = x^3"]),
            };
            for q in one_step_successors(&p, &sigma).unwrap().keys() {
                prop_assert!(one_step_successors(q, &sigma).unwrap().contains_key(&p));
            }
        }
    }
}
