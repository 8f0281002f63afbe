use std::collections::BTreeSet;

use crate::word::{Substitution, Variable, Word};

const UNBOUND: (usize, usize) = (usize::MAX, 0);

/// A word compiled for matching: variables renumbered densely in order of
/// first occurrence.
#[derive(Debug, Clone)]
pub(crate) struct Pattern {
    vars: Vec<Variable>,
    seq: Vec<usize>,
}

impl Pattern {
    pub(crate) fn compile(w: &Word) -> Pattern {
        let mut vars: Vec<Variable> = Vec::new();
        let seq = w
            .letters()
            .iter()
            .map(|v| match vars.iter().position(|u| u == v) {
                Some(i) => i,
                None => {
                    vars.push(*v);
                    vars.len() - 1
                }
            })
            .collect();
        Pattern { vars, seq }
    }

    pub(crate) fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub(crate) fn var_id(&self, v: Variable) -> Option<usize> {
        self.vars.iter().position(|&u| u == v)
    }

    /// Enumerates every substitution `ξ` (domain = pattern content) and end
    /// position `e` with `ξ(pattern) = text[start..e]`. Images are reported
    /// as `(offset, len)` spans into `text`, indexed by variable id.
    pub(crate) fn for_each_match_at<F>(&self, text: &[Variable], start: usize, f: &mut F)
    where
        F: FnMut(usize, &[(usize, usize)]),
    {
        let mut images = vec![UNBOUND; self.vars.len()];
        self.extend(text, 0, start, &mut images, f);
    }

    fn extend<F>(&self, text: &[Variable], i: usize, at: usize, images: &mut [(usize, usize)], f: &mut F)
    where
        F: FnMut(usize, &[(usize, usize)]),
    {
        if i == self.seq.len() {
            f(at, images);
            return;
        }
        let v = self.seq[i];
        let (off, len) = images[v];
        if off != usize::MAX {
            if at + len <= text.len() && text[at..at + len] == text[off..off + len] {
                self.extend(text, i + 1, at + len, images, f);
            }
            return;
        }
        for len in 0..=text.len() - at {
            images[v] = (at, len);
            self.extend(text, i + 1, at + len, images, f);
        }
        images[v] = UNBOUND;
    }

    pub(crate) fn substitution(&self, text: &[Variable], images: &[(usize, usize)]) -> Substitution {
        self.vars.iter().zip(images).map(|(v, &(off, len))| (*v, Word::from_slice(&text[off..off + len]))).collect()
    }
}

/// All substitutions `ξ` with domain `content(pattern)` such that
/// `ξ(pattern) = target`. Images may be empty.
pub fn match_pattern(pattern: &Word, target: &Word) -> BTreeSet<Substitution> {
    let compiled = Pattern::compile(pattern);
    let text = target.letters();
    let mut out = BTreeSet::new();
    compiled.for_each_match_at(text, 0, &mut |end, images| {
        if end == text.len() {
            out.insert(compiled.substitution(text, images));
        }
    });
    out
}
