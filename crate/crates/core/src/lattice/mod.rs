//! Explicit finite lattices and brute-force tests for special elements.

mod catalog;
mod properties;

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use catalog::{builtin_catalog, chain, m3, n5, CatalogEntry};
pub use properties::{
    check_implications, elements_with, has_property, search_element_counterexample, ElementProperty,
    ImplicationViolation, IMPLICATIONS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("duplicate element label '{0}'")]
    DuplicateLabel(String),
    #[error("unknown element '{0}'")]
    UnknownElement(String),
    #[error("order has a cycle through '{0}' and '{1}'")]
    Cycle(String, String),
    #[error("no least upper bound of {{{0}, {1}}}")]
    NoJoin(String, String),
    #[error("no greatest lower bound of {{{0}, {1}}}")]
    NoMeet(String, String),
    #[error("invalid lattice file: {0}")]
    Format(String),
}

/// A validated finite lattice over elements `0..len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
}

/// On-disk form: `{"elements": [...], "covers": [[lower, upper], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
}

impl FiniteLattice {
    /// Builds a lattice from labels and covering pairs `(lower, upper)`. The
    /// order is the reflexive-transitive closure of the pairs.
    pub fn build<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<FiniteLattice, LatticeError> {
        if elements.is_empty() {
            return Err(LatticeError::Empty);
        }
        let mut index = HashMap::new();
        let labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(LatticeError::DuplicateLabel(l.clone()));
            }
        }
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in covers {
            let lookup = |s: &S| {
                index.get(s.as_ref()).copied().ok_or_else(|| LatticeError::UnknownElement(s.as_ref().to_string()))
            };
            leq[lookup(a)?][lookup(b)?] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    let row_k = leq[k].clone();
                    for (cell, &via) in leq[i].iter_mut().zip(&row_k) {
                        *cell |= via;
                    }
                }
            }
        }
        Self::from_order(labels, leq)
    }

    fn from_order(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<FiniteLattice, LatticeError> {
        let n = labels.len();
        for i in 0..n {
            for j in i + 1..n {
                if leq[i][j] && leq[j][i] {
                    return Err(LatticeError::Cycle(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&c| leq[c][a] && leq[c][b]).collect();
                let upper: Vec<usize> = (0..n).filter(|&c| leq[a][c] && leq[b][c]).collect();
                meet[a][b] = *lower
                    .iter()
                    .find(|&&g| lower.iter().all(|&c| leq[c][g]))
                    .ok_or_else(|| LatticeError::NoMeet(labels[a].clone(), labels[b].clone()))?;
                join[a][b] = *upper
                    .iter()
                    .find(|&&l| upper.iter().all(|&c| leq[l][c]))
                    .ok_or_else(|| LatticeError::NoJoin(labels[a].clone(), labels[b].clone()))?;
            }
        }
        Ok(FiniteLattice { labels, leq, meet, join })
    }

    pub fn from_spec(spec: &LatticeSpec) -> Result<FiniteLattice, LatticeError> {
        let covers: Vec<(&str, &str)> = spec.covers.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
        let elements: Vec<&str> = spec.elements.iter().map(String::as_str).collect();
        FiniteLattice::build(&elements, &covers)
    }

    pub fn from_json(text: &str) -> Result<FiniteLattice, LatticeError> {
        let spec: LatticeSpec = serde_json::from_str(text).map_err(|e| LatticeError::Format(e.to_string()))?;
        FiniteLattice::from_spec(&spec)
    }

    /// Labels plus the covering pairs of the order.
    pub fn to_spec(&self) -> LatticeSpec {
        let n = self.len();
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let covered =
                    a != b && self.leq[a][b] && !(0..n).any(|c| c != a && c != b && self.leq[a][c] && self.leq[c][b]);
                if covered {
                    covers.push([self.labels[a].clone(), self.labels[b].clone()]);
                }
            }
        }
        LatticeSpec { elements: self.labels.clone(), covers }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element(&self, label: &str) -> Result<usize, LatticeError> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| LatticeError::UnknownElement(label.to_string()))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn bottom(&self) -> usize {
        self.elements().fold(0, |acc, x| self.meet(acc, x))
    }

    pub fn top(&self) -> usize {
        self.elements().fold(0, |acc, x| self.join(acc, x))
    }

    /// The same elements with the order reversed.
    pub fn dual(&self) -> FiniteLattice {
        let n = self.len();
        let leq = (0..n).map(|a| (0..n).map(|b| self.leq[b][a]).collect()).collect();
        FiniteLattice { labels: self.labels.clone(), leq, meet: self.join.clone(), join: self.meet.clone() }
    }

    /// Whether every element is distributive over every pair.
    pub fn is_distributive(&self) -> bool {
        self.elements().all(|x| {
            self.elements().all(|y| {
                self.elements().all(|z| self.join(x, self.meet(y, z)) == self.meet(self.join(x, y), self.join(x, z)))
            })
        })
    }

    /// Componentwise order on pairs; labels are `(a,b)`.
    pub fn product(&self, other: &FiniteLattice) -> FiniteLattice {
        let (n, m) = (self.len(), other.len());
        let labels = (0..n * m).map(|i| format!("({},{})", self.labels[i / m], other.labels[i % m])).collect();
        let leq = (0..n * m)
            .map(|i| (0..n * m).map(|j| self.leq[i / m][j / m] && other.leq[i % m][j % m]).collect())
            .collect();
        let table = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
            (0..n * m).map(|i| (0..n * m).map(|j| f(i, j)).collect()).collect()
        };
        let meet = table(&|i, j| self.meet[i / m][j / m] * m + other.meet[i % m][j % m]);
        let join = table(&|i, j| self.join[i / m][j / m] * m + other.join[i % m][j % m]);
        FiniteLattice { labels, leq, meet, join }
    }

    /// Adds a new least element labelled `label`.
    pub fn with_new_bottom(&self, label: &str) -> FiniteLattice {
        self.adjoin(label, true)
    }

    /// Adds a new greatest element labelled `label`.
    pub fn with_new_top(&self, label: &str) -> FiniteLattice {
        self.adjoin(label, false)
    }

    fn adjoin(&self, label: &str, below: bool) -> FiniteLattice {
        let n = self.len();
        let mut labels = self.labels.clone();
        labels.push(label.to_string());
        let mut leq: Vec<Vec<bool>> = self
            .leq
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.push(!below);
                r
            })
            .collect();
        let mut last = vec![below; n];
        last.push(true);
        leq.push(last);
        FiniteLattice::from_order(labels, leq).expect("adjoining a bound keeps a lattice")
    }
}

/// Whether `subset` is closed under meet and join.
pub fn is_sublattice(l: &FiniteLattice, subset: &BTreeSet<usize>) -> bool {
    subset.iter().all(|&a| subset.iter().all(|&b| subset.contains(&l.meet(a, b)) && subset.contains(&l.join(a, b))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_and_pentagon_build() {
        let c = FiniteLattice::build(&["0", "m", "1"], &[("0", "m"), ("m", "1")]).unwrap();
        assert_eq!(c.join(0, 2), 2);
        assert!(c.leq(0, 2));
        let l = n5();
        let (a, b, c) = (l.element("a").unwrap(), l.element("b").unwrap(), l.element("c").unwrap());
        assert_eq!(l.join(a, b), l.top());
        assert_eq!(l.meet(c, b), l.bottom());
        assert_eq!(l.label(l.bottom()), "0");
        assert_eq!(l.label(l.top()), "1");
    }

    #[test]
    fn invalid_inputs() {
        let none: &[(&str, &str)] = &[];
        assert_eq!(FiniteLattice::build(&["p", "q"], none), Err(LatticeError::NoMeet("p".into(), "q".into())));
        assert!(matches!(FiniteLattice::build(&["p", "q"], &[("p", "q"), ("q", "p")]), Err(LatticeError::Cycle(..))));
        assert!(matches!(FiniteLattice::build(&["p", "p"], none), Err(LatticeError::DuplicateLabel(_))));
        assert!(matches!(FiniteLattice::build(&["p"], &[("p", "r")]), Err(LatticeError::UnknownElement(_))));
        // two maximal elements above a common bottom: no join
        assert!(matches!(
            FiniteLattice::build(&["0", "p", "q"], &[("0", "p"), ("0", "q")]),
            Err(LatticeError::NoJoin(..))
        ));
        let empty: &[&str] = &[];
        assert_eq!(FiniteLattice::build(empty, none), Err(LatticeError::Empty));
    }

    #[test]
    fn json_roundtrip() {
        let text =
            r#"{"elements": ["0","a","b","c","1"], "covers": [["0","a"],["a","c"],["c","1"],["0","b"],["b","1"]]}"#;
        let l = FiniteLattice::from_json(text).unwrap();
        assert_eq!(l, n5());
        assert_eq!(FiniteLattice::from_spec(&l.to_spec()).unwrap(), l);
        assert!(FiniteLattice::from_json("{\"elements\": []}").is_err());
    }

    #[test]
    fn products_and_adjoined_bounds() {
        let b2 = chain(2).product(&chain(2));
        assert_eq!(b2.len(), 4);
        assert!(b2.is_distributive());
        assert!(!m3().is_distributive());
        let m = m3().with_new_bottom("z").with_new_top("t");
        assert_eq!(m.len(), 7);
        assert_eq!(m.label(m.bottom()), "z");
        assert_eq!(m.label(m.top()), "t");
        assert_eq!(m.dual().label(m.dual().bottom()), "t");
    }

    #[test]
    fn sublattices() {
        let l = n5();
        assert!(is_sublattice(&l, &[l.bottom(), l.top()].into_iter().collect()));
        let m = m3();
        let (p, q) = (m.element("p").unwrap(), m.element("q").unwrap());
        assert!(!is_sublattice(&m, &[p, q].into_iter().collect()));
    }
}
