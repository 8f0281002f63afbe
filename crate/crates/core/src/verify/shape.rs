use thiserror::Error;

use crate::rewrite::{
    derive, DerivationCertificate, DerivationOutcome, Identity, Presentation, RewriteError, SearchBounds,
};
use crate::word::{Variable, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("both sides must have content exactly {{x, y}}")]
    NotOverXY,
    #[error("the two sides are equal")]
    Trivial,
    #[error("padding produces the same word on both sides")]
    Collapsed,
    #[error("shape parameter must be at least 2, got {0}")]
    TooSmall(usize),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

fn xy() -> (Variable, Variable) {
    (Variable::letter('x'), Variable::letter('y'))
}

fn over_xy(w: &Word) -> bool {
    let (x, y) = xy();
    w.content() == [x, y].into_iter().collect()
}

/// Turns a non-trivial identity in `x, y` into one where both sides contain
/// `x` and `y` equally often (and at least twice each).
///
/// `u1` is followed by `x^(occ_x(v1)+1) y^(occ_y(v1)+1)`, `v1` by
/// `x^(occ_x(u1)+1) y^(occ_y(u1)+1)`, then both sides get the same run of the
/// rarer letter on the left. The result follows from `u1 = v1` and the power
/// identities obtained from it by deleting one letter. The sides can still
/// coincide (`xy = xyx` ends up as `xyx^3y^2` twice); that is reported as
/// [`ShapeError::Collapsed`].
pub fn balance_identity(u1: &Word, v1: &Word) -> Result<Identity, ShapeError> {
    if !over_xy(u1) || !over_xy(v1) {
        return Err(ShapeError::NotOverXY);
    }
    if u1 == v1 {
        return Err(ShapeError::Trivial);
    }
    let (x, y) = xy();
    let tail = |w: &Word| Word::power_of(x, w.occ(x) + 1).concat(&Word::power_of(y, w.occ(y) + 1));
    let u = u1.concat(&tail(v1));
    let v = v1.concat(&tail(u1));
    let (nx, ny) = (u.occ(x), u.occ(y));
    let pad = if nx < ny { Word::power_of(x, ny - nx) } else { Word::power_of(y, nx - ny) };
    let (u, v) = (pad.concat(&u), pad.concat(&v));
    if u == v {
        return Err(ShapeError::Collapsed);
    }
    Ok(Identity::new(u, v))
}

/// The identities used alongside `u1 = v1` to justify [`balance_identity`]:
/// `x^(occ_x(u1)+1) = x^(occ_x(v1)+1)` and the same for `y`.
pub fn balancing_power_identities(u1: &Word, v1: &Word) -> Vec<Identity> {
    let (x, y) = xy();
    [x, y]
        .into_iter()
        .map(|a| Identity::new(Word::power_of(a, u1.occ(a) + 1), Word::power_of(a, v1.occ(a) + 1)))
        .filter(|id| !id.is_trivial())
        .collect()
}

/// Some factor of `w` equal to `s^p` for a non-empty `s`, as `(start, s)`.
pub fn find_power_factor(w: &Word, p: usize) -> Option<(usize, Word)> {
    assert!(p >= 1, "exponent must be positive");
    let letters = w.letters();
    let n = letters.len();
    for period in 1..=n / p {
        let span = period * p;
        for start in 0..=n - span {
            let block = &letters[start..start + span];
            if (period..span).all(|i| block[i] == block[i - period]) {
                return Some((start, Word::from_slice(&block[..period])));
            }
        }
    }
    None
}

/// Checks `u = v` for the shape: content `{x, y}`, `x` and `y` each `k`
/// times on both sides, different `ini`, and no factor `x^k` or `y^k`.
pub fn has_shape(u: &Word, v: &Word, k: usize) -> bool {
    let (x, y) = xy();
    let profile = |w: &Word| over_xy(w) && w.occ(x) == k && w.occ(y) == k;
    let no_runs = |w: &Word| !w.contains_factor(&Word::power_of(x, k)) && !w.contains_factor(&Word::power_of(y, k));
    profile(u) && profile(v) && no_runs(u) && no_runs(v) && u.ini() != v.ini()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShapedSearch {
    Found {
        identity: Identity,
        /// From `identity.lhs()` to `identity.rhs()`.
        certificate: DerivationCertificate,
    },
    NoneWithinBounds,
}

impl ShapedSearch {
    pub fn identity(&self) -> Option<&Identity> {
        match self {
            ShapedSearch::Found { identity, .. } => Some(identity),
            ShapedSearch::NoneWithinBounds => None,
        }
    }
}

/// Words of length `2k` with `k` letters `x` and `k` letters `y` and no
/// factor `x^k` or `y^k`, in shortlex order.
pub fn shaped_candidates(k: usize) -> Vec<Word> {
    let (x, y) = xy();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(2 * k);
    fn go(cur: &mut Vec<Variable>, nx: usize, ny: usize, k: usize, x: Variable, y: Variable, out: &mut Vec<Word>) {
        if nx == k && ny == k {
            out.push(Word::from_slice(cur));
            return;
        }
        for (a, left) in [(x, k - nx), (y, k - ny)] {
            if left == 0 {
                continue;
            }
            let run = cur.iter().rev().take_while(|&&c| c == a).count();
            if run + 1 >= k {
                continue;
            }
            cur.push(a);
            let (nx2, ny2) = if a == x { (nx + 1, ny) } else { (nx, ny + 1) };
            go(cur, nx2, ny2, k, x, y, out);
            cur.pop();
        }
    }
    go(&mut cur, 0, 0, k, x, y, &mut out);
    out.sort();
    out
}

/// Looks for an identity of [`has_shape`] form among the consequences of
/// `sigma`, trying candidate pairs in shortlex order.
pub fn find_shaped_identity(sigma: &Presentation, k: usize, bounds: &SearchBounds) -> Result<ShapedSearch, ShapeError> {
    if k < 2 {
        return Err(ShapeError::TooSmall(k));
    }
    sigma.check_balanced()?;
    bounds.validate()?;
    let words = shaped_candidates(k);
    for (i, u) in words.iter().enumerate() {
        for v in &words[i + 1..] {
            if u.ini() == v.ini() {
                continue;
            }
            if let DerivationOutcome::Proved(certificate) = derive(sigma, u, v, bounds)? {
                return Ok(ShapedSearch::Found { identity: Identity::new(u.clone(), v.clone()), certificate });
            }
        }
    }
    Ok(ShapedSearch::NoneWithinBounds)
}
