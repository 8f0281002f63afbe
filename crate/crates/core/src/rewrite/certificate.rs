//! Plain-text form of derivation certificates.
//!
//! ```text
//! start: x^9yx^3
//! step 1: identity=0 direction=backward prefix=1 subst=x:x suffix=yx^3
//! step 2: identity=0 direction=forward prefix=x^7y subst=x:x suffix=x^2
//! end: x^7yx^5
//! ```
//!
//! `#` starts a comment. The identity index refers to the presentation the
//! certificate is checked against; `subst` lists `variable:image` bindings
//! separated by commas, or `{}` for the identity map.

use std::fmt;

use thiserror::Error;

use super::{DerivationCertificate, Direction, Presentation, RewriteStep};
use crate::word::{parse_word, ParseError, Substitution, Variable, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Word {
        line: usize,
        #[source]
        source: ParseError,
    },
    #[error("missing '{0}' line")]
    Missing(&'static str),
}

impl fmt::Display for DerivationCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "start: {}", self.start)?;
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "step {}: {}", i + 1, format_step(s))?;
        }
        writeln!(f, "end: {}", self.end)
    }
}

fn format_step(s: &RewriteStep) -> String {
    let subst = if s.subst.is_empty() {
        "{}".to_string()
    } else {
        s.subst.bindings().map(|(v, w)| format!("{v}:{w}")).collect::<Vec<_>>().join(",")
    };
    format!("identity={} direction={} prefix={} subst={} suffix={}", s.identity, s.direction, s.prefix, subst, s.suffix)
}

impl DerivationCertificate {
    /// The text form, with each step annotated by the rewrite it performs.
    pub fn annotated(&self, sigma: &Presentation) -> String {
        let mut out = format!("start: {}\n", self.start);
        for (i, s) in self.steps.iter().enumerate() {
            out.push_str(&format!("step {}: {}", i + 1, format_step(s)));
            if let (Some(id), Some((src, dst))) = (sigma.get(s.identity), s.endpoints(sigma)) {
                out.push_str(&format!("  # {src} -> {dst} by {id}"));
            }
            out.push('\n');
        }
        out.push_str(&format!("end: {}\n", self.end));
        out
    }
}

pub fn parse_certificate(text: &str) -> Result<DerivationCertificate, CertificateParseError> {
    let mut start = None;
    let mut end = None;
    let mut steps = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let word = |s: &str| parse_word(s).map_err(|source| CertificateParseError::Word { line: line_no, source });
        let syntax = |msg: &str| CertificateParseError::Syntax { line: line_no, msg: msg.to_string() };
        if let Some(rest) = line.strip_prefix("start:") {
            start = Some(word(rest)?);
        } else if let Some(rest) = line.strip_prefix("end:") {
            end = Some(word(rest)?);
        } else if let Some(rest) = line.strip_prefix("step") {
            let (_, body) = rest.split_once(':').ok_or_else(|| syntax("expected 'step N:'"))?;
            let mut identity = None;
            let mut direction = None;
            let mut prefix = None;
            let mut suffix = None;
            let mut subst = None;
            for field in body.split_whitespace() {
                let (key, value) = field.split_once('=').ok_or_else(|| syntax("expected key=value"))?;
                match key {
                    "identity" => identity = Some(value.parse::<usize>().map_err(|_| syntax("bad identity index"))?),
                    "direction" => {
                        direction = Some(match value {
                            "forward" => Direction::Forward,
                            "backward" => Direction::Backward,
                            _ => return Err(syntax("direction must be forward or backward")),
                        })
                    }
                    "prefix" => prefix = Some(word(value)?),
                    "suffix" => suffix = Some(word(value)?),
                    "subst" => subst = Some(parse_subst(value, line_no)?),
                    _ => return Err(syntax(&format!("unknown field '{key}'"))),
                }
            }
            steps.push(RewriteStep {
                prefix: prefix.ok_or_else(|| syntax("missing prefix"))?,
                suffix: suffix.ok_or_else(|| syntax("missing suffix"))?,
                identity: identity.ok_or_else(|| syntax("missing identity"))?,
                direction: direction.ok_or_else(|| syntax("missing direction"))?,
                subst: subst.ok_or_else(|| syntax("missing subst"))?,
            });
        } else {
            return Err(syntax("expected start:, step or end:"));
        }
    }
    Ok(DerivationCertificate {
        start: start.ok_or(CertificateParseError::Missing("start"))?,
        end: end.ok_or(CertificateParseError::Missing("end"))?,
        steps,
    })
}

fn parse_subst(text: &str, line: usize) -> Result<Substitution, CertificateParseError> {
    let mut s = Substitution::identity();
    if text == "{}" {
        return Ok(s);
    }
    for binding in text.split(',') {
        let (v, img) = binding
            .split_once(':')
            .ok_or_else(|| CertificateParseError::Syntax { line, msg: format!("bad binding '{binding}'") })?;
        let var: Variable = v.parse().map_err(|source| CertificateParseError::Word { line, source })?;
        let img: Word = parse_word(img).map_err(|source| CertificateParseError::Word { line, source })?;
        s.bind(var, img);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::{derive, verify_certificate, SearchBounds};
    use crate::word::w;

    #[test]
    fn text_roundtrip_replays() {
        let sigma = Presentation::from_strs(&["x = x^3"]);
        let b = SearchBounds::new(13, 4, 1000).unwrap();
        let out = derive(&sigma, &w("x^9yx^3"), &w("x^7yx^5"), &b).unwrap();
        let cert = out.certificate().unwrap();
        let text = cert.to_string();
        let back = parse_certificate(&text).unwrap();
        assert_eq!(&back, cert);
        assert_eq!(verify_certificate(&sigma, &back), Ok(()));
        assert_eq!(&parse_certificate(&cert.annotated(&sigma)).unwrap(), cert);
    }

    #[test]
    fn empty_and_erasing_substitutions() {
        let text = "start: 1\nstep 1: identity=2 direction=forward prefix=1 subst=x:1,y:x2^3 suffix=1\nend: 1\n";
        let cert = parse_certificate(text).unwrap();
        assert_eq!(cert.steps[0].subst.image(Variable::letter('x')), Some(&Word::empty()));
        assert_eq!(parse_certificate(&cert.to_string()).unwrap(), cert);
    }

    #[test]
    fn malformed() {
        assert_eq!(parse_certificate("end: x"), Err(CertificateParseError::Missing("start")));
        assert!(parse_certificate("start: x\nstep 1: identity=0\nend: x").is_err());
        assert!(parse_certificate("start: x\nbogus\nend: x").is_err());
        assert!(
            parse_certificate("start: x\nstep 1: identity=0 direction=up prefix=1 subst={} suffix=1\nend: x").is_err()
        );
    }
}
