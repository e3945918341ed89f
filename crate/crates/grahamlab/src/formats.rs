//! Text formats: edge lists, caterpillar specs and polynomial coefficients.

use std::fmt::Write as _;

use grahamlab_core::caterpillar::CaterpillarSpec;
use grahamlab_core::{Graph, Polynomial};
use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{what}, line {line}: {message}")]
pub struct FormatError {
    pub what: &'static str,
    /// 1-based; 0 when the error is not tied to a line.
    pub line: usize,
    pub message: String,
}

fn err(what: &'static str, line: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        what,
        line,
        message: message.into(),
    }
}

/// One `u v` pair per line, 0-based. Blank lines and `#` comments are
/// skipped. An optional first record `n <vertex_count>` fixes the vertex
/// count; otherwise it is one more than the largest label.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    const WHAT: &str = "edge list";
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut seen_record = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields[0] == "n" {
            if seen_record {
                return Err(err(WHAT, line, "header must precede all edges"));
            }
            if fields.len() != 2 {
                return Err(err(WHAT, line, "expected `n <vertex_count>`"));
            }
            let n = fields[1]
                .parse()
                .map_err(|_| err(WHAT, line, format!("bad vertex count {:?}", fields[1])))?;
            declared = Some(n);
            seen_record = true;
            continue;
        }
        seen_record = true;
        if fields.len() != 2 {
            return Err(err(WHAT, line, "expected two vertex labels"));
        }
        let parse = |s: &str| {
            s.parse::<u32>()
                .map_err(|_| err(WHAT, line, format!("bad vertex label {s:?}")))
        };
        edges.push((parse(fields[0])?, parse(fields[1])?));
    }
    let implied = edges
        .iter()
        .map(|&(u, v)| u.max(v) as usize + 1)
        .max()
        .unwrap_or(0);
    let n = declared.unwrap_or(implied);
    Graph::new(n, edges).map_err(|e| err(WHAT, 0, e.to_string()))
}

/// Writes the header and one edge per line.
pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.vertex_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// `parts=3,0,2 m=6 pad=17`; `pad` defaults to 0, `parts` may be empty.
pub fn parse_caterpillar_spec(text: &str) -> Result<CaterpillarSpec, FormatError> {
    const WHAT: &str = "caterpillar spec";
    let mut parts = None;
    let mut spacing = None;
    let mut pad = None;
    for field in text.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| err(WHAT, 1, format!("expected key=value, got {field:?}")))?;
        let number = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| err(WHAT, 1, format!("bad number {s:?} for {key}")))
        };
        let slot_taken = match key {
            "parts" => {
                let list = if value.is_empty() {
                    Vec::new()
                } else {
                    value.split(',').map(number).collect::<Result<_, _>>()?
                };
                parts.replace(list).is_some()
            }
            "m" => spacing.replace(number(value)?).is_some(),
            "pad" => pad.replace(number(value)?).is_some(),
            other => return Err(err(WHAT, 1, format!("unknown key {other:?}"))),
        };
        if slot_taken {
            return Err(err(WHAT, 1, format!("duplicate key {key:?}")));
        }
    }
    let parts = parts.ok_or_else(|| err(WHAT, 1, "missing parts="))?;
    let spacing = spacing.ok_or_else(|| err(WHAT, 1, "missing m="))?;
    CaterpillarSpec::new(parts, spacing, pad.unwrap_or(0)).map_err(|e| err(WHAT, 1, e.to_string()))
}

pub fn format_caterpillar_spec(spec: &CaterpillarSpec) -> String {
    let parts: Vec<String> = spec.parts.iter().map(|p| p.to_string()).collect();
    format!("parts={} m={} pad={}", parts.join(","), spec.spacing, spec.pad)
}

/// Comma-separated rationals, highest degree first: `1/2,3/2,5/2`.
pub fn parse_polynomial(text: &str) -> Result<Polynomial, FormatError> {
    const WHAT: &str = "polynomial";
    let mut coeffs = text
        .split(',')
        .map(|c| {
            let c = c.trim();
            c.parse::<BigRational>()
                .map_err(|_| err(WHAT, 1, format!("bad coefficient {c:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    coeffs.reverse();
    Ok(Polynomial::from_coeffs(coeffs))
}

/// Inverse of [`parse_polynomial`]; the zero polynomial is `0`.
pub fn format_polynomial(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let coeffs: Vec<String> = p.coeffs().iter().rev().map(|c| c.to_string()).collect();
    coeffs.join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_text() {
        let p = parse_polynomial("1/2, 3/2,5/2").unwrap();
        assert_eq!(p.to_string(), "1/2*x^2 + 3/2*x + 5/2");
        assert_eq!(format_polynomial(&p), "1/2,3/2,5/2");
        assert_eq!(format_polynomial(&parse_polynomial("0,0,1").unwrap()), "1");
        assert!(parse_polynomial("1,x").is_err());
    }

    #[test]
    fn spec_text() {
        let s = parse_caterpillar_spec("parts=3,0,2 m=6 pad=17").unwrap();
        assert_eq!((s.parts.clone(), s.spacing, s.pad), (vec![3, 0, 2], 6, 17));
        assert_eq!(format_caterpillar_spec(&s), "parts=3,0,2 m=6 pad=17");
        assert_eq!(parse_caterpillar_spec("m=1 parts=").unwrap().parts, Vec::<usize>::new());
        assert!(parse_caterpillar_spec("parts=1").is_err());
        assert!(parse_caterpillar_spec("parts=1 m=2 m=3").is_err());
        assert!(parse_caterpillar_spec("parts=1 m=0").is_err());
    }
}
