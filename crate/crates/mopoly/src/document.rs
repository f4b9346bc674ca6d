//! The `.mop` document format.
//!
//! One concern per line, order-insensitive; `#` starts a comment:
//!
//! ```text
//! elements: m0 p q m4 m1 m3
//! covers: m0<p p<q q<m4 m1<q p<m3
//! marks: m0=0 m1=1 m3=3 m4=4
//! condition: 1*p + 1*r = 4
//! ```
//!
//! Rationals are written `n` or `n/d` in lowest terms with d > 0. Parsing a
//! serialized document reproduces it byte-identically.

use std::collections::BTreeMap;

use num::Zero;

use crate::conditional::LinearConditions;
use crate::error::{Error, Result};
use crate::marked::MarkedPoset;
use crate::poset::Poset;
use crate::rational::{format_rat, parse_rat, rat, Rat};

fn column_of(line: &str, token: &str) -> usize {
    line.find(token).map_or(1, |pos| pos + 1)
}

fn parse_term(term: &str) -> Option<(Rat, String)> {
    match term.split_once('*') {
        Some((c, name)) if !name.trim().is_empty() => {
            Some((parse_rat(c.trim()).ok()?, name.trim().to_string()))
        }
        Some(_) => None,
        None => Some((rat(1), term.to_string())),
    }
}

/// Parses a document into a marked poset and its conditions, if any.
/// Malformed syntax yields positioned parse errors; well-formed documents
/// that violate the semantic invariants surface the library's own errors.
pub fn parse_document(text: &str) -> Result<(MarkedPoset, Option<LinearConditions>)> {
    let mut elements: Vec<String> = Vec::new();
    let mut covers: Vec<(String, String)> = Vec::new();
    let mut marks: BTreeMap<String, Rat> = BTreeMap::new();
    let mut conditions: Vec<(Vec<(String, Rat)>, Rat)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim_end();
        if line.trim().is_empty() {
            continue;
        }
        let Some((key, rest)) = line.split_once(':') else {
            return Err(Error::parse(lineno, 1, "expected `key: …`"));
        };
        match key.trim() {
            "elements" => {
                elements.extend(rest.split_whitespace().map(str::to_string));
            }
            "covers" => {
                for token in rest.split_whitespace() {
                    let Some((lo, hi)) = token.split_once('<') else {
                        return Err(Error::parse(
                            lineno,
                            column_of(raw, token),
                            format!("expected `lower<upper`, found `{token}`"),
                        ));
                    };
                    if lo.is_empty() || hi.is_empty() {
                        return Err(Error::parse(
                            lineno,
                            column_of(raw, token),
                            format!("expected `lower<upper`, found `{token}`"),
                        ));
                    }
                    covers.push((lo.to_string(), hi.to_string()));
                }
            }
            "marks" => {
                for token in rest.split_whitespace() {
                    let parsed = token
                        .split_once('=')
                        .filter(|(name, _)| !name.is_empty())
                        .and_then(|(name, v)| Some((name, parse_rat(v).ok()?)));
                    let Some((name, value)) = parsed else {
                        return Err(Error::parse(
                            lineno,
                            column_of(raw, token),
                            format!("expected `element=value`, found `{token}`"),
                        ));
                    };
                    marks.insert(name.to_string(), value);
                }
            }
            "condition" => {
                let Some((lhs, rhs)) = rest.rsplit_once('=') else {
                    return Err(Error::parse(lineno, 1, "condition needs `… = value`"));
                };
                let rhs_text = rhs.trim();
                let Ok(b) = parse_rat(rhs_text) else {
                    return Err(Error::parse(
                        lineno,
                        column_of(raw, rhs_text),
                        format!("invalid rational `{rhs_text}`"),
                    ));
                };
                let mut terms = Vec::new();
                for term in lhs.split('+') {
                    let term = term.trim();
                    let Some((coeff, name)) = parse_term(term) else {
                        return Err(Error::parse(
                            lineno,
                            column_of(raw, term),
                            format!("expected `coefficient*element`, found `{term}`"),
                        ));
                    };
                    terms.push((name, coeff));
                }
                conditions.push((terms, b));
            }
            other => {
                return Err(Error::parse(
                    lineno,
                    1,
                    format!("unknown key `{other}` (expected elements, covers, marks or condition)"),
                ));
            }
        }
    }
    let poset = Poset::build(&elements, &covers)?;
    let m = MarkedPoset::new(poset, &marks)?;
    let s = if conditions.is_empty() {
        None
    } else {
        Some(LinearConditions::new(&m, &conditions)?)
    };
    Ok((m, s))
}

/// The canonical serialization: fixed line order, covers in index order,
/// marks in element order, condition terms with explicit coefficients.
pub fn serialize_document(m: &MarkedPoset, s: Option<&LinearConditions>) -> String {
    let mut out = String::new();
    out.push_str("elements:");
    for e in m.poset().elements() {
        out.push(' ');
        out.push_str(e);
    }
    out.push('\n');
    if !m.poset().covers().is_empty() {
        out.push_str("covers:");
        for (lo, hi) in m.poset().cover_names() {
            out.push_str(&format!(" {lo}<{hi}"));
        }
        out.push('\n');
    }
    if !m.marking().is_empty() {
        out.push_str("marks:");
        for (&a, v) in m.marking() {
            out.push_str(&format!(" {}={}", m.poset().element(a), format_rat(v)));
        }
        out.push('\n');
    }
    if let Some(s) = s {
        for (row, b) in s.rows().iter().zip(s.rhs()) {
            let mut terms: Vec<String> = row
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| format!("{}*{}", format_rat(c), m.poset().element(i)))
                .collect();
            if terms.is_empty() {
                terms.push(format!("0*{}", m.poset().element(0)));
            }
            out.push_str(&format!("condition: {} = {}\n", terms.join(" + "), format_rat(b)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const PENTAGON: &str = "\
elements: m0 p q m4 m1 m3
covers: m0<p p<q p<m3 q<m4 m1<q
marks: m0=0 m4=4 m1=1 m3=3
";

    #[test]
    fn pentagon_document() {
        let (m, s) = parse_document(PENTAGON).unwrap();
        assert_eq!(m.len(), 6);
        assert_eq!(m.poset().covers().len(), 5);
        assert_eq!(m.marking().len(), 4);
        assert!(s.is_none());
        assert_eq!(serialize_document(&m, None), PENTAGON);
    }

    #[test]
    fn conditions_round_trip() {
        let text = "\
elements: b0 p q r s b5
covers: b0<p p<q q<r r<s s<b5
marks: b0=0 b5=5
condition: 1*p + 1*r = 4
condition: 1*q + 1*s = 6
";
        let (m, s) = parse_document(text).unwrap();
        let s = s.unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(serialize_document(&m, Some(&s)), text);
    }

    #[test]
    fn comments_and_bare_terms() {
        let text = "\
# a chain
elements: a b  # two elements
covers: a<b
condition: a + -1/2*b = 0
";
        let (m, s) = parse_document(text).unwrap();
        let s = s.unwrap();
        assert_eq!(s.rows()[0], vec![rat(1), crate::rational::ratio(-1, 2)]);
        assert!(m.marking().is_empty());
    }

    #[test]
    fn positioned_errors() {
        let err = parse_document("elements: a b\ncovers: ab\n").unwrap_err();
        assert_eq!(
            err,
            Error::parse(2, 9, "expected `lower<upper`, found `ab`")
        );
        let err = parse_document("elements: a\nmarks: a=x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_document("wat: 1\n").unwrap_err();
        assert!(err.is_parse());
    }

    #[test]
    fn semantic_errors_pass_through() {
        let err = parse_document("elements: a b\ncovers: a<b\nmarks: a=1 b=0\n").unwrap_err();
        assert_eq!(
            err,
            Error::MarkingNotOrderPreserving("a".into(), "b".into())
        );
        assert!(!err.is_parse());
    }
}
