//! The plain-text algebra file format.
//!
//! ```text
//! # Heisenberg algebra
//! field Q
//! dim 3
//! basis x y z
//! x*y = z
//! y*x = -1 z
//! ```
//!
//! Unlisted products are zero. A term is an optional coefficient (integer or
//! `p/q`, signed) followed by a basis name; terms are joined by `+`.

use std::collections::HashSet;

use leibniz_core::algebra::LeibnizAlgebra;
use leibniz_core::exactmath::{parse_scalar, Field, MathError, Scalar};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unrecognized line")]
    Unrecognized,
    #[error("duplicate `{0}` line")]
    DuplicateHeader(&'static str),
    #[error("missing `{0}` line")]
    MissingHeader(&'static str),
    #[error("header line after the first product line")]
    LateHeader,
    #[error("invalid field `{0}`")]
    BadField(String),
    #[error(transparent)]
    Field(#[from] MathError),
    #[error("invalid dimension `{0}`")]
    BadDim(String),
    #[error("dim {dim} but {names} basis names")]
    DimMismatch { dim: usize, names: usize },
    #[error("invalid basis name `{0}`")]
    BadName(String),
    #[error("duplicate basis name `{0}`")]
    DuplicateName(String),
    #[error("unknown basis name `{0}`")]
    UnknownName(String),
    #[error("malformed coefficient `{0}`")]
    BadCoefficient(String),
    #[error("malformed product expression")]
    BadExpression,
    #[error("duplicate product line for {0}*{1}")]
    DuplicateProduct(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_field(text: &str) -> Result<Field, ParseErrorKind> {
    if text == "Q" {
        return Ok(Field::Rational);
    }
    let p = text
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .and_then(|p| p.trim().parse::<u32>().ok())
        .ok_or_else(|| ParseErrorKind::BadField(text.to_string()))?;
    Ok(Field::prime(p)?)
}

struct Header {
    field: Option<Field>,
    dim: Option<(usize, usize)>,
    basis: Option<(Vec<String>, usize)>,
}

/// Parses an algebra file. The result is marked validated only when the
/// tensor satisfies the Leibniz identity; otherwise it is returned
/// unvalidated so callers can report the violation.
pub fn parse_algebra_file(text: &str) -> Result<LeibnizAlgebra, ParseError> {
    let mut header = Header {
        field: None,
        dim: None,
        basis: None,
    };
    let mut products: Option<Vec<Vec<Scalar>>> = None;
    let mut seen_pairs = HashSet::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let err = |kind| ParseError { line, kind };
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let (word, rest) = content
            .split_once(char::is_whitespace)
            .map(|(w, r)| (w, r.trim()))
            .unwrap_or((content, ""));
        if matches!(word, "field" | "dim" | "basis") && !content.contains('=') {
            if products.is_some() {
                return Err(err(ParseErrorKind::LateHeader));
            }
            match word {
                "field" => {
                    if header.field.is_some() {
                        return Err(err(ParseErrorKind::DuplicateHeader("field")));
                    }
                    header.field = Some(parse_field(rest).map_err(err)?);
                }
                "dim" => {
                    if header.dim.is_some() {
                        return Err(err(ParseErrorKind::DuplicateHeader("dim")));
                    }
                    let n = rest
                        .parse::<usize>()
                        .map_err(|_| err(ParseErrorKind::BadDim(rest.to_string())))?;
                    header.dim = Some((n, line));
                }
                _ => {
                    if header.basis.is_some() {
                        return Err(err(ParseErrorKind::DuplicateHeader("basis")));
                    }
                    let mut names = Vec::new();
                    let mut seen = HashSet::new();
                    for name in rest.split_whitespace() {
                        if !is_name(name) {
                            return Err(err(ParseErrorKind::BadName(name.to_string())));
                        }
                        if !seen.insert(name) {
                            return Err(err(ParseErrorKind::DuplicateName(name.to_string())));
                        }
                        names.push(name.to_string());
                    }
                    header.basis = Some((names, line));
                }
            }
            continue;
        }
        if !content.contains('=') {
            return Err(err(ParseErrorKind::Unrecognized));
        }
        let (field, labels) = finish_header(&header, line)?;
        let n = labels.len();
        let table = products.get_or_insert_with(|| vec![vec![field.zero(); n]; n * n]);
        let (lhs, rhs) = content.split_once('=').unwrap();
        let (a, b) = lhs
            .split_once('*')
            .map(|(a, b)| (a.trim(), b.trim()))
            .ok_or_else(|| err(ParseErrorKind::BadExpression))?;
        let index = |name: &str| {
            labels
                .iter()
                .position(|l| l == name)
                .ok_or_else(|| err(ParseErrorKind::UnknownName(name.to_string())))
        };
        let (i, j) = (index(a)?, index(b)?);
        if !seen_pairs.insert((i, j)) {
            return Err(err(ParseErrorKind::DuplicateProduct(
                a.to_string(),
                b.to_string(),
            )));
        }
        let slot = &mut table[i * n + j];
        for (k, c) in parse_terms(field, rhs.trim(), labels).map_err(err)? {
            slot[k] = &slot[k] + &c;
        }
    }

    let (field, labels) = finish_header(&header, last_line + 1)?;
    let n = labels.len();
    let products = products.unwrap_or_else(|| vec![vec![field.zero(); n]; n * n]);
    let algebra = LeibnizAlgebra::new(field, labels.to_vec(), products)
        .expect("parser builds well-shaped tensors");
    Ok(algebra.clone().validated().unwrap_or(algebra))
}

fn finish_header(header: &Header, line: usize) -> Result<(Field, &[String]), ParseError> {
    let missing = |what| ParseError {
        line,
        kind: ParseErrorKind::MissingHeader(what),
    };
    let field = header.field.ok_or_else(|| missing("field"))?;
    let (dim, _) = header.dim.ok_or_else(|| missing("dim"))?;
    let (names, basis_line) = header.basis.as_ref().ok_or_else(|| missing("basis"))?;
    if names.len() != dim {
        return Err(ParseError {
            line: *basis_line,
            kind: ParseErrorKind::DimMismatch {
                dim,
                names: names.len(),
            },
        });
    }
    Ok((field, names))
}

fn parse_terms(
    field: Field,
    rhs: &str,
    labels: &[String],
) -> Result<Vec<(usize, Scalar)>, ParseErrorKind> {
    if rhs == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for term in rhs.split('+') {
        let tokens: Vec<&str> = term.split_whitespace().collect();
        let (coef, name) = match tokens.as_slice() {
            [name] => match name.strip_prefix('-') {
                Some(bare) if is_name(bare) => (field.from_i64(-1), bare),
                _ => (field.one(), *name),
            },
            [c, name] => (
                parse_scalar(field, c)
                    .ok_or_else(|| ParseErrorKind::BadCoefficient(c.to_string()))?,
                *name,
            ),
            _ => return Err(ParseErrorKind::BadExpression),
        };
        if !is_name(name) {
            return Err(match parse_scalar(field, name) {
                Some(_) => ParseErrorKind::BadExpression,
                None => ParseErrorKind::BadName(name.to_string()),
            });
        }
        let k = labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| ParseErrorKind::UnknownName(name.to_string()))?;
        out.push((k, coef));
    }
    Ok(out)
}

/// Canonical text form: header, then nonzero products in `(i, j)` order.
pub fn serialize_algebra(a: &LeibnizAlgebra) -> String {
    let mut out = format!(
        "field {}\ndim {}\nbasis {}\n",
        a.field(),
        a.dim(),
        a.labels().join(" ")
    );
    let labels = a.labels();
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let terms: Vec<String> = a
                .product(i, j)
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| {
                    if c.is_one() {
                        labels[k].clone()
                    } else {
                        format!("{c} {}", labels[k])
                    }
                })
                .collect();
            if !terms.is_empty() {
                out.push_str(&format!(
                    "{}*{} = {}\n",
                    labels[i],
                    labels[j],
                    terms.join(" + ")
                ));
            }
        }
    }
    out
}
