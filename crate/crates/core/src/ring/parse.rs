//! Shared parsing of linear-combination literals such as `3t^2 - t + 1` or
//! `e1 + 2*e2`.

use crate::error::{Error, Result};

/// One signed term `coef * name ^ exp`; `name` is empty for a bare constant.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Term {
    pub pos: usize,
    pub negative: bool,
    pub coef: Option<String>,
    pub name: String,
    pub exp: u32,
}

pub(crate) fn split_terms(s: &str) -> Result<Vec<Term>> {
    let bytes: Vec<char> = s.chars().collect();
    if bytes.iter().all(|c| c.is_whitespace()) {
        return Err(Error::parse(0, "empty literal"));
    }
    let mut terms = Vec::new();
    let mut i = 0;
    let mut first = true;
    while i < bytes.len() {
        while i < bytes.len() && bytes[i].is_whitespace() {
            i += 1;
        }
        if i >= bytes.len() {
            break;
        }
        let mut negative = false;
        if bytes[i] == '+' || bytes[i] == '-' {
            negative = bytes[i] == '-';
            i += 1;
        } else if !first {
            return Err(Error::parse(i, format!("expected '+' or '-', found '{}'", bytes[i])));
        }
        first = false;
        while i < bytes.len() && bytes[i].is_whitespace() {
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i] != '+' && bytes[i] != '-' {
            i += 1;
        }
        let raw: String = bytes[start..i].iter().collect();
        terms.push(parse_term(raw.trim(), start, negative)?);
    }
    Ok(terms)
}

fn parse_term(raw: &str, pos: usize, negative: bool) -> Result<Term> {
    if raw.is_empty() {
        return Err(Error::parse(pos, "missing term"));
    }
    let chars: Vec<char> = raw.chars().collect();
    let mut i = 0;
    while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
        i += 1;
    }
    let coef: String = chars[..i].iter().collect();
    let mut rest: String = chars[i..].iter().collect::<String>().trim().to_string();
    if let Some(r) = rest.strip_prefix('*') {
        rest = r.trim().to_string();
    }
    let (name, exp) = match rest.split_once('^') {
        Some((n, e)) => {
            let exp = e
                .trim()
                .parse::<u32>()
                .map_err(|_| Error::parse(pos, format!("bad exponent '{}'", e.trim())))?;
            (n.trim().to_string(), exp)
        }
        None => (rest, 1),
    };
    if coef.is_empty() && name.is_empty() {
        return Err(Error::parse(pos, format!("cannot parse term '{raw}'")));
    }
    if name.is_empty() && raw.contains('^') {
        return Err(Error::parse(pos, "exponent on a constant"));
    }
    Ok(Term {
        pos,
        negative,
        coef: if coef.is_empty() { None } else { Some(coef) },
        name,
        exp: if raw.contains('^') { exp } else { 1 },
    })
}
