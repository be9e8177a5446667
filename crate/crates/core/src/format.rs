//! The `thompson v1` text format for automorphisms.
//!
//! ```text
//! thompson v1
//! n 2
//! r 1
//! map x1 a1 a1 -> x1 a1
//! map x1 a1 a2 -> x1 a2 a1
//! map x1 a2 -> x1 a2 a2
//! ```
//!
//! Lines starting with `#` and blank lines are ignored. Right-hand sides may
//! contain `L`; the domain may be any basis.

use std::fmt::Write as _;

use crate::automorphism::{Automorphism, Symbol};
use crate::error::{Error, Result};
use crate::word_algebra::{parse_row, reduce, Signature, Word};

const HEADER: &str = "thompson v1";

fn error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn parse_word_at(sig: &Signature, text: &str, line: usize, column: usize) -> Result<Word> {
    let row = parse_row(text).map_err(|e| match e {
        Error::Parse {
            column: c, message, ..
        } => error(line, column + c - 1, message),
        other => other,
    })?;
    reduce(sig, &row).map_err(|e| error(line, column, e.to_string()))
}

/// Parses a symbol without canonicalizing it.
pub fn parse_symbol(text: &str) -> Result<Symbol> {
    let mut header = false;
    let mut n: Option<usize> = None;
    let mut r: Option<usize> = None;
    let mut domain = Vec::new();
    let mut range = Vec::new();
    let mut last_line = 0;
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        last_line = line;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let indent = raw.len() - trimmed.len();
        let content = trimmed.trim_end();
        if !header {
            if content != HEADER {
                return Err(error(line, indent + 1, format!("expected `{HEADER}`")));
            }
            header = true;
            continue;
        }
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest_column = indent + keyword.len() + 2;
        match keyword {
            "n" | "r" => {
                if !domain.is_empty() {
                    return Err(error(line, indent + 1, "signature lines must precede maps"));
                }
                let value: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| error(line, rest_column, "expected a positive integer"))?;
                if keyword == "n" {
                    n = Some(value);
                } else {
                    r = Some(value);
                }
            }
            "map" => {
                let sig = match (n, r) {
                    (Some(n), Some(r)) => Signature::new(n, r).map_err(|e| error(line, 1, e.to_string()))?,
                    _ => return Err(error(line, indent + 1, "`n` and `r` must precede maps")),
                };
                let Some(arrow) = rest.find("->") else {
                    return Err(error(line, rest_column, "expected `<word> -> <word>`"));
                };
                let lhs = &rest[..arrow];
                let rhs = &rest[arrow + 2..];
                domain.push(parse_word_at(&sig, lhs, line, rest_column)?);
                range.push(parse_word_at(&sig, rhs, line, rest_column + arrow + 2)?);
            }
            other => {
                return Err(error(line, indent + 1, format!("unknown directive `{other}`")));
            }
        }
    }
    if !header {
        return Err(error(last_line.max(1), 1, format!("missing `{HEADER}` header")));
    }
    let (Some(n), Some(r)) = (n, r) else {
        return Err(error(last_line.max(1), 1, "missing `n` or `r`"));
    };
    let sig = Signature::new(n, r).map_err(|e| error(last_line.max(1), 1, e.to_string()))?;
    if domain.is_empty() {
        return Err(error(last_line.max(1), 1, "no `map` lines"));
    }
    Ok(Symbol { sig, domain, range })
}

/// Parses and canonicalizes an automorphism.
pub fn parse_automorphism(text: &str) -> Result<Automorphism> {
    parse_symbol(text)?.to_automorphism()
}

/// Writes the canonical symbol of `psi` in the text format.
pub fn write_automorphism(psi: &Automorphism) -> String {
    let sig = psi.sig();
    let mut out = format!("{HEADER}\nn {}\nr {}\n", sig.n(), sig.r());
    for (y, z) in psi.pairs() {
        let _ = writeln!(out, "map {y} -> {z}");
    }
    out
}
