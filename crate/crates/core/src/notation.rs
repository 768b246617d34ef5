//! Textual forms: comma-separated integer lists, ideal literals such as
//! `9,11 @ 6,9,11`, and the eventually-full set notation `{9,11,15,→}`.

use crate::error::{Error, Result};

/// Parses `"6,9,11"` (whitespace tolerant; angle brackets allowed).
pub fn parse_list(text: &str) -> Result<Vec<i64>> {
    let trimmed = text
        .trim()
        .trim_start_matches(['<', '⟨', '{'])
        .trim_end_matches(['>', '⟩', '}']);
    if trimmed.trim().is_empty() {
        return Err(Error::Parse(format!("empty list in {text:?}")));
    }
    trimmed
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("{tok:?}: {e}")))
        })
        .collect()
}

/// Parses an ideal literal `"<ideal gens> @ <ambient gens>"`.
pub fn parse_ideal_literal(text: &str) -> Result<(Vec<i64>, Vec<i64>)> {
    let (ideal, ambient) = text
        .split_once('@')
        .ok_or_else(|| Error::Parse(format!("expected `gens @ ambient`, got {text:?}")))?;
    Ok((parse_list(ideal)?, parse_list(ambient)?))
}

pub fn join(values: &[i64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Renders `sporadic ∪ [tail, ∞)` as `{a,b,…,tail,→}`.
pub fn format_set(sporadic: &[i64], tail: i64, ascii: bool) -> String {
    let arrow = if ascii { "->" } else { "→" };
    let mut parts: Vec<String> = sporadic.iter().map(|v| v.to_string()).collect();
    parts.push(tail.to_string());
    parts.push(arrow.to_string());
    format!("{{{}}}", parts.join(","))
}
