//! Parsing of command-line naturals and flat lists.

use hfcodec_core::Natural;
use num_traits::Num;

use crate::CliError;

/// Decimal, or hexadecimal with a `0x` prefix.
pub fn parse_natural(s: &str) -> Result<Natural, CliError> {
    let t = s.trim();
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) if !hex.is_empty() && hex.bytes().all(|b| b.is_ascii_hexdigit()) => {
            Natural::from_str_radix(hex, 16).ok()
        }
        Some(_) => None,
        None if !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit()) => t.parse().ok(),
        None => None,
    };
    parsed.ok_or_else(|| CliError::usage(format!("not a natural number: {s:?}")))
}

/// `[a,b,c]` with optional spaces; `[]` is the empty list.
pub fn parse_list(s: &str) -> Result<Vec<Natural>, CliError> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| {
            CliError::usage(format!("expected a bracketed list like [1,2,3], got {s:?}"))
        })?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(parse_natural).collect()
}

pub fn format_list(ns: &[Natural]) -> String {
    let items: Vec<String> = ns.iter().map(|n| n.to_string()).collect();
    format!("[{}]", items.join(","))
}
