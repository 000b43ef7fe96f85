//! Parser for the module mini-language used by `tlcat hom`.
//!
//! Grammar:
//! ```text
//! SPEC := cell:N:R            cell module with R caps on N points
//!       | reg:N               the algebra on N points as a left module
//!       | tensor(SPEC,SPEC)   outer tensor product
//!       | res(SPEC,K,L)       restriction to the (K,L) pair algebra
//! ```
//! Whitespace is ignored everywhere.

use tlcat_core::rep::ModuleRep;
use tlcat_core::scalar::Mode;

pub fn parse(text: &str, mode: &Mode) -> Result<ModuleRep, String> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    parse_spec(&compact, mode).map_err(|e| format!("in module spec {text:?}: {e}"))
}

fn parse_spec(s: &str, mode: &Mode) -> Result<ModuleRep, String> {
    if let Some(rest) = s.strip_prefix("cell:") {
        let (n, r) = split_two_numbers(rest, ':')?;
        if 2 * r > n {
            return Err(format!("cell:{n}:{r} needs 2r <= n"));
        }
        return Ok(ModuleRep::cell(mode, n, r));
    }
    if let Some(rest) = s.strip_prefix("reg:") {
        let n = rest
            .parse()
            .map_err(|_| format!("expected a number after reg:, got {rest:?}"))?;
        return Ok(ModuleRep::regular(mode, n));
    }
    if let Some(inner) = strip_call(s, "tensor")? {
        let (left, right) = split_top_level(inner)
            .ok_or_else(|| "tensor(...) takes exactly two module specs".to_string())?;
        let a = parse_spec(left, mode)?;
        let b = parse_spec(right, mode)?;
        return ModuleRep::tensor(a, b).map_err(|e| e.to_string());
    }
    if let Some(inner) = strip_call(s, "res")? {
        let (head, kl) = split_top_level_rev(inner, 2)
            .ok_or_else(|| "res(...) takes a module spec and two numbers".to_string())?;
        let m = parse_spec(head, mode)?;
        let (k, l) = split_two_numbers(kl, ',')?;
        return ModuleRep::restrict(m, k, l).map_err(|e| e.to_string());
    }
    Err(format!(
        "unrecognized module spec {s:?} (expected cell:N:R, reg:N, tensor(..), or res(..))"
    ))
}

/// If `s` is `name(...)`, returns the interior; `Ok(None)` if the name
/// does not match, `Err` if it matches but the parentheses are wrong.
fn strip_call<'a>(s: &'a str, name: &str) -> Result<Option<&'a str>, String> {
    let Some(rest) = s.strip_prefix(name) else {
        return Ok(None);
    };
    let Some(inner) = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')) else {
        return Err(format!("{name} must be written {name}(...)"));
    };
    Ok(Some(inner))
}

fn split_two_numbers(s: &str, sep: char) -> Result<(usize, usize), String> {
    let mut it = s.splitn(2, sep);
    let a = it.next().unwrap_or("");
    let b = it.next().unwrap_or("");
    let a = a
        .parse()
        .map_err(|_| format!("expected a number, got {a:?}"))?;
    let b = b
        .parse()
        .map_err(|_| format!("expected a number, got {b:?}"))?;
    Ok((a, b))
}

/// Splits at the unique depth-zero comma, e.g. `tensor(a,b),cell:2:1`
/// splits after the close paren.
fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0usize;
    let mut found = None;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1)?,
            ',' if depth == 0 => {
                if found.is_some() {
                    return None; // more than one top-level comma
                }
                found = Some(i);
            }
            _ => {}
        }
    }
    let i = found?;
    Some((&s[..i], &s[i + 1..]))
}

/// Splits off the last `tail_items` depth-zero comma-separated pieces,
/// returning (head, tail-as-one-string).  Lets the head itself contain
/// commas inside parentheses.
fn split_top_level_rev(s: &str, tail_items: usize) -> Option<(&str, &str)> {
    let mut depth = 0usize;
    let mut commas = Vec::new();
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1)?,
            ',' if depth == 0 => commas.push(i),
            _ => {}
        }
    }
    if commas.len() < tail_items {
        return None;
    }
    let cut = commas[commas.len() - tail_items];
    Some((&s[..cut], &s[cut + 1..]))
}
