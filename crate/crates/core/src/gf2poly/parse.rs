use super::BinaryPolynomial;
use crate::error::{Error, Result};

fn err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse { position, message: message.into() }
}

/// Parses either the compact bit-string form (most significant coefficient
/// first) or the symbolic `x^k+...+1` form.
pub(super) fn parse(text: &str) -> Result<BinaryPolynomial> {
    let trimmed = text.trim();
    let offset = text.len() - text.trim_start().len();
    if trimmed.is_empty() {
        return Err(err(0, "empty polynomial"));
    }
    if trimmed.bytes().all(|b| b == b'0' || b == b'1') {
        return Ok(BinaryPolynomial::from_coeffs(trimmed.bytes().rev().map(|b| b == b'1')));
    }
    parse_symbolic(trimmed, offset)
}

fn parse_symbolic(text: &str, offset: usize) -> Result<BinaryPolynomial> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut powers: Vec<usize> = Vec::new();

    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    loop {
        skip_ws(&mut pos);
        let start = pos;
        let power = match bytes.get(pos) {
            Some(b'1') => {
                pos += 1;
                0
            }
            Some(b'x') | Some(b'X') => {
                pos += 1;
                if bytes.get(pos) == Some(&b'^') {
                    pos += 1;
                    let digits_start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if digits_start == pos {
                        return Err(err(offset + pos, "expected exponent after '^'"));
                    }
                    text[digits_start..pos]
                        .parse::<usize>()
                        .map_err(|_| err(offset + digits_start, "exponent out of range"))?
                } else {
                    1
                }
            }
            Some(_) => return Err(err(offset + pos, "expected a term '1', 'x' or 'x^k'")),
            None => return Err(err(offset + pos, "expected a term after '+'")),
        };
        if let Some(&prev) = powers.last() {
            if power >= prev {
                return Err(err(offset + start, "terms must appear in strictly decreasing power order"));
            }
        }
        powers.push(power);
        skip_ws(&mut pos);
        match bytes.get(pos) {
            None => break,
            Some(b'+') => pos += 1,
            Some(_) => return Err(err(offset + pos, "expected '+' between terms")),
        }
    }
    Ok(BinaryPolynomial::from_powers(&powers))
}
