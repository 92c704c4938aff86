//! Text and JSON parsers for the external ideal and prime surfaces.
//!
//! Text syntax: comma-separated monomials over `x1..xn`, with `*` for
//! products and `^` for powers, e.g. `x1*x2, x2^3`. `1` is the unit ideal,
//! `0` the zero ideal. JSON syntax: `{"n": 3, "gens": [[1,1,0],[0,3,0]]}`.
//! Both round-trip with the canonical serializers, and all errors carry the
//! byte position of the offending token.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::ideal::{MonomialIdeal, MonomialPrime};
use crate::vector::ExponentVector;

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn integer(&mut self, what: &str) -> Result<u64> {
        let start = self.pos;
        let mut value: u64 = 0;
        let mut any = false;
        while let Some(b) = self.peek() {
            if !b.is_ascii_digit() {
                break;
            }
            any = true;
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u64))
                .ok_or_else(|| Error::Parse {
                    pos: start,
                    msg: format!("{what} too large"),
                })?;
            self.pos += 1;
        }
        if !any {
            return Err(self.err(format!("expected {what}")));
        }
        Ok(value)
    }
}

/// One factor `xI` or `xI^E`; returns (0-based index, exponent).
fn factor(c: &mut Cursor, n: usize) -> Result<(usize, u64)> {
    let at = c.pos;
    match c.bump() {
        Some(b'x') => {}
        _ => {
            return Err(Error::Parse {
                pos: at,
                msg: "expected a variable like x1".to_string(),
            })
        }
    }
    let idx_pos = c.pos;
    let idx = c.integer("variable index")?;
    if idx == 0 || idx as usize > n {
        return Err(Error::Parse {
            pos: idx_pos,
            msg: format!("variable index {idx} out of range for {n} variables"),
        });
    }
    c.skip_ws();
    let exp = if c.peek() == Some(b'^') {
        c.bump();
        c.skip_ws();
        c.integer("exponent")?
    } else {
        1
    };
    Ok((idx as usize - 1, exp))
}

/// One monomial: `1` or a `*`-separated product of factors.
fn monomial(c: &mut Cursor, n: usize) -> Result<ExponentVector> {
    c.skip_ws();
    if c.peek() == Some(b'1') {
        c.bump();
        return Ok(ExponentVector::zeros(n));
    }
    let mut exps = vec![0u64; n];
    loop {
        let at = c.pos;
        let (i, e) = factor(c, n)?;
        exps[i] = exps[i].checked_add(e).ok_or(Error::Parse {
            pos: at,
            msg: "exponent too large".to_string(),
        })?;
        c.skip_ws();
        if c.peek() == Some(b'*') {
            c.bump();
            c.skip_ws();
        } else {
            break;
        }
    }
    ExponentVector::new(exps).map_err(|_| Error::Parse {
        pos: c.pos,
        msg: "total degree too large".to_string(),
    })
}

/// Parses the text form of an ideal over `n` variables.
pub fn ideal_from_text(input: &str, n: usize) -> Result<MonomialIdeal> {
    if n == 0 {
        return Err(Error::Parse {
            pos: 0,
            msg: "ambient variable count must be at least 1".to_string(),
        });
    }
    let mut c = Cursor::new(input);
    c.skip_ws();
    if c.peek().is_none() {
        return Err(c.err("expected an ideal"));
    }
    if c.peek() == Some(b'0') {
        c.bump();
        c.skip_ws();
        if c.peek().is_some() {
            return Err(c.err("unexpected input after the zero ideal"));
        }
        return Ok(MonomialIdeal::zero(n));
    }
    let mut gens = Vec::new();
    loop {
        gens.push(monomial(&mut c, n)?);
        c.skip_ws();
        match c.peek() {
            None => break,
            Some(b',') => {
                c.bump();
            }
            Some(_) => return Err(c.err("expected ',' between monomials")),
        }
    }
    MonomialIdeal::new(n, gens)
}

#[derive(Deserialize)]
struct IdealJson {
    n: usize,
    gens: Vec<Vec<u64>>,
}

/// Parses the JSON form of an ideal; the ambient count is carried inside.
pub fn ideal_from_json(input: &str) -> Result<MonomialIdeal> {
    let raw: IdealJson = serde_json::from_str(input).map_err(|e| Error::Parse {
        pos: e.column().saturating_sub(1),
        msg: e.to_string(),
    })?;
    if raw.n == 0 {
        return Err(Error::Parse {
            pos: 0,
            msg: "ambient variable count must be at least 1".to_string(),
        });
    }
    let mut gens = Vec::with_capacity(raw.gens.len());
    for g in raw.gens {
        if g.len() != raw.n {
            return Err(Error::Parse {
                pos: 0,
                msg: format!(
                    "generator has {} entries but the ambient count is {}",
                    g.len(),
                    raw.n
                ),
            });
        }
        gens.push(ExponentVector::new(g).map_err(|_| Error::Parse {
            pos: 0,
            msg: "total degree too large".to_string(),
        })?);
    }
    MonomialIdeal::new(raw.n, gens)
}

/// Accepts either surface form: JSON when the input starts with `{`, text
/// otherwise. The ambient count must agree with `n` in both cases.
pub fn ideal_from_str(input: &str, n: usize) -> Result<MonomialIdeal> {
    if input.trim_start().starts_with('{') {
        let ideal = ideal_from_json(input)?;
        if ideal.ambient() != n {
            return Err(Error::Parse {
                pos: 0,
                msg: format!(
                    "JSON ambient count {} does not match --n {}",
                    ideal.ambient(),
                    n
                ),
            });
        }
        Ok(ideal)
    } else {
        ideal_from_text(input, n)
    }
}

/// Parses a prime from a comma-separated list of 1-based variable indices.
pub fn prime_from_text(input: &str, n: usize) -> Result<MonomialPrime> {
    let mut c = Cursor::new(input);
    let mut indices = Vec::new();
    loop {
        c.skip_ws();
        let at = c.pos;
        let idx = c.integer("variable index")?;
        if idx == 0 || idx as usize > n {
            return Err(Error::Parse {
                pos: at,
                msg: format!("variable index {idx} out of range for {n} variables"),
            });
        }
        indices.push(idx as usize);
        c.skip_ws();
        match c.peek() {
            None => break,
            Some(b',') => {
                c.bump();
            }
            Some(_) => return Err(c.err("expected ',' between indices")),
        }
    }
    MonomialPrime::from_one_based(n, &indices)
}

/// Canonical text serialization; inverse of `ideal_from_text`.
pub fn ideal_to_text(ideal: &MonomialIdeal) -> String {
    ideal.to_string()
}

/// Canonical JSON serialization; inverse of `ideal_from_json`.
pub fn ideal_to_json(ideal: &MonomialIdeal) -> String {
    serde_json::to_string(ideal).expect("ideal serialization is infallible")
}
