//! Text formats for tables, spectra and Rademacher coefficient vectors.
//!
//! Function files:
//! ```text
//! n=<int> alpha=<decimal>
//! bool:<hex>              -- 2^n bits, bit m set means f(m) = +1,
//!                            hex most-significant-bit = highest index
//! ```
//! or
//! ```text
//! n=<int> alpha=<decimal>
//! real: v0 v1 ... v_{2^n - 1}
//! ```
//! Spectrum files use the tag `spec:` with coefficients in bitmask order.
//! Rademacher vectors are a single line of whitespace-separated decimals.

use crate::affine::RademacherSum;
use crate::cube::{Bias, TableFunction};
use crate::error::{Error, Result};
use crate::fourier::Spectrum;

fn parse_header(line: &str) -> Result<(usize, Bias)> {
    let mut n = None;
    let mut alpha = None;
    for tok in line.split_whitespace() {
        if let Some(v) = tok.strip_prefix("n=") {
            n = Some(
                v.parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad n: {e}")))?,
            );
        } else if let Some(v) = tok.strip_prefix("alpha=") {
            alpha = Some(
                v.parse::<f64>()
                    .map_err(|e| Error::Parse(format!("bad alpha: {e}")))?,
            );
        } else {
            return Err(Error::Parse(format!("unexpected header token `{tok}`")));
        }
    }
    let n = n.ok_or_else(|| Error::Parse("missing n=".into()))?;
    let alpha = alpha.ok_or_else(|| Error::Parse("missing alpha=".into()))?;
    Ok((n, Bias::new(alpha)?))
}

fn parse_reals(body: &str, count: usize) -> Result<Vec<f64>> {
    let vals: Vec<f64> = body
        .split_whitespace()
        .map(|t| {
            t.parse::<f64>()
                .map_err(|e| Error::Parse(format!("bad value `{t}`: {e}")))
        })
        .collect::<Result<_>>()?;
    if vals.len() != count {
        return Err(Error::Parse(format!(
            "expected {count} values, found {}",
            vals.len()
        )));
    }
    Ok(vals)
}

fn parse_bool_hex(hex: &str, count: usize) -> Result<Vec<f64>> {
    let digits = hex.trim();
    let expected_digits = count.div_ceil(4);
    if digits.len() != expected_digits {
        return Err(Error::Parse(format!(
            "expected {expected_digits} hex digits for 2^n = {count} bits, found {}",
            digits.len()
        )));
    }
    let mut values = vec![-1.0; count];
    // Last digit holds bits 0..3, the first the highest bits.
    for (pos, ch) in digits.chars().rev().enumerate() {
        let nibble = ch
            .to_digit(16)
            .ok_or_else(|| Error::Parse(format!("bad hex digit `{ch}`")))?;
        for b in 0..4 {
            let bit = pos * 4 + b;
            if bit < count && nibble >> b & 1 == 1 {
                values[bit] = 1.0;
            } else if bit >= count && nibble >> b & 1 == 1 {
                return Err(Error::Parse("hex sets bits beyond 2^n".into()));
            }
        }
    }
    Ok(values)
}

fn split_tag(text: &str) -> Result<(&str, &str, &str)> {
    let (header, rest) = text
        .trim_start()
        .split_once('\n')
        .ok_or_else(|| Error::Parse("missing body line".into()))?;
    let rest = rest.trim_start();
    let colon = rest
        .find(':')
        .ok_or_else(|| Error::Parse("missing `tag:` in body".into()))?;
    let (tag, body) = rest.split_at(colon);
    Ok((header.trim(), tag.trim(), body[1..].trim()))
}

/// Parses a function file into a table.
pub fn parse_table(text: &str) -> Result<TableFunction> {
    let (header, tag, body) = split_tag(text)?;
    let (n, bias) = parse_header(header)?;
    if n == 0 || n > crate::cube::MAX_N {
        return Err(Error::InvalidDimension {
            n,
            max: crate::cube::MAX_N,
        });
    }
    let count = 1usize << n;
    let values = match tag {
        "bool" => parse_bool_hex(body, count)?,
        "real" => parse_reals(body, count)?,
        other => return Err(Error::Parse(format!("unknown tag `{other}`"))),
    };
    TableFunction::new(bias, n, values)
}

/// Formats a table; Boolean tables are written in the compact hex form.
pub fn format_table(f: &TableFunction) -> String {
    let header = format!("n={} alpha={}", f.n(), f.bias().alpha());
    if f.is_boolean() {
        let count = 1usize << f.n();
        let digits = count.div_ceil(4);
        let mut hex = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let mut nibble = 0u32;
            for b in 0..4 {
                let bit = d * 4 + b;
                if bit < count && f.value(bit as u32) == 1.0 {
                    nibble |= 1 << b;
                }
            }
            hex.push(char::from_digit(nibble, 16).expect("nibble"));
        }
        format!("{header}\nbool:{hex}\n")
    } else {
        let vals: Vec<String> = f.values().iter().map(|v| v.to_string()).collect();
        format!("{header}\nreal: {}\n", vals.join(" "))
    }
}

/// Parses a spectrum file (`spec:` tag, coefficients in bitmask order).
pub fn parse_spectrum(text: &str) -> Result<Spectrum> {
    let (header, tag, body) = split_tag(text)?;
    let (n, bias) = parse_header(header)?;
    if tag != "spec" {
        return Err(Error::Parse(format!("unknown tag `{tag}`")));
    }
    let coeffs = parse_reals(body, 1usize << n)?;
    Spectrum::from_coeffs(bias, n, coeffs)
}

pub fn format_spectrum(s: &Spectrum) -> String {
    let vals: Vec<String> = s.coeffs().iter().map(|v| v.to_string()).collect();
    format!(
        "n={} alpha={}\nspec: {}\n",
        s.n(),
        s.bias().alpha(),
        vals.join(" ")
    )
}

/// Parses a whitespace-separated coefficient line; signs and order are
/// normalized by the constructor.
pub fn parse_rademacher(text: &str) -> Result<RademacherSum> {
    let vals: Vec<f64> = text
        .split_whitespace()
        .map(|t| {
            t.parse::<f64>()
                .map_err(|e| Error::Parse(format!("bad value `{t}`: {e}")))
        })
        .collect::<Result<_>>()?;
    RademacherSum::new(&vals)
}
