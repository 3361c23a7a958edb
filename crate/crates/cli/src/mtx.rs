//! Matrix Market coordinate files with exact entries.
//!
//! Integer matrices use the standard `integer` field. Anything else is
//! written with the nonstandard field `rational`, entries as `num/den`.
//! Reading also accepts `real` entries, parsed exactly as decimals.

use std::io::{BufRead, Write};

use anyhow::{anyhow, bail, Context, Result};
use kyflat_core::exactla::{Scalar, SparseMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn write_matrix(m: &SparseMatrix, out: &mut impl Write) -> Result<()> {
    let rationals: Vec<&BigRational> = m
        .entries()
        .iter()
        .map(|(_, _, v)| {
            v.as_rational()
                .ok_or_else(|| anyhow!("only rational matrices can be written"))
        })
        .collect::<Result<_>>()?;
    let integral = rationals.iter().all(|r| r.is_integer());
    let field = if integral { "integer" } else { "rational" };
    writeln!(out, "%%MatrixMarket matrix coordinate {field} general")?;
    writeln!(out, "{} {} {}", m.n_rows(), m.n_cols(), m.nnz())?;
    for ((r, c, _), v) in m.entries().iter().zip(rationals) {
        writeln!(out, "{} {} {}", r + 1, c + 1, v)?;
    }
    Ok(())
}

fn parse_decimal(text: &str) -> Option<BigRational> {
    let (mantissa, exp) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let negative = mantissa.starts_with('-');
    let digits = mantissa.trim_start_matches(['-', '+']);
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let all: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let ten = BigRational::from_integer(BigInt::from(10));
    let scale = exp - frac_part.len() as i32;
    let mut value = BigRational::from_integer(all);
    let factor = (0..scale.unsigned_abs()).fold(BigRational::one(), |acc, _| acc * &ten);
    value = if scale >= 0 { value * factor } else { value / factor };
    Some(if negative { -value } else { value })
}

fn parse_entry(text: &str, field: &str) -> Option<BigRational> {
    match field {
        "integer" => text.parse::<BigInt>().ok().map(BigRational::from_integer),
        "rational" => match text.split_once('/') {
            Some((n, d)) => {
                let d: BigInt = d.parse().ok()?;
                if d.is_zero() {
                    return None;
                }
                Some(BigRational::new(n.parse().ok()?, d))
            }
            None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
        },
        "real" => parse_decimal(text),
        _ => None,
    }
}

pub fn read_matrix(input: impl BufRead) -> Result<SparseMatrix> {
    let mut lines = input.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| anyhow!("empty matrix file"))?;
    let header = header?;
    let words: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if words.len() != 5 || words[0] != "%%matrixmarket" || words[1] != "matrix" || words[2] != "coordinate" {
        bail!("expected '%%MatrixMarket matrix coordinate <field> general' header");
    }
    let field = words[3].clone();
    if !matches!(field.as_str(), "integer" | "rational" | "real") {
        bail!("unsupported field '{field}'");
    }
    if words[4] != "general" {
        bail!("only general (unsymmetric) storage is supported");
    }
    let mut size = None;
    let mut entries = Vec::new();
    for (no, line) in lines {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let lineno = no + 1;
        match size {
            None => {
                let [r, c, nnz] = parts[..] else {
                    bail!("line {lineno}: expected 'rows cols nnz'")
                };
                size = Some((r.parse::<usize>()?, c.parse::<usize>()?, nnz.parse::<usize>()?));
            }
            Some(_) => {
                let [r, c, v] = parts[..] else {
                    bail!("line {lineno}: expected 'row col value'")
                };
                let r: usize = r.parse().with_context(|| format!("line {lineno}: row"))?;
                let c: usize = c.parse().with_context(|| format!("line {lineno}: column"))?;
                if r == 0 || c == 0 {
                    bail!("line {lineno}: indices are 1-based");
                }
                let v = parse_entry(v, &field).ok_or_else(|| anyhow!("line {lineno}: bad {field} entry '{v}'"))?;
                entries.push((r - 1, c - 1, Scalar::Rational(v)));
            }
        }
    }
    let (n_rows, n_cols, nnz) = size.ok_or_else(|| anyhow!("missing size line"))?;
    if entries.len() != nnz {
        bail!("size line promises {nnz} entries, found {}", entries.len());
    }
    Ok(SparseMatrix::new(n_rows, n_cols, entries)?)
}
