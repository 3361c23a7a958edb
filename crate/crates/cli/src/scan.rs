//! Border-rank lower bounds over every `(k, p)` flattening of one polynomial.

use anyhow::Result;
use kyflat_core::basis::monomial_count;
use kyflat_core::exactla::{binomial, rank_with_policy, RankPolicy};
use kyflat_core::koszul::koszul_flattening;
use kyflat_core::symtensor::{catalecticant, gen_product, Poly};
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::verify::mix_seed;

/// One grid cell; `p = 0` is the plain catalecticant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanCell {
    pub k: usize,
    pub p: usize,
    pub n_rows: usize,
    pub n_cols: usize,
    pub skipped: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<&'static str>,
    /// Rank of the same flattening at a power of a linear form.
    pub point_rank: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub subject: String,
    pub degree: u32,
    pub n_vars: usize,
    pub lower: Option<String>,
    pub best_k: Option<usize>,
    pub best_p: Option<usize>,
    pub source: &'static str,
    pub cells: Vec<ScanCell>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Previously quoted border-rank lower bounds for `x1...xd`.
fn quoted_chow_bound(d: u32) -> Option<u32> {
    match d {
        3 => Some(4),
        4 => Some(7),
        5 => Some(14),
        6 => Some(28),
        _ => None,
    }
}

fn cell_shape(n: usize, d: usize, k: usize, p: usize) -> (usize, usize) {
    if p == 0 {
        (monomial_count(n, d - k), monomial_count(n, k))
    } else {
        let w = |q: usize| binomial(n as i64, q as i64).try_into().unwrap_or(usize::MAX);
        (
            monomial_count(n, d - k - 1).saturating_mul(w(p + 1)),
            monomial_count(n, k).saturating_mul(w(p)),
        )
    }
}

/// Scans `1 <= k < d` against `p = 0` (catalecticant) and `1 <= p < n_vars` (Koszul).
/// Cells with more than `budget_cols` columns are skipped, not failed.
/// Ties on the bound go to the smaller `p`, then the smaller `k`.
pub fn scan(poly: &Poly, budget_cols: usize, policy: RankPolicy, seed: u64) -> Result<ScanReport> {
    let n = poly.n_vars();
    let d = poly.degree() as usize;
    let grid: Vec<(usize, usize)> = (1..d).flat_map(|k| (0..n).map(move |p| (k, p))).collect();
    let cells = grid
        .into_par_iter()
        .map(|(k, p)| -> Result<ScanCell> {
            let (n_rows, n_cols) = cell_shape(n, d, k, p);
            let point = if p == 0 {
                BigUint::from(1u32)
            } else {
                binomial(n as i64 - 1, p as i64)
            };
            let mut cell = ScanCell {
                k,
                p,
                n_rows,
                n_cols,
                skipped: n_cols > budget_cols,
                rank: None,
                method: None,
                point_rank: point.to_string(),
                bound: None,
            };
            if cell.skipped {
                return Ok(cell);
            }
            let m = if p == 0 {
                catalecticant(poly, k)?
            } else {
                koszul_flattening(poly, k, p)?
            };
            let r = rank_with_policy(&m, policy, mix_seed(seed, &[k as u64, p as u64]))?;
            let rank = BigUint::from(r.rank);
            cell.bound = Some(((&rank + &point - 1u32) / &point).to_string());
            cell.rank = Some(rank.to_string());
            cell.method = Some(r.method.as_str());
            Ok(cell)
        })
        .collect::<Result<Vec<_>>>()?;
    let best = cells
        .iter()
        .filter_map(|c| {
            c.bound
                .as_ref()
                .map(|b| (b.parse::<BigUint>().expect("decimal"), c.k, c.p))
        })
        .max_by(|a, b| a.0.cmp(&b.0).then(b.2.cmp(&a.2)).then(b.1.cmp(&a.1)));
    let mut note = None;
    if let (Some((lower, _, _)), Some(quoted)) = (&best, quoted_chow_bound(poly.degree())) {
        if n == d && *poly == gen_product(d)? && *lower != BigUint::from(quoted) {
            note = Some(format!(
                "quoted lower bound for x1...x{d} is {quoted}; this flattening family certifies {lower}"
            ));
        }
    }
    if cells.iter().any(|c| c.skipped) {
        let skipped = cells.iter().filter(|c| c.skipped).count();
        let msg = format!("{skipped} cells skipped over the column budget of {budget_cols}");
        note = Some(match note {
            Some(n) => format!("{n}; {msg}"),
            None => msg,
        });
    }
    Ok(ScanReport {
        subject: poly.to_string(),
        degree: poly.degree(),
        n_vars: n,
        lower: best.as_ref().map(|b| b.0.to_string()),
        best_k: best.as_ref().map(|b| b.1),
        best_p: best.as_ref().map(|b| b.2),
        source: "koszul_scan",
        cells,
        note,
    })
}
