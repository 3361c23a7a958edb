//! Monomial and wedge bases.
//!
//! Variables are stored 0-based (`x1` is index 0) and printed 1-based.
//! Monomials of a fixed degree are ordered graded-lexicographically with
//! `x1 > x2 > ...`, so `x1^k` comes first and `xn^k` last. Wedge basis
//! elements are strictly increasing index tuples in lexicographic order.

use alloc::vec::Vec;
use core::fmt;

/// Number of monomials of degree `degree` in `n_vars` variables.
pub fn monomial_count(n_vars: usize, degree: usize) -> usize {
    if n_vars == 0 {
        return usize::from(degree == 0);
    }
    small_binomial(degree + n_vars - 1, n_vars - 1)
}

/// Number of `p`-element subsets of `n_vars` variables.
pub fn wedge_count(n_vars: usize, p: usize) -> usize {
    small_binomial(n_vars, p)
}

/// Machine-word binomial used for index arithmetic. Panics on overflow,
/// which cannot happen for matrices that fit in memory.
pub(crate) fn small_binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    usize::try_from(acc).expect("binomial overflows usize")
}

/// A monomial `x1^e1 * ... * xn^en`, stored as its exponent tuple.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector {
    exponents: Vec<u32>,
    degree: u32,
}

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        let degree = exponents.iter().sum();
        ExponentVector { exponents, degree }
    }

    pub fn zero(n_vars: usize) -> Self {
        ExponentVector {
            exponents: alloc::vec![0; n_vars],
            degree: 0,
        }
    }

    /// The single variable `x_{var+1}`.
    pub fn unit(n_vars: usize, var: usize) -> Self {
        let mut exponents = alloc::vec![0; n_vars];
        exponents[var] = 1;
        ExponentVector { exponents, degree: 1 }
    }

    pub fn n_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn get(&self, var: usize) -> u32 {
        self.exponents[var]
    }

    /// Componentwise `self >= other`.
    pub fn divides_into(&self, other: &ExponentVector) -> bool {
        other.exponents.iter().zip(&self.exponents).all(|(o, s)| o <= s)
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn checked_sub(&self, other: &ExponentVector) -> Option<ExponentVector> {
        debug_assert_eq!(self.n_vars(), other.n_vars());
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()?;
        Some(ExponentVector {
            exponents,
            degree: self.degree - other.degree,
        })
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.n_vars(), other.n_vars());
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a + b)
            .collect();
        ExponentVector {
            exponents,
            degree: self.degree + other.degree,
        }
    }

    pub fn with_increment(&self, var: usize) -> ExponentVector {
        let mut out = self.clone();
        out.exponents[var] += 1;
        out.degree += 1;
        out
    }

    pub fn with_decrement(&self, var: usize) -> Option<ExponentVector> {
        if self.exponents[var] == 0 {
            return None;
        }
        let mut out = self.clone();
        out.exponents[var] -= 1;
        out.degree -= 1;
        Some(out)
    }

    /// Variables with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// Square-free monomial (all exponents at most one).
    pub fn is_regular(&self) -> bool {
        self.exponents.iter().all(|&e| e <= 1)
    }

    /// Position of this monomial in the graded-lex listing of its degree.
    pub fn grlex_index(&self) -> usize {
        let n = self.n_vars();
        let mut rem = self.degree as usize;
        let mut index = 0;
        for (i, &e) in self.exponents.iter().enumerate().take(n.saturating_sub(1)) {
            let e = e as usize;
            let rest = n - i - 1;
            // monomials sharing the prefix but with a larger exponent here
            if rem > e {
                index += small_binomial(rem - e - 1 + rest, rest);
            }
            rem -= e;
        }
        index
    }

    /// The graded-lex ordering key: earlier monomials compare smaller.
    pub fn grlex_cmp(&self, other: &ExponentVector) -> core::cmp::Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exponents.cmp(&self.exponents))
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of degree `degree` in `n_vars` variables, graded-lex order.
pub fn monomials(n_vars: usize, degree: usize) -> Vec<ExponentVector> {
    let mut out = Vec::with_capacity(monomial_count(n_vars, degree));
    if n_vars == 0 {
        if degree == 0 {
            out.push(ExponentVector::zero(0));
        }
        return out;
    }
    let mut current = alloc::vec![0u32; n_vars];
    fill_monomials(&mut current, 0, degree as u32, &mut out);
    out
}

fn fill_monomials(current: &mut [u32], pos: usize, rem: u32, out: &mut Vec<ExponentVector>) {
    if pos + 1 == current.len() {
        current[pos] = rem;
        out.push(ExponentVector::new(current.to_vec()));
        current[pos] = 0;
        return;
    }
    for e in (0..=rem).rev() {
        current[pos] = e;
        fill_monomials(current, pos + 1, rem - e, out);
    }
    current[pos] = 0;
}

/// A basis element `x_{i1} ^ ... ^ x_{ip}` of the p-th exterior power,
/// stored as a strictly increasing tuple of 0-based variable indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WedgeIndex {
    indices: Vec<usize>,
}

impl WedgeIndex {
    /// Returns `None` unless `indices` is strictly increasing.
    pub fn new(indices: Vec<usize>) -> Option<Self> {
        if indices.windows(2).all(|w| w[0] < w[1]) {
            Some(WedgeIndex { indices })
        } else {
            None
        }
    }

    pub fn empty() -> Self {
        WedgeIndex { indices: Vec::new() }
    }

    pub fn p(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, var: usize) -> bool {
        self.indices.binary_search(&var).is_ok()
    }

    /// `x_var ^ self`, normalized to increasing order.
    ///
    /// Returns the sign `(-1)^{#indices below var}` together with the sorted
    /// wedge, or `None` when `var` already occurs.
    pub fn wedge_left(&self, var: usize) -> Option<(i32, WedgeIndex)> {
        match self.indices.binary_search(&var) {
            Ok(_) => None,
            Err(pos) => {
                let mut indices = Vec::with_capacity(self.indices.len() + 1);
                indices.extend_from_slice(&self.indices[..pos]);
                indices.push(var);
                indices.extend_from_slice(&self.indices[pos..]);
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                Some((sign, WedgeIndex { indices }))
            }
        }
    }

    /// Position in the lexicographic listing of p-subsets of `n_vars`.
    pub fn lex_index(&self, n_vars: usize) -> usize {
        let p = self.indices.len();
        let mut index = 0;
        let mut next = 0;
        for (i, &c) in self.indices.iter().enumerate() {
            for v in next..c {
                index += small_binomial(n_vars - 1 - v, p - 1 - i);
            }
            next = c + 1;
        }
        index
    }
}

impl fmt::Debug for WedgeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for WedgeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.indices.is_empty() {
            return f.write_str("1");
        }
        for (j, i) in self.indices.iter().enumerate() {
            if j > 0 {
                f.write_str("^")?;
            }
            write!(f, "x{}", i + 1)?;
        }
        Ok(())
    }
}

/// All p-subsets of `n_vars` variables in lexicographic order.
pub fn wedges(n_vars: usize, p: usize) -> Vec<WedgeIndex> {
    let mut out = Vec::with_capacity(wedge_count(n_vars, p));
    let mut current = Vec::with_capacity(p);
    fill_wedges(n_vars, p, 0, &mut current, &mut out);
    out
}

fn fill_wedges(n: usize, p: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<WedgeIndex>) {
    if current.len() == p {
        out.push(WedgeIndex {
            indices: current.clone(),
        });
        return;
    }
    let need = p - current.len();
    for v in start..=n.saturating_sub(need) {
        if v >= n {
            break;
        }
        current.push(v);
        fill_wedges(n, p, v + 1, current, out);
        current.pop();
    }
}

/// All `size`-element subsets of `items`, lexicographic in positions.
pub(crate) fn subsets<T: Clone>(items: &[T], size: usize) -> Vec<Vec<T>> {
    wedges(items.len(), size)
        .into_iter()
        .map(|w| w.indices().iter().map(|&i| items[i].clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn grlex_listing_starts_with_highest_power_of_x1() {
        let m = monomials(3, 2);
        assert_eq!(m.len(), 6);
        assert_eq!(m[0].exponents(), &[2, 0, 0]);
        assert_eq!(m[1].exponents(), &[1, 1, 0]);
        assert_eq!(m[2].exponents(), &[1, 0, 1]);
        assert_eq!(m[3].exponents(), &[0, 2, 0]);
        assert_eq!(m[5].exponents(), &[0, 0, 2]);
    }

    #[test]
    fn grlex_index_matches_enumeration() {
        for n in 1..=5 {
            for d in 0..=5 {
                let list = monomials(n, d);
                assert_eq!(list.len(), monomial_count(n, d));
                for (i, m) in list.iter().enumerate() {
                    assert_eq!(m.grlex_index(), i, "n={n} d={d} m={m}");
                }
                for w in list.windows(2) {
                    assert_eq!(w[0].grlex_cmp(&w[1]), core::cmp::Ordering::Less);
                }
            }
        }
    }

    #[test]
    fn wedge_index_matches_enumeration() {
        for n in 0..=6 {
            for p in 0..=n {
                let list = wedges(n, p);
                assert_eq!(list.len(), wedge_count(n, p));
                for (i, w) in list.iter().enumerate() {
                    assert_eq!(w.lex_index(n), i);
                }
            }
        }
    }

    #[test]
    fn wedge_left_signs() {
        let w = WedgeIndex::new(vec![0, 2]).unwrap();
        assert_eq!(w.wedge_left(1), Some((-1, WedgeIndex::new(vec![0, 1, 2]).unwrap())));
        assert_eq!(w.wedge_left(3), Some((1, WedgeIndex::new(vec![0, 2, 3]).unwrap())));
        assert_eq!(w.wedge_left(2), None);
        assert!(WedgeIndex::new(vec![1, 1]).is_none());
    }

    #[test]
    fn display_is_one_based() {
        let m = ExponentVector::new(vec![2, 0, 1]);
        assert_eq!(alloc::format!("{m}"), "x1^2*x3");
        let w = WedgeIndex::new(vec![0, 2]).unwrap();
        assert_eq!(alloc::format!("{w}"), "x1^x3");
    }
}
