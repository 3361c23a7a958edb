use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::{LinAlgError, Scalar};
use crate::basis::{ExponentVector, WedgeIndex};

/// Semantic label of a matrix row or column.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Label {
    /// A monomial basis vector (or the differential operator it indexes).
    Monomial(ExponentVector),
    /// Monomial tensor wedge.
    MonomialWedge(ExponentVector, WedgeIndex),
    /// Differential operator tensor shift monomial, as in shifted partials.
    OperatorShift(ExponentVector, ExponentVector),
    /// Plain position.
    Index(usize),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Monomial(m) => write!(f, "{m}"),
            Label::MonomialWedge(m, w) => write!(f, "{m}|{w}"),
            Label::OperatorShift(a, m) => write!(f, "d[{a}]|{m}"),
            Label::Index(i) => write!(f, "#{i}"),
        }
    }
}

/// Sparse matrix with exact entries.
///
/// Entries are kept sorted by `(row, col)` with no duplicates and no stored
/// zeros. Label lists are either empty or exactly as long as the dimension
/// they describe.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMatrix {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<(usize, usize, Scalar)>,
    row_labels: Vec<Label>,
    col_labels: Vec<Label>,
}

impl SparseMatrix {
    pub fn new(n_rows: usize, n_cols: usize, entries: Vec<(usize, usize, Scalar)>) -> Result<Self, LinAlgError> {
        let mut entries: Vec<_> = entries.into_iter().filter(|(_, _, v)| !v.is_zero()).collect();
        for &(row, col, _) in &entries {
            if row >= n_rows || col >= n_cols {
                return Err(LinAlgError::EntryOutOfBounds {
                    row,
                    col,
                    n_rows,
                    n_cols,
                });
            }
        }
        entries.sort_by_key(|e| (e.0, e.1));
        if let Some(w) = entries.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(LinAlgError::DuplicateEntry {
                row: w[0].0,
                col: w[0].1,
            });
        }
        Ok(SparseMatrix {
            n_rows,
            n_cols,
            entries,
            row_labels: Vec::new(),
            col_labels: Vec::new(),
        })
    }

    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        SparseMatrix {
            n_rows,
            n_cols,
            entries: Vec::new(),
            row_labels: Vec::new(),
            col_labels: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n).map(|i| (i, i, Scalar::int(1))).collect();
        SparseMatrix {
            n_rows: n,
            n_cols: n,
            entries,
            row_labels: Vec::new(),
            col_labels: Vec::new(),
        }
    }

    /// Builds a rational matrix from column vectors; repeated rows within a
    /// column are summed and zeros dropped.
    pub fn from_rational_columns(n_rows: usize, columns: Vec<Vec<(usize, BigRational)>>) -> Result<Self, LinAlgError> {
        let n_cols = columns.len();
        let mut entries = Vec::new();
        for (col, column) in columns.into_iter().enumerate() {
            let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
            for (row, v) in column {
                if row >= n_rows {
                    return Err(LinAlgError::EntryOutOfBounds {
                        row,
                        col,
                        n_rows,
                        n_cols,
                    });
                }
                *acc.entry(row).or_insert_with(BigRational::zero) += v;
            }
            entries.extend(
                acc.into_iter()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(r, v)| (r, col, Scalar::Rational(v))),
            );
        }
        entries.sort_by_key(|e| (e.0, e.1));
        Ok(SparseMatrix {
            n_rows,
            n_cols,
            entries,
            row_labels: Vec::new(),
            col_labels: Vec::new(),
        })
    }

    pub fn with_labels(mut self, row_labels: Vec<Label>, col_labels: Vec<Label>) -> Result<Self, LinAlgError> {
        check_labels("row", &row_labels, self.n_rows)?;
        check_labels("column", &col_labels, self.n_cols)?;
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        Ok(self)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, Scalar)] {
        &self.entries
    }

    pub fn row_labels(&self) -> &[Label] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[Label] {
        &self.col_labels
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.entries.iter().all(|(_, _, v)| matches!(v, Scalar::Rational(_)))
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&(row, col), |e| (e.0, e.1))
            .ok()
            .map(|i| &self.entries[i].2)
    }

    pub fn col_index(&self, label: &Label) -> Option<usize> {
        self.col_labels.iter().position(|l| l == label)
    }

    pub fn row_index(&self, label: &Label) -> Option<usize> {
        self.row_labels.iter().position(|l| l == label)
    }

    /// Column-major view: `columns()[c]` lists `(row, value)` sorted by row.
    pub fn columns(&self) -> Vec<Vec<(usize, &Scalar)>> {
        let mut cols = alloc::vec![Vec::new(); self.n_cols];
        for (r, c, v) in &self.entries {
            cols[*c].push((*r, v));
        }
        cols
    }

    pub fn rows(&self) -> Vec<Vec<(usize, &Scalar)>> {
        let mut rows = alloc::vec![Vec::new(); self.n_rows];
        for (r, c, v) in &self.entries {
            rows[*r].push((*c, v));
        }
        rows
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut entries: Vec<_> = self.entries.iter().map(|(r, c, v)| (*c, *r, v.clone())).collect();
        entries.sort_by_key(|e| (e.0, e.1));
        SparseMatrix {
            n_rows: self.n_cols,
            n_cols: self.n_rows,
            entries,
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
        }
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> SparseMatrix {
        let mut position = alloc::vec![None; self.n_cols];
        for (new, &old) in cols.iter().enumerate() {
            position[old] = Some(new);
        }
        let mut entries: Vec<_> = self
            .entries
            .iter()
            .filter_map(|(r, c, v)| position[*c].map(|nc| (*r, nc, v.clone())))
            .collect();
        entries.sort_by_key(|e| (e.0, e.1));
        let col_labels = if self.col_labels.is_empty() {
            Vec::new()
        } else {
            cols.iter().map(|&c| self.col_labels[c].clone()).collect()
        };
        SparseMatrix {
            n_rows: self.n_rows,
            n_cols: cols.len(),
            entries,
            row_labels: self.row_labels.clone(),
            col_labels,
        }
    }

    /// Reorders rows and columns: new row `i` is old row `row_perm[i]`.
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> SparseMatrix {
        let mut row_inv = alloc::vec![0; self.n_rows];
        for (new, &old) in row_perm.iter().enumerate() {
            row_inv[old] = new;
        }
        let mut col_inv = alloc::vec![0; self.n_cols];
        for (new, &old) in col_perm.iter().enumerate() {
            col_inv[old] = new;
        }
        let mut entries: Vec<_> = self
            .entries
            .iter()
            .map(|(r, c, v)| (row_inv[*r], col_inv[*c], v.clone()))
            .collect();
        entries.sort_by_key(|e| (e.0, e.1));
        let relabel = |labels: &[Label], perm: &[usize]| {
            if labels.is_empty() {
                Vec::new()
            } else {
                perm.iter().map(|&i| labels[i].clone()).collect()
            }
        };
        SparseMatrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            entries,
            row_labels: relabel(&self.row_labels, row_perm),
            col_labels: relabel(&self.col_labels, col_perm),
        }
    }

    /// Multiplies one row by a scalar of the same kind.
    pub fn scale_row(&self, row: usize, factor: &Scalar) -> Result<SparseMatrix, LinAlgError> {
        let mut out = self.clone();
        for e in out.entries.iter_mut().filter(|e| e.0 == row) {
            e.2 = e.2.mul(factor)?;
        }
        out.entries.retain(|e| !e.2.is_zero());
        Ok(out)
    }

    /// `a * self + b * other`; shapes must agree, labels of `self` are kept.
    pub fn linear_combination(
        &self,
        a: &Scalar,
        other: &SparseMatrix,
        b: &Scalar,
    ) -> Result<SparseMatrix, LinAlgError> {
        if (self.n_rows, self.n_cols) != (other.n_rows, other.n_cols) {
            return Err(LinAlgError::EntryOutOfBounds {
                row: other.n_rows,
                col: other.n_cols,
                n_rows: self.n_rows,
                n_cols: self.n_cols,
            });
        }
        let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (r, c, v) in &self.entries {
            acc.insert((*r, *c), v.mul(a)?);
        }
        for (r, c, v) in &other.entries {
            let term = v.mul(b)?;
            let slot = match acc.remove(&(*r, *c)) {
                Some(prev) => prev.add(&term)?,
                None => term,
            };
            acc.insert((*r, *c), slot);
        }
        let entries = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((r, c), v)| (r, c, v))
            .collect();
        Ok(SparseMatrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            entries,
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
        })
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix, LinAlgError> {
        if self.n_cols != rhs.n_rows {
            return Err(LinAlgError::EntryOutOfBounds {
                row: rhs.n_rows,
                col: 0,
                n_rows: self.n_cols,
                n_cols: rhs.n_cols,
            });
        }
        let rhs_rows = rhs.rows();
        let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (r, k, a) in &self.entries {
            for (c, b) in &rhs_rows[*k] {
                let term = a.mul(b)?;
                let slot = match acc.remove(&(*r, *c)) {
                    Some(prev) => prev.add(&term)?,
                    None => term,
                };
                acc.insert((*r, *c), slot);
            }
        }
        let entries = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((r, c), v)| (r, c, v))
            .collect();
        Ok(SparseMatrix {
            n_rows: self.n_rows,
            n_cols: rhs.n_cols,
            entries,
            row_labels: self.row_labels.clone(),
            col_labels: rhs.col_labels.clone(),
        })
    }

    /// `self * v` for a dense rational vector.
    pub fn apply(&self, v: &[BigRational]) -> Result<Vec<BigRational>, LinAlgError> {
        let mut out = alloc::vec![BigRational::zero(); self.n_rows];
        for (r, c, a) in &self.entries {
            let a = a.as_rational().ok_or(LinAlgError::NotRational)?;
            out[*r] += a * &v[*c];
        }
        Ok(out)
    }
}

fn check_labels(which: &'static str, labels: &[Label], expected: usize) -> Result<(), LinAlgError> {
    if labels.is_empty() {
        return Ok(());
    }
    if labels.len() != expected {
        return Err(LinAlgError::LabelLength {
            which,
            expected,
            got: labels.len(),
        });
    }
    let distinct: BTreeSet<&Label> = labels.iter().collect();
    if distinct.len() != labels.len() {
        return Err(LinAlgError::LabelsNotDistinct { which });
    }
    Ok(())
}
