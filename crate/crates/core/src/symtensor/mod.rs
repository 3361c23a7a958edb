//! Homogeneous polynomials, the families studied here, and flattening builders.

mod flatten;
mod generators;
mod parse;
mod poly;

pub use flatten::{catalecticant, partial_derivative, shifted_partials};
pub use generators::{
    gen_kyfl11_witness, gen_permanent, gen_power_sum_power, gen_product, gen_random, gen_sum_of_products, MAX_PERMANENT,
};
pub use parse::{parse_poly, parse_poly_infer};
pub use poly::Poly;

use alloc::string::String;
use thiserror::Error;

use crate::exactla::{LinAlgError, SparseMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("polynomial is not homogeneous: found degree {found}, expected {expected}")]
    Inhomogeneous { expected: u32, found: u32 },
    #[error("variable x{index} at byte {position} is outside x1..x{n_vars}")]
    VariableOutOfRange {
        index: usize,
        n_vars: usize,
        position: usize,
    },
    #[error("expected {expected} variables, found {found}")]
    VariableCountMismatch { expected: usize, found: usize },
    #[error("parameter {name}: {detail}")]
    Parameter { name: &'static str, detail: String },
    #[error("the zero polynomial is not accepted here")]
    ZeroPolynomial,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Which flattening to build, with its parameters.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FlatteningKind {
    Catalecticant,
    /// Shifted partials with shift degree `ell`.
    Shifted {
        ell: usize,
    },
    /// Koszul Young flattening tensored with the `p`-th exterior power.
    Koszul {
        p: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FlatteningSpec {
    pub kind: FlatteningKind,
    pub k: usize,
}

impl FlatteningSpec {
    pub fn catalecticant(k: usize) -> Self {
        FlatteningSpec {
            kind: FlatteningKind::Catalecticant,
            k,
        }
    }

    pub fn shifted(k: usize, ell: usize) -> Self {
        FlatteningSpec {
            kind: FlatteningKind::Shifted { ell },
            k,
        }
    }

    pub fn koszul(k: usize, p: usize) -> Self {
        FlatteningSpec {
            kind: FlatteningKind::Koszul { p },
            k,
        }
    }

    /// Checks `1 <= k < deg P`, `l >= 1` and `1 <= p < n_vars` as applicable.
    pub fn validate(&self, poly: &Poly) -> Result<(), SymError> {
        flatten::check_order(poly, self.k)?;
        match self.kind {
            FlatteningKind::Catalecticant => Ok(()),
            FlatteningKind::Shifted { ell } if ell == 0 => Err(SymError::Parameter {
                name: "l",
                detail: "shift degree must be at least 1".into(),
            }),
            FlatteningKind::Shifted { .. } => Ok(()),
            FlatteningKind::Koszul { p } => crate::koszul::check_wedge_degree(p, poly.n_vars()),
        }
    }

    pub fn build(&self, poly: &Poly) -> Result<SparseMatrix, SymError> {
        match self.kind {
            FlatteningKind::Catalecticant => catalecticant(poly, self.k),
            FlatteningKind::Shifted { ell } => shifted_partials(poly, self.k, ell),
            FlatteningKind::Koszul { p } => crate::koszul::koszul_flattening(poly, self.k, p),
        }
    }
}
