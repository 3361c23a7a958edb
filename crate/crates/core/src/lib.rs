//! Exact flattening ranks of homogeneous polynomials.
//!
//! Catalecticants, shifted partials and Koszul Young flattenings are built
//! as sparse rational matrices and ranked exactly or modulo random primes.
//! Closed-form counts live in [`formulas`].

#![no_std]

extern crate alloc;

pub mod basis;
pub mod exactla;
pub mod formulas;
pub mod koszul;
pub mod symtensor;
