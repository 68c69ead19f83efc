//! Exact cohomology of finite groups acting on finitely presented abelian
//! groups.
//!
//! Everything is computed over the integers with arbitrary precision: normal
//! forms of integer matrices, subquotients of finitely presented abelian
//! groups, bar-resolution cochain complexes, connecting homomorphisms,
//! inflation/restriction, the Tate complex for cyclic groups, and the residue
//! operator for a totally ramified quadratic extension.
//!
//! The [`quadric`] module carries a worked model: the divisor lattice, symbol
//! and function modules of the generic affine diagonal quadric
//! `x^2 - lambda y^2 - mu z^2 + lambda mu nu = 0`, together with a pipeline
//! that replays the explicit cocycle computations showing `Br(U)/Br(F) = 0`.

#![no_std]

extern crate alloc;

pub mod abelian;
pub mod cochain;
pub mod cohomology;
pub mod connecting;
mod error;
pub mod group;
pub mod hnf;
pub mod matrix;
pub mod module;
pub mod quadric;
pub mod residue;
pub mod snf;
pub mod solve;
pub mod tate;
pub mod testkit;

pub use abelian::{subquotient, FinAbGroup, Subquotient};
pub use cochain::{coboundary, cocycle_defect, inflation, push_cochain, restriction, Cochain};
pub use cohomology::{classes_equal, cohomology, is_coboundary, CohomologyResult};
pub use connecting::{connecting, descend};
pub use error::{Error, Result};
pub use group::GroupTable;
pub use matrix::IntMatrix;
pub use module::{GModule, ModuleMap, ShortExactSeq};
pub use num_bigint::BigInt;
pub use residue::{hom_module, residue, residue_raw, HomModule};
pub use snf::{smith_normal_form, SnfResult};
pub use solve::solve_integer;
pub use tate::tate_cyclic;

use core::sync::atomic::{AtomicUsize, Ordering};

static MAX_TABLE_ENTRIES: AtomicUsize = AtomicUsize::new(DEFAULT_TABLE_LIMIT);

/// Default cap on the number of tuples in a dense cochain table.
pub const DEFAULT_TABLE_LIMIT: usize = 1_000_000;

/// Current cap on dense cochain tables (`|G|^degree` entries).
pub fn table_limit() -> usize {
    MAX_TABLE_ENTRIES.load(Ordering::Relaxed)
}

/// Overrides the dense-table cap. Mainly driven by the CLI's
/// `COHOMO_MAX_TABLE` environment variable.
pub fn set_table_limit(limit: usize) {
    MAX_TABLE_ENTRIES.store(limit, Ordering::Relaxed);
}

pub(crate) fn check_table_size(order: usize, degree: usize) -> Result<usize> {
    let limit = table_limit();
    let mut entries: usize = 1;
    for _ in 0..degree {
        entries = entries
            .checked_mul(order)
            .filter(|&e| e <= limit)
            .ok_or(Error::TableTooLarge { limit })?;
    }
    Ok(entries)
}
