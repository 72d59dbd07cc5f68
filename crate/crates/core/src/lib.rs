//! Exact-arithmetic toolkit for finite-dimensional Leibniz algebras.
//!
//! The crate builds Leibniz algebras from structure constants, checks the
//! defining identity, solves for derivation-type spaces, constructs unified /
//! crossed / bicrossed / twisted / hemisemidirect products from extending
//! data, enumerates codimension-one extending structures over prime fields,
//! classifies them by the stabilizing and co-stabilizing equivalences, and
//! describes complements of a subalgebra through deformation maps.
//!
//! All arithmetic is exact: arbitrary-precision rationals or residues mod a
//! prime. Every enumeration has a fixed deterministic order, so counts,
//! class representatives and reports are reproducible bit for bit.

pub mod algebra;
pub mod complements;
pub mod error;
pub mod field;
pub mod flags;
pub mod json;
pub mod linalg;
pub mod morphisms;
pub mod products;

#[cfg(test)]
pub(crate) mod testutil;

pub use algebra::{Algebra, LeibnizWitness, PointedDoubleDerivation};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use linalg::{Matrix, Subspace, Tensor3, Vector};
pub use products::{AxiomReport, CrossedSystem, ExtendingDatum, MatchedPair};

/// A contiguous slice of an enumeration, for external parallelization.
/// `Shard { index: k, count: n }` selects the k-th of n pieces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shard {
    pub index: usize,
    pub count: usize,
}

impl Shard {
    /// The sub-range of `0..total` covered by this shard.
    pub fn range(&self, total: u128) -> std::ops::Range<u128> {
        let count = self.count.max(1) as u128;
        let index = (self.index as u128).min(count - 1);
        let lo = total * index / count;
        let hi = total * (index + 1) / count;
        lo..hi
    }
}

/// Caps for exhaustive searches. `max_candidates` bounds both enumeration
/// spaces and the order of GL(n, p) in isomorphism searches.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_candidates: u64,
    /// Dimension cap for flag-datum enumeration.
    pub flag_dim_cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_candidates: 10_000_000,
            flag_dim_cap: 4,
        }
    }
}

impl Budget {
    pub fn with_max_candidates(max_candidates: u64) -> Self {
        Budget {
            max_candidates,
            ..Budget::default()
        }
    }

    pub(crate) fn admit(&self, needed: u128) -> Result<()> {
        if needed > self.max_candidates as u128 {
            Err(Error::BudgetExceeded {
                needed,
                budget: self.max_candidates,
            })
        } else {
            Ok(())
        }
    }
}
