//! Enumeration and verification caps.

use crate::error::{Error, Result};

/// Caps applied by the enumerators and verifiers. Every field can be raised by
/// the caller; the defaults keep all computations desk-scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest carrier accepted by automorphism and subgroup enumeration.
    pub max_order: usize,
    /// Largest arity accepted for polyadic groups.
    pub max_arity: usize,
    /// Elementary evaluations allowed for exhaustive axiom and hom checks.
    pub max_cost: u128,
    /// Largest carrier scanned by the partition-based congruence oracle.
    pub max_partition_order: usize,
    /// Largest `m²` for the subgroup scan of the direct square.
    pub max_square_order: usize,
    /// Candidate maps allowed for the brute-force hom oracle.
    pub max_hom_candidates: u128,
    /// Raw tables allowed in an exhaustive census.
    pub max_census_tables: u128,
    /// Largest carrier for which polyadic subgroups are found by scanning
    /// every subset; larger carriers use closure search.
    pub max_subset_scan_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 16,
            max_arity: 8,
            max_cost: 10_000_000,
            max_partition_order: 10,
            max_square_order: 256,
            max_hom_candidates: 1_000_000,
            max_census_tables: 1 << 16,
            max_subset_scan_order: 12,
        }
    }
}

impl Limits {
    pub(crate) fn check_order(&self, order: usize) -> Result<()> {
        if order > self.max_order {
            return Err(Error::OrderCapExceeded { order, cap: self.max_order });
        }
        Ok(())
    }

    pub(crate) fn check_arity(&self, arity: usize) -> Result<()> {
        if arity > self.max_arity {
            return Err(Error::ArityCapExceeded { arity, cap: self.max_arity });
        }
        Ok(())
    }

    pub(crate) fn check_cost(&self, required: u128) -> Result<()> {
        if required > self.max_cost {
            return Err(Error::CostCapExceeded { required, cap: self.max_cost });
        }
        Ok(())
    }
}

/// `base^exp` saturating at `u128::MAX`.
pub(crate) fn pow_u128(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
