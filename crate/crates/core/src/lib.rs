//! Exact combinatorics for fence quivers.
//!
//! The crate computes the numbers behind quotient correspondences for quivers
//! whose vertices split into heads and tails: Littlewood-Richardson data
//! ([`lr`]), graded dimensions of parabolic-invariant algebras ([`hilbert`]),
//! and King semistability ([`quiver`]). Every headline quantity has a second,
//! independent route: the tableau-based symmetric function oracle
//! ([`schur`]) and the brute-force invariant solver ([`oracle`]).
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod error;
pub mod format;
pub mod hilbert;
pub mod linalg;
pub mod lr;
pub mod oracle;
pub mod quiver;
pub mod schur;
pub mod young;

pub use error::{Error, Result};
pub use hilbert::{ComponentLabel, GmRow, GradedDimensionReport, Route};
pub use lr::TensorDecomposition;
pub use num_bigint::{BigInt, BigUint};
pub use quiver::{
    DimensionVector, FenceQuiver, FiniteFieldRep, Linearization, ParabolicData, Role,
    StabilityVerdict,
};
pub use young::{Composition, GradedWeight, Partition};

/// Ceilings that make brute-force enumerations fail loudly instead of
/// running away.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Monomials or tableaux the symmetric function oracle may materialize.
    pub schur_monomials: usize,
    /// Monomials in one weight space of the invariant oracle.
    pub oracle_monomials: usize,
    /// Per-arrow diagram tuples visited by the multiplicity sums.
    pub diagram_tuples: usize,
    /// Subspace tuples visited by the finite-field stability search.
    pub subspace_tuples: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            schur_monomials: 1_000_000,
            oracle_monomials: 200_000,
            diagram_tuples: 1_000_000,
            subspace_tuples: 1_000_000,
        }
    }
}

impl Limits {
    /// Variable consulted by [`Limits::from_env`].
    pub const ENV_VAR: &'static str = "FENCEKIT_MAX_MONOMIALS";

    /// Defaults, with both monomial ceilings replaced by
    /// `FENCEKIT_MAX_MONOMIALS` when it is set to a positive integer.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var(Self::ENV_VAR) {
            let n: usize = raw.trim().parse().map_err(|_| {
                Error::Format(format!("{} must be a positive integer, got `{raw}`", Self::ENV_VAR))
            })?;
            if n == 0 {
                return Err(Error::Format(format!("{} must be positive", Self::ENV_VAR)));
            }
            limits.schur_monomials = n;
            limits.oracle_monomials = n;
        }
        Ok(limits)
    }
}
