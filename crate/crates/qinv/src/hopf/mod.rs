//! Finite-dimensional Hopf algebras: structure constants, axiom certification,
//! integrals, ribbon data, modularity, the center, and the element Q.

mod algebra;
pub mod certify;
mod element;
pub mod integrals;
pub mod qelement;
pub mod ribbon;
mod tensor;

pub use algebra::{HopfAlgebra, HopfData};
pub use certify::{certify_hopf, CertReport, CheckResult};
pub use element::{Accum, Elem};
pub use integrals::{solve_integrals, IntegralSet};
pub use qelement::{compute_q, CentralElement};
pub use ribbon::{
    center_basis, check_modularity, coadjoint_invariance_check, derive_ribbon_data, factor_r,
    Modularity, RibbonData,
};
pub use tensor::{MultiIndex, TensorElement};

/// Errors from Hopf-algebra construction and analysis.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HopfError {
    #[error("malformed algebra: {0}")]
    Malformed(String),
    #[error("{identity} fails (witness {witness})")]
    Identity { identity: String, witness: String },
    #[error("missing {0}")]
    Missing(String),
    #[error("solution space for {what} has dimension {dim}, expected 1")]
    NotOneDimensional { what: String, dim: usize },
    #[error("{0}")]
    Degenerate(String),
}
