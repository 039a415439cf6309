//! Exact quantum invariants of 3-manifolds from finite-dimensional ribbon Hopf
//! algebras: the Hennings–Kauffman–Radford invariant, the Reshetikhin–Turaev
//! invariant of the semisimple part, the element Q relating them, and the
//! genus-one mapping class group action.

pub mod context;
pub mod diagram;
pub mod hennings;
pub mod hopf;
pub mod linalg;
pub mod rt;
pub mod scalar;
pub mod suite;
pub mod torus;
pub mod zoo;

pub use context::AlgebraContext;

/// Errors surfaced by the invariant engines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QinvError {
    #[error(transparent)]
    Hopf(#[from] hopf::HopfError),
    #[error(transparent)]
    Zoo(#[from] zoo::ZooError),
    #[error(transparent)]
    Diagram(#[from] diagram::DiagramError),
    #[error("not modular: {0}")]
    NonModular(String),
    #[error("{0}")]
    Engine(String),
}
