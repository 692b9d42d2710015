//! Invariant subspaces of `S_E ⊕ S_F*` on `H²_E ⊕ H²_F`, checked numerically.
//!
//! Symbols are matrix-valued Laurent polynomials. Toeplitz, Hankel, `W_Ψ` and `V_Φ` are
//! assembled as truncated operator matrices that carry per-column exactness flags, and
//! subspaces are compared by principal angles on degree windows where truncation is exact.
//!
//! Everything numeric is generic over [`scalar::Real`] (`f32` or `f64`); the aliases below
//! fix `f64`, with `*32` variants for single precision.

pub mod classify;
pub mod demos;
pub mod error;
pub mod linalg;
pub mod literal;
pub mod n3;
pub mod operator;
pub mod report;
pub mod representation;
pub mod run;
pub mod scalar;
pub mod scenario;
pub mod space;
pub mod spec;
pub mod splitting;
pub mod subspace;
pub mod symbol;
pub mod twocond;

pub use error::{Error, Result};

pub type Symbol = symbol::LaurentSymbol<f64>;
pub type Symbol32 = symbol::LaurentSymbol<f32>;
pub type Operator = operator::OperatorMatrix<f64>;
pub type Operator32 = operator::OperatorMatrix<f32>;
pub type Subspace = subspace::SubspaceBasis<f64>;
pub type Subspace32 = subspace::SubspaceBasis<f32>;
pub type Spec = spec::InvariantSubspaceSpec<f64>;
pub type Spec32 = spec::InvariantSubspaceSpec<f32>;
