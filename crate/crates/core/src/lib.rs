//! Exact construction and verification of the special cocycles of the
//! polynomial Fock model for the dual pairs `(U(p,q), U(m,m))`,
//! `(Sp(2n,ℝ), O(2r,2r))` and `(O*(2n), Sp(r,r))`, together with the
//! Laplace-method asymptotics of their fiber integrals.
//!
//! The symbolic layer works over ℚ(i) extended by formal powers of π and
//! √2, so algebraic statements (closedness, invariance, restriction,
//! weights, intertwining) are decided exactly. The numeric layer (symmetric
//! space geometry, decay certificates, quadrature) is generic over the
//! floating scalar; `f64` aliases are provided here.
//!
//! ```
//! use fockform::cases::DualPairCase;
//! use fockform::cocycle::{build_phi, rel_differential, PhiKind};
//! use fockform::fock::{CaseAlgebra, Model};
//!
//! // the holomorphic cocycle of the smallest unitary case is closed
//! let case = DualPairCase::a(1, 1, 1, 1);
//! let phi = build_phi(case, PhiKind::Plus).unwrap();
//! let alg = CaseAlgebra::new(case, Model::Minus);
//! assert!(rel_differential(&alg, &phi).is_zero());
//! ```

pub mod cases;
pub mod cocycle;
pub mod diffop;
pub mod exterior;
pub mod fiber_numeric;
pub mod fock;
pub mod geometry;
pub mod laplace;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod schrodinger;
pub mod weyl;

/// Default floating scalar of the numeric layer.
pub type Real = f64;

/// Majorant context over the default scalar.
pub type MajorantContext = geometry::MajorantContext<Real>;

/// Tangent vector over the default scalar.
pub type TangentVector = geometry::TangentVector<Real>;

pub use cases::DualPairCase;
pub use exterior::{Cochain, ExtIndex, Wedge};
pub use poly::{Monomial, Poly, VarId};
pub use scalar::{GaussianRational, Scalar};
