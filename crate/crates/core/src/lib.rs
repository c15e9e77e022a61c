//! Exact computation of generalized group-graded polynomial-identity
//! invariants of finite-dimensional graded algebras with an acting algebra:
//! multiplier algebras, codimensions, T-ideal bases at fixed degree,
//! cocharacter multiplicities and graded PI-exponents.

pub mod algebra;
pub mod builtins;
pub mod cache;
pub mod cocharacter;
pub mod codim;
pub mod echelon;
pub mod error;
pub mod eval;
pub mod exponent;
pub mod format;
pub mod free;
pub mod group;
pub mod linalg;
pub mod multiplier;
pub mod scalar;
pub mod tideal;

pub use algebra::{AlgebraElement, AxiomReport, GradedAlgebra};
pub use builtins::Builtin;
pub use cache::FileCache;
pub use codim::{codim_multidegree, codim_series, codim_total, Caps, CodimCache, CodimResult};
pub use error::{Error, Result};
pub use eval::{evaluate, generic_element, generic_elements, is_identity, GenericMatrixElement, IdentityVerdict};
pub use exponent::{graded_exponent, growth_crosscheck, WedderburnData};
pub use format::Definition;
pub use free::{GenPolynomial, Monomial, MultiDegree, SpanningSet, Token, Var};
pub use group::FiniteGroup;
pub use multiplier::{ActingAlgebra, Multiplier};
pub use scalar::Scalar;
