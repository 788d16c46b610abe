//! Exact arithmetic for the algebra of double forms.
//!
//! A double form of type (p, q) on a d-dimensional space is an element of
//! Λ^p ⊗ Λ^q: a p-covector taking values in q-covectors. This crate implements
//! the full constant-coefficient algebra (wedge, contraction, the two Hodge
//! stars, the trace maps s and s*, the eigenspace decomposition under s*s),
//! the polynomial-coefficient calculus (left/right exterior derivatives and
//! Koszul contractions), the sphere lift used to build vanishing-trace
//! extensions on simplices, and the synthesis of piecewise polynomial double
//! form spaces on simplicial triangulations, with dimension counts checked
//! against hook-length formulas.
//!
//! All core types are generic over the scalar; the `Rational` instantiation
//! (arbitrary-precision `num::BigRational`) is the one every exactness
//! guarantee refers to.

pub mod check;
pub mod double;
pub mod exterior;
pub mod extension;
pub mod fe;
pub mod json;
pub mod linalg;
pub mod multiindex;
pub mod poly;
pub mod scalar;
pub mod simplex;
pub mod sphere;
pub mod young;

/// Exact scalar used by all CLI-facing instantiations.
pub type Rational = num::BigRational;

pub type RatMatrix = linalg::Mat<Rational>;
pub type RatMulticovector = exterior::Multicovector<Rational>;
pub type RatDoubleCovector = double::DoubleCovector<Rational>;
pub type RatPolyDoubleForm = poly::PolyDoubleForm<Rational>;
pub type RatSimplexForm = simplex::SimplexForm<Rational>;

pub use scalar::Scalar;
