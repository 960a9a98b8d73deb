//! Comparison maps between algebraic de Rham forms of finitely presented algebras and
//! singular cochains on their real points.
//!
//! The crate is layered bottom-up:
//!
//! * [`linalg`]: exact sparse linear algebra over the rationals (kernels, images,
//!   cohomology of a composable pair).
//! * [`poly`]: polynomials, rational functions, Gröbner bases and the text syntax.
//! * [`random`]: seeded generators of random forms, simplices and cochains for property checks.
//! * [`exterior`]: index sets of exterior monomials and generic form arithmetic.
//! * [`derham`]: Kähler forms of `k[x]/I`, wedge, differential, weight-truncated cohomology.
//! * [`simplicial`]: finite simplicial sets, cochains with the Alexander–Whitney cup product.
//! * [`simplex_forms`]: polynomial and rational forms on standard simplices, integration,
//!   the cone contraction, the integration map to cochains and boundary extension.
//! * [`comparison`]: parametrized singular simplices, pullback of algebraic forms,
//!   period integrals and the chain-map, naturality and multiplicativity checks.
//! * [`scenario`]: scenario files, the builtin corpus and report generation.

pub mod comparison;
pub mod derham;
pub mod exterior;
pub mod linalg;
pub mod poly;
pub mod random;
pub mod scenario;
pub mod simplex_forms;
pub mod simplicial;

/// Exact rational scalar used throughout.
pub type Rational = num_rational::BigRational;

/// Parses `"3"`, `"-1/2"` and friends into a [`Rational`].
pub fn parse_rational(s: &str) -> Option<Rational> {
    s.trim().parse().ok()
}
