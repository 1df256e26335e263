//! Exact arithmetic: rationals, polynomials, quadratic extensions, rational
//! functions, and the number-theoretic symbols behind Witt decisions.

pub mod factor;
pub mod hilbert;
pub mod intfactor;
pub mod poly;
pub mod quadext;
pub mod quadplaces;
pub mod ratfunc;
pub mod rational;

pub use factor::{poly_factor_q, FactorizationQ, FACTOR_DEGREE_BOUND};
pub use hilbert::{hasse_invariant_q, hilbert_symbol_q, relevant_places, signature_q, PlaceQ};
pub use poly::Polynomial;
pub use quadext::{is_square_rational, sqrt_rational, squarefree_part, QuadExt};
pub use quadplaces::{
    hilbert_symbol_quadfield, is_square_quadfield, nondyadic_places, OddKind, QuadField, QuadPlace,
};
pub use ratfunc::RatFunc;
pub use rational::Rational;
