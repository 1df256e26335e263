//! The affine conic y² = ax² + b: its function field, closed points,
//! valuations, and the coherent local functionals.

pub mod function_field;
pub mod point;
pub mod valuation;
pub mod weil;

pub use function_field::{ConicInstance, FnFieldElem};
pub use point::{
    make_conic, points_from_linear, points_over_irreducible, points_over_poly, AffinePoint,
    AffineResidue, ClosedPoint,
};
pub use valuation::{evaluate, lead_at_infty, support, v_infty, valuation, ResidueValue};
pub use weil::{
    coherent_functional, mu_pi, omega_infty, omega_p, riemann_roch_space, CoherentPair,
};
