//! Riemann–Roch spaces and Weierstrass semigroups on plane curves over finite fields.

pub mod adjunction;
pub mod curve;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod poly;
pub mod rroch;
pub mod wsemi;

pub use adjunction::{adjoint_system, adjunction_divisor, conductor_exponent, dedekind_orders, genus};
pub use curve::{curve_load, divisor_parse, enumerate_places, Curve, CurveConfig, Divisor, Place};
pub use error::{Error, Result};
pub use rroch::{index_of_speciality, lbasis, ldim, pole_order, pullback, valuation, LBasis, RatFun};
pub use wsemi::{minimal_nongaps, nabla, rr_quotient, rr_quotient_full, semigroup_one, two_point_gaps, GapBox, OnePoint, Quotient, Weierstrass};
