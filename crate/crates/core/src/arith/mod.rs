//! Exact coefficient arithmetic: rationals, Gaussian rationals, polynomials
//! in real parameters, and Laurent polynomials in `t`.

mod coeff;
mod gaussian;
mod laurent;
mod param_poly;
mod rational;
mod value;

pub use coeff::Coefficient;
pub use gaussian::GaussianRational;
pub use laurent::{LaurentPoly, NumLaurent, ParamLaurent};
pub use param_poly::{Monomial, ParamPoly};
pub use rational::Rational;
pub use value::{num_laurent_from_json, num_laurent_to_json, LaurentValue};
