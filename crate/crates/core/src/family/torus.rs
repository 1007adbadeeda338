use serde::Serialize;

use crate::arith::{Coefficient, ParamLaurent, ParamPoly};
use crate::error::{Error, Result};

use super::build::Mutation;

/// A ternary form `sum coeff * x^ex y^ey z^ez` over the parametric
/// Laurent ring.
type Form = Vec<([u32; 3], ParamLaurent)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusReport {
    pub n: u32,
    /// The torus substitution maps `q` to a monomial multiple of itself.
    pub torus_action: bool,
    /// The bundle trivialization lands on the surface.
    pub trivialization: bool,
}

impl TorusReport {
    pub fn passed(&self) -> bool {
        self.torus_action && self.trivialization
    }
}

fn q_form(n: u32) -> Form {
    vec![
        ([1, 1, 0], ParamLaurent::one()),
        ([0, 0, 2], -ParamLaurent::t().pow(2 * n + 1)),
    ]
}

/// `t -> s t` for a parametric scale `s`; negative degrees are refused since
/// `s` need not be invertible in the parameter ring.
fn substitute_t(p: &ParamLaurent, s: &ParamPoly) -> Result<ParamLaurent> {
    let mut out = ParamLaurent::zero();
    for (k, c) in p.terms() {
        if k < 0 {
            return Err(Error::NegativeDegree(k));
        }
        out = &out + &ParamLaurent::monomial(c.mul_ref(&s.pow(k as u32)), k);
    }
    Ok(out)
}

fn scale_form(f: &Form, var_factor: [&ParamPoly; 3], t_scale: &ParamPoly) -> Result<Form> {
    f.iter()
        .map(|(e, c)| {
            let mut c = substitute_t(c, t_scale)?;
            for (k, fac) in var_factor.iter().enumerate() {
                c = c.mul_coeff(&fac.pow(e[k]));
            }
            Ok((*e, c))
        })
        .collect()
}

/// Symbolic check, in formal parameters `lambda, mu, w0, w1`, that
///
/// * `(t, [x:y:z]) -> (lambda mu t, [lambda x : mu y : (lambda mu)^(-n) z])`
///   preserves `xy - t^(2n+1) z^2` up to a factor, and
/// * `(t, [w0^2 : t w1^2 : t^(-n) w0 w1])` lies on it identically.
///
/// The torus weights are cleared of negative exponents by a common factor
/// `(lambda mu)^c`, which changes nothing projectively.
pub fn torus_and_trivialization_check(n: u32, mutation: Mutation) -> TorusReport {
    let (lambda, mu) = (ParamPoly::var(0), ParamPoly::var(1));
    let lm = lambda.mul_ref(&mu);
    let mut w = -(n as i64);
    if mutation == Mutation::ZWeight {
        w += 1;
    }
    let c = (-w).max(0) as u32;
    let fx = lambda.pow(1 + c).mul_ref(&mu.pow(c));
    let fy = lambda.pow(c).mul_ref(&mu.pow(1 + c));
    let fz = lm.pow((w + c as i64) as u32);
    let q = q_form(n);
    let torus_action = match scale_form(&q, [&fx, &fy, &fz], &lm) {
        Ok(image) => {
            let factor = lm.pow(1 + 2 * c);
            image
                .iter()
                .zip(&q)
                .all(|((_, a), (_, b))| *a == b.mul_coeff(&factor))
        }
        Err(_) => false,
    };

    let (w0, w1) = (ParamPoly::var(2), ParamPoly::var(3));
    let x = ParamLaurent::constant(w0.pow(2));
    let y = ParamLaurent::monomial(w1.pow(2), 1);
    let z = ParamLaurent::monomial(w0.mul_ref(&w1), -(n as i64));
    let value = &(&x * &y) - &(&ParamLaurent::t().pow(2 * n + 1) * &(&z * &z));
    TorusReport { n, torus_action, trivialization: value.is_zero() }
}
