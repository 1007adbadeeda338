//! Runtime-tagged Laurent polynomials for the JSON boundary, where the
//! coefficient mode is only known after parsing.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{GaussianRational, LaurentPoly, NumLaurent, ParamLaurent, ParamPoly, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LaurentValue {
    Numeric(NumLaurent),
    /// `nparams` is the declared parameter count `m + 1`.
    Parametric { nparams: usize, poly: ParamLaurent },
}

impl LaurentValue {
    pub fn mode(&self) -> &'static str {
        match self {
            LaurentValue::Numeric(_) => "numeric",
            LaurentValue::Parametric { .. } => "parametric",
        }
    }

    fn zip(
        &self,
        rhs: &Self,
        num: impl Fn(&NumLaurent, &NumLaurent) -> NumLaurent,
        par: impl Fn(&ParamLaurent, &ParamLaurent) -> ParamLaurent,
    ) -> Result<Self> {
        match (self, rhs) {
            (LaurentValue::Numeric(a), LaurentValue::Numeric(b)) => Ok(LaurentValue::Numeric(num(a, b))),
            (
                LaurentValue::Parametric { nparams: na, poly: a },
                LaurentValue::Parametric { nparams: nb, poly: b },
            ) => {
                if na != nb {
                    return Err(Error::ModeMismatch(format!(
                        "parameter counts differ ({na} vs {nb})"
                    )));
                }
                Ok(LaurentValue::Parametric { nparams: *na, poly: par(a, b) })
            }
            _ => Err(Error::ModeMismatch(format!("{} vs {}", self.mode(), rhs.mode()))),
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, |a, b| a + b, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, |a, b| a - b, |a, b| a - b)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, |a, b| a * b, |a, b| a * b)
    }

    pub fn neg(&self) -> Self {
        match self {
            LaurentValue::Numeric(p) => LaurentValue::Numeric(-p),
            LaurentValue::Parametric { nparams, poly } => {
                LaurentValue::Parametric { nparams: *nparams, poly: -poly }
            }
        }
    }

    pub fn conjugate(&self) -> Self {
        match self {
            LaurentValue::Numeric(p) => LaurentValue::Numeric(p.conjugate()),
            LaurentValue::Parametric { nparams, poly } => {
                LaurentValue::Parametric { nparams: *nparams, poly: poly.conjugate() }
            }
        }
    }

    pub fn evaluate_params(&self, s: &[Rational]) -> Result<NumLaurent> {
        match self {
            LaurentValue::Numeric(_) => {
                Err(Error::ModeMismatch("evaluate_params needs a parametric polynomial".into()))
            }
            LaurentValue::Parametric { nparams, poly } => poly.evaluate_params(*nparams, s),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffRepr {
    Numeric(GaussianRational),
    Parametric(ParamPoly),
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    deg: i64,
    coeff: CoeffRepr,
}

/// `[{"deg": k, "coeff": "p/q+r/s*i"}, ...]`.
pub fn num_laurent_to_json(p: &NumLaurent) -> serde_json::Value {
    serde_json::to_value(LaurentValue::Numeric(p.clone())).expect("serializable")
}

pub fn num_laurent_from_json(v: &serde_json::Value) -> Result<NumLaurent> {
    match serde_json::from_value::<LaurentValue>(v.clone()).map_err(|e| Error::Parse(e.to_string()))? {
        LaurentValue::Numeric(p) => Ok(p),
        LaurentValue::Parametric { .. } => {
            Err(Error::ModeMismatch("expected numeric coefficients".into()))
        }
    }
}

impl Serialize for LaurentValue {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let reprs: Vec<TermRepr> = match self {
            LaurentValue::Numeric(p) => p
                .terms()
                .map(|(deg, c)| TermRepr { deg, coeff: CoeffRepr::Numeric(c.clone()) })
                .collect(),
            LaurentValue::Parametric { poly, .. } => poly
                .terms()
                .map(|(deg, c)| TermRepr { deg, coeff: CoeffRepr::Parametric(c.clone()) })
                .collect(),
        };
        reprs.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for LaurentValue {
    /// All-string coefficients give a numeric polynomial; any parametric
    /// coefficient promotes the rest to constants. The parameter count is
    /// the largest parameter index used, plus one.
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let reprs = Vec::<TermRepr>::deserialize(de)?;
        let parametric = reprs.iter().any(|r| matches!(r.coeff, CoeffRepr::Parametric(_)));
        if !parametric {
            return Ok(LaurentValue::Numeric(LaurentPoly::from_terms(reprs.into_iter().map(
                |r| match r.coeff {
                    CoeffRepr::Numeric(c) => (r.deg, c),
                    CoeffRepr::Parametric(_) => unreachable!(),
                },
            ))));
        }
        let poly: ParamLaurent = LaurentPoly::from_terms(reprs.into_iter().map(|r| {
            let c = match r.coeff {
                CoeffRepr::Numeric(c) => ParamPoly::constant(c),
                CoeffRepr::Parametric(p) => p,
            };
            (r.deg, c)
        }));
        let nparams = poly.param_span();
        Ok(LaurentValue::Parametric { nparams, poly })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn mode_mismatch_is_a_typed_error() {
        let a = LaurentValue::Numeric(NumLaurent::one());
        let b = LaurentValue::Parametric { nparams: 1, poly: ParamLaurent::one() };
        assert!(matches!(a.try_add(&b), Err(Error::ModeMismatch(_))));
        let c = LaurentValue::Parametric { nparams: 2, poly: ParamLaurent::one() };
        assert!(matches!(b.try_mul(&c), Err(Error::ModeMismatch(_))));
        assert!(b.try_mul(&b).is_ok());
    }

    #[test]
    fn json_numeric() {
        let v = json!([{"deg": -1, "coeff": "1/2"}, {"deg": 3, "coeff": "1+i"}]);
        let p = num_laurent_from_json(&v).unwrap();
        assert_eq!(p.coeff(-1), "1/2".parse().unwrap());
        assert_eq!(num_laurent_to_json(&p), v);
    }

    #[test]
    fn json_parametric() {
        let v = json!([
            {"deg": 0, "coeff": [{"exp": [1], "coeff": "1"}]},
            {"deg": 1, "coeff": [{"exp": [0, 1], "coeff": "1"}]},
            {"deg": 2, "coeff": "3"}
        ]);
        let p: LaurentValue = serde_json::from_value(v).unwrap();
        let LaurentValue::Parametric { nparams, .. } = &p else { panic!("expected parametric") };
        assert_eq!(*nparams, 2);
        let e = p.evaluate_params(&[Rational::from(1), Rational::from(2)]).unwrap();
        assert_eq!(e.coeff(2), GaussianRational::from_int(3));
        assert_eq!(e.coeff(1), GaussianRational::from_int(2));
    }
}
