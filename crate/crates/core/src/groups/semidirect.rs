use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{GaussianRational, NumLaurent};
use crate::error::{Error, Result};

use super::matrix::{mat2, LMat2};
use super::proj::{proj_normalize, ProjElem2};

/// Element `(M, nu)` of `PGL_2(C[t, 1/t]) x| C^*`, where `nu` rescales the
/// base by `t -> nu t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemidirectElem {
    pub g: ProjElem2,
    pub nu: GaussianRational,
}

impl SemidirectElem {
    pub fn new(m: &LMat2, nu: GaussianRational) -> Result<Self> {
        if nu.is_zero() {
            return Err(Error::ZeroScale);
        }
        Ok(SemidirectElem { g: proj_normalize(m)?, nu })
    }

    pub fn identity() -> Self {
        SemidirectElem { g: ProjElem2::identity(), nu: GaussianRational::one() }
    }

    pub fn matrix(&self) -> &LMat2 {
        self.g.rep()
    }

    pub fn proj_eq(&self, other: &Self) -> bool {
        self.nu == other.nu && self.g.proj_eq(&other.g)
    }

    pub fn is_identity(&self) -> bool {
        self.nu.is_one() && self.g.is_identity()
    }

    pub fn inverse(&self) -> Self {
        let nu_inv = self.nu.inv().expect("nu is nonzero");
        let adj = self
            .matrix()
            .adjugate()
            .substitute_scale(&nu_inv)
            .expect("nonzero scale");
        SemidirectElem { g: proj_normalize(&adj).expect("invertible"), nu: nu_inv }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "M": self.matrix().to_json(), "nu": self.nu.to_string() })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let m = v.get("M").ok_or_else(|| Error::Parse("missing field M".into()))?;
        let nu = v
            .get("nu")
            .and_then(|x| x.as_str())
            .ok_or_else(|| Error::Parse("missing string field nu".into()))?;
        SemidirectElem::new(&LMat2::from_json(m)?, nu.parse()?)
    }
}

/// `(M', nu') . (M, nu) = (M'(nu t) M(t), nu' nu)`.
pub fn sd_mul(x: &SemidirectElem, y: &SemidirectElem) -> SemidirectElem {
    let left = x.matrix().substitute_scale(&y.nu).expect("nonzero scale");
    SemidirectElem {
        g: proj_normalize(&(&left * y.matrix())).expect("product of invertibles"),
        nu: &x.nu * &y.nu,
    }
}

/// Complex conjugation on the semidirect product:
/// `([[a, b], [c, d]], nu) -> ([[nu' d', nu' t c'], [b' / t, a']], nu')`,
/// primes denoting conjugates.
pub fn galois_act(x: &SemidirectElem) -> SemidirectElem {
    let m = x.matrix();
    let nu_bar = x.nu.conj();
    let bar = |i, j| m.get(i, j).conjugate();
    let out = mat2(
        bar(1, 1).scale(&nu_bar),
        bar(1, 0).scale(&nu_bar).shift(1),
        bar(0, 1).shift(-1),
        bar(0, 0),
    );
    SemidirectElem { g: proj_normalize(&out).expect("conjugate of an invertible"), nu: nu_bar }
}

/// `galois_act(x) . x` is trivial.
pub fn is_cocycle(x: &SemidirectElem) -> bool {
    sd_mul(&galois_act(x), x).is_identity()
}

/// `galois_act(phi) . psi . phi^-1`, the twisted conjugation of a cocycle.
pub fn twisted_conj(phi: &SemidirectElem, psi: &SemidirectElem) -> Result<SemidirectElem> {
    if !is_cocycle(psi) {
        return Err(Error::NotCocycle);
    }
    Ok(sd_mul(&sd_mul(&galois_act(phi), psi), &phi.inverse()))
}

pub fn is_gamma_invariant(x: &SemidirectElem) -> bool {
    galois_act(x).proj_eq(x)
}

/// `(diag(lambda, 1), lambda lambda')`.
pub fn diag_invariant(lambda: &GaussianRational) -> Result<SemidirectElem> {
    let m = mat2(
        NumLaurent::constant(lambda.clone()),
        NumLaurent::zero(),
        NumLaurent::zero(),
        NumLaurent::one(),
    );
    SemidirectElem::new(&m, GaussianRational::real(lambda.norm_sq()))
}

/// `([[0, lambda t], [1, 0]], lambda lambda')`.
pub fn j_twisted_invariant(lambda: &GaussianRational) -> Result<SemidirectElem> {
    let m = mat2(
        NumLaurent::zero(),
        NumLaurent::monomial(lambda.clone(), 1),
        NumLaurent::one(),
        NumLaurent::zero(),
    );
    SemidirectElem::new(&m, GaussianRational::real(lambda.norm_sq()))
}

impl Serialize for SemidirectElem {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for SemidirectElem {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(de)?;
        SemidirectElem::from_json(&v).map_err(serde::de::Error::custom)
    }
}
