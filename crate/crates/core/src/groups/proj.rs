use crate::arith::{Coefficient, GaussianRational};
use crate::error::{Error, Result};

use super::matrix::LMat2;

/// Class in `PGL_2` of the Laurent ring, held by its normalized
/// representative: polynomial entries, not all divisible by `t`.
#[derive(Clone, PartialEq, Eq)]
pub struct ProjElem2<C = GaussianRational> {
    rep: LMat2<C>,
}

impl<C: Coefficient> std::fmt::Debug for ProjElem2<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{:?}]", self.rep)
    }
}

impl<C: Coefficient> ProjElem2<C> {
    pub fn identity() -> Self {
        ProjElem2 { rep: LMat2::identity() }
    }

    pub fn rep(&self) -> &LMat2<C> {
        &self.rep
    }

    pub fn into_rep(self) -> LMat2<C> {
        self.rep
    }

    /// `a(0) d(0)` is a unit, `b` lies in `t^(n+1) A[t]`, `c` in `t^n A[t]`.
    pub fn in_g0n(&self, n: u32) -> bool {
        let m = &self.rep;
        let n = n as i64;
        if !m.get(0, 1).divisible_by_t_pow(n + 1) || !m.get(1, 0).divisible_by_t_pow(n) {
            return false;
        }
        m.get(0, 0).coeff(0).mul_ref(&m.get(1, 1).coeff(0)).is_unit()
    }

    pub fn proj_eq(&self, other: &Self) -> bool {
        self.rep.proj_eq(&other.rep)
    }

    pub fn is_identity(&self) -> bool {
        self.rep.proj_eq(&LMat2::identity())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        // A product of invertible matrices is invertible, so this cannot fail.
        proj_normalize(&(&self.rep * &rhs.rep)).expect("product of units")
    }

    pub fn inverse(&self) -> Self {
        proj_normalize(&self.rep.adjugate()).expect("adjugate of an invertible matrix")
    }
}

/// Rejects matrices whose determinant is not a unit of the Laurent ring.
pub fn proj_normalize<C: Coefficient>(m: &LMat2<C>) -> Result<ProjElem2<C>> {
    if !m.det().is_unit() {
        return Err(Error::NotInvertible);
    }
    Ok(ProjElem2 { rep: m.normalize_t_power().0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::NumLaurent;
    use crate::groups::matrix::{j_matrix, mat2};

    fn c(k: i64) -> NumLaurent {
        NumLaurent::constant(GaussianRational::from_int(k))
    }

    fn t(k: i64) -> NumLaurent {
        NumLaurent::monomial(GaussianRational::one(), k)
    }

    #[test]
    fn normalize_examples() {
        let j: LMat2 = j_matrix();
        assert_eq!(proj_normalize(&j).unwrap().rep(), &j);
        let tid = LMat2::scalar(t(1));
        assert_eq!(proj_normalize(&tid).unwrap().rep(), &LMat2::identity());
        // det = t^2 - t^3 is not a unit.
        let m = mat2(t(1), t(2), t(1), t(1));
        assert!(proj_normalize(&m).is_err());
        let u = mat2(t(1), t(2), c(0), t(1));
        assert_eq!(proj_normalize(&u).unwrap().rep(), &mat2(c(1), t(1), c(0), c(1)));
    }

    #[test]
    fn g0n_membership() {
        let id = ProjElem2::<GaussianRational>::identity();
        for n in 0..6 {
            assert!(id.in_g0n(n));
        }
        let j = proj_normalize(&j_matrix::<GaussianRational>()).unwrap();
        assert!(!j.in_g0n(1));
        assert!(!j.in_g0n(3));
        // b = t^2, c = t: in G0_1 but not G0_2.
        let g = proj_normalize(&mat2(c(1), t(2), t(1), c(1) + t(3))).unwrap();
        assert!(g.in_g0n(1));
        assert!(!g.in_g0n(2));
    }
}
