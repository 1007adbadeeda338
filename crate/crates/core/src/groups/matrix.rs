use std::fmt;
use std::ops::Mul;

use crate::arith::{
    num_laurent_from_json, num_laurent_to_json, Coefficient, GaussianRational, LaurentPoly,
    NumLaurent, ParamPoly, Rational,
};
use crate::error::{Error, Result};

/// Square matrix of Laurent polynomials in `t`.
#[derive(Clone, PartialEq, Eq)]
pub struct LMat<C, const N: usize> {
    e: [[LaurentPoly<C>; N]; N],
}

pub type LMat2<C = GaussianRational> = LMat<C, 2>;
pub type LMat3<C = GaussianRational> = LMat<C, 3>;

impl<C: Coefficient, const N: usize> LMat<C, N> {
    pub fn from_rows(e: [[LaurentPoly<C>; N]; N]) -> Self {
        LMat { e }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> LaurentPoly<C>) -> Self {
        LMat { e: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))) }
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() })
    }

    pub fn scalar(p: LaurentPoly<C>) -> Self {
        Self::from_fn(|i, j| if i == j { p.clone() } else { LaurentPoly::zero() })
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly<C> {
        &self.e[i][j]
    }

    pub fn rows(&self) -> &[[LaurentPoly<C>; N]; N] {
        &self.e
    }

    pub fn entries(&self) -> impl Iterator<Item = &LaurentPoly<C>> {
        self.e.iter().flatten()
    }

    pub fn is_zero(&self) -> bool {
        self.entries().all(LaurentPoly::is_zero)
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly<C>) -> LaurentPoly<C>) -> Self {
        Self::from_fn(|i, j| f(&self.e[i][j]))
    }

    pub fn try_map<D: Coefficient>(
        &self,
        f: impl Fn(&LaurentPoly<C>) -> Result<LaurentPoly<D>>,
    ) -> Result<LMat<D, N>> {
        let mut err = None;
        let out = LMat::from_fn(|i, j| match f(&self.e[i][j]) {
            Ok(p) => p,
            Err(e) => {
                err.get_or_insert(e);
                LaurentPoly::zero()
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }

    pub fn mul_scalar(&self, p: &LaurentPoly<C>) -> Self {
        self.map(|x| x * p)
    }

    pub fn shift(&self, k: i64) -> Self {
        self.map(|x| x.shift(k))
    }

    pub fn conjugate(&self) -> Self {
        self.map(LaurentPoly::conjugate)
    }

    /// `t -> c t` in every entry.
    pub fn substitute_scale(&self, c: &GaussianRational) -> Result<Self> {
        self.try_map(|x| x.substitute_scale(c))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.e[j][i].clone())
    }

    /// Lowest `t`-order among the nonzero entries.
    pub fn min_ord(&self) -> Option<i64> {
        self.entries().filter_map(LaurentPoly::ord).min()
    }

    /// Multiplies by the unique `t^k` after which all entries are
    /// polynomials and not all of them vanish at `t = 0`; returns the
    /// matrix and `k`. The zero matrix is returned unchanged with `k = 0`.
    pub fn normalize_t_power(&self) -> (Self, i64) {
        match self.min_ord() {
            Some(o) if o != 0 => (self.shift(-o), -o),
            _ => (self.clone(), 0),
        }
    }

    pub fn det(&self) -> LaurentPoly<C> {
        let idx: Vec<usize> = (0..N).collect();
        self.minor_det(&idx, &idx)
    }

    /// Determinant of the submatrix on the given rows and columns, by
    /// cofactor expansion along the first row.
    fn minor_det(&self, rows: &[usize], cols: &[usize]) -> LaurentPoly<C> {
        match rows.len() {
            0 => LaurentPoly::one(),
            1 => self.e[rows[0]][cols[0]].clone(),
            2 => {
                let (r0, r1, c0, c1) = (rows[0], rows[1], cols[0], cols[1]);
                &self.e[r0][c0] * &self.e[r1][c1] - &self.e[r0][c1] * &self.e[r1][c0]
            }
            _ => {
                let mut acc = LaurentPoly::zero();
                for (k, &c) in cols.iter().enumerate() {
                    let entry = &self.e[rows[0]][c];
                    if entry.is_zero() {
                        continue;
                    }
                    let sub_cols: Vec<usize> =
                        cols.iter().copied().filter(|&x| x != c).collect();
                    let term = entry * &self.minor_det(&rows[1..], &sub_cols);
                    acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    /// Classical adjoint: `M * adj(M) = det(M) * I`.
    pub fn adjugate(&self) -> Self {
        Self::from_fn(|i, j| {
            let rows: Vec<usize> = (0..N).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..N).filter(|&c| c != i).collect();
            let m = self.minor_det(&rows, &cols);
            if (i + j) % 2 == 0 {
                m
            } else {
                -m
            }
        })
    }

    /// Exact inverse over the Laurent ring; requires a unit determinant.
    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if !det.is_unit() {
            return Err(Error::NotInvertible);
        }
        let (deg, c) = det.terms().next().expect("unit is nonzero");
        let c = c.as_constant().ok_or(Error::NotInvertible)?.inv()?;
        Ok(self.adjugate().map(|x| x.scale(&c).shift(-deg)))
    }

    /// Projective equality: `self = u * other` for some nonzero `u` in the
    /// fraction field, tested by cross-multiplication against a pivot.
    pub fn proj_eq(&self, other: &Self) -> bool {
        let pivot = self.entries().zip(other.entries()).find(|(a, _)| !a.is_zero());
        let Some((pa, pb)) = pivot else {
            return other.is_zero();
        };
        if pb.is_zero() {
            return false;
        }
        self.entries()
            .zip(other.entries())
            .all(|(a, b)| a * pb == b * pa)
    }

    pub fn from_numeric(m: &LMat<GaussianRational, N>) -> Self {
        LMat::from_fn(|i, j| LaurentPoly::from_numeric(m.get(i, j)))
    }

    pub fn to_numeric(&self) -> Option<LMat<GaussianRational, N>> {
        let mut out = LMat::identity();
        for i in 0..N {
            for j in 0..N {
                out.e[i][j] = self.e[i][j].to_numeric()?;
            }
        }
        Some(out)
    }
}

impl<const N: usize> LMat<ParamPoly, N> {
    pub fn evaluate_params(&self, nparams: usize, s: &[Rational]) -> Result<LMat<GaussianRational, N>> {
        self.try_map(|x| x.evaluate_params(nparams, s))
    }
}

impl<const N: usize> LMat<GaussianRational, N> {
    /// Row-major nested arrays of Laurent polynomial encodings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.e
                .iter()
                .map(|row| serde_json::Value::Array(row.iter().map(num_laurent_to_json).collect()))
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
        if rows.len() != N {
            return Err(Error::DimensionMismatch { expected: N, got: rows.len() });
        }
        let mut parsed: Vec<Vec<NumLaurent>> = Vec::with_capacity(N);
        for row in rows {
            let row = row
                .as_array()
                .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?;
            if row.len() != N {
                return Err(Error::DimensionMismatch { expected: N, got: row.len() });
            }
            parsed.push(row.iter().map(num_laurent_from_json).collect::<Result<_>>()?);
        }
        Ok(LMat::from_fn(|i, j| parsed[i][j].clone()))
    }
}

impl<C: Coefficient, const N: usize> Mul<&LMat<C, N>> for &LMat<C, N> {
    type Output = LMat<C, N>;
    fn mul(self, rhs: &LMat<C, N>) -> LMat<C, N> {
        LMat::from_fn(|i, j| {
            let pairs: Vec<_> = (0..N).map(|k| (&self.e[i][k], &rhs.e[k][j])).collect();
            LaurentPoly::sum_of_products(&pairs)
        })
    }
}

impl<C: Coefficient, const N: usize> Mul for LMat<C, N> {
    type Output = LMat<C, N>;
    fn mul(self, rhs: LMat<C, N>) -> LMat<C, N> {
        &self * &rhs
    }
}

impl<C: Coefficient, const N: usize> fmt::Debug for LMat<C, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.e.iter()).finish()
    }
}

/// Shorthand for a 2x2 matrix.
pub fn mat2<C: Coefficient>(
    a: LaurentPoly<C>,
    b: LaurentPoly<C>,
    c: LaurentPoly<C>,
    d: LaurentPoly<C>,
) -> LMat2<C> {
    LMat::from_rows([[a, b], [c, d]])
}

/// `J = [[0, t], [1, 0]]`.
pub fn j_matrix<C: Coefficient>() -> LMat2<C> {
    mat2(LaurentPoly::zero(), LaurentPoly::t(), LaurentPoly::one(), LaurentPoly::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> NumLaurent {
        NumLaurent::constant(s.parse().unwrap())
    }

    fn t(k: i64) -> NumLaurent {
        NumLaurent::monomial(GaussianRational::one(), k)
    }

    #[test]
    fn det_and_adjugate_3x3() {
        let m: LMat3 = LMat::from_rows([
            [c("2"), t(1), c("0")],
            [c("1"), c("1"), t(-1)],
            [c("0"), c("3"), c("1")],
        ]);
        // 2(1 - 3t^-1) - t(1 - 0) + 0
        assert_eq!(m.det(), c("2") - NumLaurent::monomial(GaussianRational::from_int(6), -1) - t(1));
        assert_eq!(&m * &m.adjugate(), LMat::scalar(m.det()));
        assert_eq!(&m.adjugate() * &m, LMat::scalar(m.det()));
    }

    #[test]
    fn inverse_needs_unit_det() {
        let j: LMat2 = j_matrix();
        assert_eq!(j.det(), -t(1));
        assert_eq!(&j * &j.inverse().unwrap(), LMat::identity());
        let m: LMat2 = mat2(c("1"), c("0"), c("0"), c("1") + t(1));
        assert!(matches!(m.inverse(), Err(Error::NotInvertible)));
    }

    #[test]
    fn normalization_clears_t_powers() {
        let m: LMat2 = mat2(t(1), t(2), t(1), t(1));
        let (n, k) = m.normalize_t_power();
        assert_eq!(k, -1);
        assert_eq!(n, mat2(c("1"), t(1), c("1"), c("1")));
        let (n, k) = LMat2::<GaussianRational>::scalar(t(-3)).normalize_t_power();
        assert_eq!((n, k), (LMat::identity(), 3));
    }

    #[test]
    fn projective_equality_up_to_units() {
        let j: LMat2 = j_matrix();
        let scaled = j.mul_scalar(&NumLaurent::monomial("2-i".parse().unwrap(), -4));
        assert!(j.proj_eq(&scaled));
        assert!(scaled.proj_eq(&j));
        assert!(!j.proj_eq(&LMat::identity()));
        let other: LMat2 = mat2(c("0"), t(1), c("2"), c("0"));
        assert!(!j.proj_eq(&other));
    }

    #[test]
    fn json_round_trip() {
        let j: LMat2 = j_matrix();
        let v = j.to_json();
        assert_eq!(LMat2::from_json(&v).unwrap(), j);
        assert!(LMat3::from_json(&v).is_err());
    }
}
