use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Coefficient, GaussianRational, ParamPoly, Rational};
use crate::error::{Error, Result};

/// Sparse Laurent polynomial `sum_k c_k t^k` with coefficients in `C`.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly<C> {
    terms: BTreeMap<i64, C>,
}

/// Laurent polynomial over Q(i).
pub type NumLaurent = LaurentPoly<GaussianRational>;
/// Laurent polynomial whose coefficients are polynomials in real parameters.
pub type ParamLaurent = LaurentPoly<ParamPoly>;

impl<C: Coefficient> Default for LaurentPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(C::one(), 1)
    }

    /// `c * t^deg`.
    pub fn monomial(c: C, deg: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(deg, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in iter {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, deg: i64, c: C) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&deg) {
            Some(old) => old.add_ref(&c),
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&deg);
        } else {
            self.terms.insert(deg, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &C)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, deg: i64) -> C {
        self.terms.get(&deg).cloned().unwrap_or_else(C::zero)
    }

    /// Vanishing order at `t = 0`: the lowest degree present.
    pub fn ord(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Units of the Laurent ring are exactly the terms `c t^k` with `c` a
    /// unit of the coefficient ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().is_some_and(C::is_unit)
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&d, c)| (d + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(&d, v)| (d, v.scale(c))).collect(),
        }
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(&d, v)| (d, v.mul_ref(c))))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficient-wise complex conjugation; `t` and the parameters are
    /// fixed.
    pub fn conjugate(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&d, c)| (d, c.conj())).collect(),
        }
    }

    /// Substitution `t -> c t`, which scales the degree-`k` term by `c^k`.
    pub fn substitute_scale(&self, c: &GaussianRational) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroScale);
        }
        if c.is_one() {
            return Ok(self.clone());
        }
        let mut out = BTreeMap::new();
        for (&d, v) in &self.terms {
            out.insert(d, v.scale(&c.pow(d)?));
        }
        Ok(LaurentPoly { terms: out })
    }

    /// Reduction modulo `t^n` of a polynomial (no negative degrees).
    pub fn truncate_mod(&self, n: u32) -> Result<Self> {
        if let Some(k) = self.ord().filter(|&k| k < 0) {
            return Err(Error::NegativeDegree(k));
        }
        Ok(LaurentPoly {
            terms: self
                .terms
                .range(..n as i64)
                .map(|(&d, c)| (d, c.clone()))
                .collect(),
        })
    }

    /// True when every term has degree `>= k`.
    pub fn divisible_by_t_pow(&self, k: i64) -> bool {
        self.ord().is_none_or(|o| o >= k)
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> LaurentPoly<D> {
        LaurentPoly::from_terms(self.terms.iter().map(|(&d, c)| (d, f(c))))
    }

    pub fn try_map_coeffs<D: Coefficient>(
        &self,
        f: impl Fn(&C) -> Result<D>,
    ) -> Result<LaurentPoly<D>> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (&d, c) in &self.terms {
            out.push((d, f(c)?));
        }
        Ok(LaurentPoly::from_terms(out))
    }

    /// Promotes Q(i) coefficients into the coefficient ring `C`.
    pub fn from_numeric(p: &NumLaurent) -> Self {
        p.map_coeffs(|c| C::from_gaussian(c.clone()))
    }

    /// Converts back to a Q(i) polynomial when every coefficient is constant.
    pub fn to_numeric(&self) -> Option<NumLaurent> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (&d, c) in &self.terms {
            out.push((d, c.as_constant()?));
        }
        Some(LaurentPoly::from_terms(out))
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        Self::sum_of_products(&[(self, rhs)])
    }

    /// `sum_k a_k * b_k`, accumulated per output degree in one pass.
    pub fn sum_of_products(pairs: &[(&Self, &Self)]) -> Self {
        let mut by_degree: BTreeMap<i64, Vec<(&C, &C)>> = BTreeMap::new();
        for (a, b) in pairs {
            for (&da, ca) in &a.terms {
                for (&db, cb) in &b.terms {
                    by_degree.entry(da + db).or_default().push((ca, cb));
                }
            }
        }
        let terms = by_degree
            .into_iter()
            .map(|(d, pairs)| (d, C::sum_of_products(&pairs)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        LaurentPoly { terms }
    }
}

impl ParamLaurent {
    /// Substitutes the parameters `a_i := s_i`; `nparams` is the declared
    /// parameter count and must equal `s.len()`.
    pub fn evaluate_params(&self, nparams: usize, s: &[Rational]) -> Result<NumLaurent> {
        if s.len() != nparams {
            return Err(Error::DimensionMismatch { expected: nparams, got: s.len() });
        }
        let point: Vec<GaussianRational> = s.iter().cloned().map(GaussianRational::real).collect();
        self.try_map_coeffs(|c| c.evaluate(&point))
    }

    /// Largest parameter index in use, plus one.
    pub fn param_span(&self) -> usize {
        self.terms.values().map(ParamPoly::span).max().unwrap_or(0)
    }
}

impl NumLaurent {
    /// Value at `t = x` for a nonzero `x` (or any `x` if there are no
    /// negative-degree terms).
    pub fn eval(&self, x: &GaussianRational) -> Result<GaussianRational> {
        let mut acc = GaussianRational::zero();
        for (&d, c) in &self.terms {
            acc = &acc + &(c * &x.pow(d)?);
        }
        Ok(acc)
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(GaussianRational::is_real)
    }
}

impl<C: Coefficient> Add<&LaurentPoly<C>> for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        for (&d, c) in &rhs.terms {
            out.add_term(d, c.clone());
        }
        out
    }
}

impl<C: Coefficient> Sub<&LaurentPoly<C>> for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        let mut out = self.clone();
        for (&d, c) in &rhs.terms {
            out.add_term(d, c.neg_ref());
        }
        out
    }
}

impl<C: Coefficient> Mul<&LaurentPoly<C>> for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        self.mul_impl(rhs)
    }
}

impl<C: Coefficient> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly {
            terms: self.terms.iter().map(|(&d, c)| (d, c.neg_ref())).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $method:ident) => {
        impl<C: Coefficient> $tr<LaurentPoly<C>> for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $method(self, rhs: LaurentPoly<C>) -> LaurentPoly<C> {
                (&self).$method(&rhs)
            }
        }
        impl<C: Coefficient> $tr<&LaurentPoly<C>> for LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $method(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
                (&self).$method(rhs)
            }
        }
        impl<C: Coefficient> $tr<LaurentPoly<C>> for &LaurentPoly<C> {
            type Output = LaurentPoly<C>;
            fn $method(self, rhs: LaurentPoly<C>) -> LaurentPoly<C> {
                self.$method(&rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl<C: Coefficient> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        -&self
    }
}

impl<C: Coefficient> std::iter::Sum for LaurentPoly<C> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl<C: Coefficient> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&d, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match d {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{d}")?,
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
