use std::fmt;

use super::GaussianRational;

/// Coefficient ring of a Laurent polynomial: Q(i) itself, or polynomials
/// over Q(i) in real parameters.
///
/// Every implementor is an integral domain containing Q(i) whose units are
/// exactly the nonzero constants.
pub trait Coefficient:
    Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_gaussian(c: GaussianRational) -> Self;

    fn add_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    /// Multiplication by a Q(i) scalar.
    fn scale(&self, c: &GaussianRational) -> Self;

    /// Complex conjugation of the numeric coefficients; parameters are real.
    fn conj(&self) -> Self;

    /// The value as an element of Q(i), if it is constant.
    fn as_constant(&self) -> Option<GaussianRational>;

    fn is_unit(&self) -> bool {
        self.as_constant().is_some_and(|c| !c.is_zero())
    }

    /// `sum_k a_k * b_k`; implementors may fuse the accumulation.
    fn sum_of_products(pairs: &[(&Self, &Self)]) -> Self {
        pairs
            .iter()
            .fold(Self::zero(), |acc, (a, b)| acc.add_ref(&a.mul_ref(b)))
    }
}

impl Coefficient for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }

    fn one() -> Self {
        GaussianRational::one()
    }

    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }

    fn from_gaussian(c: GaussianRational) -> Self {
        c
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn scale(&self, c: &GaussianRational) -> Self {
        self * c
    }

    fn conj(&self) -> Self {
        GaussianRational::conj(self)
    }

    fn as_constant(&self) -> Option<GaussianRational> {
        Some(self.clone())
    }
}
