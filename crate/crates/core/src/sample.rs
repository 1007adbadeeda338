//! Random exact inputs for property checks and the orbit sampler. All
//! functions draw from a caller-supplied generator so runs are seedable.

use rand::Rng;

use crate::arith::{GaussianRational, NumLaurent, Rational};
use crate::groups::{j_matrix, mat2, LMat2, SemidirectElem};

/// `p/q` with `|p| <= max_num` and `1 <= q <= max_den`.
pub fn rational<R: Rng + ?Sized>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    let p = rng.gen_range(-max_num..=max_num);
    let q = rng.gen_range(1..=max_den);
    Rational::new(p, q).expect("positive denominator")
}

pub fn nonzero_rational<R: Rng + ?Sized>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    loop {
        let r = rational(rng, max_num, max_den);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn gaussian<R: Rng + ?Sized>(rng: &mut R, max_num: i64, max_den: i64) -> GaussianRational {
    GaussianRational::new(rational(rng, max_num, max_den), rational(rng, max_num, max_den))
}

pub fn nonzero_gaussian<R: Rng + ?Sized>(rng: &mut R, max_num: i64, max_den: i64) -> GaussianRational {
    loop {
        let z = gaussian(rng, max_num, max_den);
        if !z.is_zero() {
            return z;
        }
    }
}

/// At most `max_terms` terms with degrees in `lo..=hi`.
pub fn laurent<R: Rng + ?Sized>(rng: &mut R, lo: i64, hi: i64, max_terms: usize) -> NumLaurent {
    let k = rng.gen_range(0..=max_terms);
    NumLaurent::from_terms((0..k).map(|_| (rng.gen_range(lo..=hi), gaussian(rng, 3, 2))))
}

/// Real fibre coordinates `s_0..s_m`.
pub fn fiber_point<R: Rng + ?Sized>(rng: &mut R, len: usize, max_num: i64, max_den: i64) -> Vec<Rational> {
    (0..len).map(|_| rational(rng, max_num, max_den)).collect()
}

/// Invertible Laurent matrix as a short word in elementary matrices,
/// `diag(c t^k, 1)` and `J`.
pub fn invertible_matrix<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> LMat2 {
    let len = rng.gen_range(1..=max_len);
    let mut acc = LMat2::identity();
    for _ in 0..len {
        let gen = match rng.gen_range(0..4) {
            0 => mat2(NumLaurent::one(), laurent(rng, -1, 2, 2), NumLaurent::zero(), NumLaurent::one()),
            1 => mat2(NumLaurent::one(), NumLaurent::zero(), laurent(rng, -1, 2, 2), NumLaurent::one()),
            2 => mat2(
                NumLaurent::monomial(nonzero_gaussian(rng, 3, 2), rng.gen_range(-2..=2)),
                NumLaurent::zero(),
                NumLaurent::zero(),
                NumLaurent::one(),
            ),
            _ => j_matrix(),
        };
        acc = &acc * &gen;
    }
    acc
}

pub fn semidirect<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> SemidirectElem {
    let nu = if rng.gen_bool(0.3) { GaussianRational::one() } else { nonzero_gaussian(rng, 3, 2) };
    SemidirectElem::new(&invertible_matrix(rng, max_len), nu).expect("invertible by construction")
}

/// Like [`invertible_matrix`] but with real coefficients throughout.
pub fn real_invertible_matrix<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> LMat2 {
    let real = |rng: &mut R| -> NumLaurent {
        let k = rng.gen_range(0..=2);
        NumLaurent::from_terms(
            (0..k).map(|_| (rng.gen_range(-1..=2), GaussianRational::real(rational(rng, 3, 2)))),
        )
    };
    let len = rng.gen_range(1..=max_len);
    let mut acc = LMat2::identity();
    for _ in 0..len {
        let gen = match rng.gen_range(0..4) {
            0 => mat2(NumLaurent::one(), real(rng), NumLaurent::zero(), NumLaurent::one()),
            1 => mat2(NumLaurent::one(), NumLaurent::zero(), real(rng), NumLaurent::one()),
            2 => mat2(
                NumLaurent::monomial(GaussianRational::real(nonzero_rational(rng, 3, 2)), rng.gen_range(-2..=2)),
                NumLaurent::zero(),
                NumLaurent::zero(),
                NumLaurent::one(),
            ),
            _ => j_matrix(),
        };
        acc = &acc * &gen;
    }
    acc
}
