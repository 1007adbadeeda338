//! Isomorphism of real fibres: `s ~ s'` iff some real `e != 0` gives
//! `s'_i = e^(2i+1) s_i` for every `i < n`.
//!
//! Odd real roots exist and are unique, so the existence of `e` is decided
//! by the rational identities `r_i^(2j+1) = r_j^(2i+1)` with `r_i = s'_i/s_i`.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::Rational;
use crate::error::{Error, Result};

/// Complete invariant of a fibre point modulo `t^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ModuliInvariant {
    pub n: u32,
    /// `{i < n : s_i != 0}`.
    pub support: Vec<usize>,
    /// Smallest index in the support.
    pub anchor: Option<usize>,
    /// `(j, s_j^(2 i0 + 1) / s_i0^(2j + 1))` for `j` in the support after
    /// the anchor `i0`.
    pub ratios: Vec<(usize, Rational)>,
}

/// A real `e` with `s'_i = e^(2i+1) s_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Rational { e: Rational },
    /// The real `degree`-th root of `radicand`, `degree` odd.
    Symbolic { radicand: Rational, degree: u32 },
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "n = 0: the congruence modulo t^0 is vacuous".into(),
        ));
    }
    Ok(())
}

/// `s_i` for `i < n`, with missing coordinates read as zero.
fn coord(s: &[Rational], i: usize) -> Rational {
    s.get(i).cloned().unwrap_or_else(Rational::zero)
}

fn support(n: u32, s: &[Rational]) -> Vec<usize> {
    (0..n as usize).filter(|&i| !coord(s, i).is_zero()).collect()
}

fn odd(i: usize) -> i64 {
    2 * i as i64 + 1
}

pub fn are_isomorphic(n: u32, s: &[Rational], s2: &[Rational]) -> Result<bool> {
    check_n(n)?;
    let sup = support(n, s);
    if sup != support(n, s2) {
        return Ok(false);
    }
    let r: Vec<(usize, Rational)> = sup.iter().map(|&i| (i, coord(s2, i) / coord(s, i))).collect();
    for (a, (i, ri)) in r.iter().enumerate() {
        for (j, rj) in &r[a + 1..] {
            if ri.pow(odd(*j))? != rj.pow(odd(*i))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn moduli_invariant(n: u32, s: &[Rational]) -> Result<ModuliInvariant> {
    check_n(n)?;
    let sup = support(n, s);
    let anchor = sup.first().copied();
    let ratios = match anchor {
        None => Vec::new(),
        Some(i0) => {
            let base = coord(s, i0);
            sup[1..]
                .iter()
                .map(|&j| Ok((j, coord(s, j).pow(odd(i0))? / base.pow(odd(j))?)))
                .collect::<Result<_>>()?
        }
    };
    Ok(ModuliInvariant { n, support: sup, anchor, ratios })
}

impl Witness {
    /// `e^k` as an exact rational when `k` is a multiple of the root
    /// degree, or always for a rational witness.
    fn pow_times(&self, k: i64) -> Option<Rational> {
        match self {
            Witness::Rational { e } => e.pow(k).ok(),
            Witness::Symbolic { radicand, degree } => {
                let d = *degree as i64;
                (k % d == 0).then(|| radicand.pow(k / d).ok()).flatten()
            }
        }
    }

    /// Checks `s'_i = e^(2i+1) s_i` for all `i < n`. For a symbolic root
    /// `e = r^(1/d)` this is tested as `(s'_i / s_i)^d = r^(2i+1)`.
    pub fn verify(&self, n: u32, s: &[Rational], s2: &[Rational]) -> bool {
        (0..n as usize).all(|i| {
            let (a, b) = (coord(s, i), coord(s2, i));
            if a.is_zero() || b.is_zero() {
                return a.is_zero() && b.is_zero();
            }
            let r = &b / &a;
            match self {
                Witness::Rational { .. } => self.pow_times(odd(i)) == Some(r),
                Witness::Symbolic { degree, .. } => {
                    let d = *degree as i64;
                    r.pow(d).ok() == self.pow_times(odd(i) * d)
                }
            }
        })
    }
}

/// A witness `e`; an empty support admits every `e`, and `1` is returned.
pub fn witness_e(n: u32, s: &[Rational], s2: &[Rational]) -> Result<Witness> {
    if !are_isomorphic(n, s, s2)? {
        return Err(Error::NotIsomorphic);
    }
    let Some(&i0) = support(n, s).first() else {
        return Ok(Witness::Rational { e: Rational::one() });
    };
    let r = coord(s2, i0) / coord(s, i0);
    let degree = odd(i0) as u32;
    let w = match r.odd_root(degree) {
        Some(e) => Witness::Rational { e },
        None => Witness::Symbolic { radicand: r, degree },
    };
    if !w.verify(n, s, s2) {
        return Err(Error::Invariant(format!("witness {w:?} does not verify")));
    }
    Ok(w)
}

/// Independent oracle: tries each candidate `e` directly.
pub fn brute_check(n: u32, s: &[Rational], s2: &[Rational], candidates: &[Rational]) -> bool {
    candidates.iter().filter(|e| !e.is_zero()).any(|e| {
        (0..n as usize).all(|i| {
            e.pow(odd(i)).is_ok_and(|p| coord(s2, i) == p * coord(s, i))
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub n: u32,
    pub matrix: Vec<Vec<bool>>,
    /// Indices grouped by equal invariants, in order of first appearance.
    pub classes: Vec<Vec<usize>>,
    pub invariants: Vec<ModuliInvariant>,
}

pub fn pairwise_matrix(n: u32, points: &[Vec<Rational>]) -> Result<Classification> {
    check_n(n)?;
    let matrix: Vec<Vec<bool>> = points
        .par_iter()
        .map(|p| {
            points
                .iter()
                .map(|q| are_isomorphic(n, p, q))
                .collect::<Result<Vec<bool>>>()
        })
        .collect::<Result<_>>()?;
    let invariants: Vec<ModuliInvariant> = points
        .par_iter()
        .map(|p| moduli_invariant(n, p))
        .collect::<Result<_>>()?;
    Ok(Classification { n, classes: classes(&invariants), matrix, invariants })
}

fn classes(invariants: &[ModuliInvariant]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut seen: rustc_hash::FxHashMap<&ModuliInvariant, usize> = Default::default();
    for (i, inv) in invariants.iter().enumerate() {
        match seen.get(inv) {
            Some(&k) => out[k].push(i),
            None => {
                seen.insert(inv, out.len());
                out.push(vec![i]);
            }
        }
    }
    out
}
