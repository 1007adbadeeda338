use std::collections::BTreeMap;
use std::fmt;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use super::{Coefficient, GaussianRational};
use crate::error::{Error, Result};

/// Exponent vector over the parameters `a_0, a_1, ...`, with trailing zeros
/// removed so that equal monomials compare equal regardless of how many
/// parameters are in scope.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(SmallVec<[u32; 6]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut v: SmallVec<[u32; 6]> = exps.iter().copied().collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        Monomial(v)
    }

    pub fn var(index: usize) -> Self {
        let mut v: SmallVec<[u32; 6]> = SmallVec::from_elem(0, index + 1);
        v[index] = 1;
        Monomial(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Number of leading variables needed to express this monomial.
    pub fn span(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() {
            (&self.0, &other.0)
        } else {
            (&other.0, &self.0)
        };
        let mut v = long.clone();
        for (e, s) in v.iter_mut().zip(short.iter()) {
            *e += s;
        }
        Monomial(v)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Polynomial over Q(i) in the real parameters `a_0, ..., a_m`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(Monomial::one(), c)
    }

    /// The parameter `a_index`.
    pub fn var(index: usize) -> Self {
        Self::term(Monomial::var(index), GaussianRational::one())
    }

    pub fn term(m: Monomial, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ParamPoly { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial, GaussianRational)>) -> Self {
        let mut p = ParamPoly::zero();
        for (m, c) in iter {
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest `k` such that only `a_0..a_{k-1}` occur.
    pub fn span(&self) -> usize {
        self.terms.keys().map(Monomial::span).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Substitutes `a_i := point[i]`.
    pub fn evaluate(&self, point: &[GaussianRational]) -> Result<GaussianRational> {
        let span = self.span();
        if span > point.len() {
            return Err(Error::DimensionMismatch { expected: span, got: point.len() });
        }
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v = &v * &x.pow(e as i64)?;
                }
            }
            acc = &acc + &v;
        }
        Ok(acc)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = <ParamPoly as Coefficient>::one();
        for _ in 0..exp {
            acc = acc.mul_ref(self);
        }
        acc
    }
}

/// Integer fast path for products: when every coefficient is a Gaussian
/// integer that fits in i64, accumulate in i128 and fall back on overflow.
fn small_sum_of_products(pairs: &[(&ParamPoly, &ParamPoly)]) -> Option<ParamPoly> {
    fn convert(p: &ParamPoly) -> Option<Vec<(&Monomial, i64, i64)>> {
        p.terms
            .iter()
            .map(|(m, c)| c.as_small_int().map(|(re, im)| (m, re, im)))
            .collect()
    }
    let mut acc: FxHashMap<Monomial, (i128, i128)> = FxHashMap::default();
    for (a, b) in pairs {
        let a = convert(a)?;
        let b = convert(b)?;
        for &(ma, ar, ai) in &a {
            for &(mb, br, bi) in &b {
                let (ar, ai, br, bi) = (ar as i128, ai as i128, br as i128, bi as i128);
                let re = (ar * br).checked_sub(ai * bi)?;
                let im = (ar * bi).checked_add(ai * br)?;
                let slot = acc.entry(ma.mul(mb)).or_insert((0, 0));
                slot.0 = slot.0.checked_add(re)?;
                slot.1 = slot.1.checked_add(im)?;
            }
        }
    }
    let terms = acc
        .into_iter()
        .filter(|(_, (re, im))| *re != 0 || *im != 0)
        .map(|(m, (re, im))| {
            let c = GaussianRational::new(
                num_bigint::BigInt::from(re).into(),
                num_bigint::BigInt::from(im).into(),
            );
            (m, c)
        })
        .collect();
    Some(ParamPoly { terms })
}

impl Coefficient for ParamPoly {
    fn zero() -> Self {
        ParamPoly::zero()
    }

    fn one() -> Self {
        ParamPoly::constant(GaussianRational::one())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_gaussian(c: GaussianRational) -> Self {
        ParamPoly::constant(c)
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    fn neg_ref(&self) -> Self {
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        Self::sum_of_products(&[(self, rhs)])
    }

    fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    fn conj(&self) -> Self {
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect(),
        }
    }

    fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn sum_of_products(pairs: &[(&Self, &Self)]) -> Self {
        if let Some(p) = small_sum_of_products(pairs) {
            return p;
        }
        let mut acc: FxHashMap<Monomial, GaussianRational> = FxHashMap::default();
        for (a, b) in pairs {
            for (ma, ca) in &a.terms {
                for (mb, cb) in &b.terms {
                    let slot = acc.entry(ma.mul(mb)).or_default();
                    *slot = &*slot + &(ca * cb);
                }
            }
        }
        ParamPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("a{i}") } else { format!("a{i}^{e}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "({c})*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: Vec<u32>,
    coeff: GaussianRational,
}

/// JSON form: `[{"exp": [e0, e1, ...], "coeff": "p/q+r/s*i"}, ...]`.
impl Serialize for ParamPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let reprs: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(m, c)| TermRepr { exp: m.exponents().to_vec(), coeff: c.clone() })
            .collect();
        reprs.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ParamPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let reprs = Vec::<TermRepr>::deserialize(de)?;
        Ok(ParamPoly::from_terms(
            reprs.into_iter().map(|r| (Monomial::from_exponents(&r.exp), r.coeff)),
        ))
    }
}
