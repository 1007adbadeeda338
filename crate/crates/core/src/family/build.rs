use serde::{Deserialize, Serialize};

use crate::arith::{
    Coefficient, GaussianRational, LaurentPoly, NumLaurent, ParamLaurent, ParamPoly, Rational,
};
use crate::error::{Error, Result};
use crate::groups::{j_matrix, mat2, proj_normalize, LMat2, ProjElem2, SemidirectElem};

/// Surface index `n` and parameter count `m + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub n: u32,
    pub m: u32,
}

/// Deliberate corruptions used as negative controls.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mutation {
    #[default]
    None,
    /// Negates the lower-left entry of `M`.
    FlipSign,
    /// Raises the `z`-weight of the torus action by one.
    ZWeight,
}

impl FamilySpec {
    pub fn new(n: u32, m: u32) -> Self {
        FamilySpec { n, m }
    }

    pub fn nparams(&self) -> usize {
        self.m as usize + 1
    }

    /// `P = a_0 + a_1 t + ... + a_m t^m` with formal real parameters.
    pub fn symbolic_p(&self) -> ParamLaurent {
        ParamLaurent::from_terms((0..=self.m).map(|i| (i as i64, ParamPoly::var(i as usize))))
    }

    /// `P(s)` for a fibre point.
    pub fn numeric_p(&self, s: &[Rational]) -> Result<NumLaurent> {
        if s.len() != self.nparams() {
            return Err(Error::DimensionMismatch { expected: self.nparams(), got: s.len() });
        }
        Ok(NumLaurent::from_terms(
            s.iter().enumerate().map(|(i, x)| (i as i64, GaussianRational::real(x.clone()))),
        ))
    }
}

/// `h = t P^2`.
pub fn h_of<C: Coefficient>(p: &LaurentPoly<C>) -> LaurentPoly<C> {
    (p * p).shift(1)
}

/// `M` and `A` for a given `P`, over any coefficient ring:
///
/// ```text
/// M = [[1 - h, t P h^n], [-P h^n, sum_{j<=2n} h^j]]
/// A = [[sum_{j<=n} h^j, -t P], [-P sum_{j<n} h^j, 1]]
/// ```
pub fn family_matrices<C: Coefficient>(n: u32, p: &LaurentPoly<C>) -> (LMat2<C>, LMat2<C>) {
    let h = h_of(p);
    let n = n as usize;
    let mut powers = Vec::with_capacity(2 * n + 1);
    powers.push(LaurentPoly::one());
    for j in 1..=2 * n {
        powers.push(&powers[j - 1] * &h);
    }
    let partial = |k: usize| -> LaurentPoly<C> { powers[..k].iter().cloned().sum() };
    let ph_n = p * &powers[n];
    let one = LaurentPoly::<C>::one();
    let m = mat2(&one - &h, ph_n.shift(1), -&ph_n, partial(2 * n + 1));
    let a = mat2(partial(n + 1), -p.shift(1), -(p * &partial(n)), one);
    (m, a)
}

pub fn build_p_h(spec: FamilySpec) -> (ParamLaurent, ParamLaurent) {
    let p = spec.symbolic_p();
    let h = h_of(&p);
    (p, h)
}

pub fn family_m_matrix(spec: FamilySpec) -> LMat2<ParamPoly> {
    family_matrices(spec.n, &spec.symbolic_p()).0
}

pub fn family_a_matrix(spec: FamilySpec) -> LMat2<ParamPoly> {
    family_matrices(spec.n, &spec.symbolic_p()).1
}

pub fn build_m(spec: FamilySpec) -> Result<ProjElem2<ParamPoly>> {
    proj_normalize(&family_m_matrix(spec))
}

pub fn build_a(spec: FamilySpec) -> Result<ProjElem2<ParamPoly>> {
    proj_normalize(&family_a_matrix(spec))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub n: u32,
    pub m: u32,
    /// `M J M = J` as matrices.
    pub mjm_eq_j: bool,
    /// `A M = J A J` as matrices. Never true: the two sides have
    /// determinants 1 and `t^2`.
    pub am_eq_jaj_in_matrices: bool,
    /// `J A J = t A M` as matrices.
    pub jaj_eq_t_am: bool,
    /// `A M = J A J` in `PGL_2`.
    pub am_eq_jaj_in_pgl2: bool,
    pub det_m_one: bool,
    pub det_a_one: bool,
    pub m_in_g0n: bool,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.mjm_eq_j
            && self.jaj_eq_t_am
            && self.am_eq_jaj_in_pgl2
            && self.det_m_one
            && self.det_a_one
            && self.m_in_g0n
    }
}

/// Checks the defining identities of the family as exact identities in
/// `Mat_2(R[t])`.
pub fn verify_identities(spec: FamilySpec, mutation: Mutation) -> IdentityReport {
    let (mut m, a) = family_matrices(spec.n, &spec.symbolic_p());
    if mutation == Mutation::FlipSign {
        m = mat2(m.get(0, 0).clone(), m.get(0, 1).clone(), -m.get(1, 0), m.get(1, 1).clone());
    }
    let j: LMat2<ParamPoly> = j_matrix();
    let one = ParamLaurent::one();
    let ((mjm, (am, jaj)), (det_m, det_a)) = rayon::join(
        || rayon::join(|| &(&m * &j) * &m == j, || rayon::join(|| &a * &m, || &(&j * &a) * &j)),
        || rayon::join(|| m.det() == one, || a.det() == one),
    );
    let jaj_eq_t_am = jaj == am.shift(1);
    let m_in_g0n = proj_normalize(&m).map(|g| g.in_g0n(spec.n)).unwrap_or(false);
    IdentityReport {
        n: spec.n,
        m: spec.m,
        mjm_eq_j: mjm,
        am_eq_jaj_in_matrices: am == jaj,
        jaj_eq_t_am,
        am_eq_jaj_in_pgl2: jaj_eq_t_am || am.proj_eq(&jaj),
        det_m_one: det_m,
        det_a_one: det_a,
        m_in_g0n,
    }
}

/// Both matrices evaluated at a fibre point, built directly from `P(s)`.
pub fn fiber_matrices(spec: FamilySpec, s: &[Rational]) -> Result<(LMat2, LMat2)> {
    Ok(family_matrices(spec.n, &spec.numeric_p(s)?))
}

/// `(M(s), 1)`.
pub fn fiber_element(spec: FamilySpec, s: &[Rational]) -> Result<SemidirectElem> {
    let (m, _) = fiber_matrices(spec, s)?;
    SemidirectElem::new(&m, GaussianRational::one())
}

/// `u^2 + v^2 - t^(2n+1) w^2 = 0` with `[u:v:w]` projective.
pub fn is_on_xn(n: u32, u: &Rational, v: &Rational, t: &Rational, w: &Rational) -> Result<bool> {
    if u.is_zero() && v.is_zero() && w.is_zero() {
        return Err(Error::InvalidArgument("projective coordinates (u, v, w) are all zero".into()));
    }
    let lhs = u * u + v * v - t.pow(2 * n as i64 + 1)? * w * w;
    Ok(lhs.is_zero())
}
