use serde::Serialize;

use crate::arith::{Coefficient, GaussianRational, LaurentPoly};
use crate::groups::{LMat2, LMat3, ProjElem2};

/// The image `N(M)` in `PGL_3` acting on `[x:y:z]`:
///
/// ```text
/// [[a^2,        b^2 / t,          2ab t^n      ],
///  [c^2 t,      d^2,              2cd t^(n+1)  ],
///  [ac / t^n,   bd / t^(n+1),     ad + bc      ]]
/// ```
pub fn embed_n_matrix<C: Coefficient>(m: &LMat2<C>, n: u32) -> LMat3<C> {
    let n = n as i64;
    let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    let two = GaussianRational::from_int(2);
    LMat3::from_rows([
        [a * a, (b * b).shift(-1), (a * b).scale(&two).shift(n)],
        [(c * c).shift(1), d * d, (c * d).scale(&two).shift(n + 1)],
        [(a * c).shift(-n), (b * d).shift(-(n + 1)), &(a * d) + &(b * c)],
    ])
}

pub fn embed_n<C: Coefficient>(g: &ProjElem2<C>, n: u32) -> LMat3<C> {
    embed_n_matrix(g.rep(), n)
}

/// Outcome of substituting a 3x3 matrix into `q = xy - t^(2n+1) z^2`.
#[derive(Clone, PartialEq, Eq)]
pub struct YnCheck<C> {
    pub preserved: bool,
    /// The factor `u` with `q o N = u q`, when the result is proportional
    /// to `q` at all.
    pub unit: Option<LaurentPoly<C>>,
}

impl<C: Coefficient> std::fmt::Debug for YnCheck<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("YnCheck")
            .field("preserved", &self.preserved)
            .field("unit", &self.unit)
            .finish()
    }
}

/// Tests `q(N v) = u q(v)` for a unit `u`, by comparing the coefficients
/// of the quadratic form `q o N` with those of `q`.
pub fn preserves_yn<C: Coefficient>(nm: &LMat3<C>, n: u32) -> YnCheck<C> {
    let tq = LaurentPoly::<C>::t().pow(2 * n + 1);
    let r = |i: usize, k: usize| nm.get(i, k);
    // Coefficient of v_k v_l in (r0.v)(r1.v) - t^(2n+1) (r2.v)^2.
    let coeff = |k: usize, l: usize| -> LaurentPoly<C> {
        if k == l {
            &(r(0, k) * r(1, k)) - &(&tq * &(r(2, k) * r(2, k)))
        } else {
            let cross = &(r(0, k) * r(1, l)) + &(r(0, l) * r(1, k));
            let zz = (r(2, k) * r(2, l)).scale(&GaussianRational::from_int(2));
            &cross - &(&tq * &zz)
        }
    };
    let vanishing = [(0, 0), (1, 1), (0, 2), (1, 2)];
    if !vanishing.iter().all(|&(k, l)| coeff(k, l).is_zero()) {
        return YnCheck { preserved: false, unit: None };
    }
    let u = coeff(0, 1);
    if coeff(2, 2) != -(&tq * &u) {
        return YnCheck { preserved: false, unit: None };
    }
    YnCheck { preserved: u.is_unit(), unit: Some(u) }
}

/// Behaviour of a `PGL_3` element on the fibre over `t = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum T0Restriction {
    Automorphism { matrix: [[GaussianRational; 3]; 3] },
    /// Rank one: everything off the kernel plane goes to `image`.
    Contraction { image: [GaussianRational; 3] },
    /// Not classified further.
    Rank2 { matrix: [[GaussianRational; 3]; 3] },
}

/// Clears the power of `t`, then evaluates at `t = 0`.
pub fn restrict_t0(nm: &LMat3) -> T0Restriction {
    let (norm, _) = nm.normalize_t_power();
    let m0: [[GaussianRational; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| norm.get(i, j).coeff(0)));
    match rank(&m0) {
        3 => T0Restriction::Automorphism { matrix: m0 },
        1 => {
            let col = (0..3)
                .map(|j| [m0[0][j].clone(), m0[1][j].clone(), m0[2][j].clone()])
                .find(|c| c.iter().any(|x| !x.is_zero()))
                .expect("rank one has a nonzero column");
            T0Restriction::Contraction { image: normalize_point(col) }
        }
        _ => T0Restriction::Rank2 { matrix: m0 },
    }
}

/// Scales so that the first nonzero coordinate is 1.
pub fn normalize_point(p: [GaussianRational; 3]) -> [GaussianRational; 3] {
    let lead = p.iter().find(|x| !x.is_zero()).cloned().expect("nonzero point");
    let inv = lead.inv().expect("nonzero");
    p.map(|x| &x * &inv)
}

/// Exact rank over Q(i) by Gaussian elimination.
pub fn rank(m: &[[GaussianRational; 3]; 3]) -> usize {
    let mut a: Vec<Vec<GaussianRational>> = m.iter().map(|r| r.to_vec()).collect();
    let mut rank = 0;
    for col in 0..3 {
        let Some(p) = (rank..3).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = a[rank][col].inv().expect("nonzero pivot");
        for r in 0..3 {
            if r != rank && !a[r][col].is_zero() {
                let f = &a[r][col] * &inv;
                for c in col..3 {
                    let delta = &f * &a[rank][c];
                    a[r][c] = &a[r][c] - &delta;
                }
            }
        }
        rank += 1;
    }
    rank
}
