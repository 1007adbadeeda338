//! `SL_2(C)` acting on Hermitian matrices as Lorentz transformations of
//! `(x, y, z, t)`, the quadric `q0 = x^2 + y^2 + z^2 - t^2`, and the conic
//! fibres over points off it.

use serde::Serialize;

use crate::arith::{GaussianRational, Rational};
use crate::error::{Error, Result};

pub type Mat4 = [[Rational; 4]; 4];

/// 2x2 matrix over Q(i) with determinant exactly 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SL2C {
    m: [[GaussianRational; 2]; 2],
}

type C2 = [[GaussianRational; 2]; 2];

fn mul2(a: &C2, b: &C2) -> C2 {
    std::array::from_fn(|i| std::array::from_fn(|j| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j])))
}

impl SL2C {
    pub fn new(m: [[GaussianRational; 2]; 2]) -> Result<Self> {
        let det = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
        if !det.is_one() {
            return Err(Error::InvalidArgument(format!("determinant is {det}, not 1")));
        }
        Ok(SL2C { m })
    }

    pub fn identity() -> Self {
        let (o, z) = (GaussianRational::one, GaussianRational::zero);
        SL2C { m: [[o(), z()], [z(), o()]] }
    }

    pub fn entries(&self) -> &[[GaussianRational; 2]; 2] {
        &self.m
    }

    pub fn mul(&self, o: &SL2C) -> SL2C {
        SL2C { m: mul2(&self.m, &o.m) }
    }

    pub fn neg(&self) -> SL2C {
        SL2C { m: self.m.clone().map(|r| r.map(|x| -x)) }
    }

    fn inverse(&self) -> C2 {
        let m = &self.m;
        [[m[1][1].clone(), -&m[0][1]], [-&m[1][0], m[0][0].clone()]]
    }
}

fn conj_transpose(m: &C2) -> C2 {
    std::array::from_fn(|i| std::array::from_fn(|j| m[j][i].conj()))
}

fn hermitian(v: &[Rational; 4]) -> C2 {
    let [x, y, z, t] = v;
    [
        [GaussianRational::real(t + z), GaussianRational::new(x.clone(), -y)],
        [GaussianRational::new(x.clone(), y.clone()), GaussianRational::real(t - z)],
    ]
}

fn coordinates(h: &C2) -> Result<[Rational; 4]> {
    let (h11, h22) = (h[0][0].as_real(), h[1][1].as_real());
    let (Some(h11), Some(h22)) = (h11, h22) else {
        return Err(Error::Invariant("image is not Hermitian".into()));
    };
    if h[0][1] != h[1][0].conj() {
        return Err(Error::Invariant("image is not Hermitian".into()));
    }
    let half = Rational::new(1, 2).expect("nonzero");
    Ok([
        h[1][0].re.clone(),
        h[1][0].im.clone(),
        (h11 - h22) * &half,
        (h11 + h22) * &half,
    ])
}

/// Matrix of `H -> (M^*)^(-1) H M^(-1)` in `(x, y, z, t)` coordinates.
pub fn lorentz_of(m: &SL2C) -> Result<Mat4> {
    let inv = m.inverse();
    let inv_star = conj_transpose(&inv);
    let mut cols: Vec<[Rational; 4]> = Vec::with_capacity(4);
    for k in 0..4 {
        let mut e: [Rational; 4] = std::array::from_fn(|_| Rational::zero());
        e[k] = Rational::one();
        let h = mul2(&mul2(&inv_star, &hermitian(&e)), &inv);
        cols.push(coordinates(&h)?);
    }
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i].clone())))
}

/// Gram matrix `diag(1, 1, 1, -1)` of `q0`.
pub fn gram() -> Mat4 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| match (i == j, i) {
            (false, _) => Rational::zero(),
            (true, 3) => Rational::from(-1),
            (true, _) => Rational::one(),
        })
    })
}

pub fn mat4_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..4).map(|k| &a[i][k] * &b[k][j]).sum()))
}

pub fn mat4_transpose(a: &Mat4) -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

pub fn mat4_apply(a: &Mat4, v: &[Rational; 4]) -> [Rational; 4] {
    std::array::from_fn(|i| (0..4).map(|k| &a[i][k] * &v[k]).sum())
}

/// `L^T G L = G`.
pub fn preserves_q0(l: &Mat4) -> bool {
    mat4_mul(&mat4_mul(&mat4_transpose(l), &gram()), l) == gram()
}

/// Exact determinant by cofactor expansion.
pub fn det4(a: &Mat4) -> Rational {
    fn det(rows: &[&[Rational]], cols: &[usize]) -> Rational {
        if cols.len() == 1 {
            return rows[0][cols[0]].clone();
        }
        let mut acc = Rational::zero();
        for (k, &c) in cols.iter().enumerate() {
            if rows[0][c].is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = &rows[0][c] * &det(&rows[1..], &rest);
            acc = if k % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }
    let rows: Vec<&[Rational]> = a.iter().map(|r| r.as_slice()).collect();
    det(&rows, &[0, 1, 2, 3])
}

pub fn q0(p: &[Rational; 4]) -> Rational {
    let [x, y, z, t] = p;
    x * x + y * y + z * z - t * t
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Orbit {
    #[serde(rename = "Z+")]
    ZPlus,
    #[serde(rename = "Z-")]
    ZMinus,
    OnQuadric,
}

fn check_nonzero(p: &[Rational; 4]) -> Result<()> {
    if p.iter().all(Rational::is_zero) {
        return Err(Error::InvalidArgument("the zero tuple is not a projective point".into()));
    }
    Ok(())
}

pub fn orbit_classify(p: &[Rational; 4]) -> Result<Orbit> {
    check_nonzero(p)?;
    let v = q0(p);
    Ok(if v.is_positive() {
        Orbit::ZPlus
    } else if v.is_negative() {
        Orbit::ZMinus
    } else {
        Orbit::OnQuadric
    })
}

/// Symmetric matrix of a quadratic form `sum q_ij v_i v_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QForm {
    pub m: Vec<Vec<Rational>>,
}

impl QForm {
    pub fn new(m: Vec<Vec<Rational>>) -> Result<Self> {
        let n = m.len();
        if m.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("form matrix is not square".into()));
        }
        if (0..n).any(|i| (0..i).any(|j| m[i][j] != m[j][i])) {
            return Err(Error::InvalidArgument("form matrix is not symmetric".into()));
        }
        Ok(QForm { m })
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        QForm {
            m: (0..n)
                .map(|i| (0..n).map(|j| if i == j { entries[i].clone() } else { Rational::zero() }).collect())
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    pub fn eval(&self, v: &[Rational]) -> Rational {
        let n = self.dim();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| &(&self.m[i][j] * &v[i]) * &v[j])
            .sum()
    }

    /// `P^T Q P`.
    pub fn congruent(&self, p: &[Vec<Rational>]) -> QForm {
        let n = self.dim();
        let qp: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| &self.m[i][k] * &p[k][j]).sum()).collect())
            .collect();
        QForm {
            m: (0..n)
                .map(|i| (0..n).map(|j| (0..n).map(|k| &p[k][i] * &qp[k][j]).sum()).collect())
                .collect(),
        }
    }
}

/// Restriction of `q0` to the plane `x x' + y y' + z z' + t t' = 0`,
/// eliminating the last primed variable with a nonzero coefficient.
pub fn fiber_conic(p: &[Rational; 4]) -> Result<QForm> {
    check_nonzero(p)?;
    let g = [1, 1, 1, -1].map(Rational::from);
    let j = (0..4).rev().find(|&k| !p[k].is_zero()).expect("nonzero point");
    let keep: Vec<usize> = (0..4).filter(|&k| k != j).collect();
    // x'_j = sum_k c_k x'_k.
    let c: Vec<Rational> = keep.iter().map(|&k| -(&p[k] / &p[j])).collect();
    let m = (0..3)
        .map(|a| {
            (0..3)
                .map(|b| {
                    let base = if a == b { g[keep[a]].clone() } else { Rational::zero() };
                    base + &(&g[j] * &c[a]) * &c[b]
                })
                .collect()
        })
        .collect();
    Ok(QForm { m })
}

/// Diagonal of a form congruent to `q` over Q (symmetric Lagrange
/// reduction); zeros record the rank drop.
pub fn diagonalize(q: &QForm) -> Vec<Rational> {
    let mut a = q.m.clone();
    let mut live: Vec<usize> = (0..q.dim()).collect();
    let mut out = Vec::with_capacity(q.dim());
    while !live.is_empty() {
        if let Some(pos) = live.iter().position(|&i| !a[i][i].is_zero()) {
            let i = live.remove(pos);
            let piv = a[i][i].clone();
            for &r in &live {
                for &c in &live {
                    let delta = &(&a[r][i] * &a[i][c]) / &piv;
                    a[r][c] = &a[r][c] - &delta;
                }
            }
            out.push(piv);
            continue;
        }
        let off = live
            .iter()
            .flat_map(|&i| live.iter().map(move |&j| (i, j)))
            .find(|&(i, j)| i != j && !a[i][j].is_zero());
        let Some((i, j)) = off else {
            out.extend(live.iter().map(|_| Rational::zero()));
            break;
        };
        // e_i -> e_i + e_j makes the (i, i) entry 2 a_ij.
        for &k in &live {
            let v = &a[i][k] + &a[j][k];
            a[i][k] = v;
        }
        for &k in &live {
            let v = &a[k][i] + &a[k][j];
            a[k][i] = v;
        }
    }
    out
}

/// A nontrivial real zero exists unless the form is definite of full rank.
pub fn has_real_points(q: &QForm) -> bool {
    let d = diagonalize(q);
    let definite = d.iter().all(Rational::is_positive) || d.iter().all(Rational::is_negative);
    !definite
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FiberType {
    P1R,
    ConicC,
}

/// Real form of the conic over `p`, cross-checked against the orbit.
pub fn fiber_form_type(p: &[Rational; 4]) -> Result<FiberType> {
    let orbit = orbit_classify(p)?;
    if orbit == Orbit::OnQuadric {
        return Err(Error::OnQuadric);
    }
    let ty = if has_real_points(&fiber_conic(p)?) { FiberType::P1R } else { FiberType::ConicC };
    if (ty == FiberType::P1R) != (orbit == Orbit::ZPlus) {
        return Err(Error::Invariant(format!("fibre {ty:?} over a point of {orbit:?}")));
    }
    Ok(ty)
}
