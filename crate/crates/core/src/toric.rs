//! Two-dimensional fans with the coordinate-swap involution: the fan of
//! `Y_n`, its minimal resolution and the self-intersections of the
//! resulting chain of curves.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LatticeVec {
    pub a: i64,
    pub b: i64,
}

impl LatticeVec {
    pub const fn new(a: i64, b: i64) -> Self {
        LatticeVec { a, b }
    }

    pub fn det(self, v: LatticeVec) -> i64 {
        self.a * v.b - self.b * v.a
    }

    pub fn is_primitive(self) -> bool {
        self.a.gcd(&self.b) == 1
    }

    /// Complex conjugation on the character lattice: `(a, b) -> (b, a)`.
    pub fn gamma(self) -> Self {
        LatticeVec::new(self.b, self.a)
    }

    fn add(self, v: LatticeVec) -> Self {
        LatticeVec::new(self.a + v.a, self.b + v.b)
    }

    fn scale(self, k: i64) -> Self {
        LatticeVec::new(k * self.a, k * self.b)
    }
}

impl fmt::Debug for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// 2x2 integer matrix acting on column vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct IntMat([[i64; 2]; 2]);

impl IntMat {
    fn apply(&self, v: LatticeVec) -> LatticeVec {
        let m = &self.0;
        LatticeVec::new(m[0][0] * v.a + m[0][1] * v.b, m[1][0] * v.a + m[1][1] * v.b)
    }

    fn mul(&self, o: &IntMat) -> IntMat {
        let (a, b) = (&self.0, &o.0);
        IntMat(std::array::from_fn(|i| {
            std::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j])
        }))
    }

    fn det(&self) -> i64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Inverse of a unimodular matrix.
    fn inverse(&self) -> IntMat {
        let d = self.det();
        debug_assert!(d.abs() == 1);
        let m = &self.0;
        IntMat([[m[1][1] * d, -m[0][1] * d], [-m[1][0] * d, m[0][0] * d]])
    }
}

/// Cone spanned by `u`, `v` with `det(u, v) > 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Cone2 {
    pub u: LatticeVec,
    pub v: LatticeVec,
}

impl Cone2 {
    pub fn new(u: LatticeVec, v: LatticeVec) -> Result<Self> {
        if !u.is_primitive() || !v.is_primitive() {
            return Err(Error::InvalidArgument(format!("non-primitive ray in <{u:?}, {v:?}>")));
        }
        if u.det(v) <= 0 {
            return Err(Error::InvalidArgument(format!("<{u:?}, {v:?}> is not positively oriented")));
        }
        Ok(Cone2 { u, v })
    }

    pub fn index(&self) -> i64 {
        self.u.det(self.v)
    }

    pub fn is_smooth(&self) -> bool {
        self.index() == 1
    }

    /// The image under `gamma`, reoriented.
    pub fn gamma(&self) -> Cone2 {
        Cone2 { u: self.v.gamma(), v: self.u.gamma() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConeType {
    Smooth,
    /// Du Val `A_k`.
    A { k: i64 },
    /// Cyclic quotient `1/d (1, k)` that is not of type A.
    CyclicQuotient { d: i64, k: i64 },
}

/// Normal form `<(0, 1), (d, -k)>` with `0 <= k < d`: a unimodular `T`
/// (possibly orientation reversing) with `T u = (0, 1)`, `T v = (d, -k)`.
fn normal_form(c: &Cone2) -> (IntMat, i64, i64) {
    let (u, v) = (c.u, c.v);
    let d = c.index();
    // x p + y q = 1 for u = (p, q).
    let eg = u.a.extended_gcd(&u.b);
    let (x, y) = if eg.gcd == 1 { (eg.x, eg.y) } else { (-eg.x, -eg.y) };
    // Rows (q, -p) and (x, y): u -> (0, 1), v -> (-d, w).
    let t0 = IntMat([[u.b, -u.a], [x, y]]);
    let reflect = IntMat([[-1, 0], [0, 1]]);
    let w = t0.apply(v).b;
    let k = (-w).rem_euclid(d);
    // Shear (a, b) -> (a, j a + b) with j d + w = -k.
    let j = (-k - w) / d;
    let t = IntMat([[1, 0], [j, 1]]).mul(&reflect).mul(&t0);
    debug_assert_eq!(t.apply(u), LatticeVec::new(0, 1));
    debug_assert_eq!(t.apply(v), LatticeVec::new(d, -k));
    (t, d, k)
}

/// Hirzebruch-Jung continued fraction `d/k = a_1 - 1/(a_2 - ...)`.
pub fn hj_continued_fraction(d: i64, k: i64) -> Vec<i64> {
    let (mut num, mut den) = (d, k);
    let mut out = Vec::new();
    while den > 0 {
        let a = Integer::div_ceil(&num, &den);
        out.push(a);
        (num, den) = (den, a * den - num);
    }
    out
}

pub fn cone_type(c: &Cone2) -> ConeType {
    let (_, d, k) = normal_form(c);
    if d == 1 {
        ConeType::Smooth
    } else if k == d - 1 {
        ConeType::A { k: d - 1 }
    } else {
        ConeType::CyclicQuotient { d, k }
    }
}

/// Rays of the minimal resolution of `c`, in order from `u` to `v`.
pub fn hj_resolve(c: &Cone2) -> Vec<LatticeVec> {
    let (t, d, k) = normal_form(c);
    if d == 1 {
        return Vec::new();
    }
    let back = t.inverse();
    let mut prev = LatticeVec::new(0, 1);
    let mut cur = LatticeVec::new(1, 0);
    let mut out = Vec::new();
    for a in hj_continued_fraction(d, k) {
        out.push(back.apply(cur));
        let next = cur.scale(a).add(prev.scale(-1));
        (prev, cur) = (cur, next);
    }
    debug_assert_eq!(back.apply(cur), c.v);
    out
}

/// A 2D fan with counterclockwise rays, consecutive pairs spanning the
/// cones, and a label on every ray.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivFan {
    pub rays: Vec<LatticeVec>,
    pub labels: Vec<String>,
    pub cones: Vec<(String, Cone2)>,
}

/// Swaps the `x` and `y` roles in a label.
pub fn mirror_label(s: &str) -> String {
    s.chars()
        .map(|c| match c {
            'x' => 'y',
            'y' => 'x',
            c => c,
        })
        .collect()
}

impl EquivFan {
    fn from_rays(rays: Vec<(LatticeVec, String)>, cone_names: Vec<String>) -> Result<Self> {
        let cones = rays
            .windows(2)
            .zip(cone_names)
            .map(|(w, name)| Ok((name, Cone2::new(w[0].0, w[1].0)?)))
            .collect::<Result<_>>()?;
        let (rays, labels) = rays.into_iter().unzip();
        Ok(EquivFan { rays, labels, cones })
    }

    /// `gamma` maps rays to rays with mirrored labels and cones to cones.
    pub fn is_gamma_stable(&self) -> bool {
        let rays_ok = self.rays.iter().zip(&self.labels).all(|(r, l)| {
            self.rays
                .iter()
                .position(|x| *x == r.gamma())
                .is_some_and(|i| self.labels[i] == mirror_label(l))
        });
        let cones_ok = self
            .cones
            .iter()
            .all(|(_, c)| self.cones.iter().any(|(_, c2)| *c2 == c.gamma()));
        rays_ok && cones_ok
    }

    pub fn is_smooth(&self) -> bool {
        self.cones.iter().all(|(_, c)| c.is_smooth())
    }

    pub fn cone(&self, name: &str) -> Option<&Cone2> {
        self.cones.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }
}

fn l(s: &str) -> String {
    s.to_string()
}

/// Fan of `Y_n`: rays `(1,-1), (n+1,-n), (-n,n+1), (-1,1)` counterclockwise,
/// with cones `C_y`, `C_0`, `C_x`.
pub fn yn_fan(n: u32) -> EquivFan {
    let n = n as i64;
    EquivFan::from_rays(
        vec![
            (LatticeVec::new(1, -1), l("B_y")),
            (LatticeVec::new(n + 1, -n), l("L_y")),
            (LatticeVec::new(-n, n + 1), l("L_x")),
            (LatticeVec::new(-1, 1), l("B_x")),
        ],
        vec![l("C_y"), l("C_0"), l("C_x")],
    )
    .expect("valid fan")
}

/// Inserts `(1, 0)` and `(0, 1)` into `C_0`. For `n = 0` they are already
/// the rays of `C_0`, which becomes `C_10`.
pub fn subdivide_step1(f: &EquivFan) -> Result<EquivFan> {
    let n = yn_shape(f)?;
    if n == 0 {
        let mut out = f.clone();
        out.cones[1].0 = l("C_10");
        return Ok(out);
    }
    let n = n as i64;
    EquivFan::from_rays(
        vec![
            (LatticeVec::new(1, -1), l("B_y")),
            (LatticeVec::new(n + 1, -n), l("L_y")),
            (LatticeVec::new(1, 0), l("E_0y")),
            (LatticeVec::new(0, 1), l("E_0x")),
            (LatticeVec::new(-n, n + 1), l("L_x")),
            (LatticeVec::new(-1, 1), l("B_x")),
        ],
        vec![l("C_y"), l("C_1y"), l("C_10"), l("C_1x"), l("C_x")],
    )
}

fn yn_shape(f: &EquivFan) -> Result<u32> {
    let bad = || Error::UnexpectedFan(format!("not the fan of some Y_n: {:?}", f.rays));
    let &[_, ly, ..] = f.rays.as_slice() else { return Err(bad()) };
    let n = u32::try_from(-ly.b).map_err(|_| bad())?;
    if *f != yn_fan(n) {
        return Err(bad());
    }
    Ok(n)
}

/// The chain of curves over `t = 0` in the minimal resolution, from `L'_x`
/// to `L'_y`, flanked by the boundary rays `(-1, 1)` and `(1, -1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolvedChain {
    pub n: u32,
    pub rays: Vec<LatticeVec>,
    pub labels: Vec<String>,
    pub fan: EquivFan,
}

pub const FLANK_X: LatticeVec = LatticeVec::new(-1, 1);
pub const FLANK_Y: LatticeVec = LatticeVec::new(1, -1);

pub fn full_resolution(n: u32) -> Result<ResolvedChain> {
    let fan = if n == 0 {
        let f = yn_fan(0);
        let mut labels = f.labels.clone();
        labels[1] = l("L'_y");
        labels[2] = l("L'_x");
        EquivFan { labels, ..f }
    } else {
        let step1 = subdivide_step1(&yn_fan(n))?;
        let mut rays: Vec<(LatticeVec, String)> = Vec::new();
        let mut names = Vec::new();
        for (i, (name, cone)) in step1.cones.iter().enumerate() {
            if i == 0 {
                rays.push((cone.u, step1.labels[0].clone()));
            }
            let inserted = hj_resolve(cone);
            let base = name.clone();
            for (k, r) in inserted.iter().enumerate() {
                names.push(format!("{base}.{k}"));
                rays.push((*r, String::new()));
            }
            names.push(if inserted.is_empty() { base } else { format!("{base}.{}", inserted.len()) });
            rays.push((cone.v, step1.labels[i + 1].clone()));
        }
        for (r, label) in rays.iter_mut() {
            *label = chain_label(n as i64, *r).unwrap_or_else(|| label.clone());
        }
        EquivFan::from_rays(rays, names)?
    };
    let (rays, labels): (Vec<_>, Vec<_>) = fan
        .rays
        .iter()
        .zip(&fan.labels)
        .filter(|(r, _)| **r != FLANK_X && **r != FLANK_Y)
        .rev()
        .map(|(r, l)| (*r, l.clone()))
        .unzip();
    Ok(ResolvedChain { n, rays, labels, fan })
}

/// `L'_x = (-n, n+1)`, `E_ix = (-i, i+1)`, and their mirror images.
fn chain_label(n: i64, r: LatticeVec) -> Option<String> {
    let side = |r: LatticeVec| -> Option<String> {
        let i = -r.a;
        if r.b != i + 1 || i < 0 || i > n {
            return None;
        }
        Some(if i == n { l("L'_x") } else { format!("E_{i}x") })
    };
    side(r).or_else(|| side(r.gamma()).map(|s| mirror_label(&s)))
}

/// `D_i^2 = -k` where `u_(i-1) + u_(i+1) = k u_i`, for each interior ray.
pub fn self_intersections(rays: &[LatticeVec]) -> Result<Vec<i64>> {
    if rays.len() < 3 {
        return Err(Error::MalformedChain("need at least one interior ray".into()));
    }
    rays.windows(3).map(|w| relation(w[0], w[1], w[2])).collect()
}

/// As [`self_intersections`] for a complete fan, wrapping around.
pub fn self_intersections_cyclic(rays: &[LatticeVec]) -> Result<Vec<i64>> {
    let len = rays.len();
    if len < 3 {
        return Err(Error::MalformedChain("a complete fan has at least 3 rays".into()));
    }
    (0..len)
        .map(|i| relation(rays[(i + len - 1) % len], rays[i], rays[(i + 1) % len]))
        .collect()
}

fn relation(prev: LatticeVec, u: LatticeVec, next: LatticeVec) -> Result<i64> {
    if prev.det(u).abs() != 1 || u.det(next).abs() != 1 {
        return Err(Error::MalformedChain(format!("{u:?} is not unimodular with its neighbours")));
    }
    let s = prev.add(next);
    // u is primitive, so s = k u has a unique integer solution if any.
    if s.det(u) != 0 {
        return Err(Error::MalformedChain(format!("{s:?} is not a multiple of {u:?}")));
    }
    let k = if u.a != 0 { s.a / u.a } else { s.b / u.b };
    Ok(-k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub n: u32,
    pub rays: Vec<LatticeVec>,
    pub labels: Vec<String>,
    pub self_intersections: Vec<i64>,
    pub singularity: ConeType,
    pub all_smooth: bool,
    pub gamma_stable: bool,
    pub verified: bool,
}

/// Resolves, then checks the pattern `[-1, -2 x 2n, -1]` of length `2n + 2`
/// together with smoothness and `gamma`-stability.
pub fn verify_chain(n: u32) -> Result<ChainReport> {
    let chain = full_resolution(n)?;
    let mut with_flanks = vec![FLANK_X];
    with_flanks.extend(&chain.rays);
    with_flanks.push(FLANK_Y);
    let si = self_intersections(&with_flanks)?;
    let mut expected = vec![-1];
    expected.extend(std::iter::repeat_n(-2, 2 * n as usize));
    expected.push(-1);
    let c0 = *yn_fan(n).cone("C_0").expect("C_0 exists");
    let all_smooth = chain.fan.is_smooth();
    let gamma_stable = chain.fan.is_gamma_stable();
    let verified = si == expected && chain.rays.len() == 2 * n as usize + 2 && all_smooth && gamma_stable;
    Ok(ChainReport {
        n,
        rays: chain.rays,
        labels: chain.labels,
        self_intersections: si,
        singularity: cone_type(&c0),
        all_smooth,
        gamma_stable,
        verified,
    })
}
