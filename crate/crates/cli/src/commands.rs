use std::io::Read;
use std::path::Path;

use anyhow::{Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use realforms_core::arith::{GaussianRational, Rational};
use realforms_core::classifier::{are_isomorphic, moduli_invariant, pairwise_matrix, witness_e};
use realforms_core::family::{
    build_m, embed_n, fiber_element, preserves_yn, torus_and_trivialization_check,
    verify_identities, FamilySpec, Mutation,
};
use realforms_core::groups::{diag_invariant, is_cocycle, twisted_conj, SemidirectElem};
use realforms_core::p1::{
    det4, diagonalize, fiber_conic, fiber_form_type, lorentz_of, orbit_classify, preserves_q0,
    q0, Orbit, SL2C,
};
use realforms_core::sample;
use realforms_core::toric::{verify_chain, ConeType};

use crate::{Outcome, UsageError};

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.trim().parse().map_err(|e| usage(format!("malformed rational {s:?}: {e}")))
}

pub fn verify(n: u32, m: u32, mutation: Mutation) -> Result<Outcome> {
    let spec = FamilySpec::new(n, m);
    let (identities, (yn, torus)) = rayon::join(
        || verify_identities(spec, mutation),
        || {
            rayon::join(
                || build_m(spec).map(|g| preserves_yn(&embed_n(&g, n), n).preserved),
                || torus_and_trivialization_check(n, mutation),
            )
        },
    );
    let yn = yn?;
    let passed = identities.passed() && yn && torus.passed();
    let report = json!({
        "n": n,
        "m": m,
        "identity": if identities.passed() { "pass" } else { "fail" },
        "identities": identities,
        "preserves_yn": yn,
        "torus": torus,
        "passed": passed,
    });
    Ok(Outcome { report, passed })
}

fn read_payload(path: &Path) -> Result<String> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).context("reading stdin")?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    }
    Ok(text)
}

fn parse_coordinate(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(k) if k.is_i64() => Ok(Rational::from(k.as_i64().expect("checked"))),
        other => Err(usage(format!("coordinate {other} is not a rational string"))),
    }
}

/// `{"n": .., "points": [[..], ..]}` or a bare list of points.
fn parse_points(text: &str) -> Result<(Option<u32>, Vec<Vec<Rational>>)> {
    if text.trim().is_empty() {
        return Ok((None, Vec::new()));
    }
    let v: Value = serde_json::from_str(text).map_err(|e| usage(format!("invalid JSON: {e}")))?;
    let (n, list) = match &v {
        Value::Array(_) => (None, &v),
        Value::Object(o) => {
            let n = match o.get("n") {
                None | Some(Value::Null) => None,
                Some(x) => Some(
                    x.as_u64()
                        .and_then(|k| u32::try_from(k).ok())
                        .ok_or_else(|| usage(format!("n = {x} is not a small natural number")))?,
                ),
            };
            let list = o.get("points").ok_or_else(|| usage("payload has no \"points\" field"))?;
            (n, list)
        }
        _ => return Err(usage("payload must be an object or a list of points")),
    };
    let rows = list.as_array().ok_or_else(|| usage("\"points\" must be a list"))?;
    let points = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| usage(format!("point {row} is not a list")))?
                .iter()
                .map(parse_coordinate)
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok((n, points))
}

pub fn classify(n_flag: Option<u32>, path: &Path, witnesses: bool) -> Result<Outcome> {
    let (n_file, points) = parse_points(&read_payload(path)?)?;
    let n = match (n_flag, n_file) {
        (Some(a), Some(b)) if a != b => return Err(usage(format!("--n {a} disagrees with n = {b} in the payload"))),
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => return Err(usage("n is required (flag --n or payload field)")),
    };
    if n == 0 {
        return Err(usage("classification needs n >= 1"));
    }
    let c = pairwise_matrix(n, &points)?;
    let mut report = serde_json::to_value(&c)?;
    if witnesses {
        let mut list = Vec::new();
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if c.matrix[i][j] {
                    list.push(json!({ "i": i, "j": j, "witness": witness_e(n, &points[i], &points[j])? }));
                }
            }
        }
        report["witnesses"] = Value::Array(list);
    }
    Ok(Outcome { report, passed: true })
}

pub fn resolve(n: u32) -> Result<Outcome> {
    let rep = verify_chain(n)?;
    let singularity = match rep.singularity {
        ConeType::Smooth => "smooth".to_string(),
        ConeType::A { k } => format!("A_{k}"),
        ConeType::CyclicQuotient { d, k } => format!("1/{d}(1,{k})"),
    };
    let report = json!({
        "n": n,
        "rays": rep.rays.iter().map(|r| [r.a, r.b]).collect::<Vec<_>>(),
        "labels": rep.labels,
        "self_intersections": rep.self_intersections,
        "exceptional_curves": rep.labels.iter().filter(|l| l.starts_with('E')).count(),
        "singularity": singularity,
        "all_smooth": rep.all_smooth,
        "gamma_stable": rep.gamma_stable,
        "verified": rep.verified,
    });
    Ok(Outcome { report, passed: rep.verified })
}

fn parse_point(s: &str) -> Result<[Rational; 4]> {
    let coords: Vec<Rational> = s.split(',').map(parse_rational).collect::<Result<_>>()?;
    let p: [Rational; 4] = coords
        .try_into()
        .map_err(|v: Vec<Rational>| usage(format!("expected 4 coordinates, got {}", v.len())))?;
    if p.iter().all(Rational::is_zero) {
        return Err(usage("the zero tuple is not a point of P^3"));
    }
    Ok(p)
}

pub fn p1_point(s: &str) -> Result<Outcome> {
    let p = parse_point(s)?;
    let orbit = orbit_classify(&p)?;
    let mut report = json!({ "point": p, "q0": q0(&p), "orbit": orbit });
    if orbit == Orbit::OnQuadric {
        report["fiber"] = json!("OnQuadric");
    } else {
        report["fiber"] = serde_json::to_value(fiber_form_type(&p)?)?;
        report["conic_diagonal"] = serde_json::to_value(diagonalize(&fiber_conic(&p)?))?;
    }
    Ok(Outcome { report, passed: true })
}

fn parse_sl2c(s: &str) -> Result<SL2C> {
    if s.trim() == "id" {
        return Ok(SL2C::identity());
    }
    let v: Value = serde_json::from_str(s).map_err(|e| usage(format!("invalid matrix JSON: {e}")))?;
    let entry = |i: usize, j: usize| -> Result<GaussianRational> {
        let x = v.get(i).and_then(|r| r.get(j)).ok_or_else(|| usage("matrix must be 2x2"))?;
        match x {
            Value::String(t) => t.parse().map_err(|e| usage(format!("malformed entry {t:?}: {e}"))),
            Value::Number(k) if k.is_i64() => Ok(GaussianRational::from_int(k.as_i64().expect("checked"))),
            other => Err(usage(format!("entry {other} is not a Gaussian rational string"))),
        }
    };
    if v.as_array().map(Vec::len) != Some(2) || (0..2).any(|i| v[i].as_array().map(Vec::len) != Some(2)) {
        return Err(usage("matrix must be 2x2"));
    }
    let m = [[entry(0, 0)?, entry(0, 1)?], [entry(1, 0)?, entry(1, 1)?]];
    SL2C::new(m).map_err(|e| usage(e.to_string()))
}

pub fn p1_matrix(s: &str) -> Result<Outcome> {
    let m = parse_sl2c(s)?;
    let l = lorentz_of(&m)?;
    let (pq, det) = (preserves_q0(&l), det4(&l));
    let passed = pq && det.is_one();
    let report = json!({ "matrix": m.entries(), "lorentz": l, "preserves_q0": pq, "det": det });
    Ok(Outcome { report, passed })
}

struct Case {
    s: Vec<Rational>,
    other: Vec<Rational>,
    phi: SemidirectElem,
    lambda: Rational,
}

#[derive(Default)]
struct Tally {
    cocycles: usize,
    closure: usize,
    gamma: usize,
    identity: usize,
}

pub fn orbit_sample(n: u32, m: u32, count: usize, seed: u64) -> Result<Outcome> {
    if n == 0 {
        return Err(usage("orbit-sample needs n >= 1"));
    }
    eprintln!("orbit-sample: seed {seed}");
    let spec = FamilySpec::new(n, m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<Case> = (0..count)
        .map(|_| Case {
            s: sample::fiber_point(&mut rng, spec.nparams(), 9, 5),
            other: sample::fiber_point(&mut rng, spec.nparams(), 9, 5),
            phi: sample::semidirect(&mut rng, 3),
            lambda: sample::nonzero_rational(&mut rng, 5, 3),
        })
        .collect();
    let results: Vec<[bool; 4]> = cases
        .par_iter()
        .map(|c| check_case(spec, c))
        .collect::<Result<_>>()?;
    let mut t = Tally::default();
    let mut failures = Vec::new();
    for (k, r) in results.iter().enumerate() {
        t.cocycles += r[0] as usize;
        t.closure += r[1] as usize;
        t.gamma += r[2] as usize;
        t.identity += r[3] as usize;
        if r.contains(&false) {
            failures.push(k);
        }
    }
    let passed = failures.is_empty();
    let report = json!({
        "n": n,
        "m": m,
        "seed": seed,
        "count": count,
        "cocycles": t.cocycles,
        "closure": t.closure,
        "gamma_conjugation": t.gamma,
        "identity_conjugation": t.identity,
        "failures": failures,
        "passed": passed,
    });
    Ok(Outcome { report, passed })
}

/// `[psi cocycle, twisted psi cocycle, verdicts kept under diag(lambda, 1),
/// trivial conjugation]`.
fn check_case(spec: FamilySpec, c: &Case) -> Result<[bool; 4]> {
    let n = spec.n;
    let psi = fiber_element(spec, &c.s)?;
    let cocycle = is_cocycle(&psi);
    let closure = is_cocycle(&twisted_conj(&c.phi, &psi)?);
    // Conjugating by (diag(l, 1), l^2) turns the fibre over s into the
    // fibre over s_i l^-(2i+1).
    let g = diag_invariant(&GaussianRational::real(c.lambda.clone()))?;
    let conj = twisted_conj(&g, &psi)?;
    let moved: Vec<Rational> = c
        .s
        .iter()
        .enumerate()
        .map(|(i, x)| Ok(x * &c.lambda.pow(-(2 * i as i64 + 1))?))
        .collect::<Result<_>>()?;
    let gamma = conj.proj_eq(&fiber_element(spec, &moved)?)
        && are_isomorphic(n, &c.s, &moved)?
        && moduli_invariant(n, &c.s)? == moduli_invariant(n, &moved)?
        && are_isomorphic(n, &c.s, &c.other)? == are_isomorphic(n, &moved, &c.other)?;
    let identity = twisted_conj(&SemidirectElem::identity(), &psi)?.proj_eq(&psi);
    Ok([cocycle, closure, gamma, identity])
}
