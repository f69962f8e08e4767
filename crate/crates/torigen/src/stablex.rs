//! Torus-equivariant stable complex structures described by sign tables:
//! the structure with signs `a_i(w)` has weights `a_i(w) w(alpha_i)` and
//! orientation signs `eps * prod_i a_i(w)`. Tables are screened with the
//! necessary conditions (vanishing below degree n, integral class); the
//! survivors are called admissible.

use crate::error::{Error, Result};
use crate::exactalg::{rat, Rational};
use crate::genus::{cobordism_class, default_point, s_numbers, verify_low_vanishing};
use crate::rootdata::{fixed_point_weights, weyl_cosets, FixedPoint, FixedPointData, HomogeneousSpaceSpec};
use crate::symmfunc::OmegaIndex;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{Map, Value};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignAssignment {
    /// `a[w][i]`, coset-major.
    pub a: Vec<Vec<i8>>,
    pub epsilon: i8,
}

impl fmt::Debug for SignAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.a.iter().map(|r| r.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()).collect();
        write!(f, "{} eps={}", rows.join("|"), self.epsilon)
    }
}

impl SignAssignment {
    pub fn standard(spec: &HomogeneousSpaceSpec) -> Self {
        let chi = weyl_cosets(spec).len();
        SignAssignment { a: vec![vec![1; spec.dim()]; chi], epsilon: 1 }
    }

    /// Negate every `a`; `eps` picks up `(-1)^n` so the orientation matches the conjugate.
    pub fn conjugate(&self) -> Self {
        let n = self.a.first().map(|r| r.len()).unwrap_or(0);
        SignAssignment {
            a: self.a.iter().map(|r| r.iter().map(|s| -s).collect()).collect(),
            epsilon: if n.is_multiple_of(2) { self.epsilon } else { -self.epsilon },
        }
    }

    fn check_shape(&self, spec: &HomogeneousSpaceSpec) -> Result<()> {
        let chi = weyl_cosets(spec).len();
        if self.a.len() != chi || self.a.iter().any(|r| r.len() != spec.dim()) {
            return Err(Error::Invalid(format!("assignment must be {chi} rows of {} signs", spec.dim())));
        }
        if self.a.iter().flatten().chain([&self.epsilon]).any(|&s| s != 1 && s != -1) {
            return Err(Error::Invalid("assignment entries must be +1 or -1".into()));
        }
        Ok(())
    }

    /// `{"0": [1,-1,...], ..., "epsilon": -1}`
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (i, r) in self.a.iter().enumerate() {
            m.insert(i.to_string(), Value::from(r.iter().map(|&s| s as i64).collect::<Vec<_>>()));
        }
        m.insert("epsilon".into(), Value::from(self.epsilon as i64));
        Value::Object(m)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("assignment must be a JSON object".into()))?;
        let mut rows: BTreeMap<usize, Vec<i8>> = BTreeMap::new();
        let mut epsilon = 1;
        for (k, val) in obj {
            if k == "epsilon" {
                epsilon = val.as_i64().ok_or_else(|| Error::Parse("epsilon must be +1 or -1".into()))? as i8;
                continue;
            }
            let idx: usize = k.parse().map_err(|_| Error::Parse(format!("bad coset index {k:?}")))?;
            let arr = val.as_array().ok_or_else(|| Error::Parse(format!("row {k} must be an array")))?;
            let row: Option<Vec<i8>> = arr.iter().map(|x| x.as_i64().map(|s| s as i8)).collect();
            rows.insert(idx, row.ok_or_else(|| Error::Parse(format!("row {k} must hold integers")))?);
        }
        if rows.keys().copied().ne(0..rows.len()) {
            return Err(Error::Parse("coset indices must be 0..chi-1".into()));
        }
        Ok(SignAssignment { a: rows.into_values().collect(), epsilon })
    }
}

/// Weights `a_i(w) w(alpha_i)`, signs `eps prod_i a_i(w)`.
pub fn derived_fixed_point_data(spec: &HomogeneousSpaceSpec, assign: &SignAssignment) -> Result<FixedPointData> {
    assign.check_shape(spec)?;
    let base = fixed_point_weights(spec)?;
    Ok(apply_signs(&base, assign))
}

fn apply_signs(base: &FixedPointData, assign: &SignAssignment) -> FixedPointData {
    FixedPointData {
        rank: base.rank,
        points: base
            .points
            .iter()
            .zip(&assign.a)
            .map(|(p, row)| FixedPoint {
                label: p.label.clone(),
                weights: p.weights.iter().zip(row).map(|(w, &s)| w.iter().map(|c| c * s as i64).collect()).collect(),
                sign: assign.epsilon * row.iter().product::<i8>(),
            })
            .collect(),
    }
}

/// Recover the table from a fixed-point list of the same space (weights must
/// agree with the standard ones up to sign, point by point and in root order).
pub fn assignment_from_weights(spec: &HomogeneousSpaceSpec, fp: &FixedPointData) -> Result<SignAssignment> {
    let base = fixed_point_weights(spec)?;
    if base.points.len() != fp.points.len() {
        return Err(Error::Invalid("different numbers of fixed points".into()));
    }
    let mut a = Vec::new();
    let mut eps = None;
    for (b, p) in base.points.iter().zip(&fp.points) {
        let mut row = Vec::new();
        for (wb, wp) in b.weights.iter().zip(&p.weights) {
            let neg: Vec<i64> = wb.iter().map(|c| -c).collect();
            row.push(if wp == wb {
                1
            } else if *wp == neg {
                -1
            } else {
                return Err(Error::Invalid(format!("weight {wp:?} is not +-{wb:?}")));
            });
        }
        let e = p.sign * row.iter().product::<i8>();
        if eps.is_some_and(|x| x != e) {
            return Err(Error::Invalid("signs are not of the form eps * prod a".into()));
        }
        eps = Some(e);
        a.push(row);
    }
    Ok(SignAssignment { a, epsilon: eps.unwrap_or(1) })
}

#[derive(Clone, Debug)]
pub struct NecessaryReport {
    pub ok: bool,
    /// First violated `(omega, value)`.
    pub violation: Option<(OmegaIndex, String)>,
}

fn check_data(fp: &FixedPointData) -> Result<NecessaryReport> {
    let low = verify_low_vanishing(fp)?;
    if let Some(f) = low.failure {
        let text = format!("{} / ({})", f.numerator.render(), f.denominator.render());
        return Ok(NecessaryReport { ok: false, violation: Some((f.omega, text)) });
    }
    match cobordism_class(fp) {
        Ok(_) => Ok(NecessaryReport { ok: true, violation: None }),
        Err(Error::NonIntegerClass(c) | Error::SingularSum(c) | Error::NonConstantResult(c)) => {
            let n = fp.dim();
            let mut top = vec![0; n];
            top[n - 1] = 1;
            Ok(NecessaryReport { ok: false, violation: Some((OmegaIndex(top), c)) })
        }
        Err(e) => Err(e),
    }
}

/// Vanishing of every `t^l`, `l < n`, and integrality of the class.
pub fn check_necessary(spec: &HomogeneousSpaceSpec, assign: &SignAssignment) -> Result<NecessaryReport> {
    check_data(&derived_fixed_point_data(spec, assign)?)
}

/// Points where no standard weight vanishes.
fn probe_points(base: &FixedPointData) -> Vec<Vec<i64>> {
    let k = base.rank as i64;
    let nonsingular = |p: &Vec<i64>| base.points.iter().all(|pt| pt.weights.iter().all(|w| w.iter().zip(p).map(|(a, b)| a * b).sum::<i64>() != 0));
    let mut pts = vec![default_point(base)];
    for shape in [|i: i64| i * i + 1, |i: i64| 3 * i * i * i + 2 * i + 7, |i: i64| 5 - 7 * i + i * i * i * i] {
        let p: Vec<i64> = (0..k).map(shape).collect();
        if nonsingular(&p) && !pts.contains(&p) {
            pts.push(p);
        }
    }
    pts
}

/// `t_j(p)` and `1/prod t_j(p)` at each probe point.
struct Probe {
    t: Vec<Vec<Rational>>,
    inv_prod: Vec<Rational>,
}

fn probe(base: &FixedPointData, point: &[i64]) -> Probe {
    let mut t = Vec::new();
    let mut inv_prod = Vec::new();
    for p in &base.points {
        let v: Vec<Rational> = p.weights.iter().map(|w| rat(w.iter().zip(point).map(|(a, b)| a * b).sum())).collect();
        inv_prod.push(Rational::one() / v.iter().fold(Rational::one(), |a, b| a * b));
        t.push(v);
    }
    Probe { t, inv_prod }
}

/// `sum_p sign(p) / prod t = 0` and `sum_p sign(p) (sum_j t_j) / prod t = 0`
/// at a numeric point; `eps` drops out.
fn passes_linear_filter(probes: &[Probe], a: &[Vec<i8>], n: usize) -> bool {
    probes.iter().all(|pr| {
        let mut s0 = Rational::zero();
        let mut s1 = Rational::zero();
        // sign(p) / prod t' = eps / prod t: the a's cancel
        for (w, row) in a.iter().enumerate() {
            let mut p1 = Rational::zero();
            for (t, &s) in pr.t[w].iter().zip(row) {
                if s > 0 {
                    p1 += t;
                } else {
                    p1 -= t;
                }
            }
            let term = &pr.inv_prod[w];
            s1 += term * p1;
            s0 += term;
        }
        s0.is_zero() && (n < 2 || s1.is_zero())
    })
}

fn table_from_index(idx: u128, chi: usize, n: usize) -> Vec<Vec<i8>> {
    let total = chi * n;
    (0..chi).map(|w| (0..n).map(|i| if (idx >> (total - 1 - (w * n + i))) & 1 == 0 { 1 } else { -1 }).collect()).collect()
}

/// Every admissible table, in lexicographic order with `+` before `-`.
/// `eps` does not affect the conditions and is reported as `+1`.
pub fn enumerate_feasible(spec: &HomogeneousSpaceSpec, budget: u128) -> Result<Vec<SignAssignment>> {
    let base = fixed_point_weights(spec)?;
    let chi = base.points.len();
    let n = spec.dim();
    let bits = chi * n;
    if bits >= 127 || (1u128 << bits) > budget {
        return Err(Error::BudgetExceeded { size: if bits >= 127 { u128::MAX } else { 1u128 << bits }, budget });
    }
    let size = 1u128 << bits;
    let probes: Vec<Probe> = probe_points(&base).iter().map(|p| probe(&base, p)).collect();
    let found: Vec<Result<Option<SignAssignment>>> = (0..size as u64)
        .into_par_iter()
        .map(|idx| {
            let a = table_from_index(idx as u128, chi, n);
            if !passes_linear_filter(&probes, &a, n) {
                return Ok(None);
            }
            let assign = SignAssignment { a, epsilon: 1 };
            Ok(check_data(&apply_signs(&base, &assign))?.ok.then_some(assign))
        })
        .collect();
    let mut out = Vec::new();
    for r in found {
        if let Some(a) = r? {
            out.push(a);
        }
    }
    Ok(out)
}

pub fn s_numbers_for(spec: &HomogeneousSpaceSpec, assign: &SignAssignment) -> Result<BTreeMap<OmegaIndex, BigInt>> {
    s_numbers(&derived_fixed_point_data(spec, assign)?)
}
