//! Localization engine. The fixed-point sum
//! `sum_p sign(p) prod_j f(t_j)/t_j`, `t_j = <L_j(p), x>`, is split by generator
//! monomial `a^omega`: each piece `R_omega = sum_p sign(p) m_omega(t)/prod t` is
//! put over one common denominator, summed, and divided back exactly. The
//! cobordism class is the part with `||omega|| = n`.

use crate::error::{Error, Result};
use crate::exactalg::{
    rat, reverse_series, Arena, CobordismPoly, Family, GradedSeries, Monomial, MultiPoly, Poly, Rational,
};
use crate::rootdata::{FixedPoint, FixedPointData, HomogeneousSpaceSpec, TorusWeight};
use crate::symmfunc::{f_omega_numeric, omega_indices, OmegaIndex};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// First nonzero entry positive; returns the sign that was divided out.
fn normalize(w: &[i64]) -> (TorusWeight, i64) {
    let s = w.iter().find(|&&c| c != 0).map(|c| c.signum()).unwrap_or(1);
    (w.iter().map(|c| c * s).collect(), s)
}

/// Common denominator: each normalized form to its largest multiplicity at any point.
fn common_denominator(fp: &FixedPointData) -> Result<BTreeMap<TorusWeight, usize>> {
    let mut den: BTreeMap<TorusWeight, usize> = BTreeMap::new();
    for p in &fp.points {
        let mut here: BTreeMap<TorusWeight, usize> = BTreeMap::new();
        for w in &p.weights {
            if w.iter().all(|&c| c == 0) {
                return Err(Error::ZeroWeight);
            }
            *here.entry(normalize(w).0).or_default() += 1;
        }
        for (w, m) in here {
            let e = den.entry(w).or_default();
            *e = (*e).max(m);
        }
    }
    Ok(den)
}

fn den_poly(arena: &Arena, den: &BTreeMap<TorusWeight, usize>) -> MultiPoly {
    let forms: Vec<TorusWeight> = den.iter().flat_map(|(w, &m)| std::iter::repeat_n(w.clone(), m)).collect();
    MultiPoly::product_of_linear(arena, &forms)
}

/// `prod_j (1 + sum_i a_i t_j^i)` at one point, split by `a^omega`, up to weight `max_weight`.
fn point_expansion(arena: &Arena, weights: &[TorusWeight], max_weight: u32) -> Result<BTreeMap<Monomial, MultiPoly>> {
    let mut state: BTreeMap<Monomial, MultiPoly> = BTreeMap::from([(Monomial::default(), MultiPoly::one(arena))]);
    for w in weights {
        let t = MultiPoly::linear(arena, w);
        let mut powers = vec![MultiPoly::one(arena)];
        for _ in 0..max_weight {
            let next = powers.last().unwrap().mul(&t)?;
            powers.push(next);
        }
        let mut next: BTreeMap<Monomial, MultiPoly> = BTreeMap::new();
        for (om, p) in &state {
            let used = om.weight();
            for i in 0..=(max_weight - used) {
                let key = if i == 0 {
                    om.clone()
                } else {
                    om.mul(&Monomial::var(i as usize, i as usize - 1, 1)).trimmed()
                };
                let term = p.mul(&powers[i as usize])?;
                match next.get_mut(&key) {
                    Some(acc) => acc.add_assign(&term)?,
                    None => {
                        next.insert(key, term);
                    }
                }
            }
        }
        state = next;
    }
    Ok(state)
}

/// Numerators `N_omega` over the common denominator `den`, for `||omega|| <= max_weight`.
struct Localized {
    n: u32,
    den: MultiPoly,
    nums: BTreeMap<Monomial, MultiPoly>,
}

fn localize(fp: &FixedPointData, max_weight: u32) -> Result<Localized> {
    fp.validate()?;
    let arena = fp.arena();
    let den = common_denominator(fp)?;
    let contribution = |p: &FixedPoint| -> Result<BTreeMap<Monomial, MultiPoly>> {
        // cofactor = den / prod t_j, with the normalization signs
        let mut mult = den.clone();
        let mut sign = p.sign as i64;
        for w in &p.weights {
            let (nw, s) = normalize(w);
            sign *= s;
            *mult.get_mut(&nw).unwrap() -= 1;
        }
        let cof = den_poly(&arena, &mult).scale(&rat(sign));
        let mut out = point_expansion(&arena, &p.weights, max_weight)?;
        for v in out.values_mut() {
            *v = v.mul(&cof)?;
        }
        Ok(out)
    };
    let nums = fp.points.par_iter().map(contribution).try_reduce(BTreeMap::new, |mut a, b| {
        for (k, v) in b {
            match a.get_mut(&k) {
                Some(acc) => acc.add_assign(&v)?,
                None => {
                    a.insert(k, v);
                }
            }
        }
        Ok(a)
    })?;
    let nums = nums.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    Ok(Localized { n: fp.dim() as u32, den: den_poly(&arena, &den), nums })
}

impl Localized {
    /// `R_omega` for every stored `omega` with `||omega|| >= n`.
    fn components(&self) -> Result<BTreeMap<Monomial, MultiPoly>> {
        let mut out = BTreeMap::new();
        for (om, num) in &self.nums {
            if om.weight() >= self.n {
                out.insert(om.clone(), num.exact_div(&self.den)?);
            }
        }
        Ok(out)
    }

    fn low_failure(&self) -> Option<(u32, Monomial, MultiPoly)> {
        self.nums.iter().filter(|(om, _)| om.weight() < self.n).min_by_key(|(om, _)| om.weight()).map(|(om, v)| (om.weight(), om.clone(), v.clone()))
    }
}

fn a_monomial(om: &Monomial, c: Rational) -> CobordismPoly {
    CobordismPoly::from_terms(Family::A, [(om.clone(), c)])
}

/// `ch_U Phi` through geometric degree `order`. Fails with `SingularSum` if the
/// data does not produce a polynomial.
pub fn chern_character_of_genus(fp: &FixedPointData, order: u32) -> Result<GradedSeries> {
    let loc = localize(fp, fp.dim() as u32 + order)?;
    if let Some((l, om, v)) = loc.low_failure() {
        return Err(Error::SingularSum(format!("t^{l} coefficient of a^{:?} is {} over {}", om, v.render(), loc.den.render())));
    }
    let comps = loc.components().map_err(|e| Error::SingularSum(e.to_string()))?;
    let arena = fp.arena();
    let mut p: Poly<CobordismPoly> = Poly::zero(&arena);
    for (om, r) in comps {
        for (m, c) in r.terms() {
            p.add_term(m.clone(), a_monomial(&om, c.clone()));
        }
    }
    Ok(GradedSeries::from_poly(p, order))
}

fn class_components(fp: &FixedPointData) -> Result<BTreeMap<Monomial, Rational>> {
    let n = fp.dim() as u32;
    let loc = localize(fp, n)?;
    let mut out = BTreeMap::new();
    for (om, num) in &loc.nums {
        if om.weight() != n {
            continue;
        }
        let r = num.exact_div(&loc.den)?;
        if r.degree().unwrap_or(0) > 0 {
            return Err(Error::NonConstantResult(r.render()));
        }
        out.insert(om.clone(), r.constant_term());
    }
    Ok(out)
}

/// `[M] = sum_{||omega|| = n} s_omega a^omega`.
pub fn cobordism_class(fp: &FixedPointData) -> Result<CobordismPoly> {
    let comps = class_components(fp).map_err(|e| match e {
        Error::NotDivisible(m) => Error::SingularSum(m),
        e => e,
    })?;
    let class = CobordismPoly::from_terms(Family::A, comps);
    if !class.is_integral() {
        return Err(Error::NonIntegerClass(class.render()));
    }
    Ok(class)
}

/// `s_omega` for every partition of `n`, zeros included.
pub fn s_numbers(fp: &FixedPointData) -> Result<BTreeMap<OmegaIndex, BigInt>> {
    let n = fp.dim();
    let comps = class_components(fp).map_err(|e| match e {
        Error::NotDivisible(m) => Error::NonConstantResult(m),
        e => e,
    })?;
    let mut out = BTreeMap::new();
    for om in omega_indices(n as u32, n) {
        let v = comps.get(&om.monomial()).cloned().unwrap_or_else(Rational::zero);
        if !v.is_integer() {
            return Err(Error::NonIntegerClass(format!("s{om} = {v}")));
        }
        out.insert(om, v.to_integer());
    }
    Ok(out)
}

/// Lowest-degree nonvanishing `t^l` coefficient, `l < n`.
#[derive(Clone, Debug)]
pub struct LowDegreeFailure {
    pub l: u32,
    pub omega: OmegaIndex,
    /// Numerator over the common denominator.
    pub numerator: MultiPoly,
    pub denominator: MultiPoly,
}

#[derive(Clone, Debug)]
pub struct VanishingReport {
    pub ok: bool,
    pub failure: Option<LowDegreeFailure>,
}

pub fn verify_low_vanishing(fp: &FixedPointData) -> Result<VanishingReport> {
    let n = fp.dim() as u32;
    let loc = localize(fp, n.saturating_sub(1))?;
    Ok(match loc.low_failure() {
        None => VanishingReport { ok: true, failure: None },
        Some((l, om, v)) => VanishingReport {
            ok: false,
            failure: Some(LowDegreeFailure { l, omega: OmegaIndex::from_monomial(&om, n as usize), numerator: v, denominator: loc.den }),
        },
    })
}

/// The `t^l` numerator over the common denominator, as a polynomial in x with
/// generator coefficients; zero for consistent data when `l < n`.
pub fn low_degree_numerator(fp: &FixedPointData, l: u32) -> Result<(Poly<CobordismPoly>, MultiPoly)> {
    let loc = localize(fp, l)?;
    let mut p = Poly::zero(&fp.arena());
    for (om, num) in &loc.nums {
        if om.weight() == l {
            for (m, c) in num.terms() {
                p.add_term(m.clone(), a_monomial(om, c.clone()));
            }
        }
    }
    Ok((p, loc.den))
}

/// `sum_p sign(p) f_omega(t(p)) / prod t(p)` with `x` fixed at `point`.
pub fn s_number_numeric(fp: &FixedPointData, omega: &OmegaIndex, point: &[i64]) -> Result<Rational> {
    if point.len() != fp.rank {
        return Err(Error::Invalid(format!("point has {} coordinates, rank is {}", point.len(), fp.rank)));
    }
    let mut s = Rational::zero();
    for p in &fp.points {
        let t: Vec<Rational> = p.weights.iter().map(|w| rat(w.iter().zip(point).map(|(a, b)| a * b).sum())).collect();
        if t.iter().any(|v| v.is_zero()) {
            return Err(Error::SingularPoint(format!("{point:?} kills a weight at {}", p.label)));
        }
        let prod: Rational = t.iter().fold(Rational::one(), |a, b| a * b);
        s += f_omega_numeric(omega, &t) / prod * rat(p.sign as i64);
    }
    Ok(s)
}

/// `(0, 1, ..., k-1)`, moved to `p_i = i + r k (i+1)` for the first `r` that
/// makes every weight nonzero.
pub fn default_point(fp: &FixedPointData) -> Vec<i64> {
    let k = fp.rank as i64;
    for r in 0.. {
        let p: Vec<i64> = (0..k).map(|i| i + r * k * (i + 1)).collect();
        let ok = fp.points.iter().all(|pt| pt.weights.iter().all(|w| w.iter().zip(&p).map(|(a, b)| a * b).sum::<i64>() != 0));
        if ok {
            return p;
        }
    }
    unreachable!()
}

/// Same manifold with the conjugate structure: weights negated, signs
/// multiplied by `(-1)^n`.
pub fn conjugate_data(fp: &FixedPointData) -> FixedPointData {
    let flip: i8 = if fp.dim().is_multiple_of(2) { 1 } else { -1 };
    FixedPointData {
        rank: fp.rank,
        points: fp
            .points
            .iter()
            .map(|p| FixedPoint {
                label: p.label.clone(),
                weights: p.weights.iter().map(|w| w.iter().map(|c| -c).collect()).collect(),
                sign: p.sign * flip,
            })
            .collect(),
    }
}

/// Rewrite `ch_U Phi` in `y_i = x_i/f(x_i)`; coefficient of `y^xi` for `|xi| <= max_degree`.
pub fn fibration_coefficients(ch: &GradedSeries, max_degree: u32) -> Result<BTreeMap<Vec<u16>, CobordismPoly>> {
    if max_degree > ch.order() {
        return Err(Error::TruncationTooLow { have: ch.order(), need: max_degree });
    }
    let k = ch.arena().arity();
    let ys = Arena::new((1..=k).map(|i| format!("y{i}")));
    let s = Arena::new(["s"]);
    let g = reverse_series(&GradedSeries::x_over_f(&s, Family::A, max_degree)?)?;
    let bindings: Vec<GradedSeries> = (0..k)
        .map(|i| g.substitute(&[GradedSeries::from_poly(Poly::var(&ys, i), max_degree)], &ys, max_degree))
        .collect::<Result<_>>()?;
    let in_y = ch.with_order(max_degree).substitute(&bindings, &ys, max_degree)?;
    Ok(in_y.poly().terms().iter().map(|(m, c)| (m.padded(k).0.to_vec(), c.clone())).collect())
}

/// Every Weyl generator fixes the series.
pub fn weyl_invariant(spec: &HomogeneousSpaceSpec, ch: &GradedSeries) -> Result<bool> {
    let arena = ch.arena().clone();
    for g in spec.weyl_generators() {
        let moved = ch.substitute_rational(&g.substitution(&arena), &arena, ch.order())?;
        if moved != *ch {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `sigma_2`, `sigma_3` of `(x1, x2, -x1-x2)`.
pub fn sigma_basis(arena: &Arena) -> (MultiPoly, MultiPoly) {
    let x1 = MultiPoly::var(arena, 0);
    let x2 = MultiPoly::var(arena, 1);
    let x3 = x1.add(&x2).expect("same arena").neg();
    let s2 = x1.mul(&x2).unwrap().add(&x1.mul(&x3).unwrap()).unwrap().add(&x2.mul(&x3).unwrap()).unwrap();
    let s3 = x1.mul(&x2).unwrap().mul(&x3).unwrap();
    (s2, s3)
}

/// Write a series in two variables as `sum c_ij sigma_2^i sigma_3^j`; keys `(i, j)`.
pub fn sigma_decomposition(ch: &GradedSeries) -> Result<BTreeMap<(u32, u32), CobordismPoly>> {
    let arena = ch.arena().clone();
    if arena.arity() != 2 {
        return Err(Error::Invalid("sigma decomposition needs two variables".into()));
    }
    let (s2, s3) = sigma_basis(&arena);
    let mut basis: Vec<((u32, u32), MultiPoly)> = Vec::new();
    for d in 0..=ch.order() {
        for j in 0..=d / 3 {
            if (d - 3 * j) % 2 == 0 {
                let i = (d - 3 * j) / 2;
                basis.push(((i, j), s2.pow(i, None)?.mul(&s3.pow(j, None)?)?));
            }
        }
    }
    let mut rem = ch.poly().clone();
    let mut out = BTreeMap::new();
    while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let (key, b) = basis
            .iter()
            .find(|(_, b)| b.leading().map(|(lm, _)| *lm == m).unwrap_or(false))
            .ok_or_else(|| Error::NotDivisible(format!("x^{m:?} is not a leading sigma monomial")))?;
        let lc = b.leading().unwrap().1.clone();
        let coef = c.scale(&(Rational::one() / lc));
        rem.sub_assign(&Poly::<CobordismPoly>::from_terms(&arena, b.terms().iter().map(|(bm, bc)| (bm.clone(), coef.scale(bc)))))?;
        out.insert(*key, coef);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub omega: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SEntry {
    pub omega: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub vanishing: bool,
    pub weyl_invariance: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusReport {
    pub space: String,
    pub structure: String,
    pub class: Vec<ClassEntry>,
    pub s_numbers: Vec<SEntry>,
    pub checks: Checks,
}

/// Class, s-numbers and the two structural checks for a space.
pub fn genus_report(spec: &HomogeneousSpaceSpec, fp: &FixedPointData) -> Result<GenusReport> {
    let class = cobordism_class(fp)?;
    let s = s_numbers(fp)?;
    let vanishing = verify_low_vanishing(fp)?.ok;
    let weyl = weyl_invariant(spec, &chern_character_of_genus(fp, 2)?)?;
    let n = fp.dim();
    Ok(GenusReport {
        space: spec.descriptor.clone(),
        structure: spec.structure.clone(),
        class: class
            .terms()
            .iter()
            .rev()
            .map(|(m, c)| ClassEntry { omega: OmegaIndex::from_monomial(m, n).to_string(), coeff: crate::exactalg::render_rational(c) })
            .collect(),
        s_numbers: s.iter().map(|(om, v)| SEntry { omega: om.to_string(), value: v.to_string() }).collect(),
        checks: Checks { vanishing, weyl_invariance: weyl },
    })
}

/// `s_(0,...,0,1)` alone.
pub fn top_s_number(fp: &FixedPointData) -> Result<BigInt> {
    let n = fp.dim() as u32;
    let mut om = vec![0; n as usize];
    om[n as usize - 1] = 1;
    let v = class_components(fp)?.get(&OmegaIndex(om).monomial()).cloned().unwrap_or_else(Rational::zero);
    if !v.is_integer() {
        return Err(Error::NonIntegerClass(v.to_string()));
    }
    Ok(v.to_integer())
}
