use super::monomial::Monomial;
use super::poly::{Arena, MultiPoly, Poly};
use super::{CobordismPoly, Family, Rational};
use crate::error::{Error, Result};
use std::fmt;

/// Series in geometric variables truncated at total degree `order`, with
/// coefficients in the cobordism generators. Generator weight is never truncated.
#[derive(Clone, PartialEq)]
pub struct GradedSeries {
    poly: Poly<CobordismPoly>,
    order: u32,
}

impl GradedSeries {
    pub fn zero(arena: &Arena, order: u32) -> Self {
        GradedSeries { poly: Poly::zero(arena), order }
    }

    pub fn one(arena: &Arena, order: u32) -> Self {
        GradedSeries { poly: Poly::one(arena), order }
    }

    pub fn from_poly(poly: Poly<CobordismPoly>, order: u32) -> Self {
        GradedSeries { poly: poly.truncate(order), order }
    }

    pub fn from_rational(p: &MultiPoly, order: u32) -> Self {
        Self::from_poly(p.map_coeffs(|c| CobordismPoly::constant(c.clone())), order)
    }

    /// `f(s) = 1 + a_1 s + ... + a_order s^order` in the single variable of `arena`.
    pub fn f_series(arena: &Arena, family: Family, order: u32) -> Self {
        assert_eq!(arena.arity(), 1);
        let mut p = Poly::one(arena);
        for i in 1..=order {
            p.add_term(Monomial::var(1, 0, i as u16), CobordismPoly::generator(family, i as usize));
        }
        GradedSeries { poly: p, order }
    }

    pub fn arena(&self) -> &Arena {
        self.poly.arena()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn poly(&self) -> &Poly<CobordismPoly> {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn coeff(&self, m: &Monomial) -> CobordismPoly {
        self.poly.coeff(m)
    }

    /// Coefficient of `x^e` where `e` lists the exponents.
    pub fn coeff_of(&self, e: &[u16]) -> CobordismPoly {
        self.poly.coeff(&Monomial::from_slice(e))
    }

    pub fn constant_term(&self) -> CobordismPoly {
        self.poly.constant_term()
    }

    pub fn add_term(&mut self, m: Monomial, c: CobordismPoly) {
        if m.degree() <= self.order {
            self.poly.add_term(m, c);
        }
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.order != o.order {
            return Err(Error::ArenaMismatch(format!("truncation orders {} and {}", self.order, o.order)));
        }
        self.arena().check(o.arena())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(GradedSeries { poly: self.poly.add(&o.poly)?, order: self.order })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(GradedSeries { poly: self.poly.sub(&o.poly)?, order: self.order })
    }

    pub fn neg(&self) -> Self {
        GradedSeries { poly: self.poly.neg(), order: self.order }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GradedSeries { poly: self.poly.scale(r), order: self.order }
    }

    pub fn mul_coeff(&self, c: &CobordismPoly) -> Self {
        GradedSeries { poly: self.poly.mul_coeff(c), order: self.order }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(GradedSeries { poly: self.poly.mul_trunc(&o.poly, Some(self.order))?, order: self.order })
    }

    pub fn mul_rational(&self, p: &MultiPoly) -> Result<Self> {
        Ok(GradedSeries { poly: self.poly.mul_rational(p, Some(self.order))?, order: self.order })
    }

    pub fn with_order(&self, order: u32) -> Self {
        GradedSeries { poly: self.poly.truncate(order), order: order.min(self.order) }
    }

    pub fn degree_part(&self, d: u32) -> Poly<CobordismPoly> {
        self.poly.homogeneous_part(d)
    }

    /// Substitute each variable by a series over `target`, re-truncated at `order`.
    pub fn substitute(&self, bindings: &[GradedSeries], target: &Arena, order: u32) -> Result<Self> {
        let b: Vec<Poly<CobordismPoly>> = bindings.iter().map(|s| s.poly.truncate(order)).collect();
        Ok(GradedSeries { poly: self.poly.substitute(&b, target, Some(order))?, order })
    }

    pub fn substitute_rational(&self, bindings: &[MultiPoly], target: &Arena, order: u32) -> Result<Self> {
        Ok(GradedSeries { poly: self.poly.substitute_rational(bindings, target, Some(order))?, order })
    }

    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        GradedSeries { poly: self.poly.permute_vars(perm), order: self.order }
    }

    /// Rewrite every coefficient by substituting the generators.
    pub fn substitute_generators(&self, images: &[CobordismPoly]) -> Self {
        GradedSeries { poly: self.poly.map_coeffs(|c| c.substitute_generators(images)), order: self.order }
    }

    /// The constant `w` with `weight(coefficient of x^m) - deg(m) = w` for
    /// every stored term, if one exists.
    pub fn weight_shift(&self) -> Option<i64> {
        let mut shift = None;
        for (m, c) in self.poly.terms() {
            for g in c.terms().keys() {
                let s = g.weight() as i64 - m.degree() as i64;
                match shift {
                    None => shift = Some(s),
                    Some(t) if t != s => return None,
                    _ => {}
                }
            }
        }
        Some(shift.unwrap_or(0))
    }

    pub fn render(&self) -> String {
        self.poly.render()
    }

    /// Coefficient list of a univariate series, index = power.
    pub fn univariate_coeffs(&self) -> Vec<CobordismPoly> {
        assert_eq!(self.arena().arity(), 1);
        (0..=self.order).map(|d| self.coeff_of(&[d as u16])).collect()
    }
}

impl fmt::Display for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({})", self.render(), self.order + 1)
    }
}

impl fmt::Debug for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Compositional inverse of a univariate series `h = y + O(y^2)`.
pub fn reverse_series(h: &GradedSeries) -> Result<GradedSeries> {
    let arena = h.arena().clone();
    if arena.arity() != 1 {
        return Err(Error::BadLeadingTerm("reversion needs a univariate series".into()));
    }
    let n = h.order();
    let c = h.univariate_coeffs();
    if !c[0].is_zero() || (n >= 1 && c[1] != CobordismPoly::one()) {
        return Err(Error::BadLeadingTerm(h.render().to_string()));
    }
    // h(r) = r + H(r); iterate r <- y - H(r), gaining one order per pass.
    let y = GradedSeries::from_poly(Poly::var(&arena, 0), n);
    let mut higher = h.clone();
    higher.poly.add_term(Monomial::var(1, 0, 1), CobordismPoly::one().neg());
    let mut r = y.clone();
    for _ in 1..n {
        let hr = higher.substitute(&[r.clone()], &arena, n)?;
        r = y.sub(&hr)?;
    }
    Ok(r)
}

/// Multiplicative inverse of a series with constant term 1 (any arity).
pub fn series_inverse(h: &GradedSeries) -> Result<GradedSeries> {
    let arena = h.arena().clone();
    let n = h.order();
    if h.constant_term() != CobordismPoly::one() {
        return Err(Error::BadLeadingTerm(format!("constant term of {} is not 1", h.render())));
    }
    // 1/(1+u) = sum (-u)^k with u = h - 1 of order >= 1.
    let mut u = h.clone();
    u.poly.add_term(Monomial::one(arena.arity()), CobordismPoly::one().neg());
    let neg_u = u.neg();
    let mut term = GradedSeries::one(&arena, n);
    let mut acc = GradedSeries::one(&arena, n);
    for _ in 0..n {
        term = term.mul(&neg_u)?;
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

impl GradedSeries {
    /// `s / f(s)` in one variable of `arena`, truncated at `order`.
    pub fn x_over_f(arena: &Arena, family: Family, order: u32) -> Result<Self> {
        let f = Self::f_series(arena, family, order);
        let inv = series_inverse(&f)?;
        let s = Self::from_poly(Poly::var(arena, 0), order);
        s.mul(&inv)
    }
}

impl From<&MultiPoly> for GradedSeries {
    fn from(p: &MultiPoly) -> Self {
        let order = p.degree().unwrap_or(0);
        GradedSeries::from_rational(p, order)
    }
}
