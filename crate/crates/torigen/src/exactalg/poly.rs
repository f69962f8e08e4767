use super::cobordism::render_terms;
use super::monomial::{render_monomial, Monomial};
use super::{render_rational, Coeff, CobordismPoly, Rational};
use crate::error::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Immutable, shared list of variable names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Arena(Arc<Vec<String>>);

impl Arena {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Arena(Arc::new(names.into_iter().map(Into::into).collect()))
    }

    /// `x1..xk`.
    pub fn xs(k: usize) -> Self {
        Self::new((1..=k).map(|i| format!("x{i}")))
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    fn same(&self, o: &Arena) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || self.0 == o.0
    }

    pub(crate) fn check(&self, o: &Arena) -> Result<()> {
        if self.same(o) {
            Ok(())
        } else {
            Err(Error::ArenaMismatch(format!("{:?} vs {:?}", self.0, o.0)))
        }
    }
}

impl fmt::Debug for Arena {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Sparse polynomial over an arena with coefficients in `C`.
#[derive(Clone, PartialEq)]
pub struct Poly<C> {
    arena: Arena,
    terms: BTreeMap<Monomial, C>,
}

/// Polynomial with rational coefficients.
pub type MultiPoly = Poly<Rational>;

impl<C: Coeff> Poly<C> {
    pub fn zero(arena: &Arena) -> Self {
        Poly { arena: arena.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(arena: &Arena, c: C) -> Self {
        Self::term(arena, Monomial::one(arena.arity()), c)
    }

    pub fn one(arena: &Arena) -> Self {
        Self::constant(arena, C::unit())
    }

    pub fn term(arena: &Arena, m: Monomial, c: C) -> Self {
        assert_eq!(m.arity(), arena.arity(), "monomial arity");
        let mut p = Self::zero(arena);
        if !c.is_nil() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(arena: &Arena, i: usize) -> Self {
        Self::term(arena, Monomial::var(arena.arity(), i, 1), C::unit())
    }

    /// The linear form `sum c_i x_i`.
    pub fn linear(arena: &Arena, coeffs: &[i64]) -> Self {
        let mut p = Self::zero(arena);
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                p.add_term(Monomial::var(arena.arity(), i, 1), C::from_rational(super::rat(c)));
            }
        }
        p
    }

    pub fn from_terms(arena: &Arena, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(arena);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn arena(&self) -> &Arena {
        &self.arena
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, C> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, C> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::nil)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one(self.arena.arity()))
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn leading(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_nil() {
            return;
        }
        debug_assert_eq!(m.arity(), self.arena.arity());
        match self.terms.get_mut(&m) {
            Some(v) => {
                v.add_in(&c);
                if v.is_nil() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_assign(&mut self, o: &Self) -> Result<()> {
        self.arena.check(&o.arena)?;
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
        Ok(())
    }

    pub fn sub_assign(&mut self, o: &Self) -> Result<()> {
        self.arena.check(&o.arena)?;
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.negated());
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let mut r = self.clone();
        r.add_assign(o)?;
        Ok(r)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        let mut r = self.clone();
        r.sub_assign(o)?;
        Ok(r)
    }

    pub fn neg(&self) -> Self {
        Poly { arena: self.arena.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.negated())).collect() }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(&self.arena);
        }
        Poly { arena: self.arena.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.scale(r))).collect() }
    }

    pub fn mul_coeff(&self, k: &C) -> Self {
        Self::from_terms(&self.arena, self.terms.iter().map(|(m, c)| (m.clone(), c.times(k))))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.mul_trunc(o, None)
    }

    /// Product keeping only monomials of total degree `<= trunc`.
    pub fn mul_trunc(&self, o: &Self, trunc: Option<u32>) -> Result<Self> {
        self.arena.check(&o.arena)?;
        let mut out = Self::zero(&self.arena);
        for (m1, c1) in &self.terms {
            let d1 = m1.degree();
            for (m2, c2) in &o.terms {
                if let Some(n) = trunc {
                    if d1 + m2.degree() > n {
                        continue;
                    }
                }
                out.add_term(m1.mul(m2), c1.times(c2));
            }
        }
        Ok(out)
    }

    /// Product with a rational polynomial over the same arena.
    pub fn mul_rational(&self, o: &MultiPoly, trunc: Option<u32>) -> Result<Self> {
        self.arena.check(o.arena())?;
        let mut out = Self::zero(&self.arena);
        for (m1, c1) in &self.terms {
            for (m2, c2) in o.terms() {
                if let Some(n) = trunc {
                    if m1.degree() + m2.degree() > n {
                        continue;
                    }
                }
                out.add_term(m1.mul(m2), c1.scale(c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32, trunc: Option<u32>) -> Result<Self> {
        let mut r = Self::one(&self.arena);
        for _ in 0..e {
            r = r.mul_trunc(self, trunc)?;
        }
        Ok(r)
    }

    pub fn truncate(&self, n: u32) -> Self {
        Poly {
            arena: self.arena.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() <= n).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        Poly {
            arena: self.arena.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Exact quotient by a rational polynomial (leading-term division under
    /// graded-lex order). Fails with `NotDivisible` on a nonzero remainder.
    pub fn exact_div(&self, q: &MultiPoly) -> Result<Self> {
        self.arena.check(q.arena())?;
        let (lm, lc) = match q.leading() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(Error::NotDivisible("division by zero".into())),
        };
        let inv = Rational::one() / lc;
        let mut r = self.clone();
        let mut quot = Self::zero(&self.arena);
        while let Some((m, c)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let Some(qm) = m.div(&lm) else {
                return Err(Error::NotDivisible(format!("leading monomial {:?} not divisible by {:?}", m, lm)));
            };
            let t = c.scale(&inv);
            for (m2, c2) in q.terms() {
                r.add_term(qm.mul(m2), t.scale(c2).negated());
            }
            quot.add_term(qm, t);
        }
        Ok(quot)
    }

    /// Substitute variable `i` by `bindings[i]` (all over `target`), truncating
    /// products at total degree `trunc` when given.
    pub fn substitute(&self, bindings: &[Poly<C>], target: &Arena, trunc: Option<u32>) -> Result<Self> {
        if bindings.len() != self.arena.arity() {
            return Err(Error::ArenaMismatch(format!(
                "{} bindings for {} variables",
                bindings.len(),
                self.arena.arity()
            )));
        }
        for b in bindings {
            target.check(b.arena())?;
        }
        let mut powers: Vec<Vec<Poly<C>>> = bindings.iter().map(|b| vec![Poly::one(target), b.clone()]).collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul_trunc(&bindings[i], trunc)?;
                    powers[i].push(next);
                }
                t = t.mul_trunc(&powers[i][e as usize], trunc)?;
            }
            out.add_assign(&t)?;
        }
        Ok(out)
    }

    /// Substitute rational polynomials.
    pub fn substitute_rational(&self, bindings: &[MultiPoly], target: &Arena, trunc: Option<u32>) -> Result<Self> {
        let b: Vec<Poly<C>> = bindings.iter().map(|p| p.map_coeffs(|c| C::from_rational(c.clone()))).collect();
        self.substitute(&b, target, trunc)
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<C> {
        if point.len() != self.arena.arity() {
            return Err(Error::ArenaMismatch(format!("point of length {} for {} variables", point.len(), self.arena.arity())));
        }
        let mut s = C::nil();
        for (m, c) in &self.terms {
            let mut v = Rational::one();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    v *= &point[i];
                }
            }
            s.add_in(&c.scale(&v));
        }
        Ok(s)
    }

    /// Relabel variables: `x_i -> x_{perm[i]}`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        Poly { arena: self.arena.clone(), terms: self.terms.iter().map(|(m, c)| (m.permute(perm), c.clone())).collect() }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_terms(&self.arena, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Re-home onto another arena with the same arity.
    pub fn with_arena(&self, arena: &Arena) -> Result<Self> {
        if arena.arity() != self.arena.arity() {
            return Err(Error::ArenaMismatch(format!("{:?} vs {:?}", self.arena, arena)));
        }
        Ok(Poly { arena: arena.clone(), terms: self.terms.clone() })
    }

    pub fn render(&self) -> String
    where
        C: RenderCoeff,
    {
        let names = self.arena.names();
        let name = |i: usize| names[i].clone();
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, text, unit) = c.signed_text();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = render_monomial(m, &name);
            if mono.is_empty() {
                out.push_str(&text);
            } else if unit {
                out.push_str(&mono);
            } else {
                out.push_str(&text);
                out.push('*');
                out.push_str(&mono);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl MultiPoly {
    pub fn from_int_terms(arena: &Arena, terms: &[(&[u16], i64)]) -> Self {
        Self::from_terms(arena, terms.iter().map(|(e, c)| (Monomial::from_slice(e), super::rat(*c))))
    }

    /// Product of linear forms.
    pub fn product_of_linear(arena: &Arena, forms: &[Vec<i64>]) -> Self {
        let mut p = Self::one(arena);
        for f in forms {
            p = p.mul(&Self::linear(arena, f)).expect("same arena");
        }
        p
    }

    pub fn render_plain(&self) -> String {
        let names = self.arena.names();
        render_terms(self.terms.iter().rev(), &|i| names[i].clone())
    }
}

/// How a coefficient prints inside a polynomial: `(negative, |text|, |c| == 1)`.
pub trait RenderCoeff {
    fn signed_text(&self) -> (bool, String, bool);
}

impl RenderCoeff for Rational {
    fn signed_text(&self) -> (bool, String, bool) {
        (self.is_negative(), render_rational(&self.abs()), self.abs().is_one())
    }
}

impl RenderCoeff for CobordismPoly {
    fn signed_text(&self) -> (bool, String, bool) {
        if self.len() == 1 {
            let (m, c) = self.terms().iter().next().unwrap();
            let abs = CobordismPoly::from_terms(self.family(), [(m.clone(), c.abs())]);
            let unit = m.is_one() && c.abs().is_one();
            (c.is_negative(), abs.render(), unit)
        } else {
            (false, format!("({})", self.render()), false)
        }
    }
}

impl<C: Coeff + RenderCoeff> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<C: Coeff + RenderCoeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn xs(k: usize) -> Arena {
        Arena::xs(k)
    }

    #[test]
    fn difference_of_squares() {
        let a = xs(2);
        let p = MultiPoly::linear(&a, &[1, 1]).mul(&MultiPoly::linear(&a, &[1, -1])).unwrap();
        assert_eq!(p.render(), "x1^2 - x2^2");
        let q = p.exact_div(&MultiPoly::linear(&a, &[1, -1])).unwrap();
        assert_eq!(q.render(), "x1 + x2");
    }

    #[test]
    fn vandermonde_division() {
        let a = xs(3);
        let d = MultiPoly::product_of_linear(&a, &[vec![1, -1, 0], vec![1, 0, -1], vec![0, 1, -1]]);
        let q = d.exact_div(&MultiPoly::linear(&a, &[1, -1, 0])).unwrap();
        let e = MultiPoly::product_of_linear(&a, &[vec![1, 0, -1], vec![0, 1, -1]]);
        assert_eq!(q, e);
    }

    #[test]
    fn not_divisible() {
        let a = xs(2);
        let p = MultiPoly::var(&a, 0);
        let r = p.exact_div(&MultiPoly::linear(&a, &[1, -1]));
        assert!(matches!(r, Err(Error::NotDivisible(_))));
    }

    #[test]
    fn arena_mismatch() {
        let p = MultiPoly::var(&xs(2), 0);
        let q = MultiPoly::var(&Arena::new(["y1", "y2"]), 0);
        assert!(matches!(p.mul(&q), Err(Error::ArenaMismatch(_))));
    }

    #[test]
    fn substitution() {
        let a = xs(2);
        let p = MultiPoly::linear(&a, &[1, -1]);
        assert_eq!(p.eval(&[rat(2), rat(1)]).unwrap(), rat(1));
        let a3 = xs(3);
        let m = MultiPoly::term(&a3, Monomial::from_slice(&[1, 1, 1]), rat(1));
        let b = vec![MultiPoly::var(&a3, 0), MultiPoly::var(&a3, 1), MultiPoly::linear(&a3, &[-1, -1, 0])];
        assert_eq!(m.substitute(&b, &a3, None).unwrap().render(), "-x1^2*x2 - x1*x2^2");
    }
}
