use super::monomial::{render_monomial, Monomial};
use super::{render_rational, Coeff, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Which generator family a polynomial is written in: `a_i` (coefficients of
/// f(x) = 1 + sum a_i x^i) or `b_i` (coefficients of the formal group logarithm).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Family {
    #[default]
    A,
    B,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'a',
            Family::B => 'b',
        }
    }
}

/// Polynomial in the generators of one family with rational coefficients.
/// Keys are trimmed exponent vectors: entry `i` is the power of generator `i+1`.
#[derive(Clone, Default)]
pub struct CobordismPoly {
    family: Family,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for CobordismPoly {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms && (self.family == o.family || self.is_constant())
    }
}

impl Eq for CobordismPoly {}

impl CobordismPoly {
    pub fn zero_in(family: Family) -> Self {
        CobordismPoly { family, terms: BTreeMap::new() }
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero_in(Family::A);
        p.add_term(Monomial::default(), c);
        p
    }

    pub fn integer(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }

    /// The generator `a_i` (or `b_i`), `i >= 1`.
    pub fn generator(family: Family, i: usize) -> Self {
        assert!(i >= 1, "generators are indexed from 1");
        let mut p = Self::zero_in(family);
        p.add_term(Monomial::var(i, i - 1, 1), Rational::one());
        p
    }

    pub fn from_terms(family: Family, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero_in(family);
        for (m, c) in terms {
            p.add_term(m.trimmed(), c);
        }
        p
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn with_family(mut self, family: Family) -> Self {
        self.family = family;
        self
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::default()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(&m.clone().trimmed()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let m = m.trimmed();
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn merged_family(&self, o: &Self) -> Family {
        if self.is_constant() {
            o.family
        } else {
            debug_assert!(o.is_constant() || o.family == self.family, "mixing generator families");
            self.family
        }
    }

    /// Every monomial has weight `w`.
    pub fn is_homogeneous(&self, w: u32) -> bool {
        self.terms.keys().all(|m| m.weight() == w)
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.weight()).max()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Part of weight exactly `w`.
    pub fn weight_part(&self, w: u32) -> Self {
        Self {
            family: self.family,
            terms: self.terms.iter().filter(|(m, _)| m.weight() == w).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Drop monomials of weight above `w`.
    pub fn truncate_weight(&self, w: u32) -> Self {
        Self {
            family: self.family,
            terms: self.terms.iter().filter(|(m, _)| m.weight() <= w).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Projection to indecomposables: keep only monomials of degree one.
    pub fn indecomposable_part(&self) -> Self {
        Self {
            family: self.family,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == 1).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::constant(Rational::one()).with_family(self.family);
        for _ in 0..e {
            r = CobordismPoly::mul(&r, self);
        }
        r
    }

    /// Substitute generator `i` by `images[i-1]`, which may live in another family.
    pub fn substitute_generators(&self, images: &[CobordismPoly]) -> Self {
        let family = images.iter().find(|p| !p.is_constant()).map(|p| p.family).unwrap_or(Family::A);
        let mut out = Self::zero_in(family);
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    let img = images.get(i).unwrap_or_else(|| panic!("no image for generator {}", i + 1));
                    t = CobordismPoly::mul(&t, &img.pow(e as u32));
                }
            }
            out.add_assign(&t);
        }
        out.family = family;
        out
    }

    /// Evaluate at a numeric value of every generator.
    pub fn evaluate(&self, values: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t *= &values[i];
                }
            }
            s += t;
        }
        s
    }

    /// Coefficients as `(exponent vector padded to len, coefficient)`.
    pub fn padded_terms(&self, len: usize) -> Vec<(Vec<u16>, Rational)> {
        self.terms.iter().rev().map(|(m, c)| (m.padded(len).0.to_vec(), c.clone())).collect()
    }

    pub fn render(&self) -> String {
        render_terms(self.terms.iter().rev(), &|i| format!("{}{}", self.family.letter(), i + 1))
    }
}

/// Canonical `c*m + c*m - ...` text for an iterator of terms in display order.
pub(crate) fn render_terms<'a>(
    terms: impl Iterator<Item = (&'a Monomial, &'a Rational)>,
    name: &dyn Fn(usize) -> String,
) -> String {
    let mut out = String::new();
    for (k, (m, c)) in terms.enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = render_monomial(m, name);
        if mono.is_empty() {
            out.push_str(&render_rational(&a));
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&render_rational(&a));
            out.push('*');
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for CobordismPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for CobordismPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl CobordismPoly {
    pub fn zero() -> Self {
        Self::zero_in(Family::A)
    }
    pub fn one() -> Self {
        Self::constant(Rational::one())
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn add_assign(&mut self, o: &Self) {
        self.family = self.merged_family(o);
        for (m, c) in &o.terms {
            match self.terms.get_mut(m) {
                Some(v) => {
                    *v += c;
                    if v.is_zero() {
                        self.terms.remove(m);
                    }
                }
                None => {
                    self.terms.insert(m.clone(), c.clone());
                }
            }
        }
    }
    pub fn sub_assign(&mut self, o: &Self) {
        self.add_assign(&o.neg());
    }
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero_in(self.merged_family(o));
        if self.is_zero() || o.is_zero() {
            return out;
        }
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = m1.mul(m2);
                let c = c1 * c2;
                match out.terms.get_mut(&m) {
                    Some(v) => *v += c,
                    None => {
                        out.terms.insert(m, c);
                    }
                }
            }
        }
        out.terms.retain(|_, v| !v.is_zero());
        out
    }
    pub fn neg(&self) -> Self {
        Self { family: self.family, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero_in(self.family);
        }
        Self { family: self.family, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect() }
    }
}

impl Coeff for CobordismPoly {
    fn nil() -> Self {
        Self::zero()
    }
    fn unit() -> Self {
        Self::one()
    }
    fn is_nil(&self) -> bool {
        self.is_zero()
    }
    fn add_in(&mut self, o: &Self) {
        self.add_assign(o)
    }
    fn sub_in(&mut self, o: &Self) {
        self.sub_assign(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn scale(&self, r: &Rational) -> Self {
        CobordismPoly::scale(self, r)
    }
    fn from_rational(r: Rational) -> Self {
        Self::constant(r)
    }
}
