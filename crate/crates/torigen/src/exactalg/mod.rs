//! Exact rational arithmetic: multivariate polynomials over Q, polynomials in
//! the cobordism generators, and total-degree-truncated series whose
//! coefficients are cobordism polynomials.

mod cobordism;
mod monomial;
mod poly;
mod series;
pub mod text;

pub use cobordism::{CobordismPoly, Family};
pub use monomial::{render_monomial, Monomial};
pub use poly::{Arena, MultiPoly, Poly};
pub use series::{reverse_series, series_inverse, GradedSeries};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::Debug;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `p/q` or `p`; the canonical exact decimal form.
pub fn render_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Coefficient ring of a [`Poly`]: a commutative Q-algebra.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn add_in(&mut self, o: &Self);
    fn sub_in(&mut self, o: &Self);
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn from_rational(r: Rational) -> Self;
    /// Divide by a nonzero scalar.
    fn div_scalar(&self, r: &Rational) -> Self {
        self.scale(&(Rational::one() / r))
    }
}

impl Coeff for Rational {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_in(&mut self, o: &Self) {
        *self += o;
    }
    fn sub_in(&mut self, o: &Self) {
        *self -= o;
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
}
