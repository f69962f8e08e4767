//! Parser for the canonical text form (`6*a1^3 + 6*a1*a2 - 6*a3`).
//! Accepts any sum/product/power expression with parentheses, so expected
//! values can be written the way they are usually displayed.

use super::monomial::Monomial;
use super::poly::{Arena, MultiPoly, Poly};
use super::{parse_rational, CobordismPoly, Family, GradedSeries, Rational};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

type Key = BTreeMap<String, u32>;

#[derive(Clone, Default)]
struct Named(BTreeMap<Key, Rational>);

impl Named {
    fn constant(c: Rational) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(Key::new(), c);
        }
        Named(m)
    }

    fn var(name: &str) -> Self {
        let mut k = Key::new();
        k.insert(name.to_string(), 1);
        Named(BTreeMap::from([(k, Rational::one())]))
    }

    fn add(mut self, o: &Named, sign: i64) -> Self {
        for (k, c) in &o.0 {
            let e = self.0.entry(k.clone()).or_insert_with(Rational::zero);
            if sign < 0 {
                *e -= c;
            } else {
                *e += c;
            }
        }
        self.0.retain(|_, c| !c.is_zero());
        self
    }

    fn mul(&self, o: &Named) -> Self {
        let mut out = Named::default();
        for (k1, c1) in &self.0 {
            for (k2, c2) in &o.0 {
                let mut k = k1.clone();
                for (n, e) in k2 {
                    *k.entry(n.clone()).or_insert(0) += e;
                }
                *out.0.entry(k).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        out.0.retain(|_, c| !c.is_zero());
        out
    }
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Parser<'a> {
    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.i, String::from_utf8_lossy(self.s)))
    }

    fn expr(&mut self) -> Result<Named> {
        let mut acc = Named::default();
        let mut sign = 1;
        if let Some(c @ (b'+' | b'-')) = self.peek() {
            sign = if c == b'-' { -1 } else { 1 };
            self.i += 1;
        }
        loop {
            let t = self.term()?;
            acc = acc.add(&t, sign);
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => return Ok(acc),
            }
            self.i += 1;
        }
    }

    fn term(&mut self) -> Result<Named> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.i += 1;
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Named> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            self.ws();
            let e = self.integer()?;
            let e: u32 = e.parse().map_err(|_| self.err("bad exponent"))?;
            let mut r = Named::constant(Rational::one());
            for _ in 0..e {
                r = r.mul(&base);
            }
            return Ok(r);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<String> {
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected integer"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.i]).into_owned())
    }

    fn atom(&mut self) -> Result<Named> {
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.i += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let mut num = self.integer()?;
                if self.peek() == Some(b'/') {
                    self.i += 1;
                    self.ws();
                    num = format!("{num}/{}", self.integer()?);
                }
                let r = parse_rational(&num).ok_or_else(|| self.err("bad number"))?;
                Ok(Named::constant(r))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.i;
                while self.i < self.s.len() && (self.s[self.i].is_ascii_alphanumeric() || self.s[self.i] == b'_') {
                    self.i += 1;
                }
                Ok(Named::var(&String::from_utf8_lossy(&self.s[start..self.i])))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

fn parse_named(s: &str) -> Result<Named> {
    let mut p = Parser { s: s.as_bytes(), i: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// `a12` -> (A, 12)
fn generator_index(name: &str) -> Option<(Family, usize)> {
    let fam = match name.as_bytes().first()? {
        b'a' => Family::A,
        b'b' => Family::B,
        _ => return None,
    };
    let i: usize = name[1..].parse().ok()?;
    (i >= 1).then_some((fam, i))
}

fn generator_monomial(names: &Key, fam: &mut Option<Family>) -> Result<Monomial> {
    let mut e: Vec<u16> = Vec::new();
    for (n, &p) in names {
        let (f, i) = generator_index(n).ok_or_else(|| Error::Parse(format!("unknown symbol {n}")))?;
        if fam.is_some_and(|g| g != f) {
            return Err(Error::Parse("mixed a/b generators".into()));
        }
        *fam = Some(f);
        if e.len() < i {
            e.resize(i, 0);
        }
        e[i - 1] += p as u16;
    }
    Ok(Monomial::from_slice(&e).trimmed())
}

pub fn parse_cobordism(s: &str) -> Result<CobordismPoly> {
    let n = parse_named(s)?;
    let mut fam = None;
    let mut terms = Vec::new();
    for (k, c) in n.0 {
        terms.push((generator_monomial(&k, &mut fam)?, c));
    }
    Ok(CobordismPoly::from_terms(fam.unwrap_or(Family::A), terms))
}

pub fn parse_multipoly(s: &str, arena: &Arena) -> Result<MultiPoly> {
    let n = parse_named(s)?;
    let mut p = MultiPoly::zero(arena);
    for (k, c) in n.0 {
        let mut m = Monomial::one(arena.arity());
        for (name, e) in k {
            let i = arena.index_of(&name).ok_or_else(|| Error::Parse(format!("unknown variable {name}")))?;
            m.0[i] += e as u16;
        }
        p.add_term(m, c);
    }
    Ok(p)
}

/// Series over `arena`; symbols not in the arena must be generators.
pub fn parse_series(s: &str, arena: &Arena, order: u32) -> Result<GradedSeries> {
    let n = parse_named(s)?;
    let mut fam = None;
    let mut p: Poly<CobordismPoly> = Poly::zero(arena);
    for (k, c) in n.0 {
        let mut m = Monomial::one(arena.arity());
        let mut gens = Key::new();
        for (name, e) in k {
            match arena.index_of(&name) {
                Some(i) => m.0[i] += e as u16,
                None => {
                    gens.insert(name, e);
                }
            }
        }
        let g = generator_monomial(&gens, &mut fam)?;
        p.add_term(m, CobordismPoly::from_terms(fam.unwrap_or(Family::A), [(g, c)]));
    }
    Ok(GradedSeries::from_poly(p, order))
}
