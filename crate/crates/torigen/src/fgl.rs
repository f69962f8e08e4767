//! Truncated formal group law of geometric cobordisms over Q: the logarithm
//! `g(u) = u + sum b_n u^(n+1)`, the sum `F(u,v) = g^-1(g(u) + g(v))`, the
//! power system `[w](u)`, and the bridge `g^-1(x) = x/f(x)` between the
//! `b_i` and `a_i` generators.

use crate::error::{Error, Result};
use crate::exactalg::{rat, reverse_series, series_inverse, Arena, CobordismPoly, Family, GradedSeries, Monomial, MultiPoly, Poly};

fn u_arena() -> Arena {
    Arena::new(["u"])
}

/// `u1..uk`
pub fn u_vars(k: usize) -> Arena {
    Arena::new((1..=k).map(|i| format!("u{i}")))
}

/// `g(u) = u + b_1 u^2 + ... + b_(N-1) u^N`.
pub fn log_series(order: u32) -> GradedSeries {
    log_in(&u_arena(), order)
}

fn log_in(arena: &Arena, order: u32) -> GradedSeries {
    let mut g = GradedSeries::from_poly(Poly::var(arena, 0), order);
    for n in 1..order {
        g.add_term(Monomial::var(1, 0, n as u16 + 1), CobordismPoly::generator(Family::B, n as usize));
    }
    g
}

/// `g^-1(x)` in the `b` generators.
pub fn exp_series(order: u32) -> Result<GradedSeries> {
    reverse_series(&log_series(order))
}

/// `g(s_i)` placed in variable `i` of `target`.
fn log_of_var(target: &Arena, i: usize, order: u32) -> Result<GradedSeries> {
    let v = Poly::var(target, i);
    log_series(order).substitute(&[GradedSeries::from_poly(v, order)], target, order)
}

/// `F(u,v)` over the arena `u, v`.
pub fn fgl_addition(order: u32) -> Result<GradedSeries> {
    let uv = Arena::new(["u", "v"]);
    let sum = log_of_var(&uv, 0, order)?.add(&log_of_var(&uv, 1, order)?)?;
    exp_series(order)?.substitute(&[sum], &uv, order)
}

/// `F(a, b)` for two series over the same arena.
pub fn formal_sum(f: &GradedSeries, a: &GradedSeries, b: &GradedSeries) -> Result<GradedSeries> {
    f.substitute(&[a.clone(), b.clone()], a.arena(), a.order())
}

/// `[w](u) = g^-1(w g(u))`.
pub fn power_system(w: i64, order: u32) -> Result<GradedSeries> {
    let g = log_series(order).scale(&rat(w));
    exp_series(order)?.substitute(&[g], &u_arena(), order)
}

/// `[0] = 0`, `[w] = F(u, [w-1])`; negative `w` iterates the formal inverse `[-1]`.
pub fn power_system_recursive(w: i64, order: u32) -> Result<GradedSeries> {
    let f = fgl_addition(order)?;
    let step = if w >= 0 { GradedSeries::from_poly(Poly::var(&u_arena(), 0), order) } else { power_system(-1, order)? };
    let mut acc = GradedSeries::zero(&u_arena(), order);
    for _ in 0..w.unsigned_abs() {
        acc = formal_sum(&f, &step, &acc)?;
    }
    Ok(acc)
}

/// `[L](u) = F([L_1](u_1), ..., [L_k](u_k))` by iterated formal sums.
pub fn multi_bracket(weight: &[i64], order: u32) -> Result<GradedSeries> {
    let k = weight.len();
    if k == 0 {
        return Err(Error::Invalid("empty weight".into()));
    }
    let us = u_vars(k);
    let f = fgl_addition(order)?;
    let mut acc = GradedSeries::zero(&us, order);
    for (q, &w) in weight.iter().enumerate() {
        let uq = GradedSeries::from_poly(Poly::var(&us, q), order);
        let bracket = power_system(w, order)?.substitute(&[uq], &us, order)?;
        acc = formal_sum(&f, &acc, &bracket)?;
    }
    Ok(acc)
}

/// `<L,x> / f(<L,x>)` over `x1..xk`, truncated at total degree `order`.
pub fn chern_dold_of_bracket(weight: &[i64], order: u32) -> Result<GradedSeries> {
    if weight.iter().all(|&c| c == 0) {
        return Err(Error::ZeroWeight);
    }
    let xs = Arena::xs(weight.len());
    let s = Arena::new(["s"]);
    let h = GradedSeries::x_over_f(&s, Family::A, order)?;
    h.substitute_rational(&[MultiPoly::linear(&xs, weight)], &xs, order)
}

/// `a_1..a_order` as polynomials in the `b_j`, from `f(x) = x / g^-1(x)`.
pub fn a_in_terms_of_b(order: u32) -> Result<Vec<CobordismPoly>> {
    // Shift g^-1 down by one power, then invert.
    let e = exp_series(order + 1)?.univariate_coeffs();
    let mut h = GradedSeries::zero(&u_arena(), order);
    for (i, c) in e.iter().enumerate().skip(1) {
        h.add_term(Monomial::var(1, 0, i as u16 - 1), c.clone());
    }
    let f = series_inverse(&h)?.univariate_coeffs();
    Ok(f[1..].iter().map(|c| c.clone().with_family(Family::B)).collect())
}

/// `b_1..b_order` as polynomials in the `a_i`, from `g = reverse(x/f(x))`.
pub fn b_in_terms_of_a(order: u32) -> Result<Vec<CobordismPoly>> {
    let s = Arena::new(["s"]);
    let g = reverse_series(&GradedSeries::x_over_f(&s, Family::A, order + 1)?)?.univariate_coeffs();
    Ok(g[2..].iter().map(|c| c.clone().with_family(Family::A)).collect())
}
