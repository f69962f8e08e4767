//! The antisymmetrizing operator `L = (1/Delta_n) sum sign(s) s`, divided
//! differences, Schubert polynomials, the coefficient families `P_xi` and
//! `Q_xi`, and closed formulas for the classes of flag manifolds and
//! Grassmannians. These do not go through fixed points and serve as a
//! second route to the numbers computed by `genus`.

use crate::chern::s_to_chern;
use crate::error::{Error, Result};
use crate::exactalg::text::parse_cobordism;
use crate::exactalg::{rat, Arena, CobordismPoly, Coeff, Family, Monomial, MultiPoly, Poly, Rational};
use crate::genus::s_number_numeric;
use crate::rootdata::{build_space, fixed_point_weights};
use crate::symmfunc::{antisymmetrize, omega_indices, permutations, vandermonde, vandermonde_range, OmegaIndex};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

/// `L p = antisym(p) / Delta_n`.
pub fn operator_l<C: Coeff>(p: &Poly<C>) -> Result<Poly<C>> {
    antisymmetrize(p).exact_div(&vandermonde(p.arena()))
}

fn swap_perm(n: usize, i: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(i - 1, i);
    p
}

/// `d_i p = (p - s_i p) / (x_i - x_{i+1})`, `1 <= i < n`.
pub fn divided_difference<C: Coeff>(i: usize, p: &Poly<C>) -> Result<Poly<C>> {
    let n = p.arena().arity();
    if i == 0 || i >= n {
        return Err(Error::Invalid(format!("divided difference d_{i} in {n} variables")));
    }
    let mut form = vec![0; n];
    form[i - 1] = 1;
    form[i] = -1;
    p.sub(&p.permute_vars(&swap_perm(n, i)))?.exact_div(&MultiPoly::linear(p.arena(), &form))
}

/// `L` as `(d_1...d_{n-1})(d_1...d_{n-2})...(d_1)`, rightmost factor first.
pub fn operator_l_by_differences<C: Coeff>(p: &Poly<C>) -> Result<Poly<C>> {
    let n = p.arena().arity();
    let mut q = p.clone();
    for k in 1..n {
        for i in (1..=k).rev() {
            q = divided_difference(i, &q)?;
        }
    }
    Ok(q)
}

/// Staircase exponent `(n-1, ..., 1, 0)`.
pub fn delta(n: usize) -> Monomial {
    Monomial::from_slice(&(0..n).map(|i| (n - 1 - i) as u16).collect::<Vec<_>>())
}

/// Permutation (one-line, 1-based) with a reduced word `i_1..i_p` such that
/// `w0 = w s_(i_p) ... s_(i_1)`; `nabla_w = d_(i_p) ... d_(i_1)` applies `d_(i_1)` first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermWord {
    pub perm: Vec<usize>,
    pub word: Vec<usize>,
}

impl PermWord {
    pub fn new(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &v in perm {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::Invalid(format!("{perm:?} is not a permutation")));
            }
            seen[v - 1] = true;
        }
        let word = reduced_words(perm).into_iter().next().unwrap_or_default();
        Ok(PermWord { perm: perm.to_vec(), word })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let digits: Option<Vec<usize>> = if s.contains(',') {
            s.split(',').map(|t| t.trim().parse().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
        };
        PermWord::new(&digits.ok_or_else(|| Error::Parse(format!("bad permutation {s:?}")))?)
    }
}

/// All words obtained by repeatedly fixing an ascent of `w` until `w0`, each
/// returned with the first-applied operator first.
pub fn reduced_words(perm: &[usize]) -> Vec<Vec<usize>> {
    fn go(w: &mut Vec<usize>, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let ascents: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&i| w[i] < w[i + 1]).collect();
        if ascents.is_empty() {
            out.push(path.iter().rev().copied().collect());
            return;
        }
        for i in ascents {
            w.swap(i, i + 1);
            path.push(i + 1);
            go(w, path, out);
            path.pop();
            w.swap(i, i + 1);
        }
    }
    let mut out = Vec::new();
    go(&mut perm.to_vec(), &mut Vec::new(), &mut out);
    out
}

pub fn schubert_with_word(n: usize, word: &[usize]) -> Result<MultiPoly> {
    let arena = Arena::xs(n);
    let mut p = MultiPoly::term(&arena, delta(n), rat(1));
    for &i in word {
        p = divided_difference(i, &p)?;
    }
    Ok(p)
}

pub fn schubert_polynomial(w: &PermWord) -> Result<MultiPoly> {
    schubert_with_word(w.perm.len(), &w.word)
}

static MEMO: OnceLock<Mutex<HashMap<String, CobordismPoly>>> = OnceLock::new();

fn memo() -> &'static Mutex<HashMap<String, CobordismPoly>> {
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

fn memoized(key: String, compute: impl FnOnce() -> Result<CobordismPoly>) -> Result<CobordismPoly> {
    if let Some(v) = memo().lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let v = compute()?;
    memo().lock().unwrap().insert(key, v.clone());
    Ok(v)
}

/// Memoized `P`/`Q` values as canonical text, one `key = poly` per line.
pub fn export_memo() -> String {
    let m = memo().lock().unwrap();
    let mut lines: Vec<String> = m.iter().map(|(k, v)| format!("{k} = {}", v.render())).collect();
    lines.sort();
    lines.join("\n")
}

pub fn import_memo(text: &str) -> Result<usize> {
    let mut count = 0;
    let mut m = memo().lock().unwrap();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let (k, v) = line.split_once(" = ").ok_or_else(|| Error::Parse(format!("memo line {line:?}")))?;
        m.insert(k.to_string(), parse_cobordism(v)?);
        count += 1;
    }
    Ok(count)
}

/// `f(x_i - x_j)` keeping monomials that divide `target`.
fn f_difference(arena: &Arena, i: usize, j: usize, target: &Monomial, odd_only: bool) -> Result<Poly<CobordismPoly>> {
    let n = arena.arity();
    let mut form = vec![0; n];
    form[i] = 1;
    form[j] = -1;
    let d = MultiPoly::linear(arena, &form);
    let top = (target.get(i) + target.get(j)) as u32;
    let mut out = if odd_only { Poly::zero(arena) } else { Poly::one(arena) };
    let mut pw = MultiPoly::one(arena);
    for k in 1..=top {
        pw = pw.mul(&d)?;
        if odd_only && k % 2 == 0 {
            continue;
        }
        let a = CobordismPoly::generator(Family::A, k as usize);
        for (m, c) in pw.terms() {
            if m.divides(target) {
                out.add_term(m.clone(), a.scale(c));
            }
        }
    }
    Ok(out)
}

/// Coefficient of `x^target` in a product, pruning non-divisors as it goes.
fn pruned_coefficient(factors: &[Poly<CobordismPoly>], target: &Monomial) -> Result<CobordismPoly> {
    let arena = factors[0].arena().clone();
    let mut acc: Poly<CobordismPoly> = Poly::one(&arena);
    for f in factors {
        let mut next = Poly::zero(&arena);
        for (m1, c1) in acc.terms() {
            for (m2, c2) in f.terms() {
                let m = m1.mul(m2);
                if m.divides(target) {
                    next.add_term(m, c1.mul(c2));
                }
            }
        }
        acc = next;
    }
    Ok(acc.coeff(target))
}

fn xi_key(xi: &[u16]) -> String {
    xi.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

/// `P_xi`: coefficient of `x^xi` in `prod_{i<j} f(x_i - x_j)`.
pub fn flag_p_polynomial(n: usize, xi: &[u16]) -> Result<CobordismPoly> {
    if xi.len() != n {
        return Err(Error::Invalid(format!("exponent {xi:?} for {n} variables")));
    }
    memoized(format!("P {n} {}", xi_key(xi)), || {
        let arena = Arena::xs(n);
        let target = Monomial::from_slice(xi);
        let mut factors = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                factors.push(f_difference(&arena, i, j, &target, false)?);
            }
        }
        pruned_coefficient(&factors, &target)
    })
}

/// `Q_(q+l,l) xi`: coefficient of `x^xi` in `Delta_q Delta_{q+1,q+l} prod_{i<=q<j} f(x_i - x_j)`.
pub fn grassmann_q_polynomial(q: usize, l: usize, xi: &[u16]) -> Result<CobordismPoly> {
    let n = q + l;
    if xi.len() != n {
        return Err(Error::Invalid(format!("exponent {xi:?} for {n} variables")));
    }
    memoized(format!("Q {q} {l} {}", xi_key(xi)), || {
        let arena = Arena::xs(n);
        let target = Monomial::from_slice(xi);
        let lift = |p: MultiPoly| p.map_coeffs(|c| CobordismPoly::constant(c.clone()));
        let mut factors = vec![lift(vandermonde_range(&arena, 0, q)), lift(vandermonde_range(&arena, q, n))];
        for i in 0..q {
            for j in q..n {
                factors.push(f_difference(&arena, i, j, &target, false)?);
            }
        }
        pruned_coefficient(&factors, &target)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlagMethod {
    /// `sum sign(s) P_(s delta)`
    CorL,
    /// antisymmetrize the whole product, read the `x^delta` coefficient
    TChi,
    /// `L` of the product with the two end factors replaced by odd parts
    Thm8,
}

impl std::str::FromStr for FlagMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "corL" | "corl" => Ok(FlagMethod::CorL),
            "tchi" => Ok(FlagMethod::TChi),
            "thm8" => Ok(FlagMethod::Thm8),
            _ => Err(Error::Parse(format!("unknown method {s:?}; expected corL, tchi or thm8"))),
        }
    }
}

/// `prod_{i<j} f(x_i - x_j)` (odd parts on the `(1,2)` and `(n-1,n)` factors
/// when `odd_ends`), truncated at total degree `order`.
fn flag_product(n: usize, order: u32, odd_ends: bool) -> Result<Poly<CobordismPoly>> {
    let arena = Arena::xs(n);
    let everything = Monomial::from_slice(&vec![order as u16; n]);
    let mut acc: Poly<CobordismPoly> = Poly::one(&arena);
    for i in 0..n {
        for j in i + 1..n {
            let odd = odd_ends && ((i, j) == (0, 1) || (i, j) == (n - 2, n - 1));
            let f = f_difference(&arena, i, j, &everything, odd)?.truncate(order);
            acc = acc.mul_trunc(&f, Some(order))?;
        }
    }
    Ok(acc)
}

pub fn flag_class(n: usize, method: FlagMethod) -> Result<CobordismPoly> {
    if n < 2 {
        return Err(Error::Invalid("flag manifolds need n >= 2".into()));
    }
    let d = delta(n);
    let m = d.degree();
    let mut class = CobordismPoly::zero();
    match method {
        FlagMethod::CorL => {
            for (perm, sign) in permutations(n) {
                let xi = d.permute(&perm);
                class.add_assign(&flag_p_polynomial(n, xi.exps())?.scale(&rat(sign)));
            }
        }
        FlagMethod::TChi => {
            let prod = flag_product(n, m, false)?.homogeneous_part(m);
            for (perm, sign) in permutations(n) {
                class.add_assign(&prod.permute_vars(&perm).coeff(&d).scale(&rat(sign)));
            }
        }
        FlagMethod::Thm8 => {
            if n < 4 {
                return Err(Error::Invalid("the odd-part formula needs n >= 4".into()));
            }
            let prod = flag_product(n, m, true)?.homogeneous_part(m);
            let l = operator_l(&prod)?;
            if l.degree().unwrap_or(0) > 0 {
                return Err(Error::NonConstantResult(l.render()));
            }
            class = l.constant_term();
        }
    }
    Ok(class.with_family(Family::A))
}

/// `[G_(q+l,l)] = (1/q!l!) sum sign(s) Q_(s delta)`.
pub fn grassmann_class(q: usize, l: usize) -> Result<CobordismPoly> {
    if q == 0 || l == 0 {
        return Err(Error::Invalid("Grassmannian blocks must be positive".into()));
    }
    let n = q + l;
    let d = delta(n);
    let mut class = CobordismPoly::zero();
    for (perm, sign) in permutations(n) {
        let xi = d.permute(&perm);
        class.add_assign(&grassmann_q_polynomial(q, l, xi.exps())?.scale(&rat(sign)));
    }
    let fact = |k: usize| (1..=k).product::<usize>() as i64;
    Ok(class.scale(&(Rational::one() / rat(fact(q) * fact(l)))).with_family(Family::A))
}

/// `s_m(U(n)/T^n) = sum_{i<j} L (x_i - x_j)^m`, `m = n(n-1)/2`.
pub fn flag_top_s_number(n: usize) -> Result<Rational> {
    let arena = Arena::xs(n);
    let m = (n * (n - 1) / 2) as u32;
    let mut s = MultiPoly::zero(&arena);
    for i in 0..n {
        for j in i + 1..n {
            let mut form = vec![0; n];
            form[i] = 1;
            form[j] = -1;
            s.add_assign(&operator_l(&MultiPoly::linear(&arena, &form).pow(m, None)?)?)?;
        }
    }
    Ok(s.constant_term())
}

/// Parts of `omega` as a multiset, largest first.
fn parts_desc(om: &OmegaIndex) -> Vec<u32> {
    om.to_partition().0
}

/// Vanishing forced by a large part (`k > 2n - 3`).
pub fn cor8_forces_zero(n: usize, om: &OmegaIndex) -> bool {
    om.0.iter().enumerate().any(|(k, &i)| i > 0 && k + 1 > 2 * n - 3)
}

/// Vanishing forced by `l` parts with `2l <= n` whose sum exceeds `l(2n - 2l - 1)`.
pub fn cor9_forces_zero(n: usize, om: &OmegaIndex) -> bool {
    let parts = parts_desc(om);
    (1..=n / 2).any(|l| parts.len() >= l && parts[..l].iter().sum::<u32>() as usize > l * (2 * n - 2 * l - 1))
}

/// Every odd-indexed entry `i_1, i_3, ...` is zero.
pub fn odd_entries_vanish(om: &OmegaIndex) -> bool {
    om.0.iter().step_by(2).all(|&i| i == 0)
}

#[derive(Clone, Debug)]
pub struct FlagCheck {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct FlagReport {
    pub n: usize,
    pub checks: Vec<FlagCheck>,
}

impl FlagReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

type NumberSource = Box<dyn Fn(&OmegaIndex) -> Result<Rational>>;

/// The vanishing and parity statements for `U(n)/T^n`, `n <= 5`. For `n = 5`
/// the individual numbers are evaluated at a numeric point.
pub fn flag_vanishing_checks(n: usize) -> Result<FlagReport> {
    if !(2..=5).contains(&n) {
        return Err(Error::Invalid(format!("flag checks are limited to 2 <= n <= 5, got {n}")));
    }
    let m = n * (n - 1) / 2;
    let omegas = omega_indices(m as u32, m);
    let s_of: NumberSource = if n <= 4 {
        let class = flag_class(n, FlagMethod::CorL)?;
        Box::new(move |om: &OmegaIndex| Ok(class.coeff(&om.monomial())))
    } else {
        let fp = fixed_point_weights(&build_space(&format!("U({n})/T{n}"))?)?;
        let point: Vec<i64> = (0..n as i64).map(|i| i * i + 1).collect();
        Box::new(move |om: &OmegaIndex| s_number_numeric(&fp, om, &point))
    };
    let mut checks = Vec::new();
    let top = flag_top_s_number(n)?;
    let expect_top = match n {
        2 => rat(2),
        3 => rat(-6),
        _ => Rational::zero(),
    };
    checks.push(FlagCheck { name: format!("s_{m} via L"), ok: top == expect_top, detail: top.to_string() });
    let mut bad8 = Vec::new();
    let mut bad9 = Vec::new();
    let mut bad_even = Vec::new();
    for om in &omegas {
        let forced8 = cor8_forces_zero(n, om);
        let forced9 = cor9_forces_zero(n, om);
        let forced_even = (n == 4 || n == 5) && odd_entries_vanish(om);
        if !(forced8 || forced9 || forced_even) {
            continue;
        }
        let v = s_of(om)?;
        if forced8 && !v.is_zero() {
            bad8.push(format!("{om}={v}"));
        }
        if forced9 && !v.is_zero() {
            bad9.push(format!("{om}={v}"));
        }
        if forced_even && !v.is_zero() {
            bad_even.push(format!("{om}={v}"));
        }
    }
    let count = |f: &dyn Fn(&OmegaIndex) -> bool| omegas.iter().filter(|o| f(o)).count();
    checks.push(FlagCheck { name: "large part vanishing".into(), ok: bad8.is_empty(), detail: format!("{} forced, failures {:?}", count(&|o| cor8_forces_zero(n, o)), bad8) });
    checks.push(FlagCheck { name: "part-sum vanishing".into(), ok: bad9.is_empty(), detail: format!("{} forced, failures {:?}", count(&|o| cor9_forces_zero(n, o)), bad9) });
    if n == 4 || n == 5 {
        checks.push(FlagCheck { name: "even-parts vanishing".into(), ok: bad_even.is_empty(), detail: format!("{} forced, failures {:?}", count(&|o| odd_entries_vanish(o)), bad_even) });
    }
    if n <= 4 {
        let class = flag_class(n, FlagMethod::CorL)?;
        let s: BTreeMap<OmegaIndex, BigInt> = omegas.iter().map(|o| (o.clone(), class.coeff(&o.monomial()).to_integer())).collect();
        let chern = s_to_chern(&s, m)?;
        let odd: Vec<String> = chern.entries().into_iter().filter(|(_, v)| (v % 2u32) != BigInt::zero()).map(|(k, v)| format!("{k}={v}")).collect();
        checks.push(FlagCheck { name: "Chern numbers even".into(), ok: odd.is_empty(), detail: format!("odd: {odd:?}") });
    }
    Ok(FlagReport { n, checks })
}
