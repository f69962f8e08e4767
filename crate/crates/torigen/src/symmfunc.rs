//! Partitions, monomial symmetric (orbit) polynomials, elementary and Schur
//! polynomials, the coefficients f_omega of prod f(t_i), and the transition
//! from the monomial to the elementary basis.

use crate::error::{Error, Result};
use crate::exactalg::{rat, Arena, Coeff, Monomial, MultiPoly, Poly, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// `(i_1, ..., i_n)`: `i_k` counts the parts of size `k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaIndex(pub Vec<u32>);

/// Weakly decreasing parts, zeros dropped.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(pub Vec<u32>);

impl OmegaIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        OmegaIndex(entries)
    }

    /// `||omega|| = sum k * i_k`.
    pub fn weight(&self) -> u32 {
        self.0.iter().enumerate().map(|(k, &i)| (k as u32 + 1) * i).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn from_partition(p: &Partition, n: usize) -> Self {
        let len = n.max(p.0.first().copied().unwrap_or(0) as usize);
        let mut v = vec![0; len];
        for &k in &p.0 {
            v[k as usize - 1] += 1;
        }
        OmegaIndex(v)
    }

    pub fn to_partition(&self) -> Partition {
        let mut parts = Vec::new();
        for (k, &i) in self.0.iter().enumerate().rev() {
            for _ in 0..i {
                parts.push(k as u32 + 1);
            }
        }
        Partition(parts)
    }

    /// Generator monomial `a^omega` (trimmed exponent vector).
    pub fn monomial(&self) -> Monomial {
        Monomial::from_slice(&self.0.iter().map(|&e| e as u16).collect::<Vec<_>>()).trimmed()
    }

    pub fn from_monomial(m: &Monomial, n: usize) -> Self {
        let len = n.max(m.arity());
        OmegaIndex((0..len).map(|i| m.get(i) as u32).collect())
    }

    pub fn padded(&self, n: usize) -> Self {
        let mut v = self.0.clone();
        while v.len() < n {
            v.push(0);
        }
        OmegaIndex(v)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let v: std::result::Result<Vec<u32>, _> = s.split(',').map(|t| t.trim().parse::<u32>()).collect();
        v.map(OmegaIndex).map_err(|_| Error::Parse(format!("bad omega index {s:?}")))
    }
}

impl fmt::Debug for OmegaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Display for OmegaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Exponent vector of length `n` (parts followed by zeros).
    pub fn padded(&self, n: usize) -> Vec<u16> {
        let mut v: Vec<u16> = self.0.iter().map(|&p| p as u16).collect();
        v.resize(n.max(v.len()), 0);
        v
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Partitions of `m` in reverse lexicographic order: `[m], [m-1,1], ...`.
pub fn partitions(m: u32) -> Vec<Partition> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, &mut Vec::new(), &mut out);
    out
}

/// All omega of weight `m` with `n` entries, in the order of [`partitions`].
pub fn omega_indices(m: u32, n: usize) -> Vec<OmegaIndex> {
    partitions(m).iter().map(|p| OmegaIndex::from_partition(p, n)).collect()
}

/// All permutations of `0..n` in lexicographic one-line order, with signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out.into_iter()
        .map(|p| {
            let s = permutation_sign(&p);
            (p, s)
        })
        .collect()
}

pub fn permutation_sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Distinct permutations of an exponent vector.
pub fn distinct_permutations(v: &[u16]) -> Vec<Vec<u16>> {
    let mut sorted = v.to_vec();
    sorted.sort_unstable();
    let mut out = vec![sorted.clone()];
    // next_permutation on the sorted multiset
    loop {
        let n = sorted.len();
        if n < 2 {
            break;
        }
        let mut i = n - 1;
        while i > 0 && sorted[i - 1] >= sorted[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while sorted[j] <= sorted[i - 1] {
            j -= 1;
        }
        sorted.swap(i - 1, j);
        sorted[i..].reverse();
        out.push(sorted.clone());
    }
    out
}

/// The orbit sum of `u^xi` under permutations of the variables of `arena`.
pub fn orbit_monomial(xi: &[u16], arena: &Arena) -> Result<MultiPoly> {
    if xi.len() != arena.arity() {
        return Err(Error::Invalid(format!("exponent vector of length {} for {} variables", xi.len(), arena.arity())));
    }
    Ok(MultiPoly::from_terms(
        arena,
        distinct_permutations(xi).into_iter().map(|e| (Monomial::from_slice(&e), Rational::one())),
    ))
}

/// Monomial symmetric polynomial `m_lambda` in `t1..tn`.
pub fn monomial_symmetric(lambda: &Partition, arena: &Arena) -> Result<MultiPoly> {
    if lambda.0.len() > arena.arity() {
        return Ok(MultiPoly::zero(arena));
    }
    orbit_monomial(&lambda.padded(arena.arity()), arena)
}

/// `f_omega` for every `||omega|| <= nmax`, keyed by the generator monomial
/// `a^omega`: the coefficient of `a^omega` in `prod_i f(t_i)`.
pub fn f_omega_decomposition(n: usize, nmax: u32) -> Result<BTreeMap<Monomial, MultiPoly>> {
    if nmax < 1 {
        return Err(Error::Invalid("weight bound must be at least 1".into()));
    }
    let arena = Arena::new((1..=n).map(|i| format!("t{i}")));
    let mut out = BTreeMap::new();
    for m in 1..=nmax {
        for p in partitions(m) {
            if p.0.len() <= n {
                let om = OmegaIndex::from_partition(&p, n);
                out.insert(om.monomial(), monomial_symmetric(&p, &arena)?);
            }
        }
    }
    Ok(out)
}

/// Elementary symmetric polynomial `e_k` in the variables of `arena`.
pub fn elementary(k: usize, arena: &Arena) -> MultiPoly {
    let n = arena.arity();
    if k > n {
        return MultiPoly::zero(arena);
    }
    let mut v = vec![0u16; n];
    for e in v.iter_mut().take(k) {
        *e = 1;
    }
    orbit_monomial(&v, arena).expect("arity matches")
}

/// Expansion `m_lambda = sum beta_xi e_1^{l_1} ... e_n^{l_n}` in `n = |lambda|`
/// variables, by repeated leading-term elimination. Keys are `(l_1..l_n)`.
pub fn monomial_to_elementary(omega: &OmegaIndex) -> Result<BTreeMap<Vec<u32>, BigInt>> {
    let n = omega.weight() as usize;
    let arena = Arena::new((1..=n).map(|i| format!("u{i}")));
    let es: Vec<MultiPoly> = (1..=n).map(|k| elementary(k, &arena)).collect();
    let mut rest = monomial_symmetric(&omega.to_partition(), &arena)?;
    let mut out = BTreeMap::new();
    while let Some((m, c)) = rest.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let a = m.exps();
        if a.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("polynomial is not symmetric: leading exponent {a:?}")));
        }
        let l: Vec<u32> = (0..n).map(|i| (a[i] - a.get(i + 1).copied().unwrap_or(0)) as u32).collect();
        let mut prod = MultiPoly::one(&arena);
        for (i, &li) in l.iter().enumerate() {
            for _ in 0..li {
                prod = prod.mul(&es[i])?;
            }
        }
        if !c.is_integer() {
            return Err(Error::Invalid("non-integral elementary expansion".into()));
        }
        rest.sub_assign(&prod.scale(&c))?;
        out.insert(l, c.to_integer());
    }
    Ok(out)
}

/// Vandermonde `Delta = prod_{i<j} (x_i - x_j)` over the first `n` variables.
pub fn vandermonde(arena: &Arena) -> MultiPoly {
    vandermonde_range(arena, 0, arena.arity())
}

/// `prod_{p <= i < j < q} (x_i - x_j)` (0-based, half-open).
pub fn vandermonde_range(arena: &Arena, p: usize, q: usize) -> MultiPoly {
    let k = arena.arity();
    let mut forms = Vec::new();
    for i in p..q {
        for j in i + 1..q {
            let mut f = vec![0i64; k];
            f[i] = 1;
            f[j] = -1;
            forms.push(f);
        }
    }
    MultiPoly::product_of_linear(arena, &forms)
}

/// `sum_sigma sign(sigma) sigma(p)` over all permutations of the variables.
pub fn antisymmetrize<C: Coeff>(p: &Poly<C>) -> Poly<C> {
    let n = p.arena().arity();
    let mut out = Poly::zero(p.arena());
    for (perm, sign) in permutations(n) {
        let q = p.permute_vars(&perm);
        let q = if sign < 0 { q.neg() } else { q };
        out.add_assign(&q).expect("same arena");
    }
    out
}

/// Schur polynomial as the bialternant `antisym(x^{lambda+delta}) / Delta`.
pub fn schur(lambda: &Partition, arena: &Arena) -> Result<MultiPoly> {
    let n = arena.arity();
    if lambda.0.len() > n {
        return Ok(MultiPoly::zero(arena));
    }
    let lam = lambda.padded(n);
    let e: Vec<u16> = (0..n).map(|i| lam[i] + (n - 1 - i) as u16).collect();
    let num = antisymmetrize(&MultiPoly::term(arena, Monomial::from_slice(&e), rat(1)));
    num.exact_div(&vandermonde(arena))
}

/// Whether `p` is fixed by every adjacent transposition.
pub fn is_symmetric<C: Coeff>(p: &Poly<C>) -> bool {
    let n = p.arena().arity();
    (0..n.saturating_sub(1)).all(|i| {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, i + 1);
        p.permute_vars(&perm) == *p
    })
}

/// Numeric `f_omega(t)`: coefficient of `a^omega` in `prod_j (1 + sum_k a_k t_j^k)`.
pub fn f_omega_numeric(omega: &OmegaIndex, t: &[Rational]) -> Rational {
    // DP over the factors; state = parts still to be placed.
    let mut states: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    states.insert(omega.0.clone(), Rational::one());
    for tj in t {
        let mut next: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        let mut pw = vec![Rational::one()];
        for _ in 0..omega.0.len() {
            let last = pw.last().unwrap().clone();
            pw.push(last * tj);
        }
        for (s, c) in &states {
            *next.entry(s.clone()).or_insert_with(Rational::zero) += c;
            for k in 0..s.len() {
                if s[k] > 0 {
                    let mut s2 = s.clone();
                    s2[k] -= 1;
                    *next.entry(s2).or_insert_with(Rational::zero) += c * &pw[k + 1];
                }
            }
        }
        states = next;
    }
    states.get(&vec![0; omega.0.len()]).cloned().unwrap_or_else(Rational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::text::parse_multipoly;

    fn us(n: usize) -> Arena {
        Arena::new((1..=n).map(|i| format!("u{i}")))
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=8).map(|m| partitions(m).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(partitions(3), vec![Partition(vec![3]), Partition(vec![2, 1]), Partition(vec![1, 1, 1])]);
    }

    #[test]
    fn omega_partition_dictionary() {
        let om = OmegaIndex(vec![1, 0, 0, 0, 1, 0]);
        assert_eq!(om.to_partition(), Partition(vec![5, 1]));
        assert_eq!(om.weight(), 6);
        assert_eq!(OmegaIndex::from_partition(&Partition(vec![5, 1]), 6), om);
    }

    #[test]
    fn orbits() {
        let a = us(3);
        assert_eq!(orbit_monomial(&[1, 1, 1], &a).unwrap().render(), "u1*u2*u3");
        assert_eq!(orbit_monomial(&[3, 0, 0], &a).unwrap().render(), "u1^3 + u2^3 + u3^3");
        assert_eq!(orbit_monomial(&[2, 1, 0], &a).unwrap().len(), 6);
    }

    #[test]
    fn f_omega_small() {
        let d = f_omega_decomposition(3, 3).unwrap();
        let t = Arena::new(["t1", "t2", "t3"]);
        assert_eq!(d[&Monomial::from_slice(&[1])], parse_multipoly("t1 + t2 + t3", &t).unwrap());
        assert_eq!(d[&Monomial::from_slice(&[0, 0, 1])], parse_multipoly("t1^3 + t2^3 + t3^3", &t).unwrap());
        assert_eq!(d[&Monomial::from_slice(&[2])], parse_multipoly("t1*t2 + t1*t3 + t2*t3", &t).unwrap());
    }

    #[test]
    fn elementary_expansions() {
        let p3 = monomial_to_elementary(&OmegaIndex(vec![0, 0, 1])).unwrap();
        let expect: BTreeMap<Vec<u32>, BigInt> =
            [(vec![3, 0, 0], 1), (vec![1, 1, 0], -3), (vec![0, 0, 1], 3)].into_iter().map(|(k, v)| (k, BigInt::from(v))).collect();
        assert_eq!(p3, expect);
        let e3 = monomial_to_elementary(&OmegaIndex(vec![3, 0, 0])).unwrap();
        assert_eq!(e3, BTreeMap::from([(vec![0, 0, 1], BigInt::from(1))]));
        let m2111 = monomial_to_elementary(&OmegaIndex(vec![3, 1, 0, 0, 0])).unwrap();
        let expect: BTreeMap<Vec<u32>, BigInt> =
            [(vec![1, 0, 0, 1, 0], 1), (vec![0, 0, 0, 0, 1], -5)].into_iter().map(|(k, v)| (k, BigInt::from(v))).collect();
        assert_eq!(m2111, expect);
    }

    #[test]
    fn schur_small() {
        let x = Arena::xs(3);
        assert_eq!(schur(&Partition(vec![]), &x).unwrap().render(), "1");
        assert_eq!(schur(&Partition(vec![1]), &x).unwrap().render(), "x1 + x2 + x3");
        assert_eq!(schur(&Partition(vec![1, 1]), &x).unwrap().render(), "x1*x2 + x1*x3 + x2*x3");
        let s21 = schur(&Partition(vec![2, 1]), &x).unwrap();
        assert!(is_symmetric(&s21));
    }

    #[test]
    fn antisym_division() {
        let x = Arena::xs(3);
        let p = antisymmetrize(&MultiPoly::from_int_terms(&x, &[(&[2, 1, 0], 1)]));
        assert_eq!(p.exact_div(&vandermonde(&x)).unwrap().render(), "1");
        let p = antisymmetrize(&MultiPoly::from_int_terms(&x, &[(&[3, 2, 0], 1)]));
        assert_eq!(p.exact_div(&vandermonde(&x)).unwrap(), elementary(2, &x));
    }

    #[test]
    fn numeric_f_omega_matches_symbolic() {
        let t = [rat(2), rat(-3), rat(5)];
        let a = us(3);
        for p in partitions(4) {
            let om = OmegaIndex::from_partition(&p, 3);
            let sym = monomial_symmetric(&p, &a).unwrap().eval(&t).unwrap();
            assert_eq!(f_omega_numeric(&om, &t), sym, "{p:?}");
        }
    }
}
