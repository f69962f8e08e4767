//! Conversion between the numbers `s_omega` and Chern numbers
//! `c_1^{l_1}...c_n^{l_n}`: `s_omega = sum_xi beta_{omega xi} c^xi`, where
//! `m_omega = sum beta_{omega xi} e^xi` in the elementary basis.

use crate::error::{Error, Result};
use crate::exactalg::Rational;
use crate::symmfunc::{monomial_to_elementary, omega_indices, OmegaIndex};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Square integer matrix indexed by the partitions of `n`, rows `omega`, columns `xi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaMatrix {
    pub n: usize,
    pub index: Vec<OmegaIndex>,
    pub rows: Vec<Vec<BigInt>>,
}

static BETA_CACHE: OnceLock<Mutex<HashMap<usize, Arc<BetaMatrix>>>> = OnceLock::new();

impl BetaMatrix {
    pub fn compute(n: usize) -> Result<Self> {
        let index = omega_indices(n as u32, n);
        let pos: BTreeMap<&OmegaIndex, usize> = index.iter().enumerate().map(|(i, o)| (o, i)).collect();
        let mut rows = Vec::with_capacity(index.len());
        for om in &index {
            let mut row = vec![BigInt::zero(); index.len()];
            for (l, c) in monomial_to_elementary(om)? {
                let key = OmegaIndex(l).padded(n);
                row[pos[&key]] = c;
            }
            rows.push(row);
        }
        Ok(BetaMatrix { n, index, rows })
    }

    /// One line per row: `omega: v1 v2 ...`.
    pub fn render(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for (om, row) in self.index.iter().zip(&self.rows) {
            let v: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            s.push_str(&format!("{om}: {}\n", v.join(" ")));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let n: usize = lines
            .next()
            .and_then(|l| l.strip_prefix("n "))
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::Parse("beta cache: missing header".into()))?;
        let mut index = Vec::new();
        let mut rows = Vec::new();
        for l in lines.filter(|l| !l.trim().is_empty()) {
            let (om, vals) = l.split_once(':').ok_or_else(|| Error::Parse(format!("beta cache line {l:?}")))?;
            index.push(OmegaIndex::parse(om.trim().trim_start_matches('(').trim_end_matches(')'))?);
            let row: std::result::Result<Vec<BigInt>, _> = vals.split_whitespace().map(|v| v.parse::<BigInt>()).collect();
            rows.push(row.map_err(|_| Error::Parse(format!("beta cache line {l:?}")))?);
        }
        let b = BetaMatrix { n, index, rows };
        if b.index != omega_indices(n as u32, n) || b.rows.iter().any(|r| r.len() != b.index.len()) {
            return Err(Error::Parse("beta cache does not match the partitions of n".into()));
        }
        Ok(b)
    }
}

/// Cached matrix for `n`.
pub fn beta_matrix(n: usize) -> Result<Arc<BetaMatrix>> {
    let cache = BETA_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().unwrap().get(&n) {
        return Ok(b.clone());
    }
    let b = Arc::new(BetaMatrix::compute(n)?);
    cache.lock().unwrap().insert(n, b.clone());
    Ok(b)
}

/// Every matrix computed or seeded so far, by `n`.
pub fn cached_beta_matrices() -> Vec<Arc<BetaMatrix>> {
    let cache = BETA_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut v: Vec<Arc<BetaMatrix>> = cache.lock().unwrap().values().cloned().collect();
    v.sort_by_key(|b| b.n);
    v
}

/// Put a matrix (for instance one read from disk) in the cache.
pub fn seed_beta_cache(b: BetaMatrix) {
    let cache = BETA_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    cache.lock().unwrap().insert(b.n, Arc::new(b));
}

/// Chern numbers keyed by exponent vector `(l_1..l_n)`.
#[derive(Clone, PartialEq, Eq)]
pub struct ChernTable {
    pub n: usize,
    pub values: BTreeMap<OmegaIndex, BigInt>,
}

/// `c1^2*c2`
pub fn chern_monomial_name(l: &OmegaIndex) -> String {
    let mut parts = Vec::new();
    for (k, &e) in l.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("c{}", k + 1)),
            _ => parts.push(format!("c{}^{e}", k + 1)),
        }
    }
    parts.join("*")
}

impl ChernTable {
    pub fn get(&self, name: &str) -> Option<&BigInt> {
        self.values.iter().find(|(l, _)| chern_monomial_name(l) == name).map(|(_, v)| v)
    }

    pub fn entries(&self) -> Vec<(String, BigInt)> {
        self.values.iter().map(|(l, v)| (chern_monomial_name(l), v.clone())).collect()
    }
}

/// JSON row `{partition, value}`; the partition is written `c1^2*c2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChernEntry {
    pub partition: String,
    pub value: String,
}

impl ChernTable {
    pub fn json_rows(&self) -> Vec<ChernEntry> {
        self.entries().into_iter().map(|(p, v)| ChernEntry { partition: p, value: v.to_string() }).collect()
    }
}

impl fmt::Debug for ChernTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries()).finish()
    }
}

/// Solve `A x = b` over Z by fraction-free elimination; integrality is checked.
pub fn solve_integer_system(a: &[Vec<BigInt>], b: &[BigInt]) -> Result<Vec<BigInt>> {
    let n = a.len();
    let mut m: Vec<Vec<BigInt>> = a.iter().zip(b).map(|(r, v)| r.iter().cloned().chain([v.clone()]).collect()).collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&r| !m[r][k].is_zero()).ok_or_else(|| Error::NonIntegerSolution("singular system".into()))?;
        m.swap(k, p);
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut s = Rational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            s -= Rational::from_integer(m[i][j].clone()) * &x[j];
        }
        x[i] = s / Rational::from_integer(m[i][i].clone());
    }
    x.into_iter()
        .map(|v| if v.is_integer() { Ok(v.to_integer()) } else { Err(Error::NonIntegerSolution(v.to_string())) })
        .collect()
}

fn check_keys(n: usize, keys: &[OmegaIndex], have: impl Fn(&OmegaIndex) -> bool) -> Result<()> {
    match keys.iter().find(|k| !have(k)) {
        Some(k) => Err(Error::Invalid(format!("missing entry {k} for n = {n}"))),
        None => Ok(()),
    }
}

pub fn s_to_chern(s: &BTreeMap<OmegaIndex, BigInt>, n: usize) -> Result<ChernTable> {
    let beta = beta_matrix(n)?;
    let s: BTreeMap<OmegaIndex, BigInt> = s.iter().map(|(k, v)| (k.padded(n), v.clone())).collect();
    check_keys(n, &beta.index, |k| s.contains_key(k))?;
    let rhs: Vec<BigInt> = beta.index.iter().map(|k| s[k].clone()).collect();
    let c = solve_integer_system(&beta.rows, &rhs)?;
    Ok(ChernTable { n, values: beta.index.iter().cloned().zip(c).collect() })
}

pub fn chern_to_s(c: &ChernTable) -> Result<BTreeMap<OmegaIndex, BigInt>> {
    let beta = beta_matrix(c.n)?;
    check_keys(c.n, &beta.index, |k| c.values.contains_key(k))?;
    Ok(beta
        .index
        .iter()
        .zip(&beta.rows)
        .map(|(om, row)| (om.clone(), row.iter().zip(&beta.index).map(|(b, xi)| b * &c.values[xi]).sum()))
        .collect())
}
