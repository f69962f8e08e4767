use smallvec::SmallVec;
use std::cmp::Ordering;
use std::fmt;

/// Exponent vector. Geometric monomials have the fixed arity of their arena;
/// generator monomials (over a_1, a_2, ...) are stored with trailing zeros trimmed.
///
/// Ordering is graded lexicographic: total degree first, then the first
/// differing exponent (missing entries count as zero).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub SmallVec<[u16; 8]>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(SmallVec::from_elem(0, arity))
    }

    pub fn from_slice(e: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn var(arity: usize, i: usize, e: u16) -> Self {
        let mut m = Self::one(arity);
        m.0[i] = e;
        m
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Weight when read as a generator monomial: weight(a_i) = i.
    pub fn weight(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, &e)| (i as u32 + 1) * e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn get(&self, i: usize) -> u16 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let n = self.0.len().max(o.0.len());
        let mut v: SmallVec<[u16; 8]> = SmallVec::with_capacity(n);
        for i in 0..n {
            v.push(self.get(i) + o.get(i));
        }
        Monomial(v)
    }

    /// `self / o` if `o` divides `self`.
    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        let n = self.0.len().max(o.0.len());
        let mut v: SmallVec<[u16; 8]> = SmallVec::with_capacity(n);
        for i in 0..n {
            let (a, b) = (self.get(i), o.get(i));
            if a < b {
                return None;
            }
            v.push(a - b);
        }
        Some(Monomial(v))
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        (0..self.0.len().max(o.0.len())).all(|i| self.get(i) <= o.get(i))
    }

    pub fn trimmed(mut self) -> Monomial {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    pub fn padded(&self, n: usize) -> Monomial {
        let mut v = self.0.clone();
        while v.len() < n {
            v.push(0);
        }
        Monomial(v)
    }

    /// Apply a permutation of positions: result[perm[i]] = self[i].
    pub fn permute(&self, perm: &[usize]) -> Monomial {
        let mut v: SmallVec<[u16; 8]> = SmallVec::from_elem(0, self.0.len());
        for (i, &p) in perm.iter().enumerate() {
            v[p] = self.0[i];
        }
        Monomial(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| {
            let n = self.0.len().max(o.0.len());
            for i in 0..n {
                match self.get(i).cmp(&o.get(i)) {
                    Ordering::Equal => continue,
                    c => return c,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Render `x1^2*x3` style text; returns an empty string for the unit monomial.
pub fn render_monomial(m: &Monomial, name: &dyn Fn(usize) -> String) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(name(i)),
            _ => parts.push(format!("{}^{}", name(i), e)),
        }
    }
    parts.join("*")
}
