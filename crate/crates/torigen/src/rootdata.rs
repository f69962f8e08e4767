//! Root data of the supported homogeneous spaces: U(n) and SU(n) modulo
//! block subgroups, and G2/SU(3). Weyl cosets index the torus fixed points;
//! the weights at a fixed point are the coset representative applied to the
//! signed complementary roots.

use crate::error::{Error, Result};
use crate::exactalg::{Arena, MultiPoly};
use num_integer::Integer;
use std::collections::{BTreeMap, VecDeque};
use std::fmt;

pub const GRAMMAR: &str = "space descriptors:
  U(n)/U(k1)x...xU(km)     with k1+...+km = n
  U(n)/Tn                  full flag manifold
  SU(n)/S(U(k1)x...xU(km)) blocks are ordered by decreasing size
  G2/SU(3)                 the six-sphere
  CPn                      projective space U(n+1)/U(n)xU(1)
structures: --structure standard|conjugate|J1|J2|J3, or --signs +,-,... in root order";

/// Integer vector in Z^k, read as the linear form `sum c_i x_i`.
pub type TorusWeight = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Unitary { n: usize, special: bool },
    G2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousSpaceSpec {
    pub descriptor: String,
    pub group: GroupKind,
    /// Block sizes of the subgroup (unitary case), in coordinate order.
    pub blocks: Vec<usize>,
    pub rank: usize,
    /// Complementary roots, unsigned.
    pub roots: Vec<TorusWeight>,
    /// Structure signs, one per complementary root.
    pub signs: Vec<i8>,
    pub structure: String,
}

/// Weyl group element acting on weights by `c -> M c`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub matrix: Vec<Vec<i64>>,
    /// One-line notation (0-based) for permutation elements.
    pub perm: Option<Vec<usize>>,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    pub label: String,
    pub weights: Vec<TorusWeight>,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointData {
    pub rank: usize,
    pub points: Vec<FixedPoint>,
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

impl WeylElement {
    pub fn identity(k: usize) -> Self {
        let m = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
        WeylElement { matrix: m, perm: Some((0..k).collect()), label: "e".into() }
    }

    /// `x_i -> x_{p[i]}`.
    pub fn from_perm(p: &[usize]) -> Self {
        let k = p.len();
        let mut m = vec![vec![0; k]; k];
        for (i, &pi) in p.iter().enumerate() {
            m[pi][i] = 1;
        }
        let label = p.iter().map(|&i| (i + 1).to_string()).collect::<Vec<_>>().join("");
        WeylElement { matrix: m, perm: Some(p.to_vec()), label }
    }

    pub fn from_matrix(m: Vec<Vec<i64>>, label: &str) -> Self {
        WeylElement { matrix: m, perm: None, label: label.into() }
    }

    pub fn apply(&self, c: &[i64]) -> TorusWeight {
        self.matrix.iter().map(|row| row.iter().zip(c).map(|(a, b)| a * b).sum()).collect()
    }

    /// `self * o` (apply `o` first).
    pub fn compose(&self, o: &WeylElement) -> WeylElement {
        let k = self.matrix.len();
        let m = (0..k)
            .map(|i| (0..k).map(|j| (0..k).map(|l| self.matrix[i][l] * o.matrix[l][j]).sum()).collect())
            .collect();
        let perm = match (&self.perm, &o.perm) {
            (Some(p), Some(q)) => Some(q.iter().map(|&i| p[i]).collect()),
            _ => None,
        };
        WeylElement { matrix: m, perm, label: format!("{}{}", self.label, o.label) }
    }

    pub fn determinant_sign(&self) -> i64 {
        det(&self.matrix).signum()
    }

    /// Images of the coordinate functions: `x_i -> sum_r M[r][i] x_r`.
    pub fn substitution(&self, arena: &Arena) -> Vec<MultiPoly> {
        let k = self.matrix.len();
        (0..k).map(|i| MultiPoly::linear(arena, &(0..k).map(|r| self.matrix[r][i]).collect::<Vec<_>>())).collect()
    }
}

fn det(m: &[Vec<i64>]) -> i64 {
    let k = m.len();
    if k == 1 {
        return m[0][0];
    }
    let mut s = 0;
    for j in 0..k {
        let minor: Vec<Vec<i64>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect()).collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        s += sign * m[0][j] * det(&minor);
    }
    s
}

fn g2_sa() -> WeylElement {
    WeylElement::from_matrix(vec![vec![-1, 1], vec![0, 1]], "sa")
}

fn g2_sb() -> WeylElement {
    WeylElement::from_matrix(vec![vec![0, 1], vec![1, 0]], "sb")
}

fn su3_generators() -> Vec<WeylElement> {
    vec![
        WeylElement::from_matrix(vec![vec![0, 1], vec![1, 0]], "(12)"),
        WeylElement::from_matrix(vec![vec![1, -1], vec![0, -1]], "(23)"),
    ]
}

/// Breadth-first closure of the group generated by `gens`, in word order.
pub fn generate_group(gens: &[WeylElement], k: usize) -> Vec<WeylElement> {
    let id = WeylElement::identity(k);
    let mut seen: BTreeMap<Vec<Vec<i64>>, ()> = BTreeMap::new();
    seen.insert(id.matrix.clone(), ());
    let mut out = vec![WeylElement { perm: None, ..id.clone() }];
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = g.compose(s);
            if seen.insert(h.matrix.clone(), ()).is_none() {
                let label = if g.label == "e" { s.label.clone() } else { format!("{}.{}", g.label, s.label) };
                let h = WeylElement { label, perm: None, ..h };
                out.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    out
}

fn parse_int(s: &str, what: &str) -> Result<usize> {
    s.trim().parse::<usize>().map_err(|_| Error::Parse(format!("expected {what}, got {s:?}\n{GRAMMAR}")))
}

/// `U(k)` -> k
fn parse_u(s: &str) -> Result<usize> {
    let s = s.trim();
    let inner = s
        .strip_prefix("U(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected U(k), got {s:?}\n{GRAMMAR}")))?;
    parse_int(inner, "block size")
}

fn parse_blocks(s: &str) -> Result<Vec<usize>> {
    s.split(['x', '×']).map(parse_u).collect()
}

impl HomogeneousSpaceSpec {
    fn unitary(descriptor: &str, n: usize, special: bool, blocks: Vec<usize>) -> Result<Self> {
        if blocks.iter().sum::<usize>() != n || blocks.contains(&0) {
            return Err(Error::Parse(format!("blocks {blocks:?} do not sum to {n}\n{GRAMMAR}")));
        }
        if n < 2 || blocks.len() < 2 {
            return Err(Error::UnsupportedGroup(format!("{descriptor}: quotient must have at least two blocks")));
        }
        let mut block_of = Vec::new();
        for (b, &k) in blocks.iter().enumerate() {
            block_of.extend(std::iter::repeat_n(b, k));
        }
        let mut roots = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if block_of[i] != block_of[j] {
                    let mut r = vec![0; n];
                    r[i] = 1;
                    r[j] = -1;
                    roots.push(r);
                }
            }
        }
        let m = roots.len();
        Ok(HomogeneousSpaceSpec {
            descriptor: descriptor.to_string(),
            group: GroupKind::Unitary { n, special },
            blocks,
            rank: n,
            roots,
            signs: vec![1; m],
            structure: "standard".into(),
        })
    }

    fn g2() -> Self {
        HomogeneousSpaceSpec {
            descriptor: "G2/SU(3)".into(),
            group: GroupKind::G2,
            blocks: vec![],
            rank: 2,
            roots: vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            signs: vec![1; 3],
            structure: "standard".into(),
        }
    }

    /// Complex dimension `n` (number of complementary roots).
    pub fn dim(&self) -> usize {
        self.roots.len()
    }

    /// `dim G - dim H` as real dimensions.
    pub fn real_codimension(&self) -> usize {
        match &self.group {
            GroupKind::Unitary { n, .. } => n * n - self.blocks.iter().map(|k| k * k).sum::<usize>(),
            GroupKind::G2 => 14 - 8,
        }
    }

    pub fn arena(&self) -> Arena {
        Arena::xs(self.rank)
    }

    /// The signed roots `eps_j alpha_j`.
    pub fn signed_roots(&self) -> Vec<TorusWeight> {
        self.roots.iter().zip(&self.signs).map(|(r, &s)| r.iter().map(|c| c * s as i64).collect()).collect()
    }

    fn is_m10(&self) -> bool {
        matches!(self.group, GroupKind::Unitary { n: 4, .. }) && self.blocks == [2, 1, 1]
    }

    /// Install a named structure.
    pub fn with_structure(mut self, name: &str) -> Result<Self> {
        let n = self.dim();
        let signs: Vec<i8> = match name {
            "standard" => vec![1; n],
            "conjugate" => vec![-1; n],
            "J1" | "J2" | "J3" if self.is_m10() => match name {
                "J1" => vec![1, 1, 1, 1, 1],
                "J2" => vec![1, -1, 1, -1, -1],
                _ => vec![1, -1, 1, -1, 1],
            },
            "J1" | "J2" | "J3" => {
                return Err(Error::Invalid(format!("structure {name} is only defined for SU(4)/S(U(1)xU(1)xU(2))")))
            }
            _ => return Err(Error::Parse(format!("unknown structure {name:?}\n{GRAMMAR}"))),
        };
        self.signs = signs;
        self.structure = name.to_string();
        Ok(self)
    }

    /// Explicit signs in complementary-root order.
    pub fn with_signs(mut self, signs: &[i8]) -> Result<Self> {
        if signs.len() != self.dim() || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Invalid(format!("need {} signs of +1/-1, got {signs:?}", self.dim())));
        }
        self.signs = signs.to_vec();
        self.structure = signs.iter().map(|&s| if s > 0 { "+" } else { "-" }).collect::<Vec<_>>().join(",");
        Ok(self)
    }

    /// Simple reflections generating the Weyl group of G.
    pub fn weyl_generators(&self) -> Vec<WeylElement> {
        match &self.group {
            GroupKind::Unitary { n, .. } => (0..n - 1)
                .map(|i| {
                    let mut p: Vec<usize> = (0..*n).collect();
                    p.swap(i, i + 1);
                    let mut w = WeylElement::from_perm(&p);
                    w.label = format!("s{}", i + 1);
                    w
                })
                .collect(),
            GroupKind::G2 => vec![g2_sa(), g2_sb()],
        }
    }

    /// Generators of the Weyl group of H.
    pub fn subgroup_generators(&self) -> Vec<WeylElement> {
        match &self.group {
            GroupKind::Unitary { n, .. } => {
                let mut gens = Vec::new();
                let mut start = 0;
                for &k in &self.blocks {
                    for i in start..start + k - 1 {
                        let mut p: Vec<usize> = (0..*n).collect();
                        p.swap(i, i + 1);
                        gens.push(WeylElement::from_perm(&p));
                    }
                    start += k;
                }
                gens
            }
            GroupKind::G2 => su3_generators(),
        }
    }
}

impl fmt::Display for HomogeneousSpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.descriptor)
    }
}

/// Parse a space descriptor; the structure is the standard one.
pub fn build_space(text: &str) -> Result<HomogeneousSpaceSpec> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "G2/SU(3)" {
        return Ok(HomogeneousSpaceSpec::g2());
    }
    if let Some(rest) = t.strip_prefix("CP") {
        let n = parse_int(rest, "dimension")?;
        if n == 0 {
            return Err(Error::Parse(format!("CP0 is a point\n{GRAMMAR}")));
        }
        return HomogeneousSpaceSpec::unitary(&t, n + 1, false, vec![n, 1]);
    }
    let (g, h) = t.split_once('/').ok_or_else(|| Error::Parse(format!("missing '/' in {text:?}\n{GRAMMAR}")))?;
    if let Some(inner) = g.strip_prefix("SU(").and_then(|r| r.strip_suffix(')')) {
        let n = parse_int(inner, "group rank")?;
        let blocks_text = h
            .strip_prefix("S(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected S(U(k1)x...) in {text:?}\n{GRAMMAR}")))?;
        let mut blocks = parse_blocks(blocks_text)?;
        blocks.sort_unstable_by(|a, b| b.cmp(a));
        return HomogeneousSpaceSpec::unitary(&t, n, true, blocks);
    }
    if g.starts_with("U(") {
        let n = parse_u(g)?;
        let blocks = match h.strip_prefix('T') {
            Some(k) => {
                let k = parse_int(k.trim_start_matches('^'), "torus rank")?;
                if k != n {
                    return Err(Error::Parse(format!("torus T{k} in U({n})\n{GRAMMAR}")));
                }
                vec![1; n]
            }
            None => parse_blocks(h)?,
        };
        return HomogeneousSpaceSpec::unitary(&t, n, false, blocks);
    }
    Err(Error::UnsupportedGroup(format!("{text}\n{GRAMMAR}")))
}

/// Minimal-length representatives of `W_G / W_H`.
pub fn weyl_cosets(spec: &HomogeneousSpaceSpec) -> Vec<WeylElement> {
    match &spec.group {
        GroupKind::Unitary { n, .. } => {
            // Permutations increasing on every block, in lexicographic order.
            let mut block_of = Vec::new();
            for (b, &k) in spec.blocks.iter().enumerate() {
                block_of.extend(std::iter::repeat_n(b, k));
            }
            crate::symmfunc::permutations(*n)
                .into_iter()
                .map(|(p, _)| p)
                .filter(|p| (0..n - 1).all(|i| block_of[i] != block_of[i + 1] || p[i] < p[i + 1]))
                .map(|p| WeylElement::from_perm(&p))
                .collect()
        }
        GroupKind::G2 => {
            let group = generate_group(&spec.weyl_generators(), spec.rank);
            let sub = generate_group(&spec.subgroup_generators(), spec.rank);
            let mut reps: Vec<WeylElement> = Vec::new();
            let mut covered: Vec<Vec<Vec<i64>>> = Vec::new();
            for g in group {
                if covered.contains(&g.matrix) {
                    continue;
                }
                for h in &sub {
                    covered.push(g.compose(h).matrix);
                }
                reps.push(g);
            }
            reps
        }
    }
}

pub fn euler_characteristic(spec: &HomogeneousSpaceSpec) -> usize {
    match &spec.group {
        GroupKind::Unitary { n, .. } => {
            let fact = |k: usize| (1..=k).product::<usize>();
            fact(*n) / spec.blocks.iter().map(|&k| fact(k)).product::<usize>()
        }
        GroupKind::G2 => {
            generate_group(&spec.weyl_generators(), 2).len() / generate_group(&spec.subgroup_generators(), 2).len()
        }
    }
}

pub fn check_primitive(w: &[i64]) -> Result<()> {
    let g = w.iter().fold(0i64, |g, &c| g.gcd(&c));
    match g {
        0 => Err(Error::ZeroWeight),
        1 => Ok(()),
        _ => Err(Error::NonPrimitiveWeight(format!("{w:?}"))),
    }
}

/// Weights `w(eps_j alpha_j)` at every coset; all signs +1.
pub fn fixed_point_weights(spec: &HomogeneousSpaceSpec) -> Result<FixedPointData> {
    let roots = spec.signed_roots();
    let mut points = Vec::new();
    for w in weyl_cosets(spec) {
        let weights: Vec<TorusWeight> = roots.iter().map(|r| w.apply(r)).collect();
        for x in &weights {
            check_primitive(x)?;
        }
        points.push(FixedPoint { label: w.label.clone(), weights, sign: 1 });
    }
    Ok(FixedPointData { rank: spec.rank, points })
}

impl FixedPointData {
    /// Complex dimension (weights per point).
    pub fn dim(&self) -> usize {
        self.points.first().map(|p| p.weights.len()).unwrap_or(0)
    }

    pub fn arena(&self) -> Arena {
        Arena::xs(self.rank)
    }

    pub fn signed_count(&self) -> i64 {
        self.points.iter().map(|p| p.sign as i64).sum()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        for p in &self.points {
            if p.weights.len() != n {
                return Err(Error::Invalid("fixed points with different numbers of weights".into()));
            }
            for w in &p.weights {
                if w.len() != self.rank {
                    return Err(Error::Invalid(format!("weight {w:?} not in Z^{}", self.rank)));
                }
                check_primitive(w)?;
            }
        }
        Ok(())
    }
}

/// Whether every generator permutes the fixed points' weight multisets.
pub fn orbit_consistent(fp: &FixedPointData, gens: &[WeylElement]) -> bool {
    let key = |ws: &[TorusWeight]| {
        let mut v = ws.to_vec();
        v.sort();
        v
    };
    let mut base: Vec<Vec<TorusWeight>> = fp.points.iter().map(|p| key(&p.weights)).collect();
    base.sort();
    gens.iter().all(|g| {
        let mut moved: Vec<Vec<TorusWeight>> =
            fp.points.iter().map(|p| key(&p.weights.iter().map(|w| g.apply(w)).collect::<Vec<_>>())).collect();
        moved.sort();
        moved == base
    })
}

/// Render a weight as a linear form in `x1..xk`.
pub fn render_weight(w: &[i64]) -> String {
    let a = Arena::xs(w.len());
    MultiPoly::linear(&a, w).render()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weights_text(fp: &FixedPointData, i: usize) -> Vec<String> {
        fp.points[i].weights.iter().map(|w| render_weight(w)).collect()
    }

    #[test]
    fn flag_roots() {
        let s = build_space("U(3)/T3").unwrap();
        assert_eq!(s.roots, vec![vec![1, -1, 0], vec![1, 0, -1], vec![0, 1, -1]]);
        assert_eq!((s.rank, s.dim()), (3, 3));
        assert_eq!(weyl_cosets(&s).len(), 6);
    }

    #[test]
    fn grassmannian_roots() {
        let s = build_space("U(4)/U(2)xU(2)").unwrap();
        let r: Vec<String> = s.roots.iter().map(|w| render_weight(w)).collect();
        assert_eq!(r, ["x1 - x3", "x1 - x4", "x2 - x3", "x2 - x4"]);
        assert_eq!(weyl_cosets(&s).len(), 6);
        assert_eq!(s.real_codimension(), 2 * s.dim());
    }

    #[test]
    fn g2_data() {
        let s = build_space("G2/SU(3)").unwrap();
        assert_eq!(s.roots, vec![vec![1, 0], vec![0, 1], vec![-1, -1]]);
        assert_eq!(generate_group(&s.weyl_generators(), 2).len(), 12);
        assert_eq!(generate_group(&s.subgroup_generators(), 2).len(), 6);
        let fp = fixed_point_weights(&s).unwrap();
        assert_eq!(fp.points.len(), 2);
        assert_eq!(weights_text(&fp, 0), ["x1", "x2", "-x1 - x2"]);
        assert_eq!(weights_text(&fp, 1), ["-x1", "x1 + x2", "-x2"]);
        assert_eq!(euler_characteristic(&s), 2);
    }

    #[test]
    fn cp1_and_m10() {
        let fp = fixed_point_weights(&build_space("CP1").unwrap()).unwrap();
        assert_eq!(weights_text(&fp, 0), ["x1 - x2"]);
        assert_eq!(weights_text(&fp, 1), ["-x1 + x2"]);
        let m10 = build_space("SU(4)/S(U(1)xU(1)xU(2))").unwrap().with_structure("J1").unwrap();
        let fp = fixed_point_weights(&m10).unwrap();
        assert_eq!(fp.points.len(), 12);
        assert_eq!(weights_text(&fp, 0), ["x1 - x3", "x1 - x4", "x2 - x3", "x2 - x4", "x3 - x4"]);
    }

    #[test]
    fn euler_counts() {
        assert_eq!(euler_characteristic(&build_space("U(4)/T4").unwrap()), 24);
        for q in 1..5 {
            let s = build_space(&format!("U({})/U({})xU(2)", q + 2, q)).unwrap();
            assert_eq!(euler_characteristic(&s), (q + 2) * (q + 1) / 2);
            assert_eq!(weyl_cosets(&s).len(), euler_characteristic(&s));
        }
    }

    #[test]
    fn descriptor_errors() {
        assert!(matches!(build_space("U(4)/U(2)xU(1)"), Err(Error::Parse(_))));
        assert!(matches!(build_space("Sp(2)/T2"), Err(Error::UnsupportedGroup(_))));
        assert!(matches!(build_space("U(3)/T3").unwrap().with_structure("J2"), Err(Error::Invalid(_))));
        assert!(matches!(check_primitive(&[2, -2]), Err(Error::NonPrimitiveWeight(_))));
    }

    #[test]
    fn orbits_are_stable() {
        for d in ["U(3)/T3", "U(4)/U(2)xU(2)", "G2/SU(3)", "SU(4)/S(U(1)xU(1)xU(2))", "CP3"] {
            let s = build_space(d).unwrap();
            let fp = fixed_point_weights(&s).unwrap();
            assert!(orbit_consistent(&fp, &s.weyl_generators()), "{d}");
        }
    }
}
