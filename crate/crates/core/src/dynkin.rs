//! Simply laced Dynkin diagrams, their orientations and skew-symmetric exchange matrices.
//!
//! Vertices are 0-based internally and 1-based in every user-facing string. Diagram
//! numbering: `A_n` is the path `1 - 2 - ... - n`; `D_n` is the path `1 - ... - (n-1)` with
//! `n` attached to `n-2`; `E_n` follows Bourbaki (`1-3-4-5-6-7-8` with `2` attached to `4`).
//!
//! Modules over a quiver are finite-dimensional *right* modules. With that choice an arrow
//! `i -> j` of `Q` gives an irreducible map `P_i -> P_j` between indecomposable projectives,
//! `P_i` is supported on the vertices having a path to `i`, and the quiver of `End(kQ)` in the
//! cluster category is `Q` itself. Every other convention in the crate follows from this one.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DynkinType {
    family: Family,
    rank: usize,
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if !ok {
            return Err(Error::InvalidType(format!("{family:?}{rank}")));
        }
        Ok(DynkinType { family, rank })
    }

    pub fn a(rank: usize) -> Self {
        Self::new(Family::A, rank).expect("A_n needs n >= 1")
    }

    pub fn d(rank: usize) -> Self {
        Self::new(Family::D, rank).expect("D_n needs n >= 4")
    }

    pub fn e(rank: usize) -> Self {
        Self::new(Family::E, rank).expect("E_n needs n in 6..=8")
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Undirected edges of the diagram, 0-based, each with the smaller endpoint first.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A => (0..n - 1).map(|i| (i, i + 1)).collect(),
            Family::D => {
                let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 1));
                e
            }
            Family::E => {
                // Bourbaki: 1-3, 2-4, 3-4, 4-5, 5-6, 6-7, 7-8
                let mut e = vec![(0, 2), (1, 3), (2, 3)];
                for i in 3..n - 1 {
                    e.push((i, i + 1));
                }
                e
            }
        }
    }

    pub fn coxeter_number(&self) -> usize {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, _) => n + 1,
            (Family::D, _) => 2 * n - 2,
            (Family::E, 6) => 12,
            (Family::E, 7) => 18,
            (Family::E, 8) => 30,
            _ => unreachable!("rank checked at construction"),
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(Error::InvalidType(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidType(s.to_string()))?;
        DynkinType::new(family, rank)
    }
}

/// Cartan matrix, Coxeter number and number of positive roots of a diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanData {
    pub matrix: Vec<Vec<i64>>,
    pub coxeter_number: usize,
    pub positive_roots: usize,
}

pub fn cartan_data(t: DynkinType) -> CartanData {
    let n = t.rank();
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (i, j) in t.edges() {
        c[i][j] = -1;
        c[j][i] = -1;
    }
    let roots = positive_roots(&c);
    let h = t.coxeter_number();
    assert_eq!(roots.len() * 2, n * h, "|positive roots| must equal n*h/2 for {t}");
    CartanData { matrix: c, coxeter_number: h, positive_roots: roots.len() }
}

/// Positive roots by closure of the simple roots under simple reflections.
fn positive_roots(cartan: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let n = cartan.len();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(root) = queue.pop_front() {
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| cartan[i][j] * root[j]).sum();
            let mut image = root.clone();
            image[i] -= pairing;
            if image.iter().all(|&x| x >= 0) && seen.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    seen
}

/// `[b]_+ = max(b, 0)`.
pub fn positive_part(b: i64) -> i64 {
    b.max(0)
}

/// A quiver without loops or 2-cycles, stored as its skew-symmetric exchange matrix
/// (`b[i][j]` = arrows `i -> j` minus arrows `j -> i`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExchangeQuiver {
    b: Vec<Vec<i64>>,
    #[serde(skip, default)]
    labels: Vec<String>,
}

impl ExchangeQuiver {
    pub fn new(b: Vec<Vec<i64>>) -> Result<Self> {
        let n = b.len();
        for (i, row) in b.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidQuiver(format!("row {} has length {}", i + 1, row.len())));
            }
            if row[i] != 0 {
                return Err(Error::InvalidQuiver(format!("loop at vertex {}", i + 1)));
            }
            for j in 0..n {
                if b[i][j] != -b[j][i] {
                    return Err(Error::InvalidQuiver(format!(
                        "not skew-symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let labels = (1..=n).map(|i| i.to_string()).collect();
        Ok(ExchangeQuiver { b, labels })
    }

    /// Quiver on `n` vertices from a list of 0-based arrows; repeated arrows add up.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        let mut b = vec![vec![0i64; n]; n];
        for &(i, j) in arrows {
            if i >= n {
                return Err(Error::VertexOutOfRange(i + 1));
            }
            if j >= n {
                return Err(Error::VertexOutOfRange(j + 1));
            }
            if i == j {
                return Err(Error::InvalidQuiver(format!("loop at vertex {}", i + 1)));
            }
            if b[i][j] < 0 {
                return Err(Error::InvalidQuiver(format!("2-cycle between {} and {}", i + 1, j + 1)));
            }
            b[i][j] += 1;
            b[j][i] -= 1;
        }
        Self::new(b)
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.b[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.b
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Number of arrows `i -> j`.
    pub fn arrows_between(&self, i: usize, j: usize) -> i64 {
        positive_part(self.b[i][j])
    }

    /// All arrows as `(source, target, multiplicity)`, 0-based, sorted.
    pub fn arrows(&self) -> Vec<(usize, usize, i64)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.b[i][j] > 0 {
                    out.push((i, j, self.b[i][j]));
                }
            }
        }
        out
    }

    /// Fomin–Zelevinsky mutation at vertex `k`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let n = self.n();
        if k >= n {
            return Err(Error::VertexOutOfRange(k + 1));
        }
        let b = &self.b;
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                out[i][j] = if i == k || j == k {
                    b[j][i]
                } else {
                    b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
                };
            }
        }
        Ok(ExchangeQuiver { b: out, labels: self.labels.clone() })
    }

    /// Topological order of the vertices (sources first), or `None` if there is an oriented cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.n();
        let mut indegree: Vec<i64> = (0..n).map(|j| (0..n).map(|i| self.arrows_between(i, j)).sum()).collect();
        let mut ready: BTreeSet<usize> = (0..n).filter(|&j| indegree[j] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(&i) = ready.iter().next() {
            ready.remove(&i);
            order.push(i);
            for j in 0..n {
                let m = self.arrows_between(i, j);
                if m > 0 {
                    indegree[j] -= m;
                    if indegree[j] == 0 {
                        ready.insert(j);
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Textual form `type=A3; arrows=1>2,2>3`.
    pub fn to_text(&self, t: Option<DynkinType>) -> String {
        let mut arrows = Vec::new();
        for (i, j, m) in self.arrows() {
            for _ in 0..m {
                arrows.push(format!("{}>{}", i + 1, j + 1));
            }
        }
        match t {
            Some(t) => format!("type={t}; arrows={}", arrows.join(",")),
            None => format!("n={}; arrows={}", self.n(), arrows.join(",")),
        }
    }

    /// JSON form `{"n":3,"b":[[0,1,0],[-1,0,1],[0,-1,0]]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "n": self.n(), "b": self.b })
    }
}

/// Parses a comma-separated 1-based arrow list such as `1>2,2>3` into 0-based pairs.
pub fn parse_arrow_list(s: &str) -> Result<Vec<(usize, usize)>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            let (a, b) = tok
                .trim()
                .split_once('>')
                .ok_or_else(|| Error::Parse(format!("arrow `{tok}` is not of the form i>j")))?;
            let parse = |x: &str| -> Result<usize> {
                let v: usize = x.trim().parse().map_err(|_| Error::Parse(format!("bad vertex `{x}`")))?;
                if v == 0 {
                    return Err(Error::Parse("vertices are numbered from 1".into()));
                }
                Ok(v - 1)
            };
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}

/// Parses `type=A3; arrows=1>2,2>3`. The arrows must orient the diagram.
pub fn parse_quiver_text(s: &str) -> Result<(DynkinType, ExchangeQuiver)> {
    let mut ty = None;
    let mut arrows = None;
    for part in s.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got `{part}`")))?;
        match key.trim() {
            "type" => ty = Some(value.parse::<DynkinType>()?),
            "arrows" => arrows = Some(parse_arrow_list(value)?),
            other => return Err(Error::Parse(format!("unknown key `{other}`"))),
        }
    }
    let ty = ty.ok_or_else(|| Error::Parse("missing `type=`".into()))?;
    let arrows = arrows.unwrap_or_default();
    let q = orient(ty, &Orientation::Arrows(arrows))?;
    Ok((ty, q))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Every edge from the smaller to the larger vertex (`1 -> 2 -> ... -> n` in type A).
    Linear,
    /// Bipartite: vertices at even distance from vertex 1 are sources.
    Alternating,
    /// Explicit 0-based arrows, one per edge.
    Arrows(Vec<(usize, usize)>),
}

impl Orientation {
    /// Stable name used in file keys and JSON (`linear`, `alternating` or `1>2,2>3`).
    pub fn label(&self) -> String {
        match self {
            Orientation::Linear => "linear".into(),
            Orientation::Alternating => "alternating".into(),
            Orientation::Arrows(a) => {
                a.iter().map(|(i, j)| format!("{}>{}", i + 1, j + 1)).collect::<Vec<_>>().join(",")
            }
        }
    }
}

impl FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "linear" => Ok(Orientation::Linear),
            "alternating" => Ok(Orientation::Alternating),
            other => Ok(Orientation::Arrows(parse_arrow_list(other)?)),
        }
    }
}

/// Orients the diagram of `t`, checking that each edge is used exactly once and the result is acyclic.
pub fn orient(t: DynkinType, orientation: &Orientation) -> Result<ExchangeQuiver> {
    let n = t.rank();
    let edges = t.edges();
    let arrows: Vec<(usize, usize)> = match orientation {
        Orientation::Linear => edges.clone(),
        Orientation::Alternating => {
            let mut colour = vec![usize::MAX; n];
            colour[0] = 0;
            let mut queue = VecDeque::from([0usize]);
            while let Some(v) = queue.pop_front() {
                for &(a, b) in &edges {
                    let w = if a == v { b } else if b == v { a } else { continue };
                    if colour[w] == usize::MAX {
                        colour[w] = 1 - colour[v];
                        queue.push_back(w);
                    }
                }
            }
            edges.iter().map(|&(a, b)| if colour[a] == 0 { (a, b) } else { (b, a) }).collect()
        }
        Orientation::Arrows(arrows) => {
            let wanted: BTreeSet<(usize, usize)> = edges.iter().copied().collect();
            let mut used = BTreeSet::new();
            for &(i, j) in arrows {
                if i >= n || j >= n {
                    return Err(Error::VertexOutOfRange(i.max(j) + 1));
                }
                let e = (i.min(j), i.max(j));
                if !wanted.contains(&e) {
                    return Err(Error::InvalidOrientation(format!(
                        "{}>{} is not an edge of {t}",
                        i + 1,
                        j + 1
                    )));
                }
                if !used.insert(e) {
                    return Err(Error::InvalidOrientation(format!(
                        "edge {}-{} oriented twice",
                        e.0 + 1,
                        e.1 + 1
                    )));
                }
            }
            if let Some(&(a, b)) = wanted.difference(&used).next() {
                return Err(Error::InvalidOrientation(format!("edge {}-{} is missing", a + 1, b + 1)));
            }
            arrows.clone()
        }
    };
    let q = ExchangeQuiver::from_arrows(n, &arrows)?;
    if !q.is_acyclic() {
        return Err(Error::InvalidOrientation("orientation contains an oriented cycle".into()));
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3_linear() -> ExchangeQuiver {
        orient(DynkinType::a(3), &Orientation::Linear).unwrap()
    }

    #[test]
    fn rank_constraints() {
        assert!(DynkinType::new(Family::A, 0).is_err());
        assert!(DynkinType::new(Family::D, 3).is_err());
        assert!(DynkinType::new(Family::E, 9).is_err());
        assert_eq!("d5".parse::<DynkinType>().unwrap(), DynkinType::d(5));
        assert!("B3".parse::<DynkinType>().is_err());
    }

    #[test]
    fn a3_linear_orientation() {
        let q = a3_linear();
        assert_eq!(q.matrix(), &[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]);
        assert_eq!(q.to_json().to_string(), r#"{"b":[[0,1,0],[-1,0,1],[0,-1,0]],"n":3}"#);
    }

    #[test]
    fn a1_has_no_arrows() {
        let q = orient(DynkinType::a(1), &Orientation::Linear).unwrap();
        assert_eq!(q.n(), 1);
        assert!(q.arrows().is_empty());
        assert_eq!(q.mutate(0).unwrap(), q);
    }

    #[test]
    fn d4_alternating_is_acyclic_with_hub_arrows() {
        let q = orient(DynkinType::d(4), &Orientation::Alternating).unwrap();
        assert!(q.is_acyclic());
        let hub = 1;
        let touching = q.arrows().iter().filter(|&&(i, j, _)| i == hub || j == hub).count();
        assert_eq!(touching, 3);
        assert_eq!(q.arrows().len(), 3);
    }

    #[test]
    fn orientation_errors() {
        let t = DynkinType::a(3);
        assert!(matches!(orient(t, &Orientation::Arrows(vec![(0, 1)])), Err(Error::InvalidOrientation(_))));
        assert!(matches!(
            orient(t, &Orientation::Arrows(vec![(0, 1), (1, 0), (1, 2)])),
            Err(Error::InvalidOrientation(_))
        ));
        assert!(matches!(
            orient(t, &Orientation::Arrows(vec![(0, 2), (1, 2)])),
            Err(Error::InvalidOrientation(_))
        ));
    }

    #[test]
    fn mutate_a3_at_middle() {
        // b'_{12} = b_{21} = -1, b'_{23} = b_{32} = -1, b'_{13} = 0 + (1*1 + 1*1)/2 = 1
        let m = a3_linear().mutate(1).unwrap();
        assert_eq!(m.arrows(), vec![(0, 2, 1), (1, 0, 1), (2, 1, 1)]);
    }

    #[test]
    fn cartan_counts() {
        let a1 = cartan_data(DynkinType::a(1));
        assert_eq!((a1.coxeter_number, a1.positive_roots), (2, 1));
        let a2 = cartan_data(DynkinType::a(2));
        assert_eq!((a2.coxeter_number, a2.positive_roots), (3, 3));
        let d4 = cartan_data(DynkinType::d(4));
        assert_eq!((d4.coxeter_number, d4.positive_roots), (6, 12));
        assert_eq!(cartan_data(DynkinType::e(8)).positive_roots, 120);
    }

    /// Positive roots of a simply laced diagram are the nonzero vectors `d >= 0` with `q(d) = 1`.
    fn brute_force_root_count(t: DynkinType, bound: i64) -> usize {
        let c = cartan_data(t).matrix;
        let n = t.rank();
        let mut count = 0;
        let mut d = vec![0i64; n];
        loop {
            let mut k = 0;
            while k < n && d[k] == bound {
                d[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
            d[k] += 1;
            let q: i64 = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| d[i] * c[i][j] * d[j]).sum();
            if q == 2 {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn root_counts_match_quadratic_form_enumeration() {
        assert_eq!(brute_force_root_count(DynkinType::a(2), 2), 3);
        assert_eq!(brute_force_root_count(DynkinType::d(4), 3), 12);
        assert_eq!(brute_force_root_count(DynkinType::a(4), 2), 10);
    }

    #[test]
    fn positive_part_examples() {
        assert_eq!(positive_part(-3), 0);
        assert_eq!(positive_part(0), 0);
        assert_eq!(positive_part(5), 5);
    }

    #[test]
    fn text_round_trip() {
        let (t, q) = parse_quiver_text("type=A3; arrows=1>2,2>3").unwrap();
        assert_eq!(t, DynkinType::a(3));
        assert_eq!(q, a3_linear());
        assert_eq!(q.to_text(Some(t)), "type=A3; arrows=1>2,2>3");
    }

    fn random_walk(q: &ExchangeQuiver, steps: &[usize]) -> ExchangeQuiver {
        steps.iter().fold(q.clone(), |acc, &k| acc.mutate(k % q.n()).unwrap())
    }

    fn all_small_quivers() -> Vec<(DynkinType, ExchangeQuiver)> {
        let types = [DynkinType::a(2), DynkinType::a(3), DynkinType::a(4), DynkinType::d(4)];
        types
            .iter()
            .flat_map(|&t| {
                [Orientation::Linear, Orientation::Alternating].into_iter().map(move |o| (t, orient(t, &o).unwrap()))
            })
            .collect()
    }

    #[test]
    fn mutation_class_stays_bounded() {
        // Dynkin mutation classes are finite: entries stay within 1 in type A and 2 otherwise.
        for (t, q) in all_small_quivers() {
            let bound = if t.family() == Family::A { 1 } else { 2 };
            let mut seen = BTreeSet::new();
            let mut queue = VecDeque::from([q.clone()]);
            seen.insert(q.matrix().to_vec());
            while let Some(p) = queue.pop_front() {
                for k in 0..p.n() {
                    let m = p.mutate(k).unwrap();
                    assert!(m.matrix().iter().flatten().all(|x| x.abs() <= bound), "{t}: {m:?}");
                    if seen.insert(m.matrix().to_vec()) {
                        queue.push_back(m);
                    }
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn mutation_is_an_involution(idx in 0usize..8, steps in proptest::collection::vec(0usize..8, 0..12), k in 0usize..8) {
                let qs = all_small_quivers();
                let (_, q) = &qs[idx % qs.len()];
                let p = random_walk(q, &steps);
                let k = k % p.n();
                prop_assert_eq!(p.mutate(k).unwrap().mutate(k).unwrap(), p.clone());
            }

            #[test]
            fn mutation_preserves_skew_symmetry(idx in 0usize..8, steps in proptest::collection::vec(0usize..8, 0..12)) {
                let qs = all_small_quivers();
                let (_, q) = &qs[idx % qs.len()];
                let p = random_walk(q, &steps);
                prop_assert!(ExchangeQuiver::new(p.matrix().to_vec()).is_ok());
            }
        }
    }
}
