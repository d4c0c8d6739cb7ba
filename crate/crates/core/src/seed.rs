//! Cluster-tilting seeds, their mutation, index transport and the `f_{T,m}` family.
//!
//! A seed lists its summands in the order inherited from the initial seed `(P_1, …, P_n)`
//! along its mutation path: mutation at `k` replaces the `k`-th summand in place. Indices and
//! coefficient vectors use the same positions.
//!
//! The pairing `⟨F(ind_T X), m⟩` is a plain dot product: `F(T_i)` is the projective `End(T)`-module
//! at `i` and `⟨P_i, S_j⟩ = dim Hom(P_i, S_j) − dim Ext¹(P_i, S_j) = δ_ij`.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use crate::category::ClusterCategory;
use crate::cluster_ar::ObjectExpr;
use crate::dynkin::{positive_part, ExchangeQuiver};
use crate::error::{Error, Result};
use crate::hammock::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    pub summands: Vec<usize>,
    /// Quiver of `End(T)`, vertices in summand order.
    pub quiver: ExchangeQuiver,
    /// Mutation directions from the initial seed, 0-based.
    pub path: Vec<usize>,
}

/// Order-independent identity of a seed: the set of its summands.
pub type SeedKey = VertexSet;

impl Seed {
    pub fn key(&self) -> SeedKey {
        self.summands.iter().fold(0u128, |k, &v| k | 1u128 << v)
    }

    pub fn rank(&self) -> usize {
        self.summands.len()
    }

    pub fn position(&self, v: usize) -> Option<usize> {
        self.summands.iter().position(|&s| s == v)
    }

    /// `T = {M[0,1], SP[1]} path=[2,1]`.
    pub fn render(&self, cat: &ClusterCategory) -> String {
        let ids: Vec<&str> = self.summands.iter().map(|&v| cat.ar().id(v)).collect();
        let path: Vec<String> = self.path.iter().map(|k| (k + 1).to_string()).collect();
        format!("T = {{{}}} path=[{}]", ids.join(", "), path.join(","))
    }

    /// `E = ⊕_r [b_rk]_+ T_r` and `E' = ⊕_s [b_ks]_+ T_s` for the exchange at `k`.
    pub fn exchange_middles(&self, k: usize) -> (ObjectExpr, ObjectExpr) {
        let mut e = ObjectExpr::zero();
        let mut e_prime = ObjectExpr::zero();
        for r in 0..self.rank() {
            e.add(self.summands[r], positive_part(self.quiver.entry(r, k)) as u32);
            e_prime.add(self.summands[r], positive_part(self.quiver.entry(k, r)) as u32);
        }
        (e, e_prime)
    }
}

pub fn initial_seed(cat: &ClusterCategory) -> Seed {
    let g = cat.ar();
    Seed { summands: g.initial_slices().0, quiver: g.quiver().clone(), path: Vec::new() }
}

/// Index of `x` with respect to `kQ`, in the `[P_i]` basis.
pub fn baseline_index(cat: &ClusterCategory, x: usize) -> Vec<i64> {
    cat.ar().g0(x).to_vec()
}

/// The unique exchange partner of the `k`-th summand.
pub fn exchange_partner(cat: &ClusterCategory, s: &Seed, k: usize) -> Result<usize> {
    if k >= s.rank() {
        return Err(Error::VertexOutOfRange(k + 1));
    }
    let table = cat.hammocks();
    let mut cand = crate::hammock::all_vertices(cat.ar().len());
    for (i, &t) in s.summands.iter().enumerate() {
        if i != k {
            cand &= table.compatible_set(t);
        }
    }
    cand &= !(1u128 << s.summands[k]);
    if cand.count_ones() != 1 {
        return Err(Error::ExchangePartner {
            vertex: cat.ar().id(s.summands[k]).to_string(),
            count: cand.count_ones() as usize,
        });
    }
    Ok(cand.trailing_zeros() as usize)
}

pub fn mutate_seed(cat: &ClusterCategory, s: &Seed, k: usize) -> Result<Seed> {
    let partner = exchange_partner(cat, s, k)?;
    let mut summands = s.summands.clone();
    summands[k] = partner;
    let mut path = s.path.clone();
    path.push(k);
    Ok(Seed { summands, quiver: s.quiver.mutate(k)?, path })
}

/// Follows `path` from the initial seed.
pub fn seed_from_path(cat: &ClusterCategory, path: &[usize]) -> Result<Seed> {
    path.iter().try_fold(initial_seed(cat), |s, &k| mutate_seed(cat, &s, k))
}

/// All seeds visited by `s.path`, starting with the initial seed and ending with `s`.
pub fn seeds_along_path(cat: &ClusterCategory, path: &[usize]) -> Result<Vec<Seed>> {
    let mut out = vec![initial_seed(cat)];
    for &k in path {
        let next = mutate_seed(cat, out.last().expect("nonempty"), k)?;
        out.push(next);
    }
    Ok(out)
}

/// `φ_±` at `k` for the quiver `b` of the seed being mutated.
pub fn transport_vector(v: &[i64], b: &ExchangeQuiver, k: usize) -> Result<Vec<i64>> {
    let vk = v[k];
    let mut out = v.to_vec();
    out[k] = vk.checked_neg().ok_or(Error::Overflow("index transport"))?;
    for r in 0..v.len() {
        if r == k {
            continue;
        }
        let coeff = if vk >= 0 { positive_part(b.entry(r, k)) } else { positive_part(b.entry(k, r)) };
        let delta = vk.checked_mul(coeff).ok_or(Error::Overflow("index transport"))?;
        out[r] = out[r].checked_add(delta).ok_or(Error::Overflow("index transport"))?;
    }
    Ok(out)
}

/// Index with respect to `μ_k(s)` of an object whose index with respect to `s` is `v`.
pub fn transport_index(v: &[i64], s: &Seed, k: usize) -> Result<Vec<i64>> {
    transport_vector(v, &s.quiver, k)
}

/// Indices of every vertex of `Γ_C` with respect to `s`, transported along `s.path`.
pub fn index_table(cat: &ClusterCategory, s: &Seed) -> Result<Vec<Vec<i64>>> {
    let g = cat.ar();
    let mut table: Vec<Vec<i64>> = (0..g.len()).map(|x| g.g0(x).to_vec()).collect();
    let mut b = g.quiver().clone();
    for &k in &s.path {
        for row in table.iter_mut() {
            *row = transport_vector(row, &b, k)?;
        }
        b = b.mutate(k)?;
    }
    Ok(table)
}

pub fn index(cat: &ClusterCategory, s: &Seed, x: usize) -> Result<Vec<i64>> {
    let g = cat.ar();
    let mut v = g.g0(x).to_vec();
    let mut b = g.quiver().clone();
    for &k in &s.path {
        v = transport_vector(&v, &b, k)?;
        b = b.mutate(k)?;
    }
    Ok(v)
}

fn dot(a: &[i64], b: &[i64]) -> Result<i64> {
    a.iter().zip(b).try_fold(0i64, |acc, (&x, &y)| {
        x.checked_mul(y).and_then(|p| acc.checked_add(p)).ok_or(Error::Overflow("pairing"))
    })
}

/// `f_{T,m}(X) = ⟨F(ind_T X), m⟩` for every vertex `X`.
pub fn f_t_m(cat: &ClusterCategory, s: &Seed, m: &[i64]) -> Result<Vec<i64>> {
    if m.len() != s.rank() {
        return Err(Error::DimensionMismatch { expected: s.rank(), got: m.len() });
    }
    index_table(cat, s)?.iter().map(|v| dot(v, m)).collect()
}

/// `⟨S_i, m⟩_a = Σ_j [b_ij]_+ m_j − Σ_j [b_ji]_+ m_j`.
pub fn pairing_a(s: &Seed, m: &[i64]) -> Vec<i64> {
    let n = s.rank();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| positive_part(s.quiver.entry(i, j)) * m[j] - positive_part(s.quiver.entry(j, i)) * m[j])
                .sum()
        })
        .collect()
}

/// Whether `⟨S_i, m⟩_a ≥ 0` for every simple `S_i`; equivalent to `f_{T,m}` being a frieze.
pub fn pairing_criterion(s: &Seed, m: &[i64]) -> bool {
    pairing_a(s, m).iter().all(|&x| x >= 0)
}

/// `g_i(T) = Σ_r [b_ri]_+ f(T_r) − Σ_s [b_is]_+ f(T_s)`.
pub fn g_of(values: &[i64], s: &Seed) -> Vec<i64> {
    let n = s.rank();
    let f: Vec<i64> = s.summands.iter().map(|&v| values[v]).collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|r| positive_part(s.quiver.entry(r, i)) * f[r] - positive_part(s.quiver.entry(i, r)) * f[r])
                .sum()
        })
        .collect()
}

/// How [`normal_form`] found its seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Strategy {
    /// Mutating at the first positive coordinate of `g` reached an admissible seed.
    Greedy { steps: usize },
    /// The greedy walk revisited a seed; the mutation graph was scanned instead.
    Exhaustive { scanned: usize },
}

#[derive(Debug, Clone)]
pub struct NormalForm {
    pub seed: Seed,
    pub m: Vec<i64>,
    pub strategy: Strategy,
}

/// A seed `T''` with `g(T'') ≤ 0` together with `m'' = (f(T''_1), …, f(T''_n))`, so `f = f_{T'',m''}`.
pub fn normal_form(cat: &ClusterCategory, values: &[i64]) -> Result<NormalForm> {
    let admissible = |s: &Seed| g_of(values, s).iter().all(|&x| x <= 0);
    let mut s = initial_seed(cat);
    let mut visited = HashSet::new();
    let mut steps = 0;
    let mut found = None;
    loop {
        if !visited.insert(s.key()) {
            break;
        }
        let g = g_of(values, &s);
        match g.iter().position(|&x| x > 0) {
            None => {
                found = Some((s.clone(), Strategy::Greedy { steps }));
                break;
            }
            Some(k) => {
                s = mutate_seed(cat, &s, k)?;
                steps += 1;
            }
        }
    }
    if found.is_none() {
        let graph = cat.graph()?;
        let hit = graph.nodes.iter().position(admissible);
        found = hit.map(|i| (graph.nodes[i].clone(), Strategy::Exhaustive { scanned: i + 1 }));
    }
    let (seed, strategy) = found.ok_or_else(|| Error::Invariant("no seed with g(T) <= 0 exists".into()))?;
    let m: Vec<i64> = seed.summands.iter().map(|&v| values[v]).collect();
    if !pairing_criterion(&seed, &m) {
        return Err(Error::Invariant(format!("criterion fails at {}", seed.render(cat))));
    }
    if f_t_m(cat, &seed, &m)? != values {
        return Err(Error::Invariant(format!("f_(T,m) differs from the frieze at {}", seed.render(cat))));
    }
    Ok(NormalForm { seed, m, strategy })
}

/// Seeds on which `values` is non-negative, respectively non-positive, on every summand.
pub fn sign_coherent_tilters(cat: &ClusterCategory, values: &[i64]) -> Result<(Seed, Seed)> {
    let graph = cat.graph()?;
    let find = |pred: &dyn Fn(i64) -> bool| {
        graph.nodes.iter().find(|s| s.summands.iter().all(|&v| pred(values[v]))).cloned()
    };
    let pos = find(&|x| x >= 0).ok_or_else(|| Error::Invariant("no seed with non-negative values".into()))?;
    let neg = find(&|x| x <= 0).ok_or_else(|| Error::Invariant("no seed with non-positive values".into()))?;
    Ok((pos, neg))
}

/// A relation `f(L) + f(M) = max(f(E), f(E'))` that every tropical frieze satisfies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub l: usize,
    pub m: usize,
    /// Middle term of the triangle ending in `l`.
    pub e: ObjectExpr,
    /// Middle term of the triangle ending in `m`.
    pub e_prime: ObjectExpr,
    pub from_mesh: bool,
    pub from_exchange: bool,
}

impl Relation {
    pub fn render(&self, cat: &ClusterCategory) -> String {
        let g = cat.ar();
        format!("{} / {} (E = {}, E' = {})", g.id(self.l), g.id(self.m), self.e.render(g), self.e_prime.render(g))
    }
}

#[derive(Debug, Clone)]
pub struct MutationGraph {
    /// One representative per cluster-tilting object, in breadth-first order.
    pub nodes: Vec<Seed>,
    pub lookup: HashMap<SeedKey, usize>,
    /// Undirected edges `(a, k, b)` with `a < b`; `k` is the direction at `a`.
    pub edges: Vec<(usize, usize, usize)>,
    /// Exchange relations from the edges, followed by the mesh relations not already among them.
    pub relations: Vec<Relation>,
}

impl MutationGraph {
    pub fn build(cat: &ClusterCategory) -> Result<Self> {
        let g = cat.ar();
        let start = initial_seed(cat);
        let mut nodes = vec![start.clone()];
        let mut lookup = HashMap::from([(start.key(), 0usize)]);
        let mut edges = BTreeMap::new();
        let mut relations: Vec<Relation> = Vec::new();
        let mut rel_index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            let s = nodes[a].clone();
            for k in 0..s.rank() {
                let t = mutate_seed(cat, &s, k)?;
                let b = match lookup.get(&t.key()) {
                    Some(&b) => {
                        check_same_quiver(cat, &t, &nodes[b])?;
                        b
                    }
                    None => {
                        let b = nodes.len();
                        lookup.insert(t.key(), b);
                        nodes.push(t.clone());
                        queue.push_back(b);
                        b
                    }
                };
                if a < b {
                    edges.entry((a, b)).or_insert(k);
                }
                let (e, e_prime) = s.exchange_middles(k);
                let (x, y) = (s.summands[k], t.summands[k]);
                let rel = normalized(x, y, e, e_prime);
                insert_relation(cat, &mut relations, &mut rel_index, rel, false)?;
            }
        }
        for z in 0..g.len() {
            let (tz, middles) = g.mesh_at(z);
            let rel = normalized(z, tz, middles, ObjectExpr::zero());
            insert_relation(cat, &mut relations, &mut rel_index, rel, true)?;
        }
        let edges = edges.into_iter().map(|((a, b), k)| (a, k, b)).collect();
        Ok(MutationGraph { nodes, lookup, edges, relations })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn find(&self, key: SeedKey) -> Option<&Seed> {
        self.lookup.get(&key).map(|&i| &self.nodes[i])
    }

    pub fn to_json(&self, cat: &ClusterCategory) -> serde_json::Value {
        let g = cat.ar();
        let ids = |s: &Seed| s.summands.iter().map(|&v| g.id(v).to_string()).collect::<Vec<_>>();
        let nodes: Vec<serde_json::Value> = self
            .nodes
            .iter()
            .map(|s| {
                serde_json::json!({
                    "summands": ids(s),
                    "path": s.path.iter().map(|k| k + 1).collect::<Vec<_>>(),
                    "quiver": s.quiver.to_json(),
                })
            })
            .collect();
        let edges: Vec<serde_json::Value> =
            self.edges.iter().map(|&(a, k, b)| serde_json::json!({"from": a, "to": b, "direction": k + 1})).collect();
        let expr = |e: &ObjectExpr| e.iter().map(|(v, m)| serde_json::json!({"vertex": g.id(v), "mult": m})).collect::<Vec<_>>();
        let relations: Vec<serde_json::Value> = self
            .relations
            .iter()
            .map(|r| {
                serde_json::json!({
                    "l": g.id(r.l),
                    "m": g.id(r.m),
                    "e": expr(&r.e),
                    "e_prime": expr(&r.e_prime),
                    "mesh": r.from_mesh,
                    "exchange": r.from_exchange,
                })
            })
            .collect();
        serde_json::json!({
            "type": g.dynkin().to_string(),
            "orientation": g.orientation(),
            "nodes": nodes,
            "edges": edges,
            "relations": relations,
        })
    }
}

fn normalized(x: usize, y: usize, e_into_x: ObjectExpr, e_into_y: ObjectExpr) -> Relation {
    if x < y {
        Relation { l: x, m: y, e: e_into_x, e_prime: e_into_y, from_mesh: false, from_exchange: false }
    } else {
        Relation { l: y, m: x, e: e_into_y, e_prime: e_into_x, from_mesh: false, from_exchange: false }
    }
}

fn insert_relation(
    cat: &ClusterCategory,
    relations: &mut Vec<Relation>,
    index: &mut HashMap<(usize, usize), usize>,
    mut rel: Relation,
    mesh: bool,
) -> Result<()> {
    match index.get(&(rel.l, rel.m)) {
        Some(&i) => {
            let old = &mut relations[i];
            if old.e != rel.e || old.e_prime != rel.e_prime {
                return Err(Error::Invariant(format!(
                    "inconsistent middle terms: {} versus {}",
                    old.render(cat),
                    rel.render(cat)
                )));
            }
            if mesh {
                old.from_mesh = true;
            } else {
                old.from_exchange = true;
            }
        }
        None => {
            rel.from_mesh = mesh;
            rel.from_exchange = !mesh;
            index.insert((rel.l, rel.m), relations.len());
            relations.push(rel);
        }
    }
    Ok(())
}

/// The quiver of a cluster-tilting object must not depend on the path used to reach it.
fn check_same_quiver(cat: &ClusterCategory, a: &Seed, b: &Seed) -> Result<()> {
    let perm: Vec<usize> = a.summands.iter().map(|&v| b.position(v).expect("same summand set")).collect();
    let n = a.rank();
    for i in 0..n {
        for j in 0..n {
            if a.quiver.entry(i, j) != b.quiver.entry(perm[i], perm[j]) {
                return Err(Error::Invariant(format!(
                    "quiver of {} depends on the mutation path",
                    b.render(cat)
                )));
            }
        }
    }
    Ok(())
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Greedy { steps } => write!(f, "greedy ({steps} mutations)"),
            Strategy::Exhaustive { scanned } => write!(f, "exhaustive ({scanned} seeds scanned)"),
        }
    }
}
