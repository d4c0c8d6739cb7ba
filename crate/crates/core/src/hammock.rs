//! Cluster-hammock functions and the compatibility relation they define.
//!
//! `h_x` is `-1` at `x`, `0` on the rest of the slice through `x`, and is extended around `Γ_C`
//! by `h(z) + h(τz) = Σ_{y→z} max(h(y), 0)`. Two distinct indecomposables are compatible (lie
//! in a common cluster-tilting object) exactly when `h_x(y) = 0`.

use rayon::prelude::*;

use crate::cluster_ar::{ClusterArQuiver, MeshRule};
use crate::error::{Error, Result};

/// Bit set over the vertices of `Γ_C`; `E_8` has exactly 128 vertices.
pub type VertexSet = u128;

pub const MAX_VERTICES: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HammockFunction {
    pub base: usize,
    pub values: Vec<i64>,
}

/// Computes `h_x`, asserting its defining properties.
pub fn hammock(g: &ClusterArQuiver, x: usize) -> Result<HammockFunction> {
    let (slice, _) = g.slice_through(x);
    let known: Vec<(usize, i64)> = slice.iter().map(|&y| (y, if y == x { -1 } else { 0 })).collect();
    let values = g.propagate(MeshRule::SumOfMaxima, &known).map_err(|e| match e {
        Error::WrapInconsistency { .. } => Error::Invariant(format!("hammock at {}: {e}", g.id(x))),
        other => other,
    })?;
    for (v, &h) in values.iter().enumerate() {
        if (v == x) != (h == -1) || h < -1 {
            return Err(Error::Invariant(format!("hammock at {} takes value {h} at {}", g.id(x), g.id(v))));
        }
    }
    Ok(HammockFunction { base: x, values })
}

/// All hammocks of `Γ_C`, with the compatibility graph they induce.
#[derive(Debug, Clone)]
pub struct HammockTable {
    rows: Vec<HammockFunction>,
    compat: Vec<VertexSet>,
}

impl HammockTable {
    pub fn build(g: &ClusterArQuiver) -> Result<Self> {
        if g.len() > MAX_VERTICES {
            return Err(Error::Invariant(format!("{} vertices exceed the bit-set width", g.len())));
        }
        let rows: Vec<HammockFunction> = (0..g.len()).into_par_iter().map(|x| hammock(g, x)).collect::<Result<_>>()?;
        let mut compat = vec![0u128; g.len()];
        for x in 0..g.len() {
            for y in 0..g.len() {
                if x == y {
                    continue;
                }
                let a = rows[x].values[y] == 0;
                let b = rows[y].values[x] == 0;
                if a != b {
                    return Err(Error::Invariant(format!(
                        "compatibility is not symmetric for {} and {}",
                        g.id(x),
                        g.id(y)
                    )));
                }
                if a {
                    compat[x] |= 1u128 << y;
                }
            }
        }
        Ok(HammockTable { rows, compat })
    }

    pub fn get(&self, x: usize) -> &HammockFunction {
        &self.rows[x]
    }

    pub fn value(&self, x: usize, y: usize) -> i64 {
        self.rows[x].values[y]
    }

    /// Vertices compatible with `x`, excluding `x` itself.
    pub fn compatible_set(&self, x: usize) -> VertexSet {
        self.compat[x]
    }

    pub fn ext_compatible(&self, x: usize, y: usize) -> Result<bool> {
        if x == y {
            return Err(Error::Invariant("compatibility is only defined for distinct vertices".into()));
        }
        Ok(self.compat[x] >> y & 1 == 1)
    }

    pub fn pairwise_compatible(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(a, &x)| set[a + 1..].iter().all(|&y| x != y && self.compat[x] >> y & 1 == 1))
    }
}

/// Whether `h` satisfies every mesh of the tropical rule (hammocks are tropical friezes).
pub fn is_frieze_on_meshes(g: &ClusterArQuiver, h: &HammockFunction) -> Result<bool> {
    Ok(g.mesh_violations(MeshRule::Tropical, &h.values)?.is_empty())
}

/// Maximal cliques of the compatibility graph restricted to `allowed`, as sorted vertex lists.
pub fn maximal_cliques(compat: &[VertexSet], allowed: VertexSet) -> Vec<Vec<usize>> {
    fn bk(compat: &[VertexSet], r: VertexSet, mut p: VertexSet, mut x: VertexSet, out: &mut Vec<VertexSet>) {
        if p == 0 {
            if x == 0 {
                out.push(r);
            }
            return;
        }
        let pu = p | x;
        let pivot = pu.trailing_zeros() as usize;
        let mut best = pivot;
        let mut best_count = (p & compat[pivot]).count_ones();
        let mut rest = pu;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let c = (p & compat[u]).count_ones();
            if c > best_count {
                best = u;
                best_count = c;
            }
        }
        let mut cand = p & !compat[best];
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let bit = 1u128 << v;
            bk(compat, r | bit, p & compat[v], x & compat[v], out);
            p &= !bit;
            x |= bit;
        }
    }
    let restricted: Vec<VertexSet> = compat.iter().map(|&c| c & allowed).collect();
    let mut raw = Vec::new();
    bk(&restricted, 0, allowed, 0, &mut raw);
    let mut out: Vec<Vec<usize>> = raw.into_iter().map(bits_to_vec).collect();
    out.sort();
    out
}

pub fn bits_to_vec(mut s: VertexSet) -> Vec<usize> {
    let mut v = Vec::with_capacity(s.count_ones() as usize);
    while s != 0 {
        v.push(s.trailing_zeros() as usize);
        s &= s - 1;
    }
    v
}

pub fn all_vertices(len: usize) -> VertexSet {
    if len == 128 {
        u128::MAX
    } else {
        (1u128 << len) - 1
    }
}

/// All cluster-tilting objects, i.e. maximal pairwise compatible sets; each must have `n` elements.
pub fn enumerate_cluster_tilting(g: &ClusterArQuiver, table: &HammockTable) -> Result<Vec<Vec<usize>>> {
    let cliques = maximal_cliques(&table.compat, all_vertices(g.len()));
    if let Some(bad) = cliques.iter().find(|c| c.len() != g.rank()) {
        return Err(Error::Invariant(format!("maximal compatible set of size {} (rank {})", bad.len(), g.rank())));
    }
    Ok(cliques)
}

/// All tilting modules: maximal compatible sets of module vertices, each of size `n`.
pub fn enumerate_tilting_modules(g: &ClusterArQuiver, table: &HammockTable) -> Result<Vec<Vec<usize>>> {
    let modules = (0..g.len()).filter(|&v| g.vertex(v).is_module()).fold(0u128, |s, v| s | 1u128 << v);
    let cliques = maximal_cliques(&table.compat, modules);
    if let Some(bad) = cliques.iter().find(|c| c.len() != g.rank()) {
        return Err(Error::Invariant(format!("maximal partial tilting module of size {}", bad.len())));
    }
    Ok(cliques)
}
