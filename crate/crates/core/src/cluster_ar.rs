//! The Auslander–Reiten quiver of `mod kQ` and the finite AR quiver `Γ_C` of the cluster category.
//!
//! Module vertices are knitted on `ZQ` coordinates `(i, t)` starting from the projectives at
//! `t = 0`; then one vertex `ΣP_i` per vertex of `Q` is added with `τ(P_i) = ΣP_i` and
//! `τ(ΣP_i) = I_i`, and the remaining arrows are forced by the stable translation property
//! (`y -> z` implies `τz -> y`). The shift acts as `τ` on objects, so the quotient never needs an
//! explicit description of the derived shift.
//!
//! Vertex indices (`usize`) follow the knitting order, which doubles as the propagation order:
//! module vertices level by level, each level in topological order, then the `ΣP_i`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dynkin::{cartan_data, DynkinType, ExchangeQuiver, Orientation};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexKind {
    Module { dim: Vec<i64> },
    ShiftedProjective(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub kind: VertexKind,
    /// `Some(i)` if this is the projective `P_i` (0-based `i`).
    pub projective_of: Option<usize>,
    /// `Some(i)` if this is the injective `I_i`.
    pub injective_of: Option<usize>,
}

impl Vertex {
    pub fn is_projective(&self) -> bool {
        self.projective_of.is_some()
    }

    pub fn is_injective(&self) -> bool {
        self.injective_of.is_some()
    }

    pub fn is_module(&self) -> bool {
        matches!(self.kind, VertexKind::Module { .. })
    }

    pub fn dim(&self) -> Option<&[i64]> {
        match &self.kind {
            VertexKind::Module { dim } => Some(dim),
            VertexKind::ShiftedProjective(_) => None,
        }
    }
}

pub fn module_id(dim: &[i64]) -> String {
    let parts: Vec<String> = dim.iter().map(|d| d.to_string()).collect();
    format!("M[{}]", parts.join(","))
}

pub fn shifted_id(i: usize) -> String {
    format!("SP[{}]", i + 1)
}

/// A finite direct sum of indecomposables: vertex index to positive multiplicity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectExpr(BTreeMap<usize, u32>);

impl ObjectExpr {
    pub fn zero() -> Self {
        ObjectExpr(BTreeMap::new())
    }

    pub fn single(v: usize) -> Self {
        let mut e = Self::zero();
        e.add(v, 1);
        e
    }

    pub fn add(&mut self, v: usize, mult: u32) {
        if mult > 0 {
            *self.0.entry(v).or_insert(0) += mult;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|(&v, &m)| (v, m))
    }

    pub fn render(&self, g: &ClusterArQuiver) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(v, m)| if m == 1 { g.id(v).to_string() } else { format!("{}^{}", g.id(v), m) })
            .collect();
        parts.join(" + ")
    }
}

impl FromIterator<(usize, u32)> for ObjectExpr {
    fn from_iter<I: IntoIterator<Item = (usize, u32)>>(iter: I) -> Self {
        let mut e = ObjectExpr::zero();
        for (v, m) in iter {
            e.add(v, m);
        }
        e
    }
}

/// Which max-plus recursion is propagated around the meshes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshRule {
    /// `f(z) + f(τz) = max(Σ_{y→z} f(y), 0)`.
    Tropical,
    /// `f(z) + f(τz) = Σ_{y→z} max(f(y), 0)`.
    SumOfMaxima,
}

/// A mesh relation that fails for a given value table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeshViolation {
    pub vertex: usize,
    /// `f(z) + f(τz)`.
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Debug, Clone)]
pub struct ClusterArQuiver {
    dynkin: DynkinType,
    orientation: String,
    quiver: ExchangeQuiver,
    vertices: Vec<Vertex>,
    by_id: HashMap<String, usize>,
    preds: Vec<Vec<(usize, u32)>>,
    succs: Vec<Vec<(usize, u32)>>,
    tau: Vec<usize>,
    tau_inv: Vec<usize>,
    projectives: Vec<usize>,
    injectives: Vec<usize>,
    shifted: Vec<usize>,
    g0: Vec<Vec<i64>>,
    projective_schedule: Vec<usize>,
}

/// `paths[a][b]` = number of paths `a -> b` in an acyclic quiver, trivial paths included.
fn path_counts(q: &ExchangeQuiver, topo: &[usize]) -> Vec<Vec<i64>> {
    let n = q.n();
    let mut paths = vec![vec![0i64; n]; n];
    for a in 0..n {
        paths[a][a] = 1;
        for &b in topo {
            for c in 0..n {
                let m = q.arrows_between(c, b);
                if m > 0 && c != b {
                    paths[a][b] += paths[a][c] * m;
                }
            }
        }
    }
    paths
}

impl ClusterArQuiver {
    /// Builds `Γ_C` for an orientation of the diagram of `t`.
    pub fn build(t: DynkinType, orientation: &Orientation) -> Result<Self> {
        let q = crate::dynkin::orient(t, orientation)?;
        Self::from_quiver(t, orientation.label(), q)
    }

    pub fn from_quiver(t: DynkinType, orientation: String, q: ExchangeQuiver) -> Result<Self> {
        let n = t.rank();
        if q.n() != n {
            return Err(Error::DimensionMismatch { expected: n, got: q.n() });
        }
        let topo = q.topological_order().ok_or_else(|| Error::InvalidOrientation("oriented cycle".into()))?;
        let paths = path_counts(&q, &topo);
        let proj_dims: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| paths[j][i]).collect()).collect();
        let inj_dims: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| paths[i][j]).collect()).collect();
        let cartan = cartan_data(t);

        let mut vertices: Vec<Vertex> = Vec::new();
        let mut by_id: HashMap<String, usize> = HashMap::new();
        let mut arrows: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        let mut tau: Vec<Option<usize>> = Vec::new();
        let mut at: HashMap<(usize, usize), usize> = HashMap::new();

        let add_module = |dim: Vec<i64>,
                              vertices: &mut Vec<Vertex>,
                              by_id: &mut HashMap<String, usize>,
                              tau: &mut Vec<Option<usize>>|
         -> Result<usize> {
            let id = module_id(&dim);
            if by_id.contains_key(&id) {
                return Err(Error::Knitting(format!("dimension vector {id} produced twice")));
            }
            let projective_of = proj_dims.iter().position(|p| *p == dim);
            let injective_of = inj_dims.iter().position(|p| *p == dim);
            let v = vertices.len();
            by_id.insert(id.clone(), v);
            vertices.push(Vertex { id, kind: VertexKind::Module { dim }, projective_of, injective_of });
            tau.push(None);
            Ok(v)
        };

        for &i in &topo {
            let v = add_module(proj_dims[i].clone(), &mut vertices, &mut by_id, &mut tau)?;
            at.insert((i, 0), v);
            for j in 0..n {
                if q.arrows_between(j, i) > 0 {
                    arrows.insert((at[&(j, 0)], v), q.arrows_between(j, i) as u32);
                }
            }
        }

        let max_levels = 2 * cartan.coxeter_number + 2;
        let mut t_level = 0;
        loop {
            let mut grew = false;
            for &i in &topo {
                let Some(&z) = at.get(&(i, t_level)) else { continue };
                if vertices[z].is_injective() {
                    continue;
                }
                // successors of (i, t): (j, t) for i -> j and (j, t + 1) for j -> i
                let mut middles: Vec<(usize, u32)> = Vec::new();
                for j in 0..n {
                    let out = q.arrows_between(i, j);
                    if out > 0 {
                        if let Some(&y) = at.get(&(j, t_level)) {
                            middles.push((y, out as u32));
                        }
                    }
                    let inc = q.arrows_between(j, i);
                    if inc > 0 {
                        if let Some(&y) = at.get(&(j, t_level + 1)) {
                            middles.push((y, inc as u32));
                        }
                    }
                }
                let zdim = vertices[z].dim().expect("module").to_vec();
                let mut dim = vec![0i64; n];
                for &(y, m) in &middles {
                    for (d, x) in dim.iter_mut().zip(vertices[y].dim().expect("module")) {
                        *d += i64::from(m) * x;
                    }
                }
                for (d, x) in dim.iter_mut().zip(&zdim) {
                    *d -= x;
                }
                if dim.iter().any(|&d| d < 0) || dim.iter().all(|&d| d == 0) {
                    return Err(Error::Knitting(format!(
                        "τ⁻¹ of {} has dimension vector {:?}",
                        module_id(&zdim),
                        dim
                    )));
                }
                let v = add_module(dim, &mut vertices, &mut by_id, &mut tau)?;
                tau[v] = Some(z);
                at.insert((i, t_level + 1), v);
                for (y, m) in middles {
                    arrows.insert((y, v), m);
                }
                grew = true;
            }
            if !grew {
                break;
            }
            t_level += 1;
            if t_level > max_levels {
                return Err(Error::Knitting("knitting did not terminate".into()));
            }
        }
        if vertices.len() != cartan.positive_roots {
            return Err(Error::Knitting(format!(
                "{} modules knitted, expected {}",
                vertices.len(),
                cartan.positive_roots
            )));
        }

        let mut projectives = vec![usize::MAX; n];
        let mut injectives = vec![usize::MAX; n];
        for (v, vx) in vertices.iter().enumerate() {
            if let Some(i) = vx.projective_of {
                projectives[i] = v;
            }
            if let Some(i) = vx.injective_of {
                injectives[i] = v;
            }
        }
        if projectives.contains(&usize::MAX) || injectives.contains(&usize::MAX) {
            return Err(Error::Knitting("missing projective or injective".into()));
        }

        let mut shifted = vec![usize::MAX; n];
        for &i in &topo {
            let v = vertices.len();
            let id = shifted_id(i);
            by_id.insert(id.clone(), v);
            vertices.push(Vertex {
                id,
                kind: VertexKind::ShiftedProjective(i),
                projective_of: None,
                injective_of: None,
            });
            tau.push(Some(injectives[i]));
            shifted[i] = v;
        }
        for i in 0..n {
            tau[projectives[i]] = Some(shifted[i]);
        }
        let tau: Vec<usize> = tau
            .into_iter()
            .enumerate()
            .map(|(v, t)| t.ok_or_else(|| Error::MeshClosure(format!("τ undefined at {}", vertices[v].id))))
            .collect::<Result<_>>()?;
        let total = vertices.len();
        let mut tau_inv = vec![usize::MAX; total];
        for (v, &w) in tau.iter().enumerate() {
            if tau_inv[w] != usize::MAX {
                return Err(Error::MeshClosure(format!("τ is not injective at {}", vertices[w].id)));
            }
            tau_inv[w] = v;
        }

        for (i, j, m) in q.arrows() {
            arrows.insert((shifted[i], shifted[j]), m as u32);
        }
        loop {
            let mut changed = false;
            let snapshot: Vec<((usize, usize), u32)> = arrows.iter().map(|(&k, &m)| (k, m)).collect();
            for ((y, z), m) in snapshot {
                let e = arrows.entry((tau[z], y)).or_insert(0);
                if *e < m {
                    *e = m;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }

        let mut preds = vec![Vec::new(); total];
        let mut succs = vec![Vec::new(); total];
        for (&(y, z), &m) in &arrows {
            if y == z {
                return Err(Error::MeshClosure(format!("loop at {}", vertices[y].id)));
            }
            preds[z].push((y, m));
            succs[y].push((z, m));
        }

        let mut g0 = Vec::with_capacity(total);
        for vx in &vertices {
            g0.push(match &vx.kind {
                VertexKind::Module { dim } => solve_unitriangular(&proj_dims, &topo, dim)?,
                VertexKind::ShiftedProjective(i) => {
                    let mut e = vec![0i64; n];
                    e[*i] = -1;
                    e
                }
            });
        }

        let mut g = ClusterArQuiver {
            dynkin: t,
            orientation,
            quiver: q,
            vertices,
            by_id,
            preds,
            succs,
            tau,
            tau_inv,
            projectives,
            injectives,
            shifted,
            g0,
            projective_schedule: Vec::new(),
        };
        g.check_structure()?;
        let slice = g.projectives.clone();
        g.projective_schedule = g.schedule(&slice)?;
        Ok(g)
    }

    /// Verifies the stable-translation-quiver invariants, the vertex count and connectivity.
    pub fn check_structure(&self) -> Result<()> {
        let n = self.dynkin.rank();
        let h = self.dynkin.coxeter_number();
        if self.len() * 2 != n * (h + 2) {
            return Err(Error::MeshClosure(format!("{} vertices, expected {}", self.len(), n * (h + 2) / 2)));
        }
        for z in 0..self.len() {
            let mut into: Vec<(usize, u32)> = self.preds[z].clone();
            let mut out: Vec<(usize, u32)> = self.succs[self.tau[z]].clone();
            into.sort_unstable();
            out.sort_unstable();
            if into != out {
                return Err(Error::MeshClosure(format!("mesh at {} is not closed", self.vertices[z].id)));
            }
        }
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &(w, _) in self.preds[v].iter().chain(&self.succs[v]) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
            for w in [self.tau[v], self.tau_inv[v]] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::MeshClosure("Γ_C is not connected".into()));
        }
        Ok(())
    }

    pub fn dynkin(&self) -> DynkinType {
        self.dynkin
    }

    pub fn orientation(&self) -> &str {
        &self.orientation
    }

    pub fn quiver(&self) -> &ExchangeQuiver {
        &self.quiver
    }

    pub fn rank(&self) -> usize {
        self.quiver.n()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &Vertex {
        &self.vertices[v]
    }

    pub fn id(&self, v: usize) -> &str {
        &self.vertices[v].id
    }

    pub fn lookup(&self, id: &str) -> Result<usize> {
        let key: String = id.chars().filter(|c| !c.is_whitespace()).collect();
        self.by_id.get(&key).copied().ok_or_else(|| Error::Parse(format!("no vertex `{id}` in Γ_C")))
    }

    pub fn module_with_dim(&self, dim: &[i64]) -> Option<usize> {
        self.by_id.get(&module_id(dim)).copied()
    }

    pub fn tau(&self, v: usize) -> usize {
        self.tau[v]
    }

    pub fn tau_inv(&self, v: usize) -> usize {
        self.tau_inv[v]
    }

    /// The shift; on `Γ_C` it coincides with `τ`.
    pub fn sigma(&self, v: usize) -> usize {
        self.tau[v]
    }

    pub fn preds(&self, v: usize) -> &[(usize, u32)] {
        &self.preds[v]
    }

    pub fn succs(&self, v: usize) -> &[(usize, u32)] {
        &self.succs[v]
    }

    /// All arrows `(source, target, multiplicity)`, sorted.
    pub fn arrows(&self) -> Vec<(usize, usize, u32)> {
        let mut out: Vec<_> = (0..self.len()).flat_map(|z| self.preds[z].iter().map(move |&(y, m)| (y, z, m))).collect();
        out.sort_unstable();
        out
    }

    pub fn projective(&self, i: usize) -> usize {
        self.projectives[i]
    }

    pub fn injective(&self, i: usize) -> usize {
        self.injectives[i]
    }

    pub fn shifted_projective(&self, i: usize) -> usize {
        self.shifted[i]
    }

    /// Index with respect to the initial cluster-tilting object `kQ`, in the `[P_i]` basis.
    pub fn g0(&self, v: usize) -> &[i64] {
        &self.g0[v]
    }

    /// `(τz, middles)` for the mesh ending at `z`.
    pub fn mesh_at(&self, z: usize) -> (usize, ObjectExpr) {
        (self.tau[z], self.preds[z].iter().copied().collect())
    }

    /// The projective slice and the shifted-projective slice, both in `Q`-vertex order.
    pub fn initial_slices(&self) -> (Vec<usize>, Vec<usize>) {
        (self.projectives.clone(), self.shifted.clone())
    }

    /// The slice `τ^{-t}(P_1, …, P_n)` containing `x`, in `Q`-vertex order, together with `t`.
    pub fn slice_through(&self, x: usize) -> (Vec<usize>, usize) {
        let mut v = x;
        let mut t = 0;
        loop {
            if let Some(pos) = self.projectives.iter().position(|&p| p == v) {
                let _ = pos;
                let slice = self.projectives.iter().map(|&p| self.tau_inv_pow(p, t)).collect();
                return (slice, t);
            }
            v = self.tau[v];
            t += 1;
            assert!(t <= self.len(), "τ-orbit of {} misses the projectives", self.id(x));
        }
    }

    pub fn tau_inv_pow(&self, v: usize, t: usize) -> usize {
        (0..t).fold(v, |w, _| self.tau_inv[w])
    }

    /// Order in which the vertices can be filled in from values on `known` by `z = rhs − τz`.
    pub fn schedule(&self, known: &[usize]) -> Result<Vec<usize>> {
        let total = self.len();
        let mut is_known = vec![false; total];
        let mut missing = vec![0usize; total];
        for &k in known {
            is_known[k] = true;
        }
        let deps = |z: usize| -> BTreeSet<usize> {
            let mut d: BTreeSet<usize> = self.preds[z].iter().map(|&(y, _)| y).collect();
            d.insert(self.tau[z]);
            d
        };
        let mut ready = VecDeque::new();
        for z in 0..total {
            if is_known[z] {
                continue;
            }
            missing[z] = deps(z).iter().filter(|&&d| !is_known[d]).count();
            if missing[z] == 0 {
                ready.push_back(z);
            }
        }
        let mut order = Vec::with_capacity(total);
        let mut queued = vec![false; total];
        for &z in &ready {
            queued[z] = true;
        }
        while let Some(z) = ready.pop_front() {
            order.push(z);
            is_known[z] = true;
            let mut dependents: BTreeSet<usize> = self.succs[z].iter().map(|&(w, _)| w).collect();
            dependents.insert(self.tau_inv[z]);
            for w in dependents {
                if is_known[w] || queued[w] {
                    continue;
                }
                missing[w] -= 1;
                if missing[w] == 0 {
                    queued[w] = true;
                    ready.push_back(w);
                }
            }
        }
        if let Some(z) = (0..total).find(|&z| !is_known[z]) {
            return Err(Error::Propagation(format!("{} is never reached", self.id(z))));
        }
        Ok(order)
    }

    pub fn projective_schedule(&self) -> &[usize] {
        &self.projective_schedule
    }

    /// Right-hand side of the mesh relation at `z`.
    pub fn mesh_rhs(&self, rule: MeshRule, z: usize, values: &[i64]) -> Result<i64> {
        let mut acc: i64 = 0;
        for &(y, m) in &self.preds[z] {
            let v = match rule {
                MeshRule::Tropical => values[y],
                MeshRule::SumOfMaxima => values[y].max(0),
            };
            let term = v.checked_mul(i64::from(m)).ok_or(Error::Overflow("mesh relation"))?;
            acc = acc.checked_add(term).ok_or(Error::Overflow("mesh relation"))?;
        }
        Ok(match rule {
            MeshRule::Tropical => acc.max(0),
            MeshRule::SumOfMaxima => acc,
        })
    }

    /// Fills in `values` along `schedule`; entries not in the schedule must already be set.
    pub fn fill(&self, rule: MeshRule, schedule: &[usize], values: &mut [i64]) -> Result<()> {
        for &z in schedule {
            let rhs = self.mesh_rhs(rule, z, values)?;
            values[z] = rhs.checked_sub(values[self.tau[z]]).ok_or(Error::Overflow("mesh relation"))?;
        }
        Ok(())
    }

    /// All meshes at which `values` fails the relation of `rule`, in vertex order.
    pub fn mesh_violations(&self, rule: MeshRule, values: &[i64]) -> Result<Vec<MeshViolation>> {
        let mut out = Vec::new();
        for z in 0..self.len() {
            let rhs = self.mesh_rhs(rule, z, values)?;
            let lhs = values[z].checked_add(values[self.tau[z]]).ok_or(Error::Overflow("mesh relation"))?;
            if lhs != rhs {
                out.push(MeshViolation { vertex: z, lhs, rhs });
            }
        }
        Ok(out)
    }

    /// Extends values given on `known` to all of `Γ_C` and checks every mesh afterwards.
    pub fn propagate(&self, rule: MeshRule, known: &[(usize, i64)]) -> Result<Vec<i64>> {
        let vertices: Vec<usize> = known.iter().map(|&(v, _)| v).collect();
        let schedule = if vertices == self.projectives {
            self.projective_schedule.clone()
        } else {
            self.schedule(&vertices)?
        };
        let mut values = vec![0i64; self.len()];
        for &(v, x) in known {
            values[v] = x;
        }
        self.fill(rule, &schedule, &mut values)?;
        if let Some(bad) = self.mesh_violations(rule, &values)?.into_iter().next() {
            let tz = values[self.tau[bad.vertex]];
            return Err(Error::WrapInconsistency {
                vertex: self.id(bad.vertex).to_string(),
                expected: bad.rhs - tz,
                actual: values[bad.vertex],
            });
        }
        Ok(values)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| self.id(a).cmp(self.id(b)));
        let vertices: Vec<serde_json::Value> = order
            .iter()
            .map(|&v| {
                let vx = &self.vertices[v];
                let kind = if vx.is_module() { "module" } else { "shifted_projective" };
                serde_json::json!({
                    "id": vx.id,
                    "kind": kind,
                    "dim": vx.dim(),
                    "projective": vx.is_projective(),
                    "injective": vx.is_injective(),
                })
            })
            .collect();
        let mut arrows: Vec<(String, String, u32)> =
            self.arrows().into_iter().map(|(y, z, m)| (self.id(y).to_string(), self.id(z).to_string(), m)).collect();
        arrows.sort();
        let arrows: Vec<serde_json::Value> =
            arrows.into_iter().map(|(s, d, m)| serde_json::json!({"src": s, "dst": d, "mult": m})).collect();
        let tau: BTreeMap<&str, &str> = (0..self.len()).map(|v| (self.id(v), self.id(self.tau[v]))).collect();
        serde_json::json!({
            "type": self.dynkin.to_string(),
            "orientation": self.orientation,
            "quiver": self.quiver.to_json(),
            "vertices": vertices,
            "arrows": arrows,
            "tau": tau,
        })
    }
}

impl fmt::Display for ClusterArQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Γ_C for {} ({}), {} vertices", self.dynkin, self.orientation, self.len())?;
        for (v, vx) in self.vertices.iter().enumerate() {
            let preds: Vec<&str> = self.preds[v].iter().map(|&(y, _)| self.id(y)).collect();
            writeln!(f, "  {:<16} τ = {:<16} from {}", vx.id, self.id(self.tau[v]), preds.join(", "))?;
        }
        Ok(())
    }
}

/// Solves `Σ_i c_i · proj_dims[i] = dim`; the matrix is unitriangular in topological order.
fn solve_unitriangular(proj_dims: &[Vec<i64>], topo: &[usize], dim: &[i64]) -> Result<Vec<i64>> {
    let n = dim.len();
    let mut c = vec![0i64; n];
    // proj_dims[i][j] is nonzero only if j = i or j precedes i
    for &j in topo.iter().rev() {
        let mut rest = dim[j];
        for i in 0..n {
            if i != j {
                rest -= c[i] * proj_dims[i][j];
            }
        }
        if proj_dims[j][j] != 1 {
            return Err(Error::Invariant(format!("P_{} has dimension {} at its own vertex", j + 1, proj_dims[j][j])));
        }
        c[j] = rest;
    }
    Ok(c)
}
