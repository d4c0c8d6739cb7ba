//! Tropical friezes: integer functions on `Γ_C` satisfying `f(L) + f(M) = max(f(E), f(E'))`.
//!
//! Verification covers every mesh of `Γ_C` and every exchange pair met in the mutation graph.
//! Those relations determine a frieze from its values on any single seed; whether further
//! pairs with one-dimensional extension space exist is not enumerated separately, and
//! [`FriezeCheck`] reports the scope it used.

use std::fmt;

use crate::category::ClusterCategory;
use crate::cluster_ar::{MeshRule, ObjectExpr};
use crate::error::{Error, Result};
use crate::seed::{seeds_along_path, Relation, Seed};

#[derive(Debug, Clone)]
pub struct TropicalFrieze<'a> {
    cat: &'a ClusterCategory,
    values: Vec<i64>,
}

/// Friezes are equal when they live on the same category and agree pointwise.
impl PartialEq for TropicalFrieze<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.cat, other.cat) && self.values == other.values
    }
}

impl Eq for TropicalFrieze<'_> {}

impl<'a> TropicalFrieze<'a> {
    /// Wraps a value table after checking every relation; the error carries the certificate.
    pub fn new(cat: &'a ClusterCategory, values: Vec<i64>) -> Result<Self> {
        let check = is_tropical_frieze(cat, &values)?;
        match check.certificate() {
            None => Ok(TropicalFrieze { cat, values }),
            Some(v) => Err(Error::Invariant(format!("not a tropical frieze: {}", v.render(cat)))),
        }
    }

    pub fn zero(cat: &'a ClusterCategory) -> Self {
        TropicalFrieze { cat, values: vec![0; cat.ar().len()] }
    }

    pub fn category(&self) -> &'a ClusterCategory {
        self.cat
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<i64> {
        self.values
    }

    pub fn value(&self, v: usize) -> i64 {
        self.values[v]
    }

    pub fn value_of(&self, id: &str) -> Result<i64> {
        Ok(self.values[self.cat.ar().lookup(id)?])
    }

    pub fn evaluate(&self, x: &ObjectExpr) -> Result<i64> {
        evaluate(&self.values, x)
    }

    /// Values on the summands of `s`, in summand order.
    pub fn on_seed(&self, s: &Seed) -> Vec<i64> {
        s.summands.iter().map(|&v| self.values[v]).collect()
    }

    pub fn sign_census(&self) -> SignCensus {
        sign_census(&self.values)
    }

    pub fn to_json(&self) -> serde_json::Value {
        values_json(self.cat, &self.values)
    }
}

/// `{"type":…, "orientation":…, "values":{id: value}}` with ids sorted.
pub fn values_json(cat: &ClusterCategory, values: &[i64]) -> serde_json::Value {
    let g = cat.ar();
    let map: std::collections::BTreeMap<&str, i64> = (0..g.len()).map(|v| (g.id(v), values[v])).collect();
    serde_json::json!({
        "type": g.dynkin().to_string(),
        "orientation": g.orientation(),
        "values": map,
    })
}

/// `Σ multiplicity · f(vertex)`; vertices must belong to the table.
pub fn evaluate(values: &[i64], x: &ObjectExpr) -> Result<i64> {
    x.iter().try_fold(0i64, |acc, (v, m)| {
        let f = *values.get(v).ok_or(Error::VertexOutOfRange(v + 1))?;
        f.checked_mul(i64::from(m)).and_then(|p| acc.checked_add(p)).ok_or(Error::Overflow("evaluation"))
    })
}

/// The unique frieze taking the values `a` on the summands of `s`.
pub fn from_tilting_values<'a>(cat: &'a ClusterCategory, s: &Seed, a: &[i64]) -> Result<TropicalFrieze<'a>> {
    let g = cat.ar();
    if a.len() != s.rank() {
        return Err(Error::DimensionMismatch { expected: s.rank(), got: a.len() });
    }
    let seeds = seeds_along_path(cat, &s.path)?;
    let last = seeds.last().expect("path starts at the initial seed");
    if last.summands != s.summands {
        return Err(Error::Invariant(format!("{} is not reached by its own path", s.render(cat))));
    }
    let mut known: Vec<Option<i64>> = vec![None; g.len()];
    for (&v, &x) in s.summands.iter().zip(a) {
        known[v] = Some(x);
    }
    for step in (1..seeds.len()).rev() {
        let k = s.path[step - 1];
        let here = &seeds[step];
        let (e, e_prime) = here.exchange_middles(k);
        let value = |expr: &ObjectExpr| -> Result<i64> {
            expr.iter().try_fold(0i64, |acc, (v, m)| {
                let f = known[v].ok_or_else(|| Error::Invariant(format!("{} unknown on the path", g.id(v))))?;
                f.checked_mul(i64::from(m)).and_then(|p| acc.checked_add(p)).ok_or(Error::Overflow("exchange relation"))
            })
        };
        let rhs = value(&e)?.max(value(&e_prime)?);
        let this = known[here.summands[k]].expect("summand value known");
        let other = rhs.checked_sub(this).ok_or(Error::Overflow("exchange relation"))?;
        let target = seeds[step - 1].summands[k];
        match known[target] {
            Some(prev) if prev != other => {
                return Err(Error::WrapInconsistency { vertex: g.id(target).to_string(), expected: other, actual: prev })
            }
            _ => known[target] = Some(other),
        }
    }
    let slice: Vec<(usize, i64)> = seeds[0].summands.iter().map(|&p| (p, known[p].expect("initial seed"))).collect();
    let values = g.propagate(MeshRule::Tropical, &slice)?;
    for (v, k) in known.iter().enumerate() {
        if let Some(x) = *k {
            if values[v] != x {
                return Err(Error::WrapInconsistency { vertex: g.id(v).to_string(), expected: x, actual: values[v] });
            }
        }
    }
    Ok(TropicalFrieze { cat, values })
}

/// A relation (mesh or exchange pair) that a value table fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub relation: usize,
    pub l: usize,
    pub m: usize,
    /// `f(L) + f(M)`.
    pub lhs: i64,
    /// `max(f(E), f(E'))`.
    pub rhs: i64,
    pub mesh: bool,
}

impl Violation {
    pub fn render(&self, cat: &ClusterCategory) -> String {
        let g = cat.ar();
        let kind = if self.mesh { "mesh" } else { "exchange" };
        format!("{kind} relation {} / {}: lhs {} != rhs {}", g.id(self.l), g.id(self.m), self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FriezeCheck {
    pub violations: Vec<Violation>,
    pub relations_checked: usize,
    pub exchange_pairs: usize,
    pub meshes: usize,
}

impl FriezeCheck {
    pub fn is_frieze(&self) -> bool {
        self.violations.is_empty()
    }

    /// The first violated relation in enumeration order.
    pub fn certificate(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn violation_at(&self, l: usize, m: usize) -> Option<&Violation> {
        let (l, m) = (l.min(m), l.max(m));
        self.violations.iter().find(|v| v.l == l && v.m == m)
    }
}

fn relation_sides(values: &[i64], r: &Relation) -> Result<(i64, i64)> {
    let lhs = values[r.l].checked_add(values[r.m]).ok_or(Error::Overflow("relation"))?;
    let rhs = evaluate(values, &r.e)?.max(evaluate(values, &r.e_prime)?);
    Ok((lhs, rhs))
}

/// Checks every mesh and every enumerated exchange pair.
pub fn is_tropical_frieze(cat: &ClusterCategory, values: &[i64]) -> Result<FriezeCheck> {
    let g = cat.ar();
    if values.len() != g.len() {
        return Err(Error::DimensionMismatch { expected: g.len(), got: values.len() });
    }
    let graph = cat.graph()?;
    let mut violations = Vec::new();
    for (i, r) in graph.relations.iter().enumerate() {
        let (lhs, rhs) = relation_sides(values, r)?;
        if lhs != rhs {
            violations.push(Violation { relation: i, l: r.l, m: r.m, lhs, rhs, mesh: r.from_mesh });
        }
    }
    Ok(FriezeCheck {
        violations,
        relations_checked: graph.relations.len(),
        exchange_pairs: graph.relations.iter().filter(|r| r.from_exchange).count(),
        meshes: graph.relations.iter().filter(|r| r.from_mesh).count(),
    })
}

/// Differences `f(E) − f(E')` over all relations.
fn differences(cat: &ClusterCategory, values: &[i64]) -> Result<Vec<i64>> {
    cat.graph()?
        .relations
        .iter()
        .map(|r| {
            evaluate(values, &r.e)?.checked_sub(evaluate(values, &r.e_prime)?).ok_or(Error::Overflow("difference"))
        })
        .collect()
}

/// `(f(E) − f(E'))(g(E) − g(E')) ≥ 0` for every relation.
pub fn compatible(cat: &ClusterCategory, f: &[i64], g: &[i64]) -> Result<bool> {
    let (df, dg) = (differences(cat, f)?, differences(cat, g)?);
    Ok(df.iter().zip(&dg).all(|(&a, &b)| (a.signum() * b.signum()) >= 0))
}

/// Compatible, and `|f(E) − f(E')| ≥ |g(E) − g(E')|` for every relation.
pub fn strongly_compatible(cat: &ClusterCategory, f: &[i64], g: &[i64]) -> Result<bool> {
    let (df, dg) = (differences(cat, f)?, differences(cat, g)?);
    Ok(df.iter().zip(&dg).all(|(&a, &b)| a.signum() * b.signum() >= 0 && a.abs() >= b.abs()))
}

/// Rejection of a sum: the first pair of summands that is not compatible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncompatiblePair(pub usize, pub usize);

/// Pointwise sum, provided the friezes are pairwise compatible.
pub fn sum_if_valid<'a>(fs: &[TropicalFrieze<'a>]) -> Result<std::result::Result<TropicalFrieze<'a>, IncompatiblePair>> {
    let Some(first) = fs.first() else {
        return Err(Error::Invariant("sum of an empty family needs a host".into()));
    };
    let cat = first.cat;
    for i in 0..fs.len() {
        for j in i + 1..fs.len() {
            if !compatible(cat, &fs[i].values, &fs[j].values)? {
                return Ok(Err(IncompatiblePair(i, j)));
            }
        }
    }
    let mut values = vec![0i64; cat.ar().len()];
    for f in fs {
        for (acc, &x) in values.iter_mut().zip(&f.values) {
            *acc = acc.checked_add(x).ok_or(Error::Overflow("sum"))?;
        }
    }
    let check = is_tropical_frieze(cat, &values)?;
    if let Some(v) = check.certificate() {
        return Err(Error::Invariant(format!("sum of compatible friezes fails: {}", v.render(cat))));
    }
    Ok(Ok(TropicalFrieze { cat, values }))
}

/// `f − g`, provided `f` and `g` are strongly compatible.
pub fn difference<'a>(f: &TropicalFrieze<'a>, g: &TropicalFrieze<'a>) -> Result<Option<TropicalFrieze<'a>>> {
    let cat = f.cat;
    if !strongly_compatible(cat, &f.values, &g.values)? {
        return Ok(None);
    }
    let values: Vec<i64> = f
        .values
        .iter()
        .zip(&g.values)
        .map(|(&a, &b)| a.checked_sub(b).ok_or(Error::Overflow("difference")))
        .collect::<Result<_>>()?;
    let check = is_tropical_frieze(cat, &values)?;
    if let Some(v) = check.certificate() {
        return Err(Error::Invariant(format!("difference of strongly compatible friezes fails: {}", v.render(cat))));
    }
    Ok(Some(TropicalFrieze { cat, values }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignCensus {
    pub min: i64,
    pub max: i64,
    pub all_nonneg: bool,
    pub all_nonpos: bool,
}

pub fn sign_census(values: &[i64]) -> SignCensus {
    let min = values.iter().copied().min().unwrap_or(0);
    let max = values.iter().copied().max().unwrap_or(0);
    SignCensus { min, max, all_nonneg: min >= 0, all_nonpos: max <= 0 }
}

impl fmt::Display for SignCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "min {} max {} nonneg {} nonpos {}", self.min, self.max, self.all_nonneg, self.all_nonpos)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::DynkinType;
    use crate::seed::initial_seed;

    fn cat(t: DynkinType, o: &str) -> ClusterCategory {
        ClusterCategory::new(t, &o.parse().unwrap()).unwrap()
    }

    #[test]
    fn a1_values() {
        let c = cat(DynkinType::a(1), "linear");
        let f = from_tilting_values(&c, &initial_seed(&c), &[7]).unwrap();
        assert_eq!(f.value_of("M[1]").unwrap(), 7);
        assert_eq!(f.value_of("SP[1]").unwrap(), -7);
    }

    #[test]
    fn a2_pentagon_values() {
        // orientation 2 -> 1: P_1 = (1,1), P_2 = (0,1), S_1 = (1,0)
        let c = cat(DynkinType::a(2), "2>1");
        let s = initial_seed(&c);
        let p2 = c.ar().lookup("M[0,1]").unwrap();
        let a: Vec<i64> = s.summands.iter().map(|&v| if v == p2 { 1 } else { -1 }).collect();
        let f = from_tilting_values(&c, &s, &a).unwrap();
        let got: Vec<i64> =
            ["M[0,1]", "M[1,1]", "M[1,0]", "SP[2]", "SP[1]"].iter().map(|id| f.value_of(id).unwrap()).collect();
        assert_eq!(got, vec![1, -1, -1, 1, 2]);
        let census = f.sign_census();
        assert_eq!((census.min, census.max, census.all_nonneg, census.all_nonpos), (-1, 2, false, false));
    }

    #[test]
    fn zero_values_give_zero_frieze() {
        let c = cat(DynkinType::d(4), "linear");
        for s in &c.graph().unwrap().nodes {
            let f = from_tilting_values(&c, s, &[0; 4]).unwrap();
            assert_eq!(f, TropicalFrieze::zero(&c));
        }
        assert_eq!(sign_census(TropicalFrieze::zero(&c).values()), SignCensus { min: 0, max: 0, all_nonneg: true, all_nonpos: true });
    }

    #[test]
    fn evaluate_sums() {
        let c = cat(DynkinType::a(2), "linear");
        let f = from_tilting_values(&c, &initial_seed(&c), &[2, 5]).unwrap();
        assert_eq!(f.evaluate(&ObjectExpr::zero()).unwrap(), 0);
        let mut x = ObjectExpr::zero();
        x.add(0, 2);
        assert_eq!(f.evaluate(&x).unwrap(), 2 * f.value(0));
        assert!(evaluate(f.values(), &ObjectExpr::single(99)).is_err());
    }

    #[test]
    fn a3_counterexample() {
        let c = cat(DynkinType::a(3), "linear");
        let g = c.ar();
        let d1 = c.hammocks().get(g.lookup("SP[1]").unwrap()).values.clone();
        let d3 = c.hammocks().get(g.lookup("SP[3]").unwrap()).values.clone();
        assert!(is_tropical_frieze(&c, &d1).unwrap().is_frieze());
        assert!(is_tropical_frieze(&c, &d3).unwrap().is_frieze());
        assert_eq!(d1[g.lookup("M[1,1,1]").unwrap()], 1);
        assert!(!compatible(&c, &d1, &d3).unwrap());
        let sum: Vec<i64> = d1.iter().zip(&d3).map(|(a, b)| a + b).collect();
        let check = is_tropical_frieze(&c, &sum).unwrap();
        assert!(!check.is_frieze());
        let v = check.violation_at(g.lookup("SP[2]").unwrap(), g.lookup("M[1,1,1]").unwrap()).unwrap();
        assert_eq!((v.lhs, v.rhs, v.mesh), (2, 1, false));
        let f1 = TropicalFrieze::new(&c, d1).unwrap();
        let f3 = TropicalFrieze::new(&c, d3).unwrap();
        assert_eq!(sum_if_valid(&[f1.clone(), f3.clone()]).unwrap(), Err(IncompatiblePair(0, 1)));
        assert!(difference(&f1, &f3).unwrap().is_none());
    }

    #[test]
    fn sums_with_zero_and_doubling() {
        let c = cat(DynkinType::a(3), "linear");
        let h = TropicalFrieze::new(&c, c.hammocks().get(4).values.clone()).unwrap();
        let zero = TropicalFrieze::zero(&c);
        assert_eq!(sum_if_valid(&[h.clone(), zero.clone()]).unwrap().unwrap(), h);
        let doubled = sum_if_valid(&[h.clone(), h.clone()]).unwrap().unwrap();
        assert!(doubled.values().iter().zip(h.values()).all(|(&a, &b)| a == 2 * b));
        assert!(compatible(&c, h.values(), h.values()).unwrap());
        assert!(strongly_compatible(&c, h.values(), zero.values()).unwrap());
        assert_eq!(difference(&h, &zero).unwrap().unwrap(), h);
    }
}
