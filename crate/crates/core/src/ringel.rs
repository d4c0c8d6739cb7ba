//! Cluster-additive functions and their decomposition into cluster-hammock functions.
//!
//! A function is cluster-additive if `f(z) + f(τz) = Σ_{y→z} max(f(y), 0)` at every mesh.
//! [`ringel_decompose`] writes such an `f` as `Σ n_x h_x` over a partial tilting set: each
//! injective `I_i` with `f(I_i) < 0` contributes `−f(I_i)` copies of `h_{I_i}`, and the generic
//! decomposition `⊕ M_j^{a_j}` of `d = (max(f(I_i), 0))_i` contributes `a_j` copies of `h_{τM_j}`.
//! The generic decomposition is found combinatorially: the unique compatible multiset of
//! indecomposable modules with total dimension vector `d`.

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::category::ClusterCategory;
use crate::cluster_ar::MeshRule;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterAdditiveFunction {
    pub values: Vec<i64>,
}

impl ClusterAdditiveFunction {
    /// Wraps `values` after checking the rule at every mesh.
    pub fn new(cat: &ClusterCategory, values: Vec<i64>) -> Result<Self> {
        let g = cat.ar();
        if values.len() != g.len() {
            return Err(Error::DimensionMismatch { expected: g.len(), got: values.len() });
        }
        if let Some(v) = g.mesh_violations(MeshRule::SumOfMaxima, &values)?.into_iter().next() {
            return Err(Error::WrapInconsistency {
                vertex: g.id(v.vertex).to_string(),
                expected: v.rhs - values[g.tau(v.vertex)],
                actual: values[v.vertex],
            });
        }
        Ok(ClusterAdditiveFunction { values })
    }
}

/// Extends values on a slice (pairs of vertex and value) by the cluster-additive rule.
///
/// Fails with [`Error::WrapInconsistency`] if the extension does not close up around `Γ_C`.
pub fn additive_from_slice(cat: &ClusterCategory, slice: &[(usize, i64)]) -> Result<ClusterAdditiveFunction> {
    let values = cat.ar().propagate(MeshRule::SumOfMaxima, slice)?;
    Ok(ClusterAdditiveFunction { values })
}

/// `Σ n_x h_x` with non-negative coefficients over a pairwise compatible support.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HammockCombination {
    pub coefficients: BTreeMap<usize, u32>,
}

impl HammockCombination {
    pub fn add(&mut self, x: usize, n: u32) {
        if n > 0 {
            *self.coefficients.entry(x).or_insert(0) += n;
        }
    }

    pub fn support(&self) -> Vec<usize> {
        self.coefficients.keys().copied().collect()
    }

    pub fn values(&self, cat: &ClusterCategory) -> Result<Vec<i64>> {
        let mut out = vec![0i64; cat.ar().len()];
        for (&x, &n) in &self.coefficients {
            for (acc, &h) in out.iter_mut().zip(&cat.hammocks().get(x).values) {
                *acc = h
                    .checked_mul(i64::from(n))
                    .and_then(|p| acc.checked_add(p))
                    .ok_or(Error::Overflow("hammock combination"))?;
            }
        }
        Ok(out)
    }

    pub fn to_json(&self, cat: &ClusterCategory, verified: bool) -> serde_json::Value {
        let mut support: Vec<(&str, u32)> = self.coefficients.iter().map(|(&x, &n)| (cat.ar().id(x), n)).collect();
        support.sort();
        let support: Vec<serde_json::Value> =
            support.into_iter().map(|(v, n)| serde_json::json!({"vertex": v, "coeff": n})).collect();
        serde_json::json!({ "support": support, "verified": verified })
    }
}

/// Pointwise equality of `f` and the combination.
pub fn verify_combination(cat: &ClusterCategory, f: &ClusterAdditiveFunction, c: &HammockCombination) -> Result<bool> {
    Ok(c.values(cat)? == f.values)
}

/// Solves `Σ_j a_j dims[j] = d` exactly; `None` if the columns are dependent or the solution is fractional.
fn solve_integral(dims: &[&[i64]], d: &[i64]) -> Option<Vec<i64>> {
    let n = d.len();
    let k = dims.len();
    // augmented n × (k + 1) system, columns are the dimension vectors
    let mut a: Vec<Vec<Ratio<i64>>> =
        (0..n).map(|r| (0..k).map(|c| Ratio::from_integer(dims[c][r])).chain([Ratio::from_integer(d[r])]).collect()).collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..k {
        let Some(p) = (pivot_row..n).find(|&r| a[r][col] != Ratio::from_integer(0)) else { return None };
        a.swap(pivot_row, p);
        let inv = a[pivot_row][col].recip();
        for x in a[pivot_row].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != pivot_row && a[r][col] != Ratio::from_integer(0) {
                let factor = a[r][col];
                for c in 0..=k {
                    let sub = factor * a[pivot_row][c];
                    a[r][c] -= sub;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if (pivot_row..n).any(|r| a[r][k] != Ratio::from_integer(0)) {
        return None;
    }
    pivots.iter().map(|&r| a[r][k].is_integer().then(|| a[r][k].to_integer())).collect()
}

/// The unique pairwise compatible multiset `{M_j^{a_j}}` of module vertices with `Σ a_j dim M_j = d`.
pub fn generic_decomposition(cat: &ClusterCategory, d: &[i64]) -> Result<BTreeMap<usize, u32>> {
    let g = cat.ar();
    if d.len() != g.rank() {
        return Err(Error::DimensionMismatch { expected: g.rank(), got: d.len() });
    }
    if d.iter().any(|&x| x < 0) {
        return Err(Error::Parse(format!("dimension vector {d:?} has a negative entry")));
    }
    let mut found: Vec<BTreeMap<usize, u32>> = Vec::new();
    for tilting in cat.tilting_modules()? {
        let dims: Vec<&[i64]> = tilting.iter().map(|&v| g.vertex(v).dim().expect("module vertex")).collect();
        let Some(a) = solve_integral(&dims, d) else { continue };
        if a.iter().any(|&x| x < 0) {
            continue;
        }
        let decomposition: BTreeMap<usize, u32> =
            tilting.iter().zip(&a).filter(|(_, &x)| x > 0).map(|(&v, &x)| (v, x as u32)).collect();
        if !found.contains(&decomposition) {
            found.push(decomposition);
        }
    }
    match found.len() {
        1 => Ok(found.pop().expect("one element")),
        count => Err(Error::Invariant(format!("{count} compatible decompositions of dimension vector {d:?}"))),
    }
}

/// Decomposes a cluster-additive function into hammocks and verifies the result.
pub fn ringel_decompose(cat: &ClusterCategory, f: &ClusterAdditiveFunction) -> Result<HammockCombination> {
    let g = cat.ar();
    let n = g.rank();
    let mut combination = HammockCombination::default();
    let mut d = vec![0i64; n];
    for i in 0..n {
        let value = f.values[g.injective(i)];
        if value < 0 {
            let copies = u32::try_from(-value).map_err(|_| Error::Overflow("hammock coefficient"))?;
            combination.add(g.injective(i), copies);
        } else {
            d[i] = value;
        }
    }
    for (m, a) in generic_decomposition(cat, &d)? {
        combination.add(g.tau(m), a);
    }
    let support = combination.support();
    if support.len() > n || !cat.hammocks().pairwise_compatible(&support) {
        return Err(Error::Invariant(format!(
            "decomposition support {:?} is not a partial tilting set",
            support.iter().map(|&v| g.id(v)).collect::<Vec<_>>()
        )));
    }
    if !verify_combination(cat, f, &combination)? {
        return Err(Error::Invariant("hammock combination does not reproduce the function".into()));
    }
    Ok(combination)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::DynkinType;

    fn cat(t: DynkinType, o: &str) -> ClusterCategory {
        ClusterCategory::new(t, &o.parse().unwrap()).unwrap()
    }

    #[test]
    fn generic_decomposition_examples() {
        // orientation 2 -> 1: P_1 = (1,1), S_1 = (1,0), S_2 = P_2 = (0,1)
        let c = cat(DynkinType::a(2), "2>1");
        let g = c.ar();
        let p1 = g.lookup("M[1,1]").unwrap();
        let s1 = g.lookup("M[1,0]").unwrap();
        let s2 = g.lookup("M[0,1]").unwrap();
        assert!(!c.hammocks().ext_compatible(s1, s2).unwrap());
        assert_eq!(generic_decomposition(&c, &[1, 1]).unwrap(), BTreeMap::from([(p1, 1)]));
        assert!(generic_decomposition(&c, &[0, 0]).unwrap().is_empty());
        for v in 0..g.len() {
            if let Some(dim) = g.vertex(v).dim() {
                assert_eq!(generic_decomposition(&c, dim).unwrap(), BTreeMap::from([(v, 1)]));
            }
        }
        assert!(generic_decomposition(&c, &[1]).is_err());
    }

    #[test]
    fn hammocks_decompose_to_themselves() {
        for (t, o) in [(DynkinType::a(3), "linear"), (DynkinType::d(4), "alternating")] {
            let c = cat(t, o);
            for x in 0..c.ar().len() {
                let f = ClusterAdditiveFunction::new(&c, c.hammocks().get(x).values.clone()).unwrap();
                let comb = ringel_decompose(&c, &f).unwrap();
                assert_eq!(comb.coefficients, BTreeMap::from([(x, 1)]));
                let mut twice = HammockCombination::default();
                twice.add(x, 2);
                assert!(!verify_combination(&c, &f, &twice).unwrap());
            }
        }
    }

    #[test]
    fn zero_and_compatible_pairs() {
        let c = cat(DynkinType::a(3), "linear");
        let zero = ClusterAdditiveFunction::new(&c, vec![0; 9]).unwrap();
        assert!(ringel_decompose(&c, &zero).unwrap().coefficients.is_empty());
        let g = c.ar();
        for x in 0..g.len() {
            for y in 0..g.len() {
                if x != y && c.hammocks().ext_compatible(x, y).unwrap() {
                    let mut comb = HammockCombination::default();
                    comb.add(x, 2);
                    comb.add(y, 1);
                    let f = ClusterAdditiveFunction::new(&c, comb.values(&c).unwrap()).unwrap();
                    assert_eq!(ringel_decompose(&c, &f).unwrap(), comb);
                }
            }
        }
    }

    #[test]
    fn slice_propagation_reproduces_hammocks() {
        let c = cat(DynkinType::a(4), "alternating");
        let g = c.ar();
        for x in 0..g.len() {
            let (slice, _) = g.slice_through(x);
            let known: Vec<(usize, i64)> = slice.iter().map(|&v| (v, c.hammocks().value(x, v))).collect();
            assert_eq!(additive_from_slice(&c, &known).unwrap().values, c.hammocks().get(x).values);
        }
        let zero: Vec<(usize, i64)> = g.initial_slices().0.iter().map(|&p| (p, 0)).collect();
        assert!(additive_from_slice(&c, &zero).unwrap().values.iter().all(|&v| v == 0));
    }

    #[test]
    fn combination_json() {
        let c = cat(DynkinType::a(1), "linear");
        let mut comb = HammockCombination::default();
        comb.add(c.ar().lookup("SP[1]").unwrap(), 2);
        assert_eq!(comb.to_json(&c, true).to_string(), r#"{"support":[{"coeff":2,"vertex":"SP[1]"}],"verified":true}"#);
    }
}
