//! Frieze patterns of order `n` (Coxeter–Conway) and their tropical analogues.
//!
//! A band has rows `r = 0..=n-2`, each periodic of period `n`. Entry `(r, j)` sits at horizontal
//! position `2j + r`, so every diamond is
//!
//! ```text
//!            b = (r-1, j+1)
//! a = (r, j)                d = (r, j+1)
//!            c = (r+1, j)
//! ```
//!
//! with `ad = bc + 1` (classical, border rows of 1s) or `a + d = max(b + c, 0)` (tropical,
//! border rows of 0s). The glide reflection maps `(r, j)` to `(n-2-r, j+r+1)`.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;

use crate::category::ClusterCategory;
use crate::dynkin::{DynkinType, Family};
use crate::error::{Error, Result};
use crate::frieze::{from_tilting_values, TropicalFrieze};
use crate::seed::initial_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    Classical,
    Tropical,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FriezeBand {
    order: usize,
    flavor: Flavor,
    rows: Vec<Vec<i64>>,
}

impl FriezeBand {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// All `n - 1` rows including the two border rows.
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Entry `(r, j)` with `j` taken modulo the order.
    pub fn get(&self, r: usize, j: i64) -> i64 {
        self.rows[r][j.rem_euclid(self.order as i64) as usize]
    }

    fn border(&self) -> i64 {
        match self.flavor {
            Flavor::Classical => 1,
            Flavor::Tropical => 0,
        }
    }

    /// Checks the border rows and every diamond; returns the first failing diamond `(r, j)`.
    pub fn first_violation(&self) -> Option<(usize, usize)> {
        let n = self.order;
        let last = n - 2;
        for j in 0..n {
            if self.rows[0][j] != self.border() {
                return Some((0, j));
            }
            if self.rows[last][j] != self.border() {
                return Some((last, j));
            }
        }
        for r in 1..last {
            for j in 0..n {
                let j = j as i64;
                let (a, d) = (self.get(r, j), self.get(r, j + 1));
                let (b, c) = (self.get(r - 1, j + 1), self.get(r + 1, j));
                let ok = match self.flavor {
                    Flavor::Classical => a > 0 && a * d == b * c + 1,
                    Flavor::Tropical => a + d == (b + c).max(0),
                };
                if !ok {
                    return Some((r, j as usize));
                }
            }
        }
        None
    }

    pub fn is_valid(&self) -> bool {
        self.first_violation().is_none()
    }

    /// Smallest horizontal period; always divides the order.
    pub fn period(&self) -> usize {
        let n = self.order;
        (1..=n)
            .find(|&p| n % p == 0 && self.rows.iter().all(|row| (0..n).all(|j| row[j] == row[(j + p) % n])))
            .unwrap_or(n)
    }

    /// Invariance under `(r, j) -> (n-2-r, j+r+1)`.
    pub fn is_glide_symmetric(&self) -> bool {
        let n = self.order;
        (0..n - 1).all(|r| (0..n as i64).all(|j| self.get(r, j) == self.get(n - 2 - r, j + r as i64 + 1)))
    }

    /// Staggered text layout: row `r` is indented by `r` half-columns.
    pub fn render_ascii(&self, periods: usize) -> String {
        let width = self
            .rows
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1)
            .max(2)
            + 1;
        let width = width + width % 2;
        let mut out = String::new();
        for (r, row) in self.rows.iter().enumerate() {
            let mut line = " ".repeat(r * width / 2);
            for _ in 0..periods {
                for v in row {
                    line.push_str(&format!("{:>width$}", v, width = width));
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    pub fn render_csv(&self) -> String {
        self.rows.iter().map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",") + "\n").collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.order,
            "flavor": match self.flavor { Flavor::Classical => "classical", Flavor::Tropical => "tropical" },
            "rows": self.rows,
        })
    }
}

impl fmt::Display for FriezeBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_ascii(2))
    }
}

fn crosses((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    let (a, b) = (a.min(b), a.max(b));
    let inside = |x: usize| a < x && x < b;
    let shares = a == c || a == d || b == c || b == d;
    !shares && (inside(c) != inside(d))
}

/// Number of triangles at each vertex of the triangulated `n`-gon.
pub fn quiddity_from_triangulation(n: usize, diagonals: &[(usize, usize)]) -> Result<Vec<i64>> {
    if n < 3 {
        return Err(Error::InvalidTriangulation(format!("a polygon needs 3 vertices, got {n}")));
    }
    if diagonals.len() != n - 3 {
        return Err(Error::InvalidTriangulation(format!("{} diagonals, expected {}", diagonals.len(), n - 3)));
    }
    let mut seen = BTreeSet::new();
    for &(a, b) in diagonals {
        if a >= n || b >= n {
            return Err(Error::InvalidTriangulation(format!("vertex {} outside the {n}-gon", a.max(b))));
        }
        let (lo, hi) = (a.min(b), a.max(b));
        if hi - lo < 2 || (lo == 0 && hi == n - 1) {
            return Err(Error::InvalidTriangulation(format!("{a}{b} is a side, not a diagonal")));
        }
        if !seen.insert((lo, hi)) {
            return Err(Error::InvalidTriangulation(format!("diagonal {lo}{hi} repeated")));
        }
    }
    let list: Vec<(usize, usize)> = seen.iter().copied().collect();
    for (i, &p) in list.iter().enumerate() {
        for &q in &list[i + 1..] {
            if crosses(p, q) {
                return Err(Error::InvalidTriangulation(format!("{}{} crosses {}{}", p.0, p.1, q.0, q.1)));
            }
        }
    }
    let mut a = vec![1i64; n];
    for &(x, y) in &list {
        a[x] += 1;
        a[y] += 1;
    }
    Ok(a)
}

/// All triangulations of the `n`-gon with vertices `0..n`, as sorted diagonal lists.
pub fn enumerate_triangulations(n: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
        if hi - lo < 2 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for k in lo + 1..hi {
            for left in rec(lo, k) {
                for right in rec(k, hi) {
                    let mut t = left.clone();
                    t.extend(&right);
                    if k - lo >= 2 {
                        t.push((lo, k));
                    }
                    if hi - k >= 2 {
                        t.push((k, hi));
                    }
                    t.sort_unstable();
                    out.push(t);
                }
            }
        }
        out
    }
    if n < 3 {
        return Vec::new();
    }
    let mut all = rec(0, n - 1);
    all.sort();
    all
}

/// Parses `02,03,04` or `0-2,0-3` into vertex pairs.
pub fn parse_diagonals(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|tok| {
            let tok = tok.trim();
            let (a, b) = match tok.split_once('-') {
                Some((a, b)) => (a.to_string(), b.to_string()),
                None if tok.len() == 2 => (tok[..1].to_string(), tok[1..].to_string()),
                None => return Err(Error::Parse(format!("diagonal `{tok}` should look like 02 or 0-2"))),
            };
            let parse = |x: &str| x.parse::<usize>().map_err(|_| Error::Parse(format!("bad vertex in `{tok}`")));
            Ok((parse(&a)?, parse(&b)?))
        })
        .collect()
}

/// The classical frieze whose first non-trivial row is `q`.
pub fn frieze_from_quiddity(q: &[i64]) -> Result<FriezeBand> {
    let n = q.len();
    if n < 3 {
        return Err(Error::NotQuiddity(format!("order {n} is too small")));
    }
    if q.iter().any(|&x| x <= 0) {
        return Err(Error::NotQuiddity("entries must be positive".into()));
    }
    let mut rows = vec![vec![1i64; n], q.to_vec()];
    while rows.len() < n - 1 {
        let r = rows.len() - 1;
        let mut next = Vec::with_capacity(n);
        for j in 0..n {
            let a = Ratio::from_integer(rows[r][j]);
            let d = Ratio::from_integer(rows[r][(j + 1) % n]);
            let b = Ratio::from_integer(rows[r - 1][(j + 1) % n]);
            let c = (a * d - 1) / b;
            if !c.is_integer() || c <= Ratio::from_integer(0) {
                return Err(Error::NotQuiddity(format!("row {} entry {j} is {c}", r + 1)));
            }
            next.push(c.to_integer());
        }
        rows.push(next);
    }
    let band = FriezeBand { order: n, flavor: Flavor::Classical, rows };
    if let Some((r, j)) = band.first_violation() {
        return Err(Error::NotQuiddity(format!("the pattern does not close: diamond ({r}, {j}) fails")));
    }
    Ok(band)
}

/// Whether `b_s` divides `b_{s-1} + b_{s+1}` for every interior `s`.
pub fn diagonal_divisibility(b: &[i64]) -> bool {
    b.windows(3).all(|w| w[1] != 0 && (w[0] + w[2]) % w[1] == 0)
}

/// The tropical band of order `n` whose south-east diagonal through rows `1..=n-3` is `d`.
pub fn tropical_band_from_diagonal(n: usize, d: &[i64]) -> Result<FriezeBand> {
    if n < 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: n });
    }
    if d.len() != n - 3 {
        return Err(Error::DimensionMismatch { expected: n - 3, got: d.len() });
    }
    let mut diag: Vec<i64> = std::iter::once(0).chain(d.iter().copied()).chain(std::iter::once(0)).collect();
    let mut columns = vec![diag.clone()];
    for _ in 0..n {
        let mut next = vec![0i64; n - 1];
        for r in 1..n - 2 {
            let b = next[r - 1];
            let c = diag[r + 1];
            let sum = b.checked_add(c).ok_or(Error::Overflow("tropical band"))?;
            next[r] = sum.max(0).checked_sub(diag[r]).ok_or(Error::Overflow("tropical band"))?;
        }
        columns.push(next.clone());
        diag = next;
    }
    if columns[n] != columns[0] {
        return Err(Error::Invariant(format!("tropical band of order {n} is not {n}-periodic")));
    }
    let rows: Vec<Vec<i64>> = (0..n - 1).map(|r| (0..n).map(|j| columns[j][r]).collect()).collect();
    let band = FriezeBand { order: n, flavor: Flavor::Tropical, rows };
    if let Some((r, j)) = band.first_violation() {
        return Err(Error::Invariant(format!("tropical band fails at diamond ({r}, {j})")));
    }
    Ok(band)
}

fn check_host(cat: &ClusterCategory, n: usize) -> Result<()> {
    let g = cat.ar();
    let expected = DynkinType::new(Family::A, n.saturating_sub(3))?;
    if g.dynkin() != expected || g.orientation() != "linear" {
        return Err(Error::InvalidType(format!(
            "bands of order {n} live on linear {expected}, not {} ({})",
            g.dynkin(),
            g.orientation()
        )));
    }
    Ok(())
}

/// The vertex `τ^{-j} P_r` carrying band entry `(r, j)`, for `1 <= r <= n-3`.
pub fn band_vertex(cat: &ClusterCategory, r: usize, j: usize) -> usize {
    let g = cat.ar();
    g.tau_inv_pow(g.projective(r - 1), j)
}

/// The tropical frieze on linear `A_{n-3}` matching a tropical band entrywise.
pub fn band_to_frieze<'a>(cat: &'a ClusterCategory, band: &FriezeBand) -> Result<TropicalFrieze<'a>> {
    let n = band.order();
    if band.flavor() != Flavor::Tropical {
        return Err(Error::InvalidType("only tropical bands correspond to tropical friezes".into()));
    }
    check_host(cat, n)?;
    let a: Vec<i64> = (1..=n - 3).map(|r| band.get(r, 0)).collect();
    let f = from_tilting_values(cat, &initial_seed(cat), &a)?;
    for r in 1..=n - 3 {
        for j in 0..n {
            if f.value(band_vertex(cat, r, j)) != band.get(r, j as i64) {
                return Err(Error::Invariant(format!("band entry ({r}, {j}) disagrees with the frieze")));
            }
        }
    }
    Ok(f)
}

pub fn frieze_to_band(f: &TropicalFrieze<'_>) -> Result<FriezeBand> {
    let cat = f.category();
    let n = cat.rank() + 3;
    check_host(cat, n)?;
    let d: Vec<i64> = (1..=n - 3).map(|r| f.value(band_vertex(cat, r, 0))).collect();
    tropical_band_from_diagonal(n, &d)
}
