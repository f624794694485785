//! Exact counts of low-cost arrangements against their exponential bounds.
//!
//! For a path `p_1 .. p_n`, [`count_path_arrangements`] counts arrangements of
//! net cost at most `k` with `p_1` at position `j` and `p_n` at position `n`.
//! For a tree and a vertex set `X`, [`count_tree_arrangements`] counts
//! arrangements of net cost at most `k` that put every vertex of `X` at
//! position 1 or `n`. Both are compared with closed-form bounds of the shape
//! `2^(a n + b k - ...)`.

use std::collections::HashMap;
use std::io::Write;
use std::ops::{ControlFlow, RangeInclusive};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generate::{caterpillar, prufer_to_edges, random_tree};
use crate::graph::{Graph, Vertex};
use crate::search::{enumerate_arrangements, enumerate_constrained, is_tree, EnumConstraints, SearchBudget};

/// Constants of the counting bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundConstants {
    pub a: f64,
    pub b: f64,
    pub x: f64,
    pub c: f64,
    pub d2: f64,
    pub pn_offset: f64,
    pub tree_offset: f64,
}

pub const CONSTANTS: BoundConstants = BoundConstants {
    a: 0.119,
    b: 1.96,
    x: 0.967095,
    c: 1.4625,
    d2: 0.497534,
    pn_offset: 2.0,
    tree_offset: 4.0,
};

/// Absolute slack when comparing an integer count with a float bound.
pub const SLACK: f64 = 1e-9;

impl BoundConstants {
    /// `2^(a n + b k - x j + 2)`, times `(1 - d2)` when `j = 2`.
    pub fn path_bound(&self, n: usize, k: usize, j: usize) -> f64 {
        let e = self.a * n as f64 + self.b * k as f64 - self.x * j as f64 + self.pn_offset;
        let base = e.exp2();
        if j == 2 {
            (1.0 - self.d2) * base
        } else {
            base
        }
    }

    /// `2^(a n + b k - c i + 4)`.
    pub fn tree_bound(&self, n: usize, k: usize, i: usize) -> f64 {
        (self.a * n as f64 + self.b * k as f64 - self.c * i as f64 + self.tree_offset).exp2()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Path,
    Tree,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Tree => "tree",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountReport {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    /// `j` for paths, `|X|` for trees.
    pub j_or_i: usize,
    pub exact_count: u64,
    pub bound: f64,
    pub holds: bool,
}

impl CountReport {
    fn new(family: Family, n: usize, k: usize, j_or_i: usize, exact_count: u64, bound: f64) -> Self {
        CountReport {
            family,
            n,
            k,
            j_or_i,
            exact_count,
            bound,
            holds: exact_count as f64 <= bound + SLACK,
        }
    }
}

/// Arrangements of `P_n` (vertex `i` is `p_i`) with net cost at most `k`,
/// `p_1` at position `j` and `p_n` at position `n`.
///
/// `j = 0` names no position, so its count is 0.
pub fn count_path_arrangements(n: usize, k: usize, j: usize) -> Result<CountReport> {
    if n < 2 || j > n - 1 {
        return Err(Error::BadParameters(format!(
            "need n >= 2 and 0 <= j <= n - 1, got n = {n}, j = {j}"
        )));
    }
    let bound = CONSTANTS.path_bound(n, k, j);
    if j == 0 {
        return Ok(CountReport::new(Family::Path, n, k, j, 0, bound));
    }
    let constraints = EnumConstraints {
        last: Some(n),
        fixed: Some((1, j)),
        ..Default::default()
    };
    let path = crate::generate::path(n);
    let stats = enumerate_constrained(&path, SearchBudget(k), &constraints, |_, _| {
        ControlFlow::Continue(())
    })?;
    Ok(CountReport::new(Family::Path, n, k, j, stats.emitted, bound))
}

/// Arrangements of tree `t` with net cost at most `k` that map every vertex
/// of `x` to position 1 or `n`.
pub fn count_tree_arrangements(t: &Graph, k: usize, x: &[Vertex]) -> Result<u64> {
    if x.len() > 3 {
        return Err(Error::BadParameters(format!("|X| = {} exceeds 3", x.len())));
    }
    if x.iter().any(|&v| v == 0 || v > t.n()) {
        return Err(Error::BadParameters("X is not a subset of V(T)".into()));
    }
    let mut sorted = x.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != x.len() {
        return Err(Error::BadParameters("X has repeated vertices".into()));
    }
    if !is_tree(t) {
        return Err(Error::NotATree);
    }
    // Only two positions are ends, but a single vertex is both.
    if x.len() == 3 || (x.len() == 2 && t.n() < 2) {
        return Ok(0);
    }
    let constraints = EnumConstraints {
        at_ends: x.to_vec(),
        ..Default::default()
    };
    Ok(enumerate_constrained(t, SearchBudget(k), &constraints, |_, _| ControlFlow::Continue(()))?.emitted)
}

/// `max_counts[i][k]`: the largest count over all `X` with `|X| = i`, for one
/// tree, at every budget up to the enumeration budget.
fn tree_profile(t: &Graph, k_max: usize) -> Result<[Vec<u64>; 3]> {
    let n = t.n();
    let mut none = vec![0u64; k_max + 1];
    let mut one: HashMap<Vertex, Vec<u64>> = HashMap::new();
    let mut two: HashMap<(Vertex, Vertex), Vec<u64>> = HashMap::new();
    enumerate_arrangements(t, SearchBudget(k_max), |order, c| {
        none[c] += 1;
        let (first, last) = (order[0], order[n - 1]);
        one.entry(first).or_insert_with(|| vec![0; k_max + 1])[c] += 1;
        if last != first {
            one.entry(last).or_insert_with(|| vec![0; k_max + 1])[c] += 1;
            two.entry((first.min(last), first.max(last)))
                .or_insert_with(|| vec![0; k_max + 1])[c] += 1;
        }
        ControlFlow::Continue(())
    })?;
    let cumulative = |h: &[u64]| -> Vec<u64> {
        h.iter()
            .scan(0u64, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect()
    };
    let max_over = |hists: Vec<Vec<u64>>| -> Vec<u64> {
        let mut best = vec![0u64; k_max + 1];
        for h in hists {
            for (b, c) in best.iter_mut().zip(cumulative(&h)) {
                *b = (*b).max(c);
            }
        }
        best
    };
    Ok([
        cumulative(&none),
        max_over(one.into_values().collect()),
        max_over(two.into_values().collect()),
    ])
}

/// Canonical string of an unlabeled tree: the smallest rooted encoding over
/// its centre vertices.
pub fn canonical_tree_code(t: &Graph) -> String {
    let n = t.n();
    if n <= 2 {
        return format!("n{n}");
    }
    let mut degree: Vec<usize> = t.vertices().map(|v| t.degree(v)).collect();
    let mut layer: Vec<Vertex> = t.vertices().filter(|&v| degree[v - 1] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            degree[v - 1] = 0;
            for &w in t.neighbors(v) {
                if degree[w - 1] > 0 {
                    degree[w - 1] -= 1;
                    if degree[w - 1] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    fn encode(t: &Graph, v: Vertex, parent: Vertex) -> String {
        let mut kids: Vec<String> = t
            .neighbors(v)
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| encode(t, w, v))
            .collect();
        kids.sort_unstable();
        format!("({})", kids.concat())
    }
    layer.iter().map(|&c| encode(t, c, 0)).min().unwrap()
}

#[derive(Debug, Clone)]
pub enum TreeCorpus {
    /// Every labeled tree, via all Prüfer sequences.
    AllLabeled,
    /// `count` random trees plus all caterpillars with up to `n - 1`
    /// spine vertices, per order.
    Random { count: usize, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct Sweep {
    pub path_n: RangeInclusive<usize>,
    pub path_k: RangeInclusive<usize>,
    /// `j` runs over `0..=k + path_j_over`, clipped to `n - 1`.
    pub path_j_over: usize,
    pub tree_n: RangeInclusive<usize>,
    pub tree_k_max: usize,
    pub tree_i: Vec<usize>,
    pub corpus: TreeCorpus,
}

impl Default for Sweep {
    fn default() -> Self {
        Sweep {
            path_n: 2..=12,
            path_k: 0..=4,
            path_j_over: 2,
            tree_n: 2..=8,
            tree_k_max: 3,
            tree_i: vec![0, 1, 2],
            corpus: TreeCorpus::AllLabeled,
        }
    }
}

fn for_each_tree(n: usize, corpus: &TreeCorpus, mut visit: impl FnMut(Graph) -> Result<()>) -> Result<()> {
    match corpus {
        TreeCorpus::AllLabeled => {
            let len = n.saturating_sub(2);
            let mut code = vec![1usize; len];
            loop {
                visit(Graph::from_edges_unchecked(n, prufer_to_edges(n, &code)))?;
                // Odometer increment over 1..=n.
                let Some(i) = (0..len).rev().find(|&i| code[i] < n) else {
                    return Ok(());
                };
                code[i] += 1;
                code[i + 1..].iter_mut().for_each(|c| *c = 1);
            }
        }
        TreeCorpus::Random { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed ^ n as u64);
            for _ in 0..*count {
                visit(random_tree(n, &mut rng))?;
            }
            for spine in 1..n {
                visit(caterpillar(spine, n - spine, 0, &mut rng)?)?;
            }
            Ok(())
        }
    }
}

/// Largest count over the corpus for each `(i, k)`, indexed `[i][k]`.
/// Counts only depend on the unlabeled tree, so each shape is enumerated once.
pub fn tree_maxima(n: usize, k_max: usize, corpus: &TreeCorpus) -> Result<[Vec<u64>; 3]> {
    let mut seen: HashMap<String, ()> = HashMap::new();
    let mut best = [vec![0u64; k_max + 1], vec![0u64; k_max + 1], vec![0u64; k_max + 1]];
    for_each_tree(n, corpus, |t| {
        if seen.insert(canonical_tree_code(&t), ()).is_none() {
            let profile = tree_profile(&t, k_max)?;
            for (b, p) in best.iter_mut().zip(profile) {
                for (x, y) in b.iter_mut().zip(p) {
                    *x = (*x).max(y);
                }
            }
        }
        Ok(())
    })?;
    Ok(best)
}

/// Runs the path and tree sweeps and reports every cell.
pub fn verify_bounds(sweep: &Sweep) -> Result<Vec<CountReport>> {
    let mut reports = Vec::new();
    for n in sweep.path_n.clone() {
        for k in sweep.path_k.clone() {
            for j in 0..=(k + sweep.path_j_over).min(n - 1) {
                reports.push(count_path_arrangements(n, k, j)?);
            }
        }
    }
    for n in sweep.tree_n.clone() {
        let maxima = tree_maxima(n, sweep.tree_k_max, &sweep.corpus)?;
        for k in 0..=sweep.tree_k_max {
            for &i in &sweep.tree_i {
                let count = match i {
                    0..=2 => maxima[i][k],
                    3 => 0,
                    _ => return Err(Error::BadParameters(format!("|X| = {i} exceeds 3"))),
                };
                reports.push(CountReport::new(
                    Family::Tree,
                    n,
                    k,
                    i,
                    count,
                    CONSTANTS.tree_bound(n, k, i),
                ));
            }
        }
    }
    Ok(reports)
}

/// CSV with columns `family,n,k,j_or_i,exact_count,bound,holds`.
pub fn write_csv(reports: &[CountReport], mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "family,n,k,j_or_i,exact_count,bound,holds")?;
    for r in reports {
        writeln!(
            out,
            "{},{},{},{},{},{:.6},{}",
            r.family.name(),
            r.n,
            r.k,
            r.j_or_i,
            r.exact_count,
            r.bound,
            r.holds
        )?;
    }
    Ok(())
}
