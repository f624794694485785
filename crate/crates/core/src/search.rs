//! Bounded enumeration of tree arrangements and the end-to-end solver.
//!
//! Any arrangement of a graph costs at least as much as the same arrangement
//! of a spanning tree, so to find every arrangement of net cost at most `k`
//! it is enough to enumerate the spanning tree's arrangements of net cost at
//! most `k` and evaluate each against all edges.
//!
//! The enumeration builds arrangements by inserting vertices in reversed
//! leaf-elimination order. Each inserted vertex has exactly one tree
//! neighbour already placed. Inserting into a gap lengthens every placed tree
//! edge spanning that gap by one and adds the new edge; both are charged to
//! the running net cost. Charges never decrease later, so a branch can be cut
//! as soon as it exceeds the budget, and every arrangement is reached by
//! exactly one sequence of gap choices.

use std::collections::BinaryHeap;
use std::cmp::Reverse;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::decomposition::dfs_tree;
use crate::error::{Error, Result};
use crate::graph::{connected_components, is_simple_path, path_order, Arrangement, Graph, Vertex};
use crate::kernel::{kernel_gate, kernelize, lift_arrangement, Gate};

/// Remaining net-cost allowance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SearchBudget(pub usize);

impl From<usize> for SearchBudget {
    fn from(k: usize) -> Self {
        SearchBudget(k)
    }
}

pub fn is_tree(t: &Graph) -> bool {
    t.n() > 0 && t.m() + 1 == t.n() && t.is_connected()
}

/// DFS spanning tree from the lowest vertex, on the same vertex ids.
pub fn spanning_tree(g: &Graph) -> Result<Graph> {
    if g.n() == 0 {
        return Ok(Graph::empty(0));
    }
    let tree = dfs_tree(g)?;
    let edges = tree
        .preorder
        .iter()
        .filter_map(|&v| tree.parent_of(v).map(|p| (p, v)))
        .collect();
    Ok(g.with_edges(edges))
}

/// Repeatedly removes the smallest current leaf; the last vertex is whatever
/// remains.
pub fn leaf_elimination_order(t: &Graph) -> Result<Vec<Vertex>> {
    if !is_tree(t) {
        return Err(Error::NotATree);
    }
    let n = t.n();
    let mut degree: Vec<usize> = t.vertices().map(|v| t.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut leaves: BinaryHeap<Reverse<Vertex>> =
        t.vertices().filter(|&v| degree[v - 1] <= 1).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = leaves.pop() {
        if removed[v - 1] {
            continue;
        }
        removed[v - 1] = true;
        order.push(v);
        for &w in t.neighbors(v) {
            if !removed[w - 1] {
                degree[w - 1] -= 1;
                if degree[w - 1] == 1 {
                    leaves.push(Reverse(w));
                }
            }
        }
        if order.len() + 1 == n {
            // The final vertex has degree 0 now; pick it up directly.
            let last = t.vertices().find(|&w| !removed[w - 1]).unwrap();
            order.push(last);
            break;
        }
    }
    Ok(order)
}

/// Optional restrictions on the enumerated arrangements.
#[derive(Debug, Clone, Default)]
pub struct EnumConstraints {
    /// Vertices that must end at position 1 or n.
    pub at_ends: Vec<Vertex>,
    /// A vertex that must end at position n.
    pub last: Option<Vertex>,
    /// A vertex that must end at the given position.
    pub fixed: Option<(Vertex, usize)>,
    /// Emit only one arrangement of each mirror-image pair.
    pub mirror_break: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumStats {
    /// Complete arrangements emitted.
    pub emitted: u64,
    /// Partial arrangements visited, complete ones included.
    pub nodes: u64,
}

/// A partial arrangement: placed vertices left to right plus the number of
/// placed tree edges spanning each gap (`cut[g]` sits before `order[g]`).
#[derive(Debug, Clone)]
struct Partial {
    order: Vec<Vertex>,
    cut: Vec<usize>,
    spent: usize,
    depth: usize,
}

struct Enumerator<'a> {
    insertion: Vec<Vertex>,
    anchor: Vec<Vertex>,
    constraints: &'a EnumConstraints,
    state: Partial,
    budget: usize,
    stats: EnumStats,
}

type Visitor<'v> = dyn FnMut(&[Vertex], usize, &mut usize) -> ControlFlow<()> + 'v;

impl<'a> Enumerator<'a> {
    fn new(t: &Graph, budget: usize, constraints: &'a EnumConstraints) -> Result<Self> {
        let (insertion, anchor) = if t.n() == 0 {
            (Vec::new(), Vec::new())
        } else {
            let mut insertion = leaf_elimination_order(t)?;
            insertion.reverse();
            let mut rank = vec![0usize; t.n()];
            for (i, &v) in insertion.iter().enumerate() {
                rank[v - 1] = i;
            }
            let anchor = insertion
                .iter()
                .enumerate()
                .map(|(i, &v)| {
                    t.neighbors(v)
                        .iter()
                        .copied()
                        .find(|&w| rank[w - 1] < i)
                        .unwrap_or(0)
                })
                .collect();
            (insertion, anchor)
        };
        Ok(Enumerator {
            insertion,
            anchor,
            constraints,
            state: Partial {
                order: Vec::with_capacity(t.n()),
                cut: vec![0],
                spent: 0,
                depth: 0,
            },
            budget,
            stats: EnumStats::default(),
        })
    }

    fn n(&self) -> usize {
        self.insertion.len()
    }

    fn index_of(&self, v: Vertex) -> Option<usize> {
        self.state.order.iter().position(|&w| w == v)
    }

    /// Checks that no constraint is already violated by the partial order.
    /// Inserting vertices never moves a vertex back to an end, and only
    /// moves vertices to the right.
    fn feasible(&self) -> bool {
        let c = self.constraints;
        let last = self.state.order.len() - 1;
        for &x in &c.at_ends {
            if let Some(i) = self.index_of(x) {
                if i != 0 && i != last {
                    return false;
                }
            }
        }
        if let Some(x) = c.last {
            if matches!(self.index_of(x), Some(i) if i != last) {
                return false;
            }
        }
        if let Some((x, p)) = c.fixed {
            if matches!(self.index_of(x), Some(i) if i + 1 > p) {
                return false;
            }
        }
        true
    }

    fn complete(&self) -> bool {
        match self.constraints.fixed {
            Some((x, p)) => self.index_of(x) == Some(p - 1),
            None => true,
        }
    }

    /// Candidate gaps for the next insertion with their extra net cost, in
    /// ascending gap order.
    fn moves(&self) -> Vec<(usize, usize)> {
        let depth = self.state.depth;
        let len = self.state.order.len();
        if depth == 0 {
            return vec![(0, 0)];
        }
        let Some(remaining) = self.budget.checked_sub(self.state.spent) else {
            return Vec::new();
        };
        let a = self.anchor[depth];
        let p = self.index_of(a).expect("anchor is placed");
        // The new edge alone costs dist - 1, so only gaps within
        // remaining + 1 of the anchor can fit.
        let lo = (p + 1).saturating_sub(remaining + 1);
        let hi = (p + remaining + 1).min(len);
        (lo..=hi)
            .filter(|&g| !(self.constraints.mirror_break && depth == 1 && g <= p))
            .filter_map(|g| {
                let dist = if g <= p { p + 1 - g } else { g - p };
                let add = self.state.cut[g] + dist - 1;
                (add <= remaining).then_some((g, add))
            })
            .collect()
    }

    fn apply(&mut self, g: usize, add: usize) {
        let depth = self.state.depth;
        let x = self.insertion[depth];
        let s = &mut self.state;
        s.order.insert(g, x);
        let spanning = s.cut[g];
        s.cut.insert(g, spanning);
        if depth > 0 {
            let a = self.anchor[depth];
            let q = s.order.iter().position(|&w| w == a).unwrap();
            let (lo, hi) = (g.min(q), g.max(q));
            for c in &mut s.cut[lo + 1..=hi] {
                *c += 1;
            }
        }
        s.spent += add;
        s.depth += 1;
    }

    fn undo(&mut self, g: usize, add: usize) {
        let s = &mut self.state;
        s.depth -= 1;
        s.spent -= add;
        if s.depth > 0 {
            let a = self.anchor[s.depth];
            let q = s.order.iter().position(|&w| w == a).unwrap();
            let (lo, hi) = (g.min(q), g.max(q));
            for c in &mut s.cut[lo + 1..=hi] {
                *c -= 1;
            }
        }
        s.cut.remove(g);
        s.order.remove(g);
    }

    fn descend(&mut self, visit: &mut Visitor<'_>) -> ControlFlow<()> {
        self.stats.nodes += 1;
        if self.state.depth == self.n() {
            if self.complete() {
                self.stats.emitted += 1;
                return visit(&self.state.order, self.state.spent, &mut self.budget);
            }
            return ControlFlow::Continue(());
        }
        for (g, add) in self.moves() {
            // The budget may have been tightened by the visitor.
            if self.state.spent + add > self.budget {
                continue;
            }
            self.apply(g, add);
            let flow = if self.feasible() {
                self.descend(visit)
            } else {
                ControlFlow::Continue(())
            };
            self.undo(g, add);
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// All feasible partial arrangements with exactly `depth` vertices, in
    /// enumeration order.
    fn frontier(&mut self, depth: usize, out: &mut Vec<Partial>) {
        if self.state.depth == depth {
            out.push(self.state.clone());
            return;
        }
        for (g, add) in self.moves() {
            self.apply(g, add);
            if self.feasible() {
                self.frontier(depth, out);
            }
            self.undo(g, add);
        }
    }

    fn run(&mut self, visit: &mut Visitor<'_>) -> EnumStats {
        if self.n() == 0 {
            self.stats.nodes += 1;
            self.stats.emitted += 1;
            let _ = visit(&[], 0, &mut self.budget);
            return self.stats;
        }
        let _ = self.descend(visit);
        self.stats
    }
}

/// Visits every arrangement of tree `t` with net cost at most `budget`,
/// exactly once, as a left-to-right vertex order with its net cost on `t`.
/// Returning `Break` from the visitor stops the enumeration.
pub fn enumerate_arrangements<F>(t: &Graph, budget: SearchBudget, mut visit: F) -> Result<EnumStats>
where
    F: FnMut(&[Vertex], usize) -> ControlFlow<()>,
{
    enumerate_constrained(t, budget, &EnumConstraints::default(), |o, c| visit(o, c))
}

/// [`enumerate_arrangements`] restricted by `constraints`.
pub fn enumerate_constrained<F>(
    t: &Graph,
    budget: SearchBudget,
    constraints: &EnumConstraints,
    mut visit: F,
) -> Result<EnumStats>
where
    F: FnMut(&[Vertex], usize) -> ControlFlow<()>,
{
    let mut e = Enumerator::new(t, budget.0, constraints)?;
    Ok(e.run(&mut |o, c, _| visit(o, c)))
}

/// Collects [`enumerate_arrangements`] into arrangements.
pub fn collect_arrangements(t: &Graph, budget: SearchBudget) -> Result<Vec<(Arrangement, usize)>> {
    let mut out = Vec::new();
    enumerate_arrangements(t, budget, |order, c| {
        out.push((Arrangement::from_order(order.to_vec()).expect("enumerator emits permutations"), c));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Number of tree arrangements with net cost at most `budget`.
pub fn count_arrangements(t: &Graph, budget: SearchBudget) -> Result<u64> {
    Ok(enumerate_arrangements(t, budget, |_, _| ControlFlow::Continue(()))?.emitted)
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    /// Skip mirror images; halves the enumeration, same optimum.
    pub symmetry_prune: bool,
    /// Worker threads for the enumeration; 1 runs inline.
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            symmetry_prune: false,
            threads: 1,
        }
    }
}

/// The best arrangement found below one subtree, keyed for a deterministic
/// merge.
struct Best {
    net: usize,
    order: Vec<Vertex>,
}

fn search_best(
    e: &mut Enumerator<'_>,
    extra: &[(Vertex, Vertex)],
    scratch: &mut [usize],
) -> Option<Best> {
    let mut best: Option<Best> = None;
    let mut visit = |order: &[Vertex], tree_net: usize, budget: &mut usize| {
        for (i, &v) in order.iter().enumerate() {
            scratch[v - 1] = i;
        }
        let mut net = tree_net;
        for &(u, v) in extra {
            net += scratch[u - 1].abs_diff(scratch[v - 1]) - 1;
            if net > *budget {
                return ControlFlow::Continue(());
            }
        }
        if best.as_ref().is_none_or(|b| net < b.net) {
            best = Some(Best {
                net,
                order: order.to_vec(),
            });
            if net == 0 {
                return ControlFlow::Break(());
            }
            // Only strictly better arrangements matter from here on.
            *budget = net - 1;
        }
        ControlFlow::Continue(())
    };
    if e.n() == 0 {
        return Some(Best {
            net: 0,
            order: Vec::new(),
        });
    }
    let _ = e.descend(&mut visit);
    best
}

/// Minimum net cost arrangement of connected `g` if that cost is at most
/// `budget`. Ties go to the first arrangement in enumeration order.
pub fn best_arrangement(g: &Graph, budget: SearchBudget) -> Result<Option<(Arrangement, usize)>> {
    best_arrangement_with(g, budget, &SearchOptions::default())
}

pub fn best_arrangement_with(
    g: &Graph,
    budget: SearchBudget,
    opts: &SearchOptions,
) -> Result<Option<(Arrangement, usize)>> {
    let tree = spanning_tree(g)?;
    let extra: Vec<(Vertex, Vertex)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| !tree.has_edge(u, v))
        .collect();
    let constraints = EnumConstraints {
        mirror_break: opts.symmetry_prune,
        ..Default::default()
    };
    let n = g.n();

    let best = if opts.threads <= 1 || n < 4 {
        let mut e = Enumerator::new(&tree, budget.0, &constraints)?;
        search_best(&mut e, &extra, &mut vec![0; n])
    } else {
        // Split on the shallowest level wide enough to keep every worker busy;
        // subtrees are merged by (net cost, subtree index), which is the
        // sequential first-found optimum.
        let mut prefixes = Vec::new();
        for depth in 1..=n {
            prefixes.clear();
            Enumerator::new(&tree, budget.0, &constraints)?.frontier(depth, &mut prefixes);
            if prefixes.len() >= 4 * opts.threads {
                break;
            }
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::BadParameters(e.to_string()))?;
        let results: Vec<Option<Best>> = pool.install(|| {
            prefixes
                .into_par_iter()
                .map(|prefix| {
                    let mut e = Enumerator::new(&tree, budget.0, &constraints).expect("tree checked");
                    e.state = prefix;
                    search_best(&mut e, &extra, &mut vec![0; n])
                })
                .collect()
        });
        results
            .into_iter()
            .flatten()
            .enumerate()
            .min_by_key(|(i, b)| (b.net, *i))
            .map(|(_, b)| b)
    };
    match best {
        Some(b) if b.net <= budget.0 => Ok(Some((Arrangement::from_order(b.order)?, b.net))),
        _ => Ok(None),
    }
}

/// Per-component bookkeeping in a [`SolveReport`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentStats {
    /// Smallest vertex of the component, in the input graph.
    pub first_vertex: Vertex,
    pub n: usize,
    pub m: usize,
    pub is_path: bool,
    pub kernel_n: usize,
    pub kernel_m: usize,
    pub suppressed: usize,
    /// `None` when the component was not kernelized.
    pub gate: Option<Gate>,
    /// Optimal net cost if it was determined.
    pub net_cost: Option<usize>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Timings {
    pub components: Duration,
    pub kernelize: Duration,
    pub search: Duration,
    pub lift: Duration,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub k: usize,
    /// True iff some arrangement has net cost at most `k`.
    pub decision: bool,
    pub net_cost_opt: Option<usize>,
    pub arrangement: Option<Arrangement>,
    pub kernel_stats: Vec<ComponentStats>,
    pub timings: Timings,
    /// Budget handed to each non-path component.
    pub component_budget: Option<usize>,
}

/// Decides whether `g` has an arrangement of net cost at most `k` and, if so,
/// returns an optimal one.
pub fn solve(g: &Graph, k: SearchBudget) -> Result<SolveReport> {
    solve_with(g, k, &SearchOptions::default())
}

pub fn solve_with(g: &Graph, k: SearchBudget, opts: &SearchOptions) -> Result<SolveReport> {
    let k = k.0;
    let mut timings = Timings::default();
    let clock = Instant::now();
    let split = connected_components(g);
    let paths: Vec<bool> = split.parts.iter().map(|c| is_simple_path(&c.graph)).collect();
    timings.components = clock.elapsed();

    let mut stats: Vec<ComponentStats> = split
        .parts
        .iter()
        .zip(&paths)
        .map(|(c, &is_path)| ComponentStats {
            first_vertex: c.to_parent[0],
            n: c.graph.n(),
            m: c.graph.m(),
            is_path,
            kernel_n: c.graph.n(),
            kernel_m: c.graph.m(),
            suppressed: 0,
            gate: None,
            net_cost: is_path.then_some(0),
        })
        .collect();
    let rejected = |stats, timings, component_budget| SolveReport {
        k,
        decision: false,
        net_cost_opt: None,
        arrangement: None,
        kernel_stats: stats,
        timings,
        component_budget,
    };

    // Every non-path component costs at least 1.
    let p = paths.iter().filter(|&&b| !b).count();
    if p > k {
        return Ok(rejected(stats, timings, None));
    }
    let budget = k - p + 1;

    let mut local_orders: Vec<Vec<Vertex>> = Vec::with_capacity(split.parts.len());
    let mut total = 0;
    for (i, comp) in split.parts.iter().enumerate() {
        if paths[i] {
            local_orders.push(path_order(&comp.graph).expect("component is a path"));
            continue;
        }
        let clock = Instant::now();
        let kernel = kernelize(&comp.graph, budget)?;
        let gate = kernel_gate(&kernel.graph, budget);
        timings.kernelize += clock.elapsed();
        let s = &mut stats[i];
        s.kernel_n = kernel.graph.n();
        s.kernel_m = kernel.graph.m();
        s.suppressed = kernel.suppressed();
        s.gate = Some(gate);
        if gate == Gate::RejectTooBig {
            return Ok(rejected(stats, timings, Some(budget)));
        }

        let clock = Instant::now();
        let found = best_arrangement_with(&kernel.graph, SearchBudget(budget), opts)?;
        timings.search += clock.elapsed();
        let Some((a_kernel, net)) = found else {
            return Ok(rejected(stats, timings, Some(budget)));
        };
        s.net_cost = Some(net);
        total += net;

        let clock = Instant::now();
        let lifted = lift_arrangement(&kernel.record, &a_kernel)?;
        timings.lift += clock.elapsed();
        local_orders.push(lifted.order().to_vec());
    }

    if total > k {
        return Ok(rejected(stats, timings, Some(budget)));
    }
    let clock = Instant::now();
    let mut order = Vec::with_capacity(g.n());
    for (comp, local) in split.parts.iter().zip(&local_orders) {
        order.extend(local.iter().map(|&v| comp.to_parent[v - 1]));
    }
    let arrangement = Arrangement::from_order(order)?;
    timings.lift += clock.elapsed();
    Ok(SolveReport {
        k,
        decision: true,
        net_cost_opt: Some(total),
        arrangement: Some(arrangement),
        kernel_stats: stats,
        timings,
        component_budget: Some(budget),
    })
}
