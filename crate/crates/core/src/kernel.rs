//! Linear-time kernelization by suppressing degree-2 vertices.
//!
//! A degree-2 vertex is k-suppressible when both of its edges are bridges
//! with more than `k` vertices on either side. Replacing such a vertex by an
//! edge between its neighbours does not change the optimal net cost as long
//! as that cost is at most `k`, and an optimal arrangement of the smaller
//! graph lifts back by placing the vertex in the gap between the two sides.
//!
//! The set of vertices to suppress is found in one bottom-up pass over a DFS
//! tree. `t'` counts the vertices already chosen inside each subtree so the
//! side sizes seen by later checks reflect earlier suppressions.

use std::collections::HashSet;

use crate::decomposition::dfs_tree;
use crate::error::{Error, Result};
use crate::graph::{Arrangement, Graph, Vertex};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuppressionPlan {
    pub k: usize,
    /// Vertices to suppress, in the order they were accepted.
    pub order: Vec<Vertex>,
    /// `t'` of every vertex (index `v - 1`): chosen vertices in its DFS subtree.
    pub tprime: Vec<usize>,
    /// Adjacency scans and per-vertex checks performed.
    pub work: usize,
}

impl SuppressionPlan {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Chooses the vertices to suppress for budget `k` in a connected graph.
///
/// Every vertex of the result is k-suppressible in the graph obtained by
/// suppressing the vertices before it, and once all of them are suppressed no
/// k-suppressible vertex remains.
pub fn suppressible_sequence(g: &Graph, k: usize) -> Result<SuppressionPlan> {
    let n = g.n();
    if n == 0 {
        return Ok(SuppressionPlan {
            k,
            ..Default::default()
        });
    }
    let tree = dfs_tree(g)?;
    let mut tprime = vec![0usize; n];
    let mut order = Vec::new();
    let mut work = tree.work;

    for &v in &tree.postorder {
        let children = tree.children_of(v);
        work += children.len() + 1;
        let below: usize = children.iter().map(|&c| tprime[c - 1]).sum();
        let accept = g.degree(v) == 2
            && match (tree.parent_of(v), children) {
                // Root with two DFS children: both edges are bridges.
                (None, &[u, w]) => {
                    tree.size(u) - tprime[u - 1] > k && tree.size(w) - tprime[w - 1] > k
                }
                (Some(_), &[u]) => {
                    let current = tree.size(v) - tprime[u - 1];
                    tree.parent_edge_is_bridge(u)
                        && tree.parent_edge_is_bridge(v)
                        && k + 1 < current
                        && current + k + order.len() < n
                }
                _ => false,
            };
        if accept {
            order.push(v);
            tprime[v - 1] = below + 1;
        } else {
            tprime[v - 1] = below;
        }
    }
    Ok(SuppressionPlan {
        k,
        order,
        tprime,
        work,
    })
}

/// One suppression: `vertex` was removed and `u1u2` (with `u1 < u2`) added.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub vertex: Vertex,
    pub u1: Vertex,
    pub u2: Vertex,
}

/// Everything needed to map the kernel back onto the original graph. All
/// vertex ids here are original ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelRecord {
    pub original_n: usize,
    /// Suppressions in the order they were applied.
    pub steps: Vec<Step>,
    /// `kept[i]` is the original id of kernel vertex `i + 1`; ascending.
    pub kept: Vec<Vertex>,
    /// Kernel edges in original ids.
    pub kernel_edges: Vec<(Vertex, Vertex)>,
}

impl KernelRecord {
    pub fn identity(g: &Graph) -> Self {
        KernelRecord {
            original_n: g.n(),
            steps: Vec::new(),
            kept: g.vertices().collect(),
            kernel_edges: g.edges().to_vec(),
        }
    }

    /// Undoes every suppression in reverse order, rebuilding the original
    /// graph's edge set.
    pub fn replay(&self) -> Result<Graph> {
        let key = |a: Vertex, b: Vertex| (a.min(b), a.max(b));
        let mut edges: HashSet<(Vertex, Vertex)> =
            self.kernel_edges.iter().map(|&(a, b)| key(a, b)).collect();
        for s in self.steps.iter().rev() {
            if !edges.remove(&key(s.u1, s.u2)) {
                return Err(Error::RecordMismatch(format!(
                    "edge ({},{}) missing while restoring {}",
                    s.u1, s.u2, s.vertex
                )));
            }
            edges.insert(key(s.u1, s.vertex));
            edges.insert(key(s.vertex, s.u2));
        }
        Graph::from_edges(self.original_n, &edges.into_iter().collect::<Vec<_>>())
    }
}

/// Applies a plan. Each step deletes a degree-2 vertex `v` with neighbours
/// `u1, u2` and adds the edge `u1u2`; the kernel is relabeled to
/// `1..=n - |plan|` in ascending original order.
pub fn suppress_all(g: &Graph, plan: &SuppressionPlan) -> Result<(Graph, KernelRecord)> {
    let n = g.n();
    // Suppression never changes the degree of a surviving vertex, so each
    // vertex keeps a fixed block of incidence slots:
    // `incident[start[v - 1]..start[v]]` holds the ids of its current edges.
    let mut start = vec![0usize; n + 1];
    for v in g.vertices() {
        start[v] = start[v - 1] + g.degree(v);
    }
    let mut fill = start.clone();
    let mut incident = vec![0usize; start[n]];
    // Edge endpoints, and for each endpoint the slot it occupies.
    let mut ends: Vec<[Vertex; 2]> = Vec::with_capacity(g.m());
    let mut slot: Vec<[usize; 2]> = Vec::with_capacity(g.m());
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        ends.push([u, v]);
        slot.push([fill[u - 1], fill[v - 1]]);
        incident[fill[u - 1]] = id;
        incident[fill[v - 1]] = id;
        fill[u - 1] += 1;
        fill[v - 1] += 1;
    }
    let mut removed = vec![false; n];
    let mut steps = Vec::with_capacity(plan.len());

    for &v in &plan.order {
        if v == 0 || v > n || removed[v - 1] || g.degree(v) != 2 {
            return Err(Error::InternalInvariantViolation(format!(
                "vertex {v} is not a live degree-2 vertex"
            )));
        }
        let (e1, e2) = (incident[start[v - 1]], incident[start[v - 1] + 1]);
        let side = |e: usize| if ends[e][0] == v { 0 } else { 1 };
        let (s1, s2) = (side(e1), side(e2));
        let (u1, u2) = (ends[e1][1 - s1], ends[e2][1 - s2]);
        if u1 == u2 {
            return Err(Error::InternalInvariantViolation(format!(
                "suppressing {v} would create a loop at {u1}"
            )));
        }
        // e1 now runs u1 -- u2 and takes over e2's slot at u2.
        let u2_slot = slot[e2][1 - s2];
        ends[e1][s1] = u2;
        slot[e1][s1] = u2_slot;
        incident[u2_slot] = e1;
        removed[v - 1] = true;
        steps.push(Step {
            vertex: v,
            u1: u1.min(u2),
            u2: u1.max(u2),
        });
    }

    let mut local = vec![0usize; n];
    let mut kept = Vec::with_capacity(n - steps.len());
    for v in g.vertices().filter(|&v| !removed[v - 1]) {
        kept.push(v);
        local[v - 1] = kept.len();
    }
    let mut kernel_edges = Vec::with_capacity(g.m() - steps.len());
    for &v in &kept {
        for &e in &incident[start[v - 1]..start[v]] {
            let [a, b] = ends[e];
            let w = if a == v { b } else { a };
            if v < w {
                kernel_edges.push((v, w));
            }
        }
    }
    kernel_edges.sort_unstable();
    if let Some(w) = kernel_edges.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::InternalInvariantViolation(format!(
            "suppression produced a duplicate edge ({},{})",
            w[0].0, w[0].1
        )));
    }
    let kernel = Graph::from_edges_unchecked(
        kept.len(),
        kernel_edges
            .iter()
            .map(|&(a, b)| (local[a - 1], local[b - 1]))
            .collect(),
    );
    let record = KernelRecord {
        original_n: n,
        steps,
        kept,
        kernel_edges,
    };
    Ok((kernel, record))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    Accept,
    /// The kernel is too large for budget `k`; the net cost exceeds `k`.
    RejectTooBig,
}

/// Size gate for a connected graph without k-suppressible vertices: one with
/// net cost at most `k` has at most `5k + 2` vertices and `6k + 1` edges.
pub fn kernel_gate(kernel: &Graph, k: usize) -> Gate {
    if kernel.n() > 5 * k + 2 || kernel.m() > 6 * k + 1 {
        Gate::RejectTooBig
    } else {
        Gate::Accept
    }
}

/// Lifts an arrangement of the kernel to the original graph.
///
/// Each chain of suppressed vertices that replaced a kernel edge `ab` is
/// inserted, in path order, into the gap between the positions of `a` and
/// `b` that only `ab` crosses. When the two sides of `ab` occupy disjoint
/// intervals (always the case for an optimal arrangement within budget) that
/// gap exists and the lifted arrangement has the same net cost. Otherwise the
/// chain goes into the least-crossed gap between `a` and `b`.
pub fn lift_arrangement(record: &KernelRecord, a_kernel: &Arrangement) -> Result<Arrangement> {
    let n_kernel = record.kept.len();
    if a_kernel.len() != n_kernel {
        return Err(Error::RecordMismatch(format!(
            "arrangement has {} vertices, kernel has {}",
            a_kernel.len(),
            n_kernel
        )));
    }
    if n_kernel + record.steps.len() != record.original_n {
        return Err(Error::RecordMismatch(format!(
            "{} kept + {} suppressed != {} original vertices",
            n_kernel,
            record.steps.len(),
            record.original_n
        )));
    }
    if record.steps.is_empty() {
        return Arrangement::from_order(a_kernel.order().iter().map(|&v| record.kept[v - 1]).collect());
    }

    let on = record.original_n;
    // Kernel position of each kept original vertex; 0 marks suppressed ones.
    let mut kpos = vec![0usize; on + 1];
    for (i, &v) in record.kept.iter().enumerate() {
        kpos[v] = a_kernel.position(i + 1);
    }

    // Original neighbours of every suppressed vertex, restored by undoing the
    // steps last to first.
    let mut nbrs = vec![[0usize; 2]; on + 1];
    for s in record.steps.iter().rev() {
        let v = s.vertex;
        if kpos[v] != 0 || nbrs[v] != [0, 0] {
            return Err(Error::RecordMismatch(format!("vertex {v} suppressed twice or kept")));
        }
        nbrs[v] = [s.u1, s.u2];
        for (x, y) in [(s.u1, s.u2), (s.u2, s.u1)] {
            if kpos[x] == 0 {
                match nbrs[x].iter().position(|&w| w == y) {
                    Some(i) => nbrs[x][i] = v,
                    None => {
                        return Err(Error::RecordMismatch(format!(
                            "edge ({x},{y}) missing while restoring {v}"
                        )))
                    }
                }
            }
        }
    }

    // Gap g (1-based) lies between kernel positions g and g + 1.
    let mut cut = vec![0isize; n_kernel + 1];
    for &(a, b) in &record.kernel_edges {
        let (p, q) = (kpos[a].min(kpos[b]), kpos[a].max(kpos[b]));
        cut[p] += 1;
        cut[q] -= 1;
    }
    for g in 1..=n_kernel {
        cut[g] += cut[g - 1];
    }

    let mut after_gap: Vec<Vec<Vertex>> = vec![Vec::new(); n_kernel + 1];
    let mut visited = vec![false; on + 1];
    for s in &record.steps {
        let start = s.vertex;
        if visited[start] {
            continue;
        }
        let Some(end_idx) = nbrs[start].iter().position(|&w| kpos[w] != 0) else {
            continue;
        };
        // Walk from the kept end through the whole chain.
        let a = nbrs[start][end_idx];
        let mut chain = Vec::new();
        let (mut prev, mut cur) = (a, start);
        while kpos[cur] == 0 {
            visited[cur] = true;
            chain.push(cur);
            let next = if nbrs[cur][0] == prev { nbrs[cur][1] } else { nbrs[cur][0] };
            prev = cur;
            cur = next;
        }
        let b = cur;
        let (left, right) = if kpos[a] < kpos[b] {
            (kpos[a], kpos[b])
        } else {
            chain.reverse();
            (kpos[b], kpos[a])
        };
        let gap = (left..right)
            .min_by_key(|&g| cut[g])
            .expect("kernel edge endpoints occupy distinct positions");
        after_gap[gap].extend(chain);
    }
    if visited.iter().filter(|&&x| x).count() != record.steps.len() {
        return Err(Error::RecordMismatch("suppressed vertex not on any chain".into()));
    }

    let mut order = Vec::with_capacity(on);
    for p in 1..=n_kernel {
        order.push(record.kept[a_kernel.vertex_at(p) - 1]);
        order.extend_from_slice(&after_gap[p]);
    }
    Arrangement::from_order(order)
}

/// A kernel together with its lift record.
#[derive(Debug, Clone)]
pub struct Kernel {
    pub graph: Graph,
    pub record: KernelRecord,
    pub plan: SuppressionPlan,
}

impl Kernel {
    pub fn suppressed(&self) -> usize {
        self.record.steps.len()
    }
}

/// Plans and applies all suppressions for a connected graph.
pub fn kernelize(g: &Graph, k: usize) -> Result<Kernel> {
    let plan = suppressible_sequence(g, k)?;
    let (graph, record) = suppress_all(g, &plan)?;
    if cfg!(debug_assertions) {
        let again = suppressible_sequence(&graph, k)?;
        if !again.is_empty() {
            return Err(Error::InternalInvariantViolation(format!(
                "kernel still has {} k-suppressible vertices",
                again.len()
            )));
        }
    }
    Ok(Kernel {
        graph,
        record,
        plan,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::net_cost;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn p10_budget_two() {
        let plan = suppressible_sequence(&path(10), 2).unwrap();
        // Bottom-up from vertex 10 when rooted at 1.
        assert_eq!(plan.order, vec![7, 6, 5, 4]);
        assert_eq!(plan.tprime[2], 4);

        let (kernel, record) = suppress_all(&path(10), &plan).unwrap();
        assert_eq!(kernel, path(6));
        assert_eq!(record.kept, vec![1, 2, 3, 8, 9, 10]);
        assert_eq!(record.replay().unwrap(), path(10));

        let lifted = lift_arrangement(&record, &Arrangement::identity(6)).unwrap();
        assert_eq!(lifted, Arrangement::identity(10));
        let reversed = lift_arrangement(&record, &Arrangement::identity(6).reversed()).unwrap();
        assert_eq!(net_cost(&path(10), &reversed).unwrap(), 0);
    }

    #[test]
    fn empty_plans() {
        let k3 = Graph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        for k in 0..4 {
            assert!(suppressible_sequence(&k3, k).unwrap().is_empty());
        }
        assert!(suppressible_sequence(&path(10), 5).unwrap().is_empty());

        let plan = suppressible_sequence(&k3, 1).unwrap();
        let (kernel, record) = suppress_all(&k3, &plan).unwrap();
        assert_eq!(kernel, k3);
        let a = Arrangement::from_order(vec![2, 3, 1]).unwrap();
        assert_eq!(lift_arrangement(&record, &a).unwrap(), a);
    }

    #[test]
    fn single_suppression() {
        // a - v - b with v = 2; plan built by hand.
        let g = path(3);
        let plan = SuppressionPlan {
            k: 0,
            order: vec![2],
            tprime: vec![1, 1, 0],
            work: 0,
        };
        let (kernel, record) = suppress_all(&g, &plan).unwrap();
        assert_eq!(kernel, path(2));
        assert_eq!(record.steps, vec![Step { vertex: 2, u1: 1, u2: 3 }]);
        let lifted = lift_arrangement(&record, &Arrangement::identity(2)).unwrap();
        assert_eq!(lifted.order(), &[1, 2, 3]);
        assert_eq!(net_cost(&g, &lifted).unwrap(), 0);
    }

    #[test]
    fn root_with_two_children() {
        // Rooted at 1, which sits in the middle of a 9-vertex path.
        let g = Graph::from_edges(
            9,
            &[(1, 2), (2, 3), (3, 4), (4, 5), (1, 6), (6, 7), (7, 8), (8, 9)],
        )
        .unwrap();
        let plan = suppressible_sequence(&g, 3).unwrap();
        // Sides of 1 are 4 and 4; 2 and 6 see 3|5 and are rejected.
        assert_eq!(plan.order, vec![1]);
    }

    #[test]
    fn duplicate_edge_is_invariant_violation() {
        let k3 = Graph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let plan = SuppressionPlan {
            k: 0,
            order: vec![2],
            tprime: vec![0; 3],
            work: 0,
        };
        assert!(matches!(
            suppress_all(&k3, &plan),
            Err(Error::InternalInvariantViolation(_))
        ));
    }

    #[test]
    fn gate() {
        let k3 = Graph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(kernel_gate(&k3, 1), Gate::Accept);
        // 5k+3 vertices with k = 1.
        assert_eq!(kernel_gate(&path(8), 1), Gate::RejectTooBig);
        assert_eq!(kernel_gate(&path(7), 1), Gate::Accept);
        // 5k+2 = 7 vertices, 6k+2 = 8 edges.
        let mut edges: Vec<_> = (1..7).map(|i| (i, i + 1)).collect();
        edges.extend([(1, 3), (4, 6)]);
        let g = Graph::from_edges(7, &edges).unwrap();
        assert_eq!(g.m(), 8);
        assert_eq!(kernel_gate(&g, 1), Gate::RejectTooBig);
    }

    #[test]
    fn lift_rejects_mismatch() {
        let plan = suppressible_sequence(&path(10), 2).unwrap();
        let (_, record) = suppress_all(&path(10), &plan).unwrap();
        assert!(matches!(
            lift_arrangement(&record, &Arrangement::identity(5)),
            Err(Error::RecordMismatch(_))
        ));
    }
}
