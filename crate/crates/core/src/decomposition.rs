//! Bridges, bridgeless components and DFS subtree sizes.
//!
//! Everything here rests on one iterative depth-first search that records
//! discovery times, low-links and subtree sizes, so each query is linear in
//! `n + m`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{component_labels, Graph, Vertex};

/// A rooted DFS spanning tree of a connected graph.
///
/// Children are discovered in ascending vertex order. `subtree_size[v - 1]`
/// is the number of vertices in the subtree rooted at `v`.
#[derive(Debug, Clone)]
pub struct RootedDfsTree {
    pub root: Vertex,
    /// Parent of each vertex, `0` for the root.
    pub parent: Vec<Vertex>,
    /// Children of vertex `v` are `child_list[child_start[v - 1]..child_start[v]]`.
    child_start: Vec<usize>,
    child_list: Vec<Vertex>,
    pub subtree_size: Vec<usize>,
    pub preorder: Vec<Vertex>,
    /// Bottom-up visiting order: every vertex appears after all its descendants.
    pub postorder: Vec<Vertex>,
    disc: Vec<usize>,
    low: Vec<usize>,
    /// Adjacency entries scanned plus vertices finished.
    pub work: usize,
}

impl RootedDfsTree {
    pub fn parent_of(&self, v: Vertex) -> Option<Vertex> {
        match self.parent[v - 1] {
            0 => None,
            p => Some(p),
        }
    }

    pub fn children_of(&self, v: Vertex) -> &[Vertex] {
        &self.child_list[self.child_start[v - 1]..self.child_start[v]]
    }

    pub fn size(&self, v: Vertex) -> usize {
        self.subtree_size[v - 1]
    }

    /// Whether the tree edge from `child` to its parent is a bridge.
    pub fn parent_edge_is_bridge(&self, child: Vertex) -> bool {
        match self.parent_of(child) {
            Some(p) => self.low[child - 1] > self.disc[p - 1],
            None => false,
        }
    }

    /// Whether `(u, v)` is a bridge of the graph the tree was built from.
    pub fn is_bridge(&self, u: Vertex, v: Vertex) -> bool {
        (self.parent_of(v) == Some(u) && self.parent_edge_is_bridge(v))
            || (self.parent_of(u) == Some(v) && self.parent_edge_is_bridge(u))
    }

    pub fn n(&self) -> usize {
        self.preorder.len()
    }
}

/// Depth-first search over every vertex reachable from `roots`, in order.
/// Vertices already discovered by an earlier root are skipped.
fn dfs_forest(g: &Graph, roots: impl IntoIterator<Item = Vertex>) -> RootedDfsTree {
    let n = g.n();
    let mut disc = vec![0usize; n];
    let mut low = vec![0usize; n];
    let mut parent = vec![0usize; n];
    let mut subtree_size = vec![0usize; n];
    let mut preorder = Vec::with_capacity(n);
    let mut postorder = Vec::with_capacity(n);
    let mut work = 0usize;
    let mut time = 0usize;
    let mut first_root = 0;

    let mut stack: Vec<(Vertex, usize)> = Vec::new();
    for root in roots {
        if disc[root - 1] != 0 {
            continue;
        }
        if first_root == 0 {
            first_root = root;
        }
        time += 1;
        disc[root - 1] = time;
        low[root - 1] = time;
        preorder.push(root);
        stack.push((root, 0));
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            let nbrs = g.neighbors(v);
            if *next < nbrs.len() {
                let w = nbrs[*next];
                *next += 1;
                work += 1;
                if disc[w - 1] == 0 {
                    time += 1;
                    disc[w - 1] = time;
                    low[w - 1] = time;
                    parent[w - 1] = v;
                    preorder.push(w);
                    stack.push((w, 0));
                } else if w != parent[v - 1] {
                    low[v - 1] = low[v - 1].min(disc[w - 1]);
                }
            } else {
                stack.pop();
                work += 1;
                subtree_size[v - 1] += 1;
                postorder.push(v);
                let p = parent[v - 1];
                if p != 0 {
                    subtree_size[p - 1] += subtree_size[v - 1];
                    low[p - 1] = low[p - 1].min(low[v - 1]);
                }
            }
        }
    }
    // Preorder lists each vertex's children in discovery order.
    let mut child_start = vec![0usize; n + 1];
    for &v in &preorder {
        if parent[v - 1] != 0 {
            child_start[parent[v - 1]] += 1;
        }
    }
    for i in 0..n {
        child_start[i + 1] += child_start[i];
    }
    let mut fill = child_start.clone();
    let mut child_list = vec![0; child_start[n]];
    for &v in &preorder {
        let p = parent[v - 1];
        if p != 0 {
            child_list[fill[p - 1]] = v;
            fill[p - 1] += 1;
        }
    }
    RootedDfsTree {
        root: first_root,
        parent,
        child_start,
        child_list,
        subtree_size,
        preorder,
        postorder,
        disc,
        low,
        work,
    }
}

/// DFS spanning tree of a connected graph from `root`, with subtree sizes
/// filled in bottom-up and low-links for bridge queries.
pub fn dfs_tree_with_subtree_sizes(g: &Graph, root: Vertex) -> Result<RootedDfsTree> {
    if root == 0 || root > g.n() {
        return Err(Error::BadParameters(format!(
            "root {root} outside 1..={}",
            g.n()
        )));
    }
    let tree = dfs_forest(g, [root]);
    if tree.n() < g.n() {
        return Err(Error::Disconnected {
            components: component_labels(g).1,
        });
    }
    Ok(tree)
}

/// DFS tree rooted at the lowest-numbered vertex.
pub fn dfs_tree(g: &Graph) -> Result<RootedDfsTree> {
    dfs_tree_with_subtree_sizes(g, 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bridge {
    /// Endpoints with `u < v`.
    pub u: Vertex,
    pub v: Vertex,
    /// Vertex counts of the components of `G - uv` containing `u` and `v`.
    pub sides: (usize, usize),
}

#[derive(Debug, Clone, Default)]
pub struct BridgeSet {
    /// Sorted by `(u, v)`.
    pub bridges: Vec<Bridge>,
}

impl BridgeSet {
    pub fn len(&self) -> usize {
        self.bridges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bridges.is_empty()
    }

    pub fn get(&self, u: Vertex, v: Vertex) -> Option<&Bridge> {
        let key = (u.min(v), u.max(v));
        self.bridges
            .binary_search_by(|b| (b.u, b.v).cmp(&key))
            .ok()
            .map(|i| &self.bridges[i])
    }

    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        self.get(u, v).is_some()
    }

    /// Side sizes oriented as `(side of u, side of v)` for the given order.
    pub fn side_sizes(&self, u: Vertex, v: Vertex) -> Option<(usize, usize)> {
        self.get(u, v)
            .map(|b| if b.u == u { b.sides } else { (b.sides.1, b.sides.0) })
    }

    /// A bridge is k-separating when both sides have more than `k` vertices.
    pub fn is_k_separating(&self, u: Vertex, v: Vertex, k: usize) -> Result<bool> {
        let b = self.get(u, v).ok_or(Error::NotABridge(u, v))?;
        Ok(b.sides.0 > k && b.sides.1 > k)
    }
}

fn bridges_of_tree(g: &Graph, tree: &RootedDfsTree) -> BridgeSet {
    let n = g.n();
    let mut bridges: Vec<Bridge> = tree
        .preorder
        .iter()
        .filter(|&&c| tree.parent_edge_is_bridge(c))
        .map(|&c| {
            let p = tree.parent[c - 1];
            let child_side = tree.size(c);
            let (u, v) = (p.min(c), p.max(c));
            let sides = if u == c {
                (child_side, n - child_side)
            } else {
                (n - child_side, child_side)
            };
            Bridge { u, v, sides }
        })
        .collect();
    bridges.sort_unstable_by_key(|b| (b.u, b.v));
    BridgeSet { bridges }
}

/// All bridges of a connected graph with the sizes of both sides, read off
/// the DFS subtree sizes.
pub fn find_bridges(g: &Graph) -> Result<BridgeSet> {
    if g.n() == 0 {
        return Ok(BridgeSet::default());
    }
    let tree = dfs_tree(g)?;
    Ok(bridges_of_tree(g, &tree))
}

fn bridge_predicate(g: &Graph) -> impl Fn(Vertex, Vertex) -> bool {
    let forest = dfs_forest(g, g.vertices());
    move |u: Vertex, v: Vertex| forest.is_bridge(u, v)
}

/// Vertex sets of the bridgeless components: the components left after
/// deleting every bridge. Singletons are the trivial ones. Parts are ordered
/// by smallest vertex, each part ascending.
pub fn bridgeless_components(g: &Graph) -> Vec<Vec<Vertex>> {
    let is_bridge = bridge_predicate(g);
    let mut seen = vec![false; g.n()];
    let mut parts = Vec::new();
    let mut queue = VecDeque::new();
    for s in g.vertices() {
        if seen[s - 1] {
            continue;
        }
        seen[s - 1] = true;
        queue.push_back(s);
        let mut part = Vec::new();
        while let Some(v) = queue.pop_front() {
            part.push(v);
            for &w in g.neighbors(v) {
                if !seen[w - 1] && !is_bridge(v, w) {
                    seen[w - 1] = true;
                    queue.push_back(w);
                }
            }
        }
        part.sort_unstable();
        parts.push(part);
    }
    parts
}

/// Whether the bridge `(u, v)` of connected `g` leaves more than `k`
/// vertices on each side.
pub fn is_k_separating(g: &Graph, edge: (Vertex, Vertex), k: usize) -> Result<bool> {
    find_bridges(g)?.is_k_separating(edge.0, edge.1, k)
}

/// Cut vertices of a connected graph, ascending.
pub fn articulation_points(g: &Graph) -> Result<Vec<Vertex>> {
    if g.n() == 0 {
        return Ok(Vec::new());
    }
    let tree = dfs_tree(g)?;
    let mut cut = vec![false; g.n()];
    for &c in &tree.preorder {
        if let Some(p) = tree.parent_of(c) {
            if p != tree.root && tree.low[c - 1] >= tree.disc[p - 1] {
                cut[p - 1] = true;
            }
        }
    }
    cut[tree.root - 1] = tree.children_of(tree.root).len() >= 2;
    Ok(g.vertices().filter(|&v| cut[v - 1]).collect())
}

/// Connected, at least three vertices and no cut vertex.
pub fn is_two_vertex_connected(g: &Graph) -> bool {
    g.n() >= 3 && g.is_connected() && articulation_points(g).is_ok_and(|a| a.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, e).unwrap()
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        g(n, &edges)
    }

    fn k3() -> Graph {
        g(3, &[(1, 2), (2, 3), (1, 3)])
    }

    #[test]
    fn bridges_of_small_graphs() {
        assert!(find_bridges(&k3()).unwrap().is_empty());

        let b = find_bridges(&path(4)).unwrap();
        let sides: Vec<_> = b.bridges.iter().map(|b| b.sides).collect();
        assert_eq!(sides, vec![(1, 3), (2, 2), (3, 1)]);

        let two_triangles = g(6, &[(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (5, 6), (4, 6)]);
        let b = find_bridges(&two_triangles).unwrap();
        assert_eq!(
            b.bridges,
            vec![Bridge { u: 3, v: 4, sides: (3, 3) }]
        );
        assert_eq!(b.side_sizes(4, 3), Some((3, 3)));
    }

    #[test]
    fn bridges_reject_disconnected() {
        assert!(matches!(
            find_bridges(&Graph::empty(3)),
            Err(Error::Disconnected { components: 3 })
        ));
    }

    #[test]
    fn bridgeless_parts() {
        assert_eq!(
            bridgeless_components(&path(4)),
            vec![vec![1], vec![2], vec![3], vec![4]]
        );
        let pendant = g(4, &[(1, 2), (2, 3), (1, 3), (3, 4)]);
        assert_eq!(bridgeless_components(&pendant), vec![vec![1, 2, 3], vec![4]]);
        let k4 = g(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        assert_eq!(bridgeless_components(&k4), vec![vec![1, 2, 3, 4]]);
    }

    #[test]
    fn k_separating() {
        let p5 = path(5);
        assert!(is_k_separating(&p5, (2, 3), 1).unwrap());
        assert!(!is_k_separating(&p5, (2, 3), 2).unwrap());
        assert!(!is_k_separating(&p5, (1, 2), 1).unwrap());
        assert!(matches!(
            is_k_separating(&k3(), (1, 2), 0),
            Err(Error::NotABridge(1, 2))
        ));
    }

    #[test]
    fn subtree_sizes() {
        let t = dfs_tree_with_subtree_sizes(&path(3), 1).unwrap();
        assert_eq!(t.subtree_size, vec![3, 2, 1]);
        assert_eq!(t.postorder, vec![3, 2, 1]);

        let star = g(4, &[(1, 2), (1, 3), (1, 4)]);
        let t = dfs_tree_with_subtree_sizes(&star, 1).unwrap();
        assert_eq!(t.subtree_size, vec![4, 1, 1, 1]);
        assert_eq!(t.children_of(1), &[2, 3, 4]);

        for root in 1..=3 {
            let t = dfs_tree_with_subtree_sizes(&k3(), root).unwrap();
            assert_eq!(t.size(root), 3);
            assert_eq!(t.children_of(root).len(), 1);
        }
    }

    #[test]
    fn cut_vertices() {
        assert_eq!(articulation_points(&path(4)).unwrap(), vec![2, 3]);
        assert!(articulation_points(&k3()).unwrap().is_empty());
        let bowtie = g(5, &[(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)]);
        assert_eq!(articulation_points(&bowtie).unwrap(), vec![3]);
        assert!(is_two_vertex_connected(&k3()));
        assert!(!is_two_vertex_connected(&bowtie));
    }
}
