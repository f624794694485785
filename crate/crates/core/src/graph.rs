//! Simple undirected graphs, linear arrangements and their cost.
//!
//! Vertices are dense 1-based integers `1..=n`; positions of an arrangement
//! use the same range.

use std::collections::VecDeque;

use crate::error::{Error, Result, Site};

pub type Vertex = usize;

/// A simple undirected graph on vertices `1..=n`.
///
/// Edges are stored normalized (`u < v`) and sorted; adjacency lists are sorted
/// ascending so iteration order is reproducible everywhere downstream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    /// Neighbours of `v` are `adj[offset[v - 1]..offset[v]]`.
    offset: Vec<usize>,
    adj: Vec<Vertex>,
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicate pairs (in either orientation)
    /// and endpoints outside `1..=n`.
    pub fn from_edges(n: usize, edge_list: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut keyed = Vec::with_capacity(edge_list.len());
        for (i, &(u, v)) in edge_list.iter().enumerate() {
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::EndpointOutOfRange {
                    u,
                    v,
                    n,
                    site: Site::Pair(i),
                });
            }
            if u == v {
                return Err(Error::LoopEdge {
                    u,
                    site: Site::Pair(i),
                });
            }
            keyed.push(((u.min(v), u.max(v)), i));
        }
        keyed.sort_unstable();
        for w in keyed.windows(2) {
            if w[0].0 == w[1].0 {
                let later = w[0].1.max(w[1].1);
                let (u, v) = edge_list[later];
                return Err(Error::DuplicateEdge {
                    u,
                    v,
                    site: Site::Pair(later),
                });
            }
        }
        Ok(Self::from_sorted_unchecked(
            n,
            keyed.into_iter().map(|(e, _)| e).collect(),
        ))
    }

    /// Builds a graph from edges already known to be simple and in range.
    pub(crate) fn from_edges_unchecked(n: usize, mut edges: Vec<(Vertex, Vertex)>) -> Self {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        debug_assert!(edges.windows(2).all(|w| w[0] != w[1]));
        Self::from_sorted_unchecked(n, edges)
    }

    fn from_sorted_unchecked(n: usize, edges: Vec<(Vertex, Vertex)>) -> Self {
        let mut offset = vec![0usize; n + 1];
        for &(u, v) in &edges {
            offset[u] += 1;
            offset[v] += 1;
        }
        for i in 0..n {
            offset[i + 1] += offset[i];
        }
        // With edges sorted by (u, v), every vertex first receives its smaller
        // neighbours in ascending order and then its larger ones.
        let mut fill = offset.clone();
        let mut adj = vec![0; offset[n]];
        for &(u, v) in &edges {
            adj[fill[u - 1]] = v;
            fill[u - 1] += 1;
            adj[fill[v - 1]] = u;
            fill[v - 1] += 1;
        }
        Graph {
            n,
            edges,
            offset,
            adj,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unchecked(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Normalized (`u < v`), sorted edge list.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[self.offset[v - 1]..self.offset[v]]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.offset[v] - self.offset[v - 1]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Subgraph induced by `keep`, relabeled to `1..=keep.len()` in the order
    /// given. Returns the subgraph and the map local id -> parent id.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut local = vec![0usize; self.n + 1];
        for (i, &v) in keep.iter().enumerate() {
            local[v] = i + 1;
        }
        let mut edges = Vec::new();
        for &v in keep {
            for &w in self.neighbors(v) {
                if v < w && local[w] != 0 {
                    edges.push((local[v], local[w]));
                }
            }
        }
        (Graph::from_edges_unchecked(keep.len(), edges), keep.to_vec())
    }

    /// Graph with the same vertex set and only the given subset of edges.
    pub(crate) fn with_edges(&self, edges: Vec<(Vertex, Vertex)>) -> Graph {
        Graph::from_edges_unchecked(self.n, edges)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || component_labels(self).1 == 1
    }
}

/// Labels every vertex with a component index (components numbered in order
/// of their smallest vertex). Returns the labels (index `v - 1`) and the count.
pub(crate) fn component_labels(g: &Graph) -> (Vec<usize>, usize) {
    const UNSEEN: usize = usize::MAX;
    let mut label = vec![UNSEEN; g.n()];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for s in g.vertices() {
        if label[s - 1] != UNSEEN {
            continue;
        }
        label[s - 1] = count;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if label[w - 1] == UNSEEN {
                    label[w - 1] = count;
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    (label, count)
}

/// A bijection from the vertices `1..=n` onto the positions `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrangement {
    order: Vec<Vertex>,
    position: Vec<usize>,
}

impl Arrangement {
    pub fn identity(n: usize) -> Self {
        Arrangement {
            order: (1..=n).collect(),
            position: (1..=n).collect(),
        }
    }

    /// From a left-to-right vertex order: `order[i]` sits at position `i + 1`.
    pub fn from_order(order: Vec<Vertex>) -> Result<Self> {
        let n = order.len();
        let mut position = vec![0usize; n];
        for (i, &v) in order.iter().enumerate() {
            if v == 0 || v > n {
                return Err(Error::ArrangementMismatch(format!(
                    "vertex {v} outside 1..={n}"
                )));
            }
            if position[v - 1] != 0 {
                return Err(Error::ArrangementMismatch(format!(
                    "vertex {v} placed twice"
                )));
            }
            position[v - 1] = i + 1;
        }
        Ok(Arrangement { order, position })
    }

    /// From a position list indexed by vertex: `positions[v - 1]` is the
    /// position of `v`.
    pub fn from_positions(positions: Vec<usize>) -> Result<Self> {
        let n = positions.len();
        let mut order = vec![0usize; n];
        for (i, &p) in positions.iter().enumerate() {
            if p == 0 || p > n {
                return Err(Error::ArrangementMismatch(format!(
                    "position {p} outside 1..={n}"
                )));
            }
            if order[p - 1] != 0 {
                return Err(Error::ArrangementMismatch(format!(
                    "position {p} used twice"
                )));
            }
            order[p - 1] = i + 1;
        }
        Ok(Arrangement {
            order,
            position: positions,
        })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn position(&self, v: Vertex) -> usize {
        self.position[v - 1]
    }

    pub fn vertex_at(&self, p: usize) -> Vertex {
        self.order[p - 1]
    }

    /// Vertices from left to right.
    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    /// Positions indexed by vertex (`positions()[v - 1]`).
    pub fn positions(&self) -> &[usize] {
        &self.position
    }

    /// The mirror image: position `p` becomes `n + 1 - p`.
    pub fn reversed(&self) -> Self {
        let mut order = self.order.clone();
        order.reverse();
        let n = self.len();
        Arrangement {
            order,
            position: self.position.iter().map(|&p| n + 1 - p).collect(),
        }
    }
}

fn check_fits(g: &Graph, a: &Arrangement) -> Result<()> {
    if a.len() != g.n() {
        return Err(Error::ArrangementMismatch(format!(
            "arrangement covers {} vertices, graph has {}",
            a.len(),
            g.n()
        )));
    }
    Ok(())
}

/// Sum of edge lengths `|pos(u) - pos(v)|`.
pub fn cost(g: &Graph, a: &Arrangement) -> Result<usize> {
    check_fits(g, a)?;
    Ok(cost_of_positions(g, a.positions()))
}

/// Sum over edges of `length - 1`; equals `cost - m`.
pub fn net_cost(g: &Graph, a: &Arrangement) -> Result<usize> {
    Ok(cost(g, a)? - g.m())
}

pub(crate) fn cost_of_positions(g: &Graph, position: &[usize]) -> usize {
    g.edges()
        .iter()
        .map(|&(u, v)| position[u - 1].abs_diff(position[v - 1]))
        .sum()
}

/// One connected component with its relabeling back to the parent graph.
#[derive(Debug, Clone)]
pub struct Component {
    pub graph: Graph,
    /// `to_parent[i]` is the parent id of local vertex `i + 1`; ascending.
    pub to_parent: Vec<Vertex>,
}

/// The connected components of a graph, ordered by smallest vertex.
#[derive(Debug, Clone)]
pub struct ComponentSplit {
    pub parts: Vec<Component>,
    /// `(part index, local id)` for each parent vertex, indexed `v - 1`.
    pub membership: Vec<(usize, Vertex)>,
}

pub fn connected_components(g: &Graph) -> ComponentSplit {
    let (label, count) = component_labels(g);
    let mut members: Vec<Vec<Vertex>> = vec![Vec::new(); count];
    let mut membership = Vec::with_capacity(g.n());
    for v in g.vertices() {
        let part = label[v - 1];
        members[part].push(v);
        membership.push((part, members[part].len()));
    }
    let parts = members
        .into_iter()
        .map(|keep| {
            let (graph, to_parent) = g.induced_subgraph(&keep);
            Component { graph, to_parent }
        })
        .collect();
    ComponentSplit { parts, membership }
}

/// True iff `g` is a path (a single vertex counts). These are exactly the
/// connected graphs with zero net cost.
pub fn is_simple_path(g: &Graph) -> bool {
    g.n() > 0
        && g.m() + 1 == g.n()
        && g.vertices().all(|v| g.degree(v) <= 2)
        && g.is_connected()
}

/// Vertices of a path graph in path order, starting from its smaller endpoint.
pub fn path_order(g: &Graph) -> Option<Vec<Vertex>> {
    if !is_simple_path(g) {
        return None;
    }
    let start = g.vertices().find(|&v| g.degree(v) <= 1)?;
    let mut order = Vec::with_capacity(g.n());
    let mut prev = 0;
    let mut cur = start;
    loop {
        order.push(cur);
        match g.neighbors(cur).iter().find(|&&w| w != prev) {
            Some(&next) => {
                prev = cur;
                cur = next;
            }
            None => break,
        }
    }
    Some(order)
}
