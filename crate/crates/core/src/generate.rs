//! Deterministic instance families.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub const FAMILIES: &[&str] = &[
    "path",
    "cycle",
    "clique",
    "star",
    "caterpillar",
    "random_tree",
    "tree_plus_chords",
    "two_cliques_bridged",
];

/// `key=value` parameters, e.g. `n=10,c=3`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params(BTreeMap<String, usize>);

impl Params {
    pub fn parse(s: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::BadParameters(format!("expected key=value, got `{item}`")))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::BadParameters(format!("`{item}`: value is not a count")))?;
            map.insert(k.trim().to_string(), v);
        }
        Ok(Params(map))
    }

    pub fn with(mut self, key: &str, value: usize) -> Self {
        self.0.insert(key.to_string(), value);
        self
    }

    pub fn get(&self, key: &str) -> Option<usize> {
        self.0.get(key).copied()
    }

    fn require(&self, key: &str) -> Result<usize> {
        self.get(key)
            .ok_or_else(|| Error::BadParameters(format!("missing parameter `{key}`")))
    }

    fn or(&self, key: &str, default: usize) -> usize {
        self.get(key).unwrap_or(default)
    }
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges_unchecked(n, (1..n).map(|i| (i, i + 1)).collect())
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::BadParameters("cycle needs n >= 3".into()));
    }
    let mut edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
    edges.push((1, n));
    Ok(Graph::from_edges_unchecked(n, edges))
}

pub fn clique(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            edges.push((u, v));
        }
    }
    Graph::from_edges_unchecked(n, edges)
}

/// Vertex 1 joined to `2..=n`.
pub fn star(n: usize) -> Graph {
    Graph::from_edges_unchecked(n, (2..=n).map(|v| (1, v)).collect())
}

/// Decodes a Prüfer sequence over `1..=n` (length `n - 2`) into tree edges.
pub fn prufer_to_edges(n: usize, code: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    debug_assert_eq!(code.len() + 2, n.max(2));
    if n < 2 {
        return Vec::new();
    }
    let mut degree = vec![1usize; n + 1];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    // Smallest current leaf via a moving pointer.
    let mut ptr = (1..=n).find(|&v| degree[v] == 1).unwrap();
    let mut leaf = ptr;
    for &c in code {
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
        if degree[c] == 1 && c < ptr {
            leaf = c;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    let last = (1..=n).rev().find(|&v| degree[v] == 1 && v != leaf).unwrap();
    edges.push((leaf, last));
    edges
}

pub fn random_tree(n: usize, rng: &mut impl Rng) -> Graph {
    if n <= 1 {
        return Graph::empty(n);
    }
    let code: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(1..=n)).collect();
    Graph::from_edges_unchecked(n, prufer_to_edges(n, &code))
}

/// A random tree plus `chords` random extra edges.
pub fn tree_plus_chords(n: usize, chords: usize, rng: &mut impl Rng) -> Result<Graph> {
    let available = n * n.saturating_sub(1) / 2 - n.saturating_sub(1);
    if chords > available {
        return Err(Error::BadParameters(format!(
            "{chords} chords requested but only {available} non-edges exist"
        )));
    }
    let tree = random_tree(n, rng);
    let mut present: HashSet<(Vertex, Vertex)> = tree.edges().iter().copied().collect();
    let mut edges = tree.edges().to_vec();
    while edges.len() < n - 1 + chords {
        let u = rng.gen_range(1..=n);
        let v = rng.gen_range(1..=n);
        let e = (u.min(v), u.max(v));
        if u != v && present.insert(e) {
            edges.push(e);
        }
    }
    Ok(Graph::from_edges_unchecked(n, edges))
}

/// A spine path `1..=spine`, `legs` pendant vertices hung off random spine
/// vertices, and `triangles` chords `(2t-1, 2t+1)` closing triangles at the
/// start of the spine.
pub fn caterpillar(spine: usize, legs: usize, triangles: usize, rng: &mut impl Rng) -> Result<Graph> {
    if spine == 0 || 2 * triangles + 1 > spine.max(1) {
        return Err(Error::BadParameters(format!(
            "a spine of {spine} cannot hold {triangles} triangles"
        )));
    }
    let mut edges: Vec<_> = (1..spine).map(|i| (i, i + 1)).collect();
    for t in 1..=triangles {
        edges.push((2 * t - 1, 2 * t + 1));
    }
    for leg in 0..legs {
        edges.push((rng.gen_range(1..=spine), spine + leg + 1));
    }
    Ok(Graph::from_edges_unchecked(spine + legs, edges))
}

/// Two copies of `K_size` joined by a path with `bridge_len` edges.
pub fn two_cliques_bridged(size: usize, bridge_len: usize) -> Result<Graph> {
    if size == 0 || bridge_len == 0 {
        return Err(Error::BadParameters("need size >= 1 and bridge_len >= 1".into()));
    }
    let inner = bridge_len - 1;
    let n = 2 * size + inner;
    let mut edges = Vec::new();
    let second = size + inner;
    for u in 1..=size {
        for v in u + 1..=size {
            edges.push((u, v));
            edges.push((second + u, second + v));
        }
    }
    // size -> size+1 -> ... -> second+1
    for v in size..=second {
        edges.push((v, v + 1));
    }
    Ok(Graph::from_edges_unchecked(n, edges))
}

/// Builds an instance of a named family. Identical `(family, params, seed)`
/// always give the identical graph.
pub fn generate_instance(family: &str, params: &Params, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match family {
        "path" => Ok(path(params.require("n")?)),
        "cycle" => cycle(params.require("n")?),
        "clique" => Ok(clique(params.require("n")?)),
        "star" => Ok(star(params.require("n")?)),
        "caterpillar" => caterpillar(
            params.get("spine").map_or_else(|| params.require("n"), Ok)?,
            params.or("legs", 0),
            params.or("triangles", 0),
            &mut rng,
        ),
        "random_tree" => Ok(random_tree(params.require("n")?, &mut rng)),
        "tree_plus_chords" => tree_plus_chords(params.require("n")?, params.or("c", 1), &mut rng),
        "two_cliques_bridged" => two_cliques_bridged(params.require("size")?, params.or("bridge_len", 1)),
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}
