#![allow(dead_code)]

use ola_core::generate::{caterpillar, clique, cycle, path, random_tree, star, tree_plus_chords, two_cliques_bridged};
use ola_core::Graph;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The vertex pairs of `K_n` in a fixed order; bit `i` of an edge mask
/// selects `pairs(n)[i]`.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            out.push((u, v));
        }
    }
    out
}

/// Adjacency bitmasks (bit `w - 1` for neighbour `w`) of a masked graph.
pub fn adjacency(n: usize, pairs: &[(usize, usize)], mask: u64) -> Vec<u32> {
    let mut adj = vec![0u32; n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        if mask >> i & 1 == 1 {
            adj[u - 1] |= 1 << (v - 1);
            adj[v - 1] |= 1 << (u - 1);
        }
    }
    adj
}

/// Connectivity of the vertex set `alive` in a bitmask graph.
pub fn connected_within(adj: &[u32], alive: u32) -> bool {
    if alive == 0 {
        return true;
    }
    let mut seen = alive & alive.wrapping_neg();
    let mut frontier = seen;
    while frontier != 0 {
        let i = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[i] & alive & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen == alive
}

pub fn full(n: usize) -> u32 {
    (1u32 << n) - 1
}

pub fn is_connected_mask(adj: &[u32]) -> bool {
    connected_within(adj, full(adj.len()))
}

/// Connected and every edge lies on a cycle.
pub fn is_bridgeless_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> bool {
    let adj = adjacency(n, pairs, mask);
    if !is_connected_mask(&adj) {
        return false;
    }
    (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).all(|i| {
        let (u, v) = pairs[i];
        let mut cut = adj.clone();
        cut[u - 1] &= !(1 << (v - 1));
        cut[v - 1] &= !(1 << (u - 1));
        is_connected_mask(&cut)
    })
}

/// At least three vertices, connected, and no cut vertex.
pub fn is_biconnected_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> bool {
    let adj = adjacency(n, pairs, mask);
    n >= 3
        && is_connected_mask(&adj)
        && (0..n).all(|v| connected_within(&adj, full(n) & !(1 << v)))
}

pub fn mask_graph(n: usize, pairs: &[(usize, usize)], mask: u64) -> Graph {
    let edges: Vec<_> = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Every labeled graph on `n` vertices satisfying `keep`.
pub fn all_graphs(n: usize, keep: impl Fn(usize, &[(usize, usize)], u64) -> bool) -> Vec<Graph> {
    let pairs = pairs(n);
    (0..1u64 << pairs.len())
        .filter(|&mask| keep(n, &pairs, mask))
        .map(|mask| mask_graph(n, &pairs, mask))
        .collect()
}

pub fn all_connected(n: usize) -> Vec<Graph> {
    all_graphs(n, |n, p, m| is_connected_mask(&adjacency(n, p, m)))
}

/// Random relabeling, so generated families do not always have their
/// structure aligned with vertex order.
pub fn shuffle_labels(g: &Graph, rng: &mut impl Rng) -> Graph {
    let mut perm: Vec<usize> = (1..=g.n()).collect();
    for i in (1..perm.len()).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let edges: Vec<_> = g.edges().iter().map(|&(u, v)| (perm[u - 1], perm[v - 1])).collect();
    Graph::from_edges(g.n(), &edges).unwrap()
}

/// A connected graph on `2..=n_max` vertices drawn from a mix of families.
pub fn random_connected(n_max: usize, rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.gen_range(2..=n_max);
    let g = match rng.gen_range(0..9) {
        0 => path(n),
        1 if n >= 3 => cycle(n).unwrap(),
        2 => clique(n.min(6)),
        3 => star(n),
        4 if n >= 3 => caterpillar(
            n - n / 3,
            n / 3,
            rng.gen_range(0..=(n - n / 3 - 1) / 2),
            rng,
        )
        .unwrap(),
        5 if n >= 4 => two_cliques_bridged(rng.gen_range(2..=n / 2), rng.gen_range(1..=2)).unwrap(),
        6 => random_tree(n, rng),
        _ => {
            let room = n * (n - 1) / 2 - (n - 1);
            let c = rng.gen_range(0..=room.min(6));
            tree_plus_chords(n, c, rng).unwrap()
        }
    };
    shuffle_labels(&g, rng)
}
