//! Exact minimum linear arrangement for small graphs.
//!
//! Two independent routes: a subset dynamic program over prefix cuts, and
//! plain enumeration of all `n!` orders. Both are ground truth for tests.

use crate::error::{Error, Result};
use crate::graph::{cost_of_positions, Arrangement, Graph};

/// Largest `n` accepted by [`exact_ola_dp`].
pub const DP_CAP: usize = 24;
/// Largest `n` accepted by [`exact_ola_enum`].
pub const ENUM_CAP: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// Optimal cost.
    pub ola: usize,
    /// Optimal net cost, `ola - m`.
    pub ola_plus: usize,
    pub witness: Arrangement,
}

/// Exact optimum by dynamic programming over vertex subsets.
///
/// The cost of an order equals the sum over its `n - 1` prefixes of the
/// number of edges leaving the prefix, so
/// `dp[S] = min over v in S of dp[S - v] + |cut(S)|`.
pub fn exact_ola_dp(g: &Graph) -> Result<OracleResult> {
    let n = g.n();
    if n > DP_CAP {
        return Err(Error::TooLarge { n, cap: DP_CAP });
    }
    let adj: Vec<u32> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u32, |acc, &w| acc | 1 << (w - 1)))
        .collect();
    let full: u32 = (1u32 << n) - 1;
    let cut = |s: u32| -> u32 {
        let mut total = 0;
        let mut rest = s;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            total += (adj[i] & !s & full).count_ones();
        }
        total
    };

    let mut dp = vec![u32::MAX; 1usize << n];
    dp[0] = 0;
    for s in 1..=full {
        let c = cut(s);
        let mut best = u32::MAX;
        let mut rest = s;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest ^= bit;
            best = best.min(dp[(s ^ bit) as usize]);
        }
        dp[s as usize] = best + c;
    }

    // Re-derive the argmin at each level, peeling the last vertex off.
    let mut order = vec![0usize; n];
    let mut s = full;
    for slot in (0..n).rev() {
        let target = dp[s as usize] - cut(s);
        let i = (0..n)
            .find(|&i| s >> i & 1 == 1 && dp[(s ^ 1 << i) as usize] == target)
            .expect("dp table is consistent");
        order[slot] = i + 1;
        s ^= 1 << i;
    }
    let ola = dp[full as usize] as usize;
    Ok(OracleResult {
        ola,
        ola_plus: ola - g.m(),
        witness: Arrangement::from_order(order)?,
    })
}

/// Calls `visit` with every permutation of `1..=n` in lexicographic order;
/// stops early if `visit` returns `false`.
pub fn for_each_order(n: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    let mut order: Vec<usize> = (1..=n).collect();
    loop {
        if !visit(&order) {
            return;
        }
        // Next lexicographic permutation.
        let Some(i) = (1..n).rev().find(|&i| order[i - 1] < order[i]) else {
            return;
        };
        let j = (i..n).rev().find(|&j| order[j] > order[i - 1]).unwrap();
        order.swap(i - 1, j);
        order[i..].reverse();
    }
}

/// Exact optimum by trying all `n!` orders; the first minimal order in
/// lexicographic order is the witness.
pub fn exact_ola_enum(g: &Graph) -> Result<OracleResult> {
    let n = g.n();
    if n > ENUM_CAP {
        return Err(Error::TooLarge { n, cap: ENUM_CAP });
    }
    let mut best = usize::MAX;
    let mut best_order = Vec::new();
    let mut position = vec![0usize; n];
    for_each_order(n, |order| {
        for (i, &v) in order.iter().enumerate() {
            position[v - 1] = i + 1;
        }
        let c = cost_of_positions(g, &position);
        if c < best {
            best = c;
            best_order = order.to_vec();
        }
        true
    });
    let ola = if n == 0 { 0 } else { best };
    Ok(OracleResult {
        ola,
        ola_plus: ola - g.m(),
        witness: Arrangement::from_order(best_order)?,
    })
}

/// Optimal net cost, by the DP.
pub fn ola_plus(g: &Graph) -> Result<usize> {
    Ok(exact_ola_dp(g)?.ola_plus)
}
