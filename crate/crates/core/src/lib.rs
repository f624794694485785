//! Linear arrangements of graphs with cost at most `|E| + k`.
//!
//! The solver splits a graph into connected components, drops path
//! components (they cost nothing above the edge count), shrinks every other
//! component by suppressing degree-2 vertices that sit between two large
//! sides, rejects kernels that are too large for the budget, and enumerates
//! spanning-tree arrangements of the kernel under a net-cost budget. Exact
//! exponential oracles and a counting lab back the test suite.

pub mod bounds;
pub mod decomposition;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod kernel;
pub mod oracle;
pub mod search;

pub use error::{Error, Result};
pub use graph::{cost, net_cost, Arrangement, Graph, Vertex};
pub use kernel::{kernelize, Kernel, KernelRecord};
pub use oracle::{exact_ola_dp, exact_ola_enum, OracleResult};
pub use search::{solve, SearchBudget, SolveReport};
