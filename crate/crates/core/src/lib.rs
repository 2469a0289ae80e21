//! Exact combinatorics for (almost) `s`-stable Kneser graphs and `r`-uniform
//! Kneser hypergraphs.
//!
//! The crate is organised bottom-up:
//!
//! - [`stable`]: bit-vector subsets of `[n]`, stability predicates and
//!   enumeration of stable `k`-subsets.
//! - [`signed`]: signed vectors of `(Z_p ∪ {0})^n` and chains in their poset.
//! - [`kneser`]: construction of Kneser hypergraphs and the colorability defect.
//! - [`coloring`]: explicit colorings (min-element, lifted, classical) and the
//!   properness check.
//! - [`solver`]: exact chromatic number, local chromatic number and colorful
//!   bipartite subgraph search.
//! - [`topo`]: the `Z_p`-Tucker and octahedral Fan labelings together with
//!   exhaustive verifiers and chain extraction.
//! - [`bounds`]: closed-form bounds and parameter sweeps.
//! - [`report`]: result cache, sweep configuration files and CSV tables.

pub mod bounds;
pub mod coloring;
pub mod kneser;
pub mod report;
pub mod signed;
pub mod solver;
pub mod stable;
pub mod topo;

mod error;

pub use error::{Error, Result};

pub use bounds::{lb_defect, lb_topo_almost, lb_topo_stable, ScanRecord, Status};
pub use coloring::{upper_bound, Coloring};
pub use kneser::{GroundHypergraph, KneserHypergraph};
pub use signed::{SignedVector, ZpLabel};
pub use solver::{ColorfulWitness, SolveResult};
pub use stable::{Mode, ParamSet, Subset};
pub use topo::{FanChain, FanLabeling, TuckerLabeling};

/// Default cap on the number of objects a single enumeration may produce.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 20_000_000;

/// Default node budget for a single backtracking search.
pub const DEFAULT_NODE_BUDGET: u64 = 200_000_000;

/// Environment variable that overrides [`Budget::node_limit`].
pub const BUDGET_ENV: &str = "KNESERLAB_BUDGET";

/// Work limits shared by every exhaustive routine in the crate.
///
/// Enumeration limits are counted in produced objects; search limits in
/// visited nodes. Neither depends on wall time, so runs are reproducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Budget {
    pub enumeration_limit: u64,
    pub node_limit: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            enumeration_limit: DEFAULT_ENUMERATION_BUDGET,
            node_limit: DEFAULT_NODE_BUDGET,
        }
    }
}

impl Budget {
    /// The default budget with the node limit taken from `KNESERLAB_BUDGET`
    /// when that variable holds a positive integer.
    pub fn from_env() -> Self {
        let mut budget = Budget::default();
        if let Some(nodes) = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .filter(|&v| v > 0)
        {
            budget.node_limit = nodes;
        }
        budget
    }

    pub fn with_nodes(mut self, nodes: u64) -> Self {
        self.node_limit = nodes;
        self
    }

    pub(crate) fn check_enumeration(&self, what: &'static str, count: u128) -> Result<()> {
        if count > self.enumeration_limit as u128 {
            return Err(Error::BudgetExceeded {
                what,
                requested: count,
                limit: self.enumeration_limit,
            });
        }
        Ok(())
    }
}

/// `⌈a / b⌉` for `b > 0`, valid for negative `a`.
pub(crate) fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    (a + b - 1).div_euclid(b)
}

/// Binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
