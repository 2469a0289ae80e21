//! Closed-form lower and upper bounds on the chromatic number, and sweeps
//! over parameter grids that compare them with exact values.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::upper_bound;
use crate::kneser::build;
use crate::solver::{chromatic_number, SolverConfig};
use crate::stable::{Mode, ParamSet};
use crate::{ceil_div, Error, Result};

/// Trial division.
pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `⌈max(n − rs(k−1), 0) / (r−1)⌉`.
pub fn lb_defect(n: u32, k: u32, r: u32, s: u32) -> u32 {
    let cd = (n as i64 - (r * s * k.saturating_sub(1)) as i64).max(0);
    ceil_div(cd, r as i64 - 1) as u32
}

fn topo_hypotheses(n: u32, k: u32, p: u32, s: u32, extra: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if s < 2 || k < 2 {
        return Err(Error::Hypothesis(format!("needs s ≥ 2 and k ≥ 2, got s={s} k={k}")));
    }
    let threshold = (p + s - 2) * (k - 1) + extra + p.max(s);
    if n < threshold {
        return Err(Error::Hypothesis(format!("needs n ≥ {threshold}, got n={n}")));
    }
    Ok(())
}

/// `⌈(n − (p+s−2)(k−1)) / (p−1)⌉` for the almost `s`-stable family.
pub fn lb_topo_almost(n: u32, k: u32, p: u32, s: u32) -> Result<u32> {
    topo_hypotheses(n, k, p, s, 0)?;
    Ok(ceil_div((n - (p + s - 2) * (k - 1)) as i64, p as i64 - 1) as u32)
}

/// `⌈(n − (p+s−2)(k−1) − (s−1)) / (p−1)⌉` for the `s`-stable family.
pub fn lb_topo_stable(n: u32, k: u32, p: u32, s: u32) -> Result<u32> {
    topo_hypotheses(n, k, p, s, s - 1)?;
    Ok(ceil_div((n - (p + s - 2) * (k - 1) - (s - 1)) as i64, p as i64 - 1) as u32)
}

/// The topological bound matching `params.mode`, or `None` outside its
/// hypotheses.
pub fn lb_topo(params: &ParamSet) -> Option<u32> {
    let ParamSet { n, k, r, s, mode } = *params;
    match mode {
        Mode::Path => lb_topo_almost(n, k, r, s),
        Mode::Cycle => lb_topo_stable(n, k, r, s),
    }
    .ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    /// The chromatic number equals the upper bound.
    ProvedEqual,
    /// The chromatic number is known and below the upper bound.
    Gap,
    Indeterminate,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::ProvedEqual => "proved-equal",
            Status::Gap => "gap",
            Status::Indeterminate => "indeterminate",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Status {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "proved-equal" => Ok(Status::ProvedEqual),
            "gap" => Ok(Status::Gap),
            "indeterminate" => Ok(Status::Indeterminate),
            other => Err(Error::Malformed(format!("unknown status {other:?}"))),
        }
    }
}

/// One cell of a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub n: u32,
    pub k: u32,
    pub r: u32,
    pub s: u32,
    pub mode: Mode,
    pub vertices: usize,
    pub edges: usize,
    pub lb_defect: u32,
    pub lb_topo: Option<u32>,
    pub ub: u32,
    /// Known chromatic number, from a solve or from meeting bounds.
    pub exact: Option<u32>,
    /// Bracket on the chromatic number.
    pub lower: u32,
    pub upper: u32,
    pub status: Status,
    /// Whether `exact` came from an exhaustive search.
    pub solved: bool,
    pub nodes: u64,
    pub millis: u64,
    /// Optimal coloring when the cell was solved, aligned to vertex order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ScanRecord {
    pub fn params(&self) -> ParamSet {
        ParamSet::new(self.n, self.k, self.r, self.s, self.mode)
    }

    /// Cache key of the cell.
    pub fn key(&self) -> String {
        self.params().key()
    }

    /// `lb_defect ≤ lb_topo ≤ exact ≤ ub` on the parts that are present.
    /// Returns a description of the first broken inequality.
    pub fn check_ordering(&self) -> std::result::Result<(), String> {
        let lb_max = self.lb_topo.unwrap_or(0).max(self.lb_defect);
        if let Some(t) = self.lb_topo {
            if self.lb_defect > t {
                return Err(format!("{}: lb_defect {} > lb_topo {t}", self.key(), self.lb_defect));
            }
        }
        if let Some(x) = self.exact {
            if x < lb_max || x > self.ub {
                return Err(format!("{}: exact {x} outside [{lb_max}, {}]", self.key(), self.ub));
            }
        }
        if self.lower > self.upper || self.upper > self.ub {
            return Err(format!(
                "{}: bracket [{}, {}] is inconsistent",
                self.key(),
                self.lower,
                self.upper
            ));
        }
        Ok(())
    }
}

/// Integer ranges for every parameter of a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub n: RangeInclusive<u32>,
    pub k: RangeInclusive<u32>,
    pub r: RangeInclusive<u32>,
    pub s: RangeInclusive<u32>,
    pub modes: Vec<Mode>,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            n: 4..=12,
            k: 2..=3,
            r: 2..=3,
            s: 2..=4,
            modes: Mode::ALL.to_vec(),
        }
    }
}

impl Grid {
    /// Cells in `n, k, r, s, mode` order, skipping those with
    /// `n < max(r,s)·k`.
    pub fn cells(&self) -> Vec<ParamSet> {
        let mut out = Vec::new();
        for n in self.n.clone() {
            for k in self.k.clone() {
                for r in self.r.clone() {
                    for s in self.s.clone() {
                        for &mode in &self.modes {
                            let p = ParamSet::new(n, k, r, s, mode);
                            if p.validate().is_ok() && p.meets_standing_hypothesis() {
                                out.push(p);
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    pub solver: SolverConfig,
    /// Run the exact search even where the bounds already meet.
    pub solve_when_bounds_meet: bool,
    /// Record wall-clock milliseconds; off gives reproducible output.
    pub timing: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            solver: SolverConfig::default(),
            solve_when_bounds_meet: false,
            timing: true,
        }
    }
}

/// Bounds and, where needed and feasible, the exact chromatic number of one
/// cell. Failures are stored in the record.
pub fn scan_cell(params: &ParamSet, options: &ScanOptions) -> ScanRecord {
    let ParamSet { n, k, r, s, mode } = *params;
    let lb_defect = lb_defect(n, k, r, s);
    let lb_topo = lb_topo(params);
    let ub = upper_bound(n, k, r, s);
    let lb_max = lb_topo.unwrap_or(0).max(lb_defect);
    let mut rec = ScanRecord {
        n,
        k,
        r,
        s,
        mode,
        vertices: 0,
        edges: 0,
        lb_defect,
        lb_topo,
        ub,
        exact: None,
        lower: lb_max,
        upper: ub,
        status: Status::Indeterminate,
        solved: false,
        nodes: 0,
        millis: 0,
        witness: None,
        error: None,
    };
    if lb_max == ub {
        rec.exact = Some(ub);
        rec.status = Status::ProvedEqual;
    }
    let hg = match build(params, &options.solver.budget) {
        Ok(hg) => hg,
        Err(e) => {
            rec.error = Some(e.to_string());
            return rec;
        }
    };
    rec.vertices = hg.vertex_count();
    rec.edges = hg.edge_count();
    if rec.exact.is_some() && !options.solve_when_bounds_meet {
        return rec;
    }
    match chromatic_number(&hg, &options.solver) {
        Ok(res) => {
            rec.nodes = res.nodes_explored;
            rec.millis = if options.timing { res.millis } else { 0 };
            rec.lower = rec.lower.max(res.lower);
            rec.upper = rec.upper.min(res.upper);
            if let Some(chi) = res.chi {
                rec.exact = Some(chi);
                rec.solved = true;
                rec.witness = Some(res.witness.colors().to_vec());
                rec.status = if chi == ub { Status::ProvedEqual } else { Status::Gap };
            } else if rec.exact.is_none() && rec.lower == rec.upper {
                rec.exact = Some(rec.upper);
                rec.status = if rec.upper == ub {
                    Status::ProvedEqual
                } else {
                    Status::Gap
                };
            }
        }
        Err(e) => rec.error = Some(e.to_string()),
    }
    rec
}

/// Scans every cell of `grid` in parallel; records come back in grid order.
pub fn scan(grid: &Grid, options: &ScanOptions) -> Vec<ScanRecord> {
    scan_cells(&grid.cells(), options)
}

/// Scans the given cells in parallel, preserving their order.
pub fn scan_cells(cells: &[ParamSet], options: &ScanOptions) -> Vec<ScanRecord> {
    cells.par_iter().map(|p| scan_cell(p, options)).collect()
}
