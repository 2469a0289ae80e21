//! Exact coloring searches: `t`-colorability, chromatic number, local
//! chromatic number, and colorful complete bipartite subgraphs.
//!
//! All searches count nodes against a [`Budget`] instead of wall time, so a
//! given input always explores the same tree and returns the same answer.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bounds::lb_defect;
use crate::coloring::Coloring;
use crate::kneser::KneserHypergraph;
use crate::{Budget, Error, Result};

/// Default vertex cap for exact chromatic numbers of graphs.
pub const GRAPH_CAP: usize = 200;
/// Default vertex cap for exact chromatic numbers of `r ≥ 3` hypergraphs.
pub const HYPERGRAPH_CAP: usize = 60;
/// Default vertex cap for the local chromatic number.
pub const LOCAL_CAP: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub budget: Budget,
    pub graph_cap: usize,
    pub hypergraph_cap: usize,
    /// Start the search from the colorability-defect bound as well as the
    /// clique bound.
    pub use_defect_bound: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            budget: Budget::default(),
            graph_cap: GRAPH_CAP,
            hypergraph_cap: HYPERGRAPH_CAP,
            use_defect_bound: true,
        }
    }
}

impl SolverConfig {
    pub fn with_budget(budget: Budget) -> Self {
        SolverConfig {
            budget,
            ..SolverConfig::default()
        }
    }
}

/// Answer of a `t`-colorability query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Colorability {
    Colorable(Coloring),
    /// The search tree was exhausted.
    Uncolorable,
    /// The node budget ran out first.
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub outcome: Colorability,
    pub nodes: u64,
}

/// Result of [`chromatic_number`]. When the budget runs out `chi` is `None`
/// and `[lower, upper]` brackets the true value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub chi: Option<u32>,
    pub lower: u32,
    pub upper: u32,
    /// A proper coloring with `upper` colors.
    pub witness: Coloring,
    pub nodes_explored: u64,
    pub millis: u64,
}

impl SolveResult {
    pub fn is_exact(&self) -> bool {
        self.chi.is_some()
    }
}

const MIXED: u32 = u32::MAX;

enum Undo {
    Edge { edge: u32, old_color: u32 },
    Forbid { vertex: u32, color: u32 },
    Close { edge: u32 },
}

/// Backtracking state for "is there a proper coloring with `t` colors".
///
/// Edges track how many of their vertices are colored and whether those
/// share one color. Once `r − 1` vertices of an edge agree on color `c`, the
/// last vertex loses `c` from its domain; for graphs this is ordinary
/// neighbor forward checking.
struct Search<'a> {
    t: u32,
    r: u32,
    edges: &'a [Vec<usize>],
    incident: Vec<Vec<u32>>,
    /// Static tie-break: position in the descending-degree order.
    rank: Vec<u32>,
    /// Incident edges that can still become monochromatic and have at
    /// least two uncolored vertices.
    open_degree: Vec<u32>,
    color: Vec<u32>,
    forbid: Vec<u32>,
    domain: Vec<u32>,
    edge_colored: Vec<u32>,
    edge_color: Vec<u32>,
    trail: Vec<Undo>,
    uncolored: usize,
    nodes: u64,
    node_limit: u64,
    aborted: bool,
}

impl<'a> Search<'a> {
    fn new(hg: &'a KneserHypergraph, t: u32, node_limit: u64) -> Self {
        let nv = hg.vertex_count();
        let mut incident = vec![Vec::new(); nv];
        for (i, e) in hg.edges().iter().enumerate() {
            for &v in e {
                incident[v].push(i as u32);
            }
        }
        let mut order: Vec<usize> = (0..nv).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(incident[v].len()), v));
        let mut rank = vec![0u32; nv];
        for (pos, &v) in order.iter().enumerate() {
            rank[v] = pos as u32;
        }
        Search {
            t,
            r: hg.uniformity() as u32,
            edges: hg.edges(),
            open_degree: incident.iter().map(|e| e.len() as u32).collect(),
            incident,
            rank,
            color: vec![0; nv],
            forbid: vec![0; nv * t as usize],
            domain: vec![t; nv],
            edge_colored: vec![0; hg.edge_count()],
            edge_color: vec![0; hg.edge_count()],
            trail: Vec::new(),
            uncolored: nv,
            nodes: 0,
            node_limit,
            aborted: false,
        }
    }

    /// Adjusts the open degree of the edge's vertices other than those
    /// colored before the edge closed.
    fn set_open(&mut self, e: usize, delta: i32) {
        for &u in &self.edges[e] {
            if self.color[u] == 0 {
                self.open_degree[u] = self.open_degree[u].wrapping_add_signed(delta);
            }
        }
    }

    fn forbidden(&self, v: usize, c: u32) -> bool {
        self.forbid[v * self.t as usize + c as usize - 1] > 0
    }

    /// Colors `v` with `c`; returns false if some domain became empty.
    fn assign(&mut self, v: usize, c: u32) -> bool {
        self.color[v] = c;
        self.uncolored -= 1;
        let mut ok = true;
        for idx in 0..self.incident[v].len() {
            let e = self.incident[v][idx] as usize;
            let old = self.edge_color[e];
            self.trail.push(Undo::Edge {
                edge: e as u32,
                old_color: old,
            });
            let colored = self.edge_colored[e];
            self.edge_color[e] = if colored == 0 || old == c { c } else { MIXED };
            self.edge_colored[e] = colored + 1;
            let was_open = old != MIXED && colored + 2 <= self.r;
            let is_open = self.edge_color[e] != MIXED && colored + 3 <= self.r;
            if was_open && !is_open {
                self.set_open(e, -1);
                self.trail.push(Undo::Close { edge: e as u32 });
            }
            if self.edge_color[e] == c && colored + 1 == self.r - 1 {
                let u = self.edges[e]
                    .iter()
                    .copied()
                    .find(|&u| self.color[u] == 0)
                    .expect("one vertex of the edge is uncolored");
                let slot = u * self.t as usize + c as usize - 1;
                self.forbid[slot] += 1;
                if self.forbid[slot] == 1 {
                    self.domain[u] -= 1;
                    if self.domain[u] == 0 {
                        ok = false;
                    }
                }
                self.trail.push(Undo::Forbid {
                    vertex: u as u32,
                    color: c,
                });
            }
        }
        ok
    }

    fn undo_to(&mut self, mark: usize, v: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().expect("trail above mark") {
                Undo::Edge { edge, old_color } => {
                    let e = edge as usize;
                    self.edge_colored[e] -= 1;
                    self.edge_color[e] = if self.edge_colored[e] == 0 { 0 } else { old_color };
                }
                Undo::Close { edge } => self.set_open(edge as usize, 1),
                Undo::Forbid { vertex, color } => {
                    let slot = vertex as usize * self.t as usize + color as usize - 1;
                    self.forbid[slot] -= 1;
                    if self.forbid[slot] == 0 {
                        self.domain[vertex as usize] += 1;
                    }
                }
            }
        }
        self.color[v] = 0;
        self.uncolored += 1;
    }

    /// Open degree as a minimized key. Graphs only: on hypergraphs it
    /// enlarged the search trees several times over.
    fn tie_degree(&self, v: usize) -> u32 {
        if self.r == 2 {
            u32::MAX - self.open_degree[v]
        } else {
            0
        }
    }

    /// Uncolored vertex with the smallest domain, then (graphs) the largest
    /// open degree, then static rank.
    fn select(&self) -> usize {
        let mut best = usize::MAX;
        let mut key = (u32::MAX, 0, u32::MAX);
        for v in 0..self.color.len() {
            if self.color[v] == 0 {
                let k = (self.domain[v], self.tie_degree(v), self.rank[v]);
                if k < key {
                    key = k;
                    best = v;
                }
            }
        }
        best
    }

    fn run(&mut self, used: u32) -> bool {
        if self.uncolored == 0 {
            return true;
        }
        self.nodes += 1;
        if self.nodes > self.node_limit {
            self.aborted = true;
            return false;
        }
        let v = self.select();
        // colors above `used` are interchangeable, so only the first is tried
        let top = self.t.min(used + 1);
        for c in 1..=top {
            if self.forbidden(v, c) {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(v, c) && self.run(used.max(c)) {
                return true;
            }
            self.undo_to(mark, v);
            if self.aborted {
                return false;
            }
        }
        false
    }

    fn coloring(&self) -> Coloring {
        let palette = self.color.iter().copied().max().unwrap_or(0);
        Coloring::new(self.color.clone(), palette).expect("search colors are in range")
    }
}

/// Decides whether `hg` has a proper coloring with at most `t` colors.
pub fn is_colorable(hg: &KneserHypergraph, t: u32, budget: &Budget) -> Result<Decision> {
    if t == 0 {
        return Err(Error::InvalidParams("t must be at least 1".into()));
    }
    if hg.vertex_count() == 0 {
        return Ok(Decision {
            outcome: Colorability::Colorable(Coloring::new(vec![], t)?),
            nodes: 0,
        });
    }
    let mut search = Search::new(hg, t, budget.node_limit);
    let found = search.run(0);
    let outcome = if found {
        let c = search.coloring();
        Colorability::Colorable(Coloring::new(c.colors().to_vec(), t)?)
    } else if search.aborted {
        Colorability::Indeterminate
    } else {
        Colorability::Uncolorable
    };
    Ok(Decision {
        outcome,
        nodes: search.nodes,
    })
}

/// Saturation-ordered greedy coloring (the first dive of the search with an
/// unbounded palette).
pub fn dsatur_coloring(hg: &KneserHypergraph) -> Coloring {
    let nv = hg.vertex_count() as u32;
    if nv == 0 {
        return Coloring::new(vec![], 0).expect("empty coloring");
    }
    let mut search = Search::new(hg, nv, u64::MAX);
    assert!(search.run(0), "a palette of |V| colors always suffices");
    search.coloring()
}

/// Size of a greedily grown clique, best over all start vertices.
pub fn greedy_clique_bound(adj: &[Vec<usize>]) -> u32 {
    let nv = adj.len();
    let sets: Vec<Vec<bool>> = adj
        .iter()
        .map(|list| {
            let mut row = vec![false; nv];
            for &u in list {
                row[u] = true;
            }
            row
        })
        .collect();
    let mut by_degree: Vec<usize> = (0..nv).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(adj[v].len()), v));
    let mut best = 0;
    for start in 0..nv {
        let mut clique = vec![start];
        for &v in &by_degree {
            if v != start && clique.iter().all(|&u| sets[u][v]) {
                clique.push(v);
            }
        }
        best = best.max(clique.len());
    }
    best as u32
}

/// Exact chromatic number.
///
/// The search starts from a saturation greedy coloring and lowers the palette
/// one color at a time; the first exhausted search certifies optimality. The
/// descent stops early when it meets the clique bound (graphs) or the
/// colorability-defect bound, both valid lower bounds.
pub fn chromatic_number(hg: &KneserHypergraph, config: &SolverConfig) -> Result<SolveResult> {
    let started = Instant::now();
    let nv = hg.vertex_count();
    let cap = if hg.uniformity() == 2 {
        config.graph_cap
    } else {
        config.hypergraph_cap
    };
    if nv > cap {
        return Err(Error::CapExceeded {
            what: "chromatic number",
            size: nv,
            cap,
        });
    }
    let mut witness = dsatur_coloring(hg);
    let mut upper = witness.palette();
    let mut lower = if nv == 0 {
        0
    } else if hg.edge_count() == 0 {
        1
    } else if hg.uniformity() == 2 {
        greedy_clique_bound(&hg.neighbors()).max(2)
    } else {
        2
    };
    if config.use_defect_bound {
        let p = hg.params();
        if p.k >= 2 && p.n >= p.s * p.k {
            lower = lower.max(lb_defect(p.n, p.k, p.r, p.s));
        }
    }
    let mut nodes = 0u64;
    let mut remaining = config.budget.node_limit;
    while upper > lower {
        let decision = is_colorable(hg, upper - 1, &config.budget.with_nodes(remaining))?;
        nodes += decision.nodes;
        remaining = remaining.saturating_sub(decision.nodes);
        match decision.outcome {
            Colorability::Colorable(c) => {
                upper -= 1;
                witness = c;
            }
            Colorability::Uncolorable => lower = upper,
            Colorability::Indeterminate => break,
        }
    }
    Ok(SolveResult {
        chi: (lower == upper).then_some(upper),
        lower,
        upper,
        witness,
        nodes_explored: nodes,
        millis: started.elapsed().as_millis() as u64,
    })
}

/// Exact local chromatic number `min_c max_v |c(N[v])|` of a graph.
///
/// Colorings are enumerated in canonical form (each new color is one more
/// than the largest so far) and a branch is cut once some vertex already
/// sees as many colors in its closed neighborhood as the best complete
/// coloring found.
pub fn local_chromatic_number(hg: &KneserHypergraph, cap: usize) -> Result<u32> {
    if hg.uniformity() != 2 {
        return Err(Error::InvalidParams(
            "local chromatic number is defined for graphs".into(),
        ));
    }
    let nv = hg.vertex_count();
    if nv > cap || nv > 64 {
        return Err(Error::CapExceeded {
            what: "local chromatic number",
            size: nv,
            cap: cap.min(64),
        });
    }
    if nv == 0 {
        return Ok(0);
    }
    let adj = hg.neighbors();
    let mut order: Vec<usize> = (0..nv).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].len()), v));

    struct State<'a> {
        adj: &'a [Vec<usize>],
        order: &'a [usize],
        color: Vec<u32>,
        seen: Vec<u64>,
        best: u32,
    }

    fn go(st: &mut State<'_>, depth: usize, used: u32, worst: u32) {
        if worst >= st.best {
            return;
        }
        if depth == st.order.len() {
            st.best = worst;
            return;
        }
        let v = st.order[depth];
        let adj = st.adj;
        for c in 1..=used + 1 {
            if adj[v].iter().any(|&u| st.color[u] == c) {
                continue;
            }
            let bit = 1u64 << (c - 1);
            let saved_v = st.seen[v];
            st.color[v] = c;
            st.seen[v] |= bit;
            for &u in &adj[v] {
                if st.color[u] != 0 {
                    st.seen[v] |= 1u64 << (st.color[u] - 1);
                }
            }
            let mut changed = Vec::new();
            let mut w = worst.max(st.seen[v].count_ones());
            for &u in &adj[v] {
                if st.seen[u] & bit == 0 {
                    changed.push(u);
                    st.seen[u] |= bit;
                    w = w.max(st.seen[u].count_ones());
                }
            }
            go(st, depth + 1, used.max(c), w);
            for u in changed {
                st.seen[u] &= !bit;
            }
            st.seen[v] = saved_v;
            st.color[v] = 0;
        }
    }

    let mut st = State {
        adj: &adj,
        order: &order,
        color: vec![0; nv],
        seen: vec![0; nv],
        best: nv as u32 + 1,
    };
    go(&mut st, 0, 0, 0);
    Ok(st.best)
}

/// A completely multicolored complete bipartite subgraph whose colors, in
/// increasing order, alternate between the sides. `side_a` holds the colors
/// of odd rank (1st, 3rd, …).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorfulWitness {
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
    pub colors_a: Vec<u32>,
    pub colors_b: Vec<u32>,
}

impl ColorfulWitness {
    pub fn size(&self) -> usize {
        self.side_a.len() + self.side_b.len()
    }

    /// Checks every witness invariant against `graph`, `coloring` and the
    /// target size `t`; returns a description of the first failure.
    pub fn check(&self, graph: &KneserHypergraph, coloring: &Coloring, t: usize) -> std::result::Result<(), String> {
        if graph.uniformity() != 2 {
            return Err("witnesses live in graphs".into());
        }
        if self.side_a.len() != t.div_ceil(2) || self.side_b.len() != t / 2 {
            return Err(format!(
                "side sizes {}+{} do not match ⌈{t}/2⌉+⌊{t}/2⌋",
                self.side_a.len(),
                self.side_b.len()
            ));
        }
        let recolored_a: Vec<u32> = self.side_a.iter().map(|&v| coloring.color(v)).collect();
        let recolored_b: Vec<u32> = self.side_b.iter().map(|&v| coloring.color(v)).collect();
        if recolored_a != self.colors_a || recolored_b != self.colors_b {
            return Err("recorded colors disagree with the coloring".into());
        }
        let mut all: Vec<(u32, bool)> = self
            .colors_a
            .iter()
            .map(|&c| (c, true))
            .chain(self.colors_b.iter().map(|&c| (c, false)))
            .collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err("colors are not pairwise distinct".into());
        }
        for (rank, &(c, on_a)) in all.iter().enumerate() {
            if on_a != (rank % 2 == 0) {
                return Err(format!("color {c} of rank {} sits on the wrong side", rank + 1));
            }
        }
        for &a in &self.side_a {
            for &b in &self.side_b {
                let (x, y) = (graph.vertices()[a], graph.vertices()[b]);
                if !graph.contains_edge(&[x, y]) {
                    return Err(format!("{x} and {y} are not adjacent"));
                }
            }
        }
        Ok(())
    }
}

/// Outcome of a bounded witness search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessSearch {
    Found(ColorfulWitness),
    NotFound,
    Indeterminate,
}

/// Searches for a [`ColorfulWitness`] with `t` vertices by picking vertices
/// of strictly increasing color, alternating sides, each adjacent to every
/// vertex already placed on the other side.
pub fn find_colorful_bipartite_bruteforce(
    graph: &KneserHypergraph,
    coloring: &Coloring,
    t: usize,
    budget: &Budget,
) -> Result<WitnessSearch> {
    if graph.uniformity() != 2 {
        return Err(Error::InvalidParams("colorful search is defined for graphs".into()));
    }
    if coloring.len() != graph.vertex_count() {
        return Err(Error::Malformed("coloring does not match the graph".into()));
    }
    let nv = graph.vertex_count();
    let vertices = graph.vertices();
    let mut by_color: Vec<usize> = (0..nv).collect();
    by_color.sort_by_key(|&v| (coloring.color(v), v));

    struct State<'a> {
        t: usize,
        by_color: &'a [usize],
        colors: &'a Coloring,
        vertices: &'a [crate::stable::Subset],
        picked: Vec<usize>,
        nodes: u64,
        limit: u64,
    }

    // Some(true) found, Some(false) exhausted, None aborted
    fn go(st: &mut State<'_>, from: usize, last_color: u32) -> Option<bool> {
        if st.picked.len() == st.t {
            return Some(true);
        }
        st.nodes += 1;
        if st.nodes > st.limit {
            return None;
        }
        let i = st.picked.len();
        for pos in from..st.by_color.len() {
            let v = st.by_color[pos];
            let c = st.colors.color(v);
            if c <= last_color {
                continue;
            }
            // opposite side = picks of the other parity
            let fits = st
                .picked
                .iter()
                .enumerate()
                .filter(|(j, _)| j % 2 != i % 2)
                .all(|(_, &u)| st.vertices[u].is_disjoint(st.vertices[v]));
            if !fits {
                continue;
            }
            st.picked.push(v);
            match go(st, pos + 1, c) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            st.picked.pop();
        }
        Some(false)
    }

    let mut st = State {
        t,
        by_color: &by_color,
        colors: coloring,
        vertices,
        picked: Vec::with_capacity(t),
        nodes: 0,
        limit: budget.node_limit,
    };
    Ok(match go(&mut st, 0, 0) {
        Some(true) => {
            let side_a: Vec<usize> = st.picked.iter().copied().step_by(2).collect();
            let side_b: Vec<usize> = st.picked.iter().copied().skip(1).step_by(2).collect();
            WitnessSearch::Found(ColorfulWitness {
                colors_a: side_a.iter().map(|&v| coloring.color(v)).collect(),
                colors_b: side_b.iter().map(|&v| coloring.color(v)).collect(),
                side_a,
                side_b,
            })
        }
        Some(false) => WitnessSearch::NotFound,
        None => WitnessSearch::Indeterminate,
    })
}
