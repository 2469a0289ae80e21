//! Kneser hypergraphs over stable families, and the colorability defect.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::stable::{enumerate_stable, is_stable, Mode, ParamSet, Subset};
use crate::{binomial, Budget, Error, Result};

/// Default cap on the ground size for [`colorability_defect_bruteforce`].
pub const DEFECT_BRUTEFORCE_CAP: u32 = 12;

/// `KG^r` of a stable family: vertices are the stable `k`-subsets, edges the
/// `r`-sets of pairwise disjoint vertices.
#[derive(Debug, Clone)]
pub struct KneserHypergraph {
    params: ParamSet,
    vertices: Vec<Subset>,
    /// Ascending vertex indices, edges in lexicographic order.
    edges: Vec<Vec<usize>>,
    index: HashMap<Subset, usize>,
}

impl PartialEq for KneserHypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for KneserHypergraph {}

/// Builds `KG^r(n,k)` for the stable family selected by `params`.
pub fn build(params: &ParamSet, budget: &Budget) -> Result<KneserHypergraph> {
    params.validate()?;
    if !params.meets_standing_hypothesis() {
        log::warn!(
            "{params}: n < max(r,s)·k = {}, the hypergraph may be edgeless",
            params.r.max(params.s) * params.k
        );
    }
    let vertices = enumerate_stable(params);
    budget.check_enumeration("kneser edge scan", binomial(vertices.len() as u64, params.r as u64))?;
    let edges = disjoint_tuples(&vertices, params.r as usize);
    Ok(KneserHypergraph::from_parts(*params, vertices, edges))
}

/// All `r`-sets of pairwise disjoint sets from `vertices`, lexicographic.
fn disjoint_tuples(vertices: &[Subset], r: usize) -> Vec<Vec<usize>> {
    fn extend(
        vertices: &[Subset],
        r: usize,
        from: usize,
        used: Subset,
        tuple: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if tuple.len() == r {
            out.push(tuple.clone());
            return;
        }
        for (i, &v) in vertices.iter().enumerate().skip(from) {
            if v.is_disjoint(used) {
                tuple.push(i);
                extend(vertices, r, i + 1, used.union(v), tuple, out);
                tuple.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(vertices, r, 0, Subset::EMPTY, &mut Vec::with_capacity(r), &mut out);
    out
}

impl KneserHypergraph {
    fn from_parts(params: ParamSet, vertices: Vec<Subset>, edges: Vec<Vec<usize>>) -> Self {
        let index = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        KneserHypergraph {
            params,
            vertices,
            edges,
            index,
        }
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn vertices(&self) -> &[Subset] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn uniformity(&self) -> usize {
        self.params.r as usize
    }

    pub fn index_of(&self, v: Subset) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn contains_edge(&self, vertices: &[Subset]) -> bool {
        let mut idx: Vec<usize> = match vertices.iter().map(|&v| self.index_of(v)).collect() {
            Some(idx) => idx,
            None => return false,
        };
        idx.sort_unstable();
        self.edges.binary_search(&idx).is_ok()
    }

    /// Adjacency lists; only meaningful as a graph when `r = 2`.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            for &a in e {
                for &b in e {
                    if a != b {
                        adj[a].push(b);
                    }
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// The JSON export shape `{n,k,r,s,mode,vertices,edges}`.
    pub fn to_json(&self) -> HypergraphJson {
        HypergraphJson {
            n: self.params.n,
            k: self.params.k,
            r: self.params.r,
            s: self.params.s,
            mode: self.params.mode,
            vertices: self.vertices.iter().map(|v| v.to_vec()).collect(),
            edges: self.edges.clone(),
        }
    }

    /// Rebuilds a hypergraph from its export, checking every invariant.
    pub fn from_json(json: HypergraphJson) -> Result<Self> {
        let params = ParamSet::new(json.n, json.k, json.r, json.s, json.mode);
        params.validate()?;
        let mut vertices = Vec::with_capacity(json.vertices.len());
        for list in &json.vertices {
            let v = Subset::try_from_elements(params.n, list)?;
            if v.len() != params.k || !is_stable(v, params.n, params.s, params.mode) {
                return Err(Error::Malformed(format!("{v} is not a stable {}-subset", params.k)));
            }
            vertices.push(v);
        }
        let hg = KneserHypergraph::from_parts(params, vertices, json.edges);
        if hg.index.len() != hg.vertices.len() {
            return Err(Error::Malformed("duplicate vertices".into()));
        }
        for (pos, e) in hg.edges.iter().enumerate() {
            if e.len() != params.r as usize || e.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Malformed(format!(
                    "edge {e:?} is not a sorted {}-tuple",
                    params.r
                )));
            }
            if e.iter().any(|&i| i >= hg.vertices.len()) {
                return Err(Error::Malformed(format!("edge {e:?} references a missing vertex")));
            }
            let mut used = Subset::EMPTY;
            for &i in e {
                if !hg.vertices[i].is_disjoint(used) {
                    return Err(Error::Malformed(format!("edge {e:?} is not pairwise disjoint")));
                }
                used = used.union(hg.vertices[i]);
            }
            if pos > 0 && hg.edges[pos - 1] >= *e {
                return Err(Error::Malformed("edges must be distinct and sorted".into()));
            }
        }
        Ok(hg)
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_json())?)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        KneserHypergraph::from_json(serde_json::from_str(text)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut text = self.to_json_string()?;
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        KneserHypergraph::from_json_str(&std::fs::read_to_string(path)?)
    }
}

/// Serialized form of a [`KneserHypergraph`]. Edge entries are 0-based
/// indices into `vertices`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphJson {
    pub n: u32,
    pub k: u32,
    pub r: u32,
    pub s: u32,
    pub mode: Mode,
    pub vertices: Vec<Vec<u32>>,
    pub edges: Vec<Vec<usize>>,
}

/// A hypergraph `H` on the ground set `[n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundHypergraph {
    n: u32,
    edges: Vec<Subset>,
}

impl GroundHypergraph {
    pub fn new(n: u32, edges: Vec<Subset>) -> Result<Self> {
        let ground = Subset::full(n);
        for e in &edges {
            if e.is_empty() {
                return Err(Error::InvalidParams("∅ may not be an edge".into()));
            }
            if !e.is_subset_of(ground) {
                return Err(Error::Malformed(format!("edge {e} not inside [{n}]")));
            }
        }
        Ok(GroundHypergraph { n, edges })
    }

    /// `([n], stable k-subsets)` for the family in `params`.
    pub fn stable_family(params: &ParamSet) -> Result<Self> {
        params.validate()?;
        GroundHypergraph::new(params.n, enumerate_stable(params))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn edges(&self) -> &[Subset] {
        &self.edges
    }
}

/// `cd^r(H)` by exhaustive search: the first removal size `d` for which some
/// `d`-set `R` leaves `[n] \ R` properly `r`-colorable with respect to the
/// edges of `H` inside `[n] \ R`.
pub fn colorability_defect_bruteforce(h: &GroundHypergraph, r: u32, cap: u32) -> Result<u32> {
    if h.n > cap {
        return Err(Error::CapExceeded {
            what: "colorability defect",
            size: h.n as usize,
            cap: cap as usize,
        });
    }
    if r == 0 {
        return Err(Error::InvalidParams("r must be positive".into()));
    }
    let n = h.n;
    // edges indexed by their largest element so each check looks at the new element only
    let mut by_max: Vec<Vec<Subset>> = vec![Vec::new(); n as usize + 1];
    for &e in &h.edges {
        by_max[e.max() as usize].push(e);
    }
    for d in 0..=n {
        let mut found = false;
        for_each_combination(n, d, &mut |removed| {
            let keep: Vec<u32> = Subset::full(n).difference(removed).to_vec();
            let mut classes = vec![Subset::EMPTY; r as usize];
            if colorable(&keep, 0, &by_max, &mut classes, 0) {
                found = true;
            }
            found
        });
        if found {
            return Ok(d);
        }
    }
    unreachable!("removing every element leaves an uncolorable residue")
}

/// Backtracking over ground elements in increasing order; element `keep[i]`
/// closes exactly the edges whose maximum it is.
fn colorable(keep: &[u32], i: usize, by_max: &[Vec<Subset>], classes: &mut [Subset], used: usize) -> bool {
    let Some(&e) = keep.get(i) else {
        return true;
    };
    let r = classes.len();
    for c in 0..r.min(used + 1) {
        let with = classes[c].union(Subset::singleton(e));
        if by_max[e as usize].iter().any(|edge| edge.is_subset_of(with)) {
            continue;
        }
        let saved = classes[c];
        classes[c] = with;
        if colorable(keep, i + 1, by_max, classes, used.max(c + 1)) {
            classes[c] = saved;
            return true;
        }
        classes[c] = saved;
    }
    false
}

/// Calls `f` on each `d`-subset of `[n]` in colex order until it returns true.
fn for_each_combination(n: u32, d: u32, f: &mut dyn FnMut(Subset) -> bool) {
    if d > n {
        return;
    }
    if d == 0 {
        f(Subset::EMPTY);
        return;
    }
    // Gosper's hack over d-bit words below 2^n
    let mut x: u64 = (1u64 << d) - 1;
    let limit: u64 = 1u64 << n;
    while x < limit {
        if f(Subset::from_bits(x)) {
            return;
        }
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
}

/// `cd^r` of the stable `k`-subsets of `[n]`: `max(n − r·s·(k−1), 0)`, the
/// same for both modes.
pub fn colorability_defect_formula(n: u32, k: u32, r: u32, s: u32) -> u32 {
    let used = r as i64 * s as i64 * (k as i64 - 1);
    (n as i64 - used).max(0) as u32
}
