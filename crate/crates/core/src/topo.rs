//! Equivariant labelings of signed vectors built from a proper coloring, and
//! exhaustive checkers for the Zₚ-Tucker and octahedral Fan conditions.
//!
//! Labelings are evaluated on every nonzero vector of `(Zₚ ∪ {0})ⁿ` and
//! stored in a table indexed by [`SignedVector::code`], so the verifiers only
//! do integer comparisons.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::kneser::KneserHypergraph;
use crate::signed::{chain_count, space_size, SignedVector, ZpLabel};
use crate::solver::ColorfulWitness;
use crate::stable::{colex_max_stable, max_stable_size, Mode, Subset};
use crate::{ceil_div, Budget, Error, Result};

/// `I(X)`: the largest `q ≤ k` such that some part of `X` contains an almost
/// `s`-stable `q`-subset.
pub fn stat_i(x: &SignedVector, k: u32, s: u32) -> u32 {
    x.parts()
        .iter()
        .map(|&part| max_stable_size(part, s).min(k))
        .max()
        .unwrap_or(0)
}

/// `C(X)`: the (1-based) parts attaining `I(X)`.
pub fn stat_c(x: &SignedVector, k: u32, s: u32) -> Vec<u32> {
    let i = stat_i(x, k, s);
    x.parts()
        .iter()
        .enumerate()
        .filter(|(_, &part)| max_stable_size(part, s).min(k) == i)
        .map(|(j, _)| j as u32 + 1)
        .collect()
}

/// `M(X)`: the largest `max(X_j)` over `j ∈ C(X)`.
pub fn stat_m(x: &SignedVector, k: u32, s: u32) -> u32 {
    stat_c(x, k, s).into_iter().map(|j| x.part(j).max()).max().unwrap_or(0)
}

fn residue_label(i: u32, max: u32, s: u32) -> u32 {
    (i - 1) * (s - 1) + max % (s - 1) + 1
}

fn check_labeling_input(hg: &KneserHypergraph, coloring: &Coloring) -> Result<()> {
    let p = hg.params();
    if p.mode != Mode::Path {
        return Err(Error::InvalidParams(
            "labelings are built on the almost stable family".into(),
        ));
    }
    if p.s < 2 {
        return Err(Error::InvalidParams("labelings need s ≥ 2".into()));
    }
    if coloring.len() != hg.vertex_count() {
        return Err(Error::Malformed(format!(
            "coloring has {} entries for {} vertices",
            coloring.len(),
            hg.vertex_count()
        )));
    }
    Ok(())
}

/// The Zₚ-equivariant labeling `λ : (Zₚ ∪ {0})ⁿ \ {0} → Zₚ × [m]` obtained
/// from a coloring `c` of `KG^p(n,k)` on almost `s`-stable sets, with
/// `α = (s−1)(k−1)` and `m = α + (k−1) + t`.
#[derive(Debug, Clone)]
pub struct TuckerLabeling {
    n: u32,
    k: u32,
    s: u32,
    p: u32,
    t: u32,
    colors: HashMap<Subset, u32>,
}

impl TuckerLabeling {
    /// `p` is the uniformity of `hg`; it must be prime for the Tucker
    /// conditions to be meaningful, but the labeling itself does not care.
    pub fn new(hg: &KneserHypergraph, coloring: &Coloring) -> Result<Self> {
        check_labeling_input(hg, coloring)?;
        let params = hg.params();
        let s_k = params.s * (params.k - 1);
        assert_eq!(
            (params.s - 1) * (params.k - 1) + (params.k - 1),
            s_k,
            "case boundary and color offset coincide"
        );
        Ok(TuckerLabeling {
            n: params.n,
            k: params.k,
            s: params.s,
            p: params.r,
            t: coloring.palette(),
            colors: hg
                .vertices()
                .iter()
                .copied()
                .zip(coloring.colors().iter().copied())
                .collect(),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn alpha(&self) -> u32 {
        (self.s - 1) * (self.k - 1)
    }

    pub fn m(&self) -> u32 {
        self.alpha() + (self.k - 1) + self.t
    }

    pub fn label(&self, x: &SignedVector) -> ZpLabel {
        let (k, s) = (self.k, self.s);
        let i = stat_i(x, k, s);
        if i < k {
            let c = stat_c(x, k, s);
            if c.len() == self.p as usize {
                let j = x.max_part().expect("nonzero vector");
                ZpLabel::new(j, residue_label(i, x.max(), s))
            } else {
                let m = stat_m(x, k, s);
                let j = c
                    .into_iter()
                    .find(|&j| x.part(j).max() == m)
                    .expect("M(X) is attained in C(X)");
                ZpLabel::new(j, self.alpha() + i)
            }
        } else {
            let (j, set) = (1..=self.p)
                .filter_map(|j| colex_max_stable(x.part(j), k, s).map(|set| (j, set)))
                .max_by_key(|&(_, set)| set)
                .expect("I(X) = k");
            let c = self.colors[&set];
            ZpLabel::new(j, c + s * (k - 1))
        }
    }

    /// Labels of every nonzero vector, indexed by code.
    pub fn table(&self, budget: &Budget) -> Result<Vec<ZpLabel>> {
        tabulate(self.n, self.p, budget, |x| self.label(x))
    }
}

/// The antipodal labeling `λ : {+,−,0}ⁿ \ {0} → {±1, …, ±(s(k−1)+t)}`
/// obtained from a proper coloring of the almost `s`-stable Kneser graph.
#[derive(Debug, Clone)]
pub struct FanLabeling {
    n: u32,
    k: u32,
    s: u32,
    t: u32,
    vertices: Vec<Subset>,
    colors: Vec<u32>,
}

impl FanLabeling {
    pub fn new(graph: &KneserHypergraph, coloring: &Coloring) -> Result<Self> {
        check_labeling_input(graph, coloring)?;
        let params = graph.params();
        if params.r != 2 {
            return Err(Error::InvalidParams("the Fan labeling is built on graphs".into()));
        }
        Ok(FanLabeling {
            n: params.n,
            k: params.k,
            s: params.s,
            t: coloring.palette(),
            vertices: graph.vertices().to_vec(),
            colors: coloring.colors().to_vec(),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Labels at or below this value come from the first case.
    pub fn offset(&self) -> u32 {
        self.s * (self.k - 1)
    }

    /// Largest absolute label value.
    pub fn m(&self) -> u32 {
        self.offset() + self.t
    }

    pub fn label(&self, x: &SignedVector) -> i32 {
        let (k, s) = (self.k, self.s);
        let (plus, minus) = (x.plus(), x.minus());
        let i = stat_i(x, k, s);
        let sign = |is_plus: bool| if is_plus { 1 } else { -1 };
        if i < k {
            let plus_has = max_stable_size(plus, s).min(k) == i;
            let minus_has = max_stable_size(minus, s).min(k) == i;
            if plus_has && minus_has {
                let value = residue_label(i, x.max(), s);
                sign(plus.max() == x.max()) * value as i32
            } else {
                sign(plus_has) * (i + (s - 1) * (k - 1)) as i32
            }
        } else {
            // a proper coloring puts the top color on one side only
            let (color, on_plus) = self
                .vertices
                .iter()
                .zip(&self.colors)
                .filter_map(|(&v, &c)| {
                    if v.is_subset_of(plus) {
                        Some((c, true))
                    } else if v.is_subset_of(minus) {
                        Some((c, false))
                    } else {
                        None
                    }
                })
                .max()
                .expect("I(X) = k");
            sign(on_plus) * (color + self.offset()) as i32
        }
    }

    pub fn table(&self, budget: &Budget) -> Result<Vec<i32>> {
        tabulate(self.n, 2, budget, |x| self.label(x))
    }

    /// The vertex decoded from a chain position: the colex-largest vertex of
    /// color `|label| − s(k−1)` inside the side named by the sign.
    fn decode(&self, x: &SignedVector, label: i32) -> Option<usize> {
        let color = label.unsigned_abs().checked_sub(self.offset()).filter(|&c| c > 0)?;
        let side = if label > 0 { x.plus() } else { x.minus() };
        (0..self.vertices.len())
            .filter(|&v| self.colors[v] == color && self.vertices[v].is_subset_of(side))
            .max_by_key(|&v| self.vertices[v])
    }
}

/// Evaluates `f` on every nonzero vector; entry 0 is a placeholder.
pub fn tabulate<L: Clone + Default>(n: u32, p: u32, budget: &Budget, f: impl Fn(&SignedVector) -> L) -> Result<Vec<L>> {
    let size = space_size(n, p).ok_or(Error::BudgetExceeded {
        what: "signed vectors",
        requested: u128::MAX,
        limit: budget.enumeration_limit,
    })?;
    budget.check_enumeration("signed vectors", size as u128)?;
    let mut table = vec![L::default(); size as usize];
    for (code, slot) in table.iter_mut().enumerate().skip(1) {
        *slot = f(&SignedVector::from_code(n, p, code as u64));
    }
    Ok(table)
}

/// Calls `f` on the code of every proper superset of `code`, stopping early
/// when `f` returns `false`. Returns `false` if stopped.
fn for_each_superset(code: u64, n: u32, p: u32, f: &mut impl FnMut(u64) -> bool) -> bool {
    let base = p as u64 + 1;
    let mut free = Vec::new();
    let (mut rest, mut weight) = (code, 1u64);
    for _ in 0..n {
        if rest % base == 0 {
            free.push(weight);
        }
        rest /= base;
        weight *= base;
    }
    fn go(free: &[u64], p: u32, acc: u64, changed: bool, f: &mut impl FnMut(u64) -> bool) -> bool {
        let Some((&w, tail)) = free.split_first() else {
            return !changed || f(acc);
        };
        (0..=p as u64).all(|v| go(tail, p, acc + v * w, changed || v > 0, f))
    }
    go(&free, p, code, false, f)
}

/// First failure found by [`verify_zp_tucker`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TuckerViolation {
    /// `λ₂(X)` outside `[1, m]`.
    Range { x: SignedVector, label: ZpLabel },
    /// `λ(ω·X) ≠ ω·λ(X)`.
    Equivariance {
        x: SignedVector,
        label: ZpLabel,
        acted: ZpLabel,
    },
    /// `X ⊆ Y`, `λ₂(X) = λ₂(Y) ≤ α`, but `λ₁(X) ≠ λ₁(Y)`.
    Pair {
        x: SignedVector,
        y: SignedVector,
        lx: ZpLabel,
        ly: ZpLabel,
    },
    /// A chain with constant `λ₂ > α` and pairwise distinct `λ₁`.
    Chain {
        chain: Vec<SignedVector>,
        labels: Vec<ZpLabel>,
    },
    /// Every condition holds yet `α + (m−α)(p−1) < n`.
    Inequality { lhs: u64, n: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuckerReport {
    pub n: u32,
    pub p: u32,
    pub alpha: u32,
    pub m: u32,
    /// `α + (m−α)(p−1)`.
    pub lhs: u64,
    pub violation: Option<TuckerViolation>,
}

impl TuckerReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks a labeling table (indexed by code) against the hypotheses of the
/// Zₚ-Tucker lemma: label range, Zₚ-equivariance, condition (i) on every
/// comparable pair and condition (ii) on every `p`-chain. When all hold, the
/// conclusion `α + (m−α)(p−1) ≥ n` is checked as well.
pub fn verify_zp_tucker(
    table: &[ZpLabel],
    n: u32,
    p: u32,
    m: u32,
    alpha: u32,
    budget: &Budget,
) -> Result<TuckerReport> {
    let size = space_size(n, p).filter(|&s| s as usize == table.len()).ok_or_else(|| {
        Error::Malformed(format!(
            "table of {} labels does not cover (Z_{p} ∪ {{0}})^{n}",
            table.len()
        ))
    })?;
    budget.check_enumeration("comparable pairs", chain_count(n, p, 2))?;
    if p > 2 {
        budget.check_enumeration("p-chains", chain_count(n, p, p))?;
    }
    let lhs = alpha as u64 + (m as u64).saturating_sub(alpha as u64) * (p as u64 - 1);
    let report = |violation| TuckerReport {
        n,
        p,
        alpha,
        m,
        lhs,
        violation,
    };
    let vec = |code: u64| SignedVector::from_code(n, p, code);

    for code in 1..size {
        let label = table[code as usize];
        if label.index == 0 || label.index > m || label.sign == 0 || label.sign > p {
            return Ok(report(Some(TuckerViolation::Range { x: vec(code), label })));
        }
    }
    for code in 1..size {
        let x = vec(code);
        let label = table[code as usize];
        for g in 1..p {
            let acted = table[x.act(g).code() as usize];
            if acted != label.act(g, p) {
                return Ok(report(Some(TuckerViolation::Equivariance { x, label, acted })));
            }
        }
    }
    for code in 1..size {
        let lx = table[code as usize];
        if lx.index > alpha {
            continue;
        }
        let mut bad = None;
        for_each_superset(code, n, p, &mut |y| {
            let ly = table[y as usize];
            if ly.index == lx.index && ly.sign != lx.sign {
                bad = Some((y, ly));
                return false;
            }
            true
        });
        if let Some((y, ly)) = bad {
            return Ok(report(Some(TuckerViolation::Pair {
                x: vec(code),
                y: vec(y),
                lx,
                ly,
            })));
        }
    }
    for code in 1..size {
        if table[code as usize].index <= alpha {
            continue;
        }
        let mut chain = vec![code];
        if let Some(found) = distinct_sign_chain(table, n, p, &mut chain) {
            return Ok(report(Some(TuckerViolation::Chain {
                labels: found.iter().map(|&c| table[c as usize]).collect(),
                chain: found.into_iter().map(vec).collect(),
            })));
        }
    }
    if lhs < n as u64 {
        return Ok(report(Some(TuckerViolation::Inequality { lhs, n })));
    }
    Ok(report(None))
}

/// Extends `chain` by strict supersets with the same `λ₂` and unused `λ₁`
/// until it has `p` members.
fn distinct_sign_chain(table: &[ZpLabel], n: u32, p: u32, chain: &mut Vec<u64>) -> Option<Vec<u64>> {
    if chain.len() == p as usize {
        return Some(chain.clone());
    }
    let last = *chain.last().expect("chain starts nonempty");
    let index = table[last as usize].index;
    let mut found = None;
    for_each_superset(last, n, p, &mut |y| {
        let ly = table[y as usize];
        if ly.index != index || chain.iter().any(|&c| table[c as usize].sign == ly.sign) {
            return true;
        }
        chain.push(y);
        found = distinct_sign_chain(table, n, p, chain);
        chain.pop();
        found.is_none()
    });
    found
}

/// The implied palette bound `t ≥ ⌈(n − (p+s−2)(k−1)) / (p−1)⌉` obtained by
/// solving `α + ((k−1)+t)(p−1) ≥ n` for `t`.
pub fn implied_palette_bound(n: u32, k: u32, p: u32, s: u32) -> i64 {
    let alpha = ((s - 1) * (k - 1)) as i64;
    ceil_div(n as i64 - alpha - ((k - 1) * (p - 1)) as i64, p as i64 - 1)
}

/// First failure of the Fan hypotheses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FanViolation {
    Range {
        x: SignedVector,
        label: i32,
    },
    /// `λ(−X) ≠ −λ(X)`.
    Antipodal {
        x: SignedVector,
        label: i32,
        negated: i32,
    },
    /// `X ≤ Y` with `λ(X) = −λ(Y)`.
    Complementary {
        x: SignedVector,
        y: SignedVector,
        lx: i32,
        ly: i32,
    },
}

fn fan_table_size(table: &[i32], n: u32) -> Result<u64> {
    space_size(n, 2)
        .filter(|&s| s as usize == table.len())
        .ok_or_else(|| Error::Malformed(format!("table of {} labels does not cover {{+,−,0}}^{n}", table.len())))
}

/// Checks labels lie in `{±1, …, ±m}` and `λ(−X) = −λ(X)`, reporting the
/// first offending vector in code order.
pub fn verify_fan_antipodal(table: &[i32], n: u32, m: u32) -> Result<Option<FanViolation>> {
    let size = fan_table_size(table, n)?;
    for code in 1..size {
        let label = table[code as usize];
        if label == 0 || label.unsigned_abs() > m {
            return Ok(Some(FanViolation::Range {
                x: SignedVector::from_code(n, 2, code),
                label,
            }));
        }
    }
    for code in 1..size {
        let x = SignedVector::from_code(n, 2, code);
        let label = table[code as usize];
        let negated = table[x.negate().code() as usize];
        if negated != -label {
            return Ok(Some(FanViolation::Antipodal { x, label, negated }));
        }
    }
    Ok(None)
}

/// Checks that no comparable pair `X ≤ Y` carries complementary labels.
pub fn verify_fan_complementary(table: &[i32], n: u32, budget: &Budget) -> Result<Option<FanViolation>> {
    let size = fan_table_size(table, n)?;
    budget.check_enumeration("comparable pairs", chain_count(n, 2, 2))?;
    for code in 1..size {
        let lx = table[code as usize];
        let mut bad = None;
        for_each_superset(code, n, 2, &mut |y| {
            if table[y as usize] == -lx {
                bad = Some(y);
                return false;
            }
            true
        });
        if let Some(y) = bad {
            return Ok(Some(FanViolation::Complementary {
                x: SignedVector::from_code(n, 2, code),
                y: SignedVector::from_code(n, 2, y),
                lx,
                ly: table[y as usize],
            }));
        }
    }
    Ok(None)
}

/// A saturated chain `X₁ ≤ … ≤ Xₙ` with `|Xⱼ| = j` whose labels, sorted by
/// absolute value, read `+a₁, −a₂, +a₃, …`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanChain {
    pub vectors: Vec<SignedVector>,
    pub labels: Vec<i32>,
}

impl FanChain {
    pub fn check(&self, n: u32) -> std::result::Result<(), String> {
        if self.vectors.len() != n as usize || self.labels.len() != n as usize {
            return Err(format!("chain has {} vectors, expected {n}", self.vectors.len()));
        }
        for (j, x) in self.vectors.iter().enumerate() {
            if x.size() as usize != j + 1 {
                return Err(format!("vector {j} has size {}", x.size()));
            }
            if j > 0 && !self.vectors[j - 1].is_subset_of(x) {
                return Err(format!("vector {} is not below vector {}", j - 1, j));
            }
        }
        let mut sorted = self.labels.clone();
        sorted.sort_by_key(|l| l.unsigned_abs());
        for (q, &l) in sorted.iter().enumerate() {
            if q > 0 && sorted[q - 1].unsigned_abs() == l.unsigned_abs() {
                return Err(format!("label {} repeats", l.unsigned_abs()));
            }
            if (l > 0) != (q % 2 == 0) {
                return Err(format!("labels do not alternate at {l}"));
            }
        }
        Ok(())
    }
}

/// Result of a bounded chain search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainSearch {
    Found(FanChain),
    NotFound,
    Indeterminate,
}

/// Whether a partial label set (sorted by absolute value) can still grow
/// into an alternating set of `n` labels with `remaining` more insertions.
fn alternation_feasible(sorted: &[i32], remaining: u32) -> bool {
    let mut needed = 0u32;
    let mut prev: Option<i32> = None;
    for &l in sorted {
        let gap_room = match prev {
            None => l.unsigned_abs() - 1,
            Some(q) => l.unsigned_abs() - q.unsigned_abs() - 1,
        };
        // labels inserted below this one must flip its sign the right number of times
        let aligned = match prev {
            None => l > 0,
            Some(q) => (q > 0) != (l > 0),
        };
        let need = if aligned { 0 } else { 1 };
        if need > gap_room {
            return false;
        }
        needed += need;
        prev = Some(l);
    }
    needed <= remaining
}

/// Depth-first search over saturated chains for one whose labels form an
/// alternating set. Coordinates are tried in ascending order and `+` before
/// `−`, so the output is deterministic.
pub fn extract_fan_chain(table: &[i32], n: u32, budget: &Budget) -> Result<ChainSearch> {
    fan_table_size(table, n)?;
    let pow: Vec<u64> = (0..n).map(|i| 3u64.pow(i)).collect();

    struct State<'a> {
        table: &'a [i32],
        pow: &'a [u64],
        n: u32,
        codes: Vec<u64>,
        sorted: Vec<i32>,
        nodes: u64,
        limit: u64,
    }

    // Some(true) found, Some(false) exhausted, None aborted
    fn go(st: &mut State<'_>, code: u64) -> Option<bool> {
        if st.codes.len() == st.n as usize {
            return Some(true);
        }
        st.nodes += 1;
        if st.nodes > st.limit {
            return None;
        }
        for i in 0..st.n as usize {
            if !(code / st.pow[i]).is_multiple_of(3) {
                continue;
            }
            for v in 1..=2u64 {
                let next = code + v * st.pow[i];
                let label = st.table[next as usize];
                let pos = st.sorted.partition_point(|l| l.unsigned_abs() < label.unsigned_abs());
                if st
                    .sorted
                    .get(pos)
                    .is_some_and(|l| l.unsigned_abs() == label.unsigned_abs())
                {
                    continue;
                }
                st.sorted.insert(pos, label);
                let remaining = st.n - st.sorted.len() as u32;
                if alternation_feasible(&st.sorted, remaining) {
                    st.codes.push(next);
                    match go(st, next) {
                        Some(true) => return Some(true),
                        None => return None,
                        Some(false) => {}
                    }
                    st.codes.pop();
                }
                st.sorted.remove(pos);
            }
        }
        Some(false)
    }

    let mut st = State {
        table,
        pow: &pow,
        n,
        codes: Vec::with_capacity(n as usize),
        sorted: Vec::with_capacity(n as usize),
        nodes: 0,
        limit: budget.node_limit,
    };
    Ok(match go(&mut st, 0) {
        Some(true) => ChainSearch::Found(FanChain {
            labels: st.codes.iter().map(|&c| table[c as usize]).collect(),
            vectors: st.codes.iter().map(|&c| SignedVector::from_code(n, 2, c)).collect(),
        }),
        Some(false) => ChainSearch::NotFound,
        None => ChainSearch::Indeterminate,
    })
}

/// Reads a colorful complete bipartite subgraph off a Fan chain of
/// `labeling`: every position whose label exceeds `s(k−1)` names a color and
/// a side, hence a vertex inside that side. Sorted by color these alternate
/// in sign, and opposite sides lie in the disjoint halves of the last vector.
pub fn colorful_from_fan(chain: &FanChain, labeling: &FanLabeling) -> Result<ColorfulWitness> {
    let mut picks: Vec<(u32, i32, usize)> = Vec::new();
    for (x, &label) in chain.vectors.iter().zip(&chain.labels) {
        if label.unsigned_abs() <= labeling.offset() {
            continue;
        }
        let v = labeling
            .decode(x, label)
            .ok_or_else(|| Error::Inconsistent(format!("label {label} of {x} names no vertex inside its side")))?;
        picks.push((label.unsigned_abs() - labeling.offset(), label, v));
    }
    picks.sort_unstable();
    let t = (labeling.n - labeling.offset()) as usize;
    if picks.len() < t {
        return Err(Error::Inconsistent(format!(
            "chain carries {} colors above the offset, expected {t}",
            picks.len()
        )));
    }
    // any t consecutive colors alternate; keep the top ones
    let picks = &picks[picks.len() - t..];
    let mut w = ColorfulWitness {
        side_a: Vec::new(),
        side_b: Vec::new(),
        colors_a: Vec::new(),
        colors_b: Vec::new(),
    };
    let first_sign = picks.first().map(|p| p.1 > 0);
    for &(color, label, v) in picks {
        if Some(label > 0) == first_sign {
            w.side_a.push(v);
            w.colors_a.push(color);
        } else {
            w.side_b.push(v);
            w.colors_b.push(color);
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{explicit_coloring, min_element_coloring, random_greedy_colorings};
    use crate::kneser::build;
    use crate::solver::{chromatic_number, find_colorful_bipartite_bruteforce, SolverConfig, WitnessSearch};
    use crate::stable::{stable_subsets, ParamSet};

    fn pm(n: u32, plus: &[u32], minus: &[u32]) -> SignedVector {
        SignedVector::pm(n, plus, minus).unwrap()
    }

    /// `I(X)` by enumerating every subset of every part.
    fn stat_i_oracle(x: &SignedVector, k: u32, s: u32) -> u32 {
        let mut best = 0;
        for part in x.parts() {
            let elems = part.to_vec();
            for mask in 0u32..1 << elems.len() {
                let sub: Vec<u32> = (0..elems.len())
                    .filter(|&b| mask >> b & 1 == 1)
                    .map(|b| elems[b])
                    .collect();
                let ok = sub.windows(2).all(|w| w[1] - w[0] >= s);
                if ok && sub.len() as u32 <= k {
                    best = best.max(sub.len() as u32);
                }
            }
        }
        best
    }

    #[test]
    fn statistics_examples() {
        let x = pm(6, &[1, 4], &[2]);
        assert_eq!(stat_i(&x, 3, 3), 2);
        assert_eq!(stat_c(&x, 3, 3), vec![1]);
        assert_eq!(stat_m(&x, 3, 3), 4);
        assert_eq!(stat_i(&pm(6, &[2], &[]), 3, 2), 1);
        assert_eq!(stat_i(&pm(6, &[1, 2, 3], &[]), 3, 3), 1);
        let y = pm(6, &[1, 4], &[2, 5]);
        assert_eq!(stat_c(&y, 3, 3), vec![1, 2]);
        assert_eq!(stat_m(&y, 3, 3), 5);
        let z = pm(3, &[3], &[1]);
        assert_eq!(stat_c(&z, 2, 2), vec![1, 2]);
        assert_eq!(stat_m(&z, 2, 2), 3);
    }

    #[test]
    fn stat_i_matches_subset_enumeration() {
        for p in [2, 3] {
            for code in 1..space_size(5, p).unwrap() {
                let x = SignedVector::from_code(5, p, code);
                for k in 1..=3 {
                    for s in 1..=3 {
                        assert_eq!(stat_i(&x, k, s), stat_i_oracle(&x, k, s), "{x:?} k={k} s={s}");
                    }
                }
            }
        }
    }

    #[test]
    fn full_c_means_m_is_max() {
        for code in 1..space_size(6, 2).unwrap() {
            let x = SignedVector::from_code(6, 2, code);
            if stat_c(&x, 3, 2).len() == 2 {
                assert_eq!(stat_m(&x, 3, 2), x.max());
            }
        }
    }

    fn meunier(n: u32, k: u32, r: u32, s: u32) -> (KneserHypergraph, Coloring) {
        let g = build(&ParamSet::path(n, k, r, s), &Budget::default()).unwrap();
        let c = min_element_coloring(&g).unwrap();
        (g, c)
    }

    #[test]
    fn tucker_label_examples() {
        // colors do not matter in the first case
        let (g, c) = meunier(9, 3, 2, 3);
        let lambda = TuckerLabeling::new(&g, &c).unwrap();
        assert_eq!(lambda.label(&pm(9, &[1, 4], &[2, 5])), ZpLabel::new(2, 4));
        assert_eq!(lambda.label(&pm(9, &[1, 4], &[2])), ZpLabel::new(1, 6));

        let (g, c) = meunier(6, 2, 2, 3);
        let lambda = TuckerLabeling::new(&g, &c).unwrap();
        assert_eq!(lambda.label(&pm(6, &[1, 4], &[2, 5])), ZpLabel::new(2, 5));
        assert_eq!((lambda.alpha(), lambda.m()), (2, 6));
    }

    #[test]
    fn fan_label_examples() {
        let (g, c) = meunier(6, 2, 2, 3);
        let lambda = FanLabeling::new(&g, &c).unwrap();
        assert_eq!(lambda.label(&pm(6, &[1], &[3])), -2);
        assert_eq!(lambda.label(&pm(6, &[1, 3], &[])), 3);
        assert_eq!(lambda.label(&pm(6, &[1, 4], &[2, 5])), -5);
    }

    #[test]
    fn labelings_reject_bad_input() {
        let g = build(&ParamSet::path(6, 2, 2, 1), &Budget::default()).unwrap();
        let c = Coloring::new(vec![1; g.vertex_count()], 1).unwrap();
        assert!(FanLabeling::new(&g, &c).is_err());
        assert!(TuckerLabeling::new(&g, &c).is_err());
        let (g, _) = meunier(6, 2, 2, 3);
        assert!(FanLabeling::new(&g, &Coloring::new(vec![1], 1).unwrap()).is_err());
    }

    #[test]
    fn tucker_equivariance_and_case_ranges() {
        for (n, k, p, s) in [(6, 2, 2, 3), (6, 2, 3, 2), (7, 3, 2, 2)] {
            let g = build(&ParamSet::path(n, k, p, s), &Budget::default()).unwrap();
            let c = explicit_coloring(&g).unwrap();
            let lambda = TuckerLabeling::new(&g, &c).unwrap();
            let alpha = lambda.alpha();
            for code in 1..space_size(n, p).unwrap() {
                let x = SignedVector::from_code(n, p, code);
                let l = lambda.label(&x);
                for g in 0..p {
                    assert_eq!(lambda.label(&x.act(g)), l.act(g, p));
                }
                let i = stat_i(&x, k, s);
                let range = if i == k {
                    alpha + k..=lambda.m()
                } else if stat_c(&x, k, s).len() == p as usize {
                    1..=alpha
                } else {
                    alpha + 1..=alpha + k - 1
                };
                assert!(range.contains(&l.index), "{x:?} → {l}");
            }
        }
    }

    #[test]
    fn tucker_pairs_share_i_and_residue() {
        let (g, c) = meunier(7, 3, 2, 3);
        let lambda = TuckerLabeling::new(&g, &c).unwrap();
        let table = lambda.table(&Budget::default()).unwrap();
        for code in 1..table.len() as u64 {
            let lx = table[code as usize];
            if lx.index > lambda.alpha() {
                continue;
            }
            let x = SignedVector::from_code(7, 2, code);
            for_each_superset(code, 7, 2, &mut |y| {
                if table[y as usize].index == lx.index {
                    let y = SignedVector::from_code(7, 2, y);
                    assert_eq!(stat_i(&x, 3, 3), stat_i(&y, 3, 3));
                    assert_eq!(x.max() % 2, y.max() % 2);
                }
                true
            });
        }
    }

    #[test]
    fn supersets_match_direct_comparison() {
        for p in [2, 3] {
            let n = 4;
            let size = space_size(n, p).unwrap();
            for code in 0..size {
                let x = SignedVector::from_code(n, p, code);
                let mut got = Vec::new();
                for_each_superset(code, n, p, &mut |y| {
                    got.push(y);
                    true
                });
                got.sort_unstable();
                let expected: Vec<u64> = (0..size)
                    .filter(|&y| y != code && x.is_subset_of(&SignedVector::from_code(n, p, y)))
                    .collect();
                assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn tucker_verifier_examples() {
        let (g, c) = meunier(6, 2, 2, 3);
        let lambda = TuckerLabeling::new(&g, &c).unwrap();
        let table = lambda.table(&Budget::default()).unwrap();
        let report = verify_zp_tucker(&table, 6, 2, lambda.m(), lambda.alpha(), &Budget::default()).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.lhs, 6);

        let constant = vec![ZpLabel::new(1, 1); 9];
        let report = verify_zp_tucker(&constant, 2, 2, 1, 1, &Budget::default()).unwrap();
        assert!(matches!(report.violation, Some(TuckerViolation::Equivariance { .. })));

        let single = vec![ZpLabel::default(), ZpLabel::new(1, 1), ZpLabel::new(2, 1)];
        let report = verify_zp_tucker(&single, 1, 2, 1, 1, &Budget::default()).unwrap();
        assert!(report.passed());
        assert_eq!(report.lhs, 1);
    }

    #[test]
    fn tucker_verifier_catches_pair_chain_and_inequality() {
        // sign of max coordinate, index 1: equivariant, fails (i) when α = 1
        let n = 2;
        let by_max: Vec<ZpLabel> = (0..9)
            .map(|c| {
                let x = SignedVector::from_code(n, 2, c);
                ZpLabel::new(x.max_part().unwrap_or(1), 1)
            })
            .collect();
        let r = verify_zp_tucker(&by_max, n, 2, 1, 1, &Budget::default()).unwrap();
        assert!(matches!(r.violation, Some(TuckerViolation::Pair { .. })), "{r:?}");
        // same labels above α break (ii) instead
        let r = verify_zp_tucker(&by_max, n, 2, 1, 0, &Budget::default()).unwrap();
        assert!(matches!(r.violation, Some(TuckerViolation::Chain { .. })), "{r:?}");
        // sign of coordinate 1 when present, index = position of the first nonzero
        let proper: Vec<ZpLabel> = (0..9)
            .map(|c| {
                let x = SignedVector::from_code(n, 2, c);
                let first = x.support().min().max(1);
                ZpLabel::new(x.coord(first).max(1), first)
            })
            .collect();
        let r = verify_zp_tucker(&proper, n, 2, 2, 2, &Budget::default()).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = verify_zp_tucker(&proper, 3, 2, 2, 2, &Budget::default());
        assert!(r.is_err());
    }

    #[test]
    fn tucker_budget_refusal() {
        let table = vec![ZpLabel::new(1, 1); 3usize.pow(6)];
        let tiny = Budget {
            enumeration_limit: 100,
            ..Budget::default()
        };
        assert!(matches!(
            verify_zp_tucker(&table, 6, 2, 5, 1, &tiny),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn implied_bound_matches_formula() {
        assert_eq!(implied_palette_bound(6, 2, 2, 3), 3);
        assert_eq!(implied_palette_bound(7, 2, 2, 3), 4);
        assert_eq!(implied_palette_bound(8, 2, 3, 2), 3);
    }

    #[test]
    fn fan_trivial_examples() {
        let table = vec![0, 1, -1];
        assert_eq!(verify_fan_antipodal(&table, 1, 1).unwrap(), None);
        let ChainSearch::Found(chain) = extract_fan_chain(&table, 1, &Budget::default()).unwrap() else {
            panic!()
        };
        assert_eq!(chain.labels, vec![1]);
        assert_eq!(chain.vectors, vec![pm(1, &[1], &[])]);

        let all_plus = vec![1; 9];
        match verify_fan_antipodal(&all_plus, 2, 1).unwrap() {
            Some(FanViolation::Antipodal { x, .. }) => assert_eq!(x, pm(2, &[1], &[])),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fan_complementary_pair_detected() {
        // λ(X) = sign of the lowest coordinate times the support size
        let n = 3;
        let table: Vec<i32> = (0..27)
            .map(|c| {
                let x = SignedVector::from_code(n, 2, c);
                if x.is_zero() {
                    return 0;
                }
                let sign = if x.coord(x.support().min()) == 1 { 1 } else { -1 };
                sign * x.size() as i32
            })
            .collect();
        assert_eq!(verify_fan_antipodal(&table, n, 3).unwrap(), None);
        assert_eq!(verify_fan_complementary(&table, n, &Budget::default()).unwrap(), None);
        let flipped: Vec<i32> = (0..27)
            .map(|c| {
                let x = SignedVector::from_code(n, 2, c);
                if x.is_zero() {
                    return 0;
                }
                if x.coord(x.support().max()) == 1 {
                    1
                } else {
                    -1
                }
            })
            .collect();
        assert!(matches!(
            verify_fan_complementary(&flipped, n, &Budget::default()).unwrap(),
            Some(FanViolation::Complementary { .. })
        ));
    }

    #[test]
    fn alternation_feasibility() {
        assert!(alternation_feasible(&[1, -2, 3], 0));
        assert!(!alternation_feasible(&[-1], 5));
        assert!(alternation_feasible(&[-2], 1));
        assert!(!alternation_feasible(&[1, 2], 0));
        assert!(alternation_feasible(&[1, 3], 1));
        assert!(!alternation_feasible(&[1, 2], 1));
    }

    /// Every comparable pair by direct enumeration, independent of the
    /// superset walk.
    fn fan_conditions_oracle(table: &[i32], n: u32) -> bool {
        let size = 3u64.pow(n);
        (1..size).all(|a| {
            let x = SignedVector::from_code(n, 2, a);
            table[x.negate().code() as usize] == -table[a as usize]
                && (1..size).all(|b| {
                    !x.is_subset_of(&SignedVector::from_code(n, 2, b)) || table[a as usize] != -table[b as usize]
                })
        })
    }

    #[test]
    fn fan_labeling_satisfies_hypotheses() {
        for (n, k, s) in [(6, 2, 3), (7, 2, 3), (6, 2, 2), (7, 3, 2)] {
            let g = build(&ParamSet::path(n, k, 2, s), &Budget::default()).unwrap();
            let mut colorings = vec![min_element_coloring(&g).unwrap()];
            colorings.extend(random_greedy_colorings(&g, 3, 11));
            for c in colorings {
                let lambda = FanLabeling::new(&g, &c).unwrap();
                let table = lambda.table(&Budget::default()).unwrap();
                assert_eq!(verify_fan_antipodal(&table, n, lambda.m()).unwrap(), None);
                assert_eq!(verify_fan_complementary(&table, n, &Budget::default()).unwrap(), None);
                if n <= 6 {
                    assert!(fan_conditions_oracle(&table, n));
                }
            }
        }
    }

    #[test]
    fn fan_chain_decodes_to_witness() {
        let (g, c) = meunier(6, 2, 2, 3);
        let lambda = FanLabeling::new(&g, &c).unwrap();
        let table = lambda.table(&Budget::default()).unwrap();
        let ChainSearch::Found(chain) = extract_fan_chain(&table, 6, &Budget::default()).unwrap() else {
            panic!()
        };
        chain.check(6).unwrap();
        let w = colorful_from_fan(&chain, &lambda).unwrap();
        w.check(&g, &c, 3).unwrap();
        let WitnessSearch::Found(brute) = find_colorful_bipartite_bruteforce(&g, &c, 3, &Budget::default()).unwrap()
        else {
            panic!()
        };
        brute.check(&g, &c, 3).unwrap();
    }

    #[test]
    fn fan_chain_on_optimal_and_random_colorings() {
        let g = build(&ParamSet::path(7, 2, 2, 3), &Budget::default()).unwrap();
        let best = chromatic_number(&g, &SolverConfig::default()).unwrap().witness;
        let mut colorings = vec![best];
        colorings.extend(random_greedy_colorings(&g, 10, 5));
        for c in colorings {
            let lambda = FanLabeling::new(&g, &c).unwrap();
            let table = lambda.table(&Budget::default()).unwrap();
            let ChainSearch::Found(chain) = extract_fan_chain(&table, 7, &Budget::default()).unwrap() else {
                panic!()
            };
            chain.check(7).unwrap();
            colorful_from_fan(&chain, &lambda).unwrap().check(&g, &c, 4).unwrap();
        }
    }

    #[test]
    fn single_vertex_witness_from_fan() {
        let (g, c) = meunier(4, 2, 2, 3);
        assert_eq!(stable_subsets(4, 2, 3, Mode::Path).len(), 1);
        let lambda = FanLabeling::new(&g, &c).unwrap();
        let table = lambda.table(&Budget::default()).unwrap();
        let ChainSearch::Found(chain) = extract_fan_chain(&table, 4, &Budget::default()).unwrap() else {
            panic!()
        };
        let w = colorful_from_fan(&chain, &lambda).unwrap();
        assert_eq!((w.side_a.len(), w.side_b.len()), (1, 0));
        w.check(&g, &c, 1).unwrap();
    }
}
