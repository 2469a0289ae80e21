//! Explicit colorings of Kneser hypergraphs and the properness check.

use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::kneser::{build, KneserHypergraph};
use crate::stable::{is_stable, Mode, ParamSet, Subset};
use crate::{ceil_div, Budget, Error, Result};

/// A total map from vertex index to a color in `[palette]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    colors: Vec<u32>,
    palette: u32,
}

impl Coloring {
    /// Checks `1 ≤ c ≤ palette` for every entry.
    pub fn new(colors: Vec<u32>, palette: u32) -> Result<Self> {
        if let Some(bad) = colors.iter().find(|&&c| c == 0 || c > palette) {
            return Err(Error::Malformed(format!("color {bad} outside [1, {palette}]")));
        }
        Ok(Coloring { colors, palette })
    }

    /// Palette taken as the largest color present.
    pub fn from_colors(colors: Vec<u32>) -> Result<Self> {
        let palette = colors.iter().copied().max().unwrap_or(0);
        Coloring::new(colors, palette)
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn palette(&self) -> u32 {
        self.palette
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of distinct colors actually used.
    pub fn distinct(&self) -> usize {
        let mut seen: Vec<u32> = self.colors.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// The JSON export: a bare array of colors aligned with vertex order.
    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.colors)?)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        Coloring::from_colors(serde_json::from_str(text)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut text = self.to_json_string()?;
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Coloring::from_json_str(&std::fs::read_to_string(path)?)
    }
}

/// Outcome of [`verify_proper`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Properness {
    Proper,
    /// The lexicographically first monochromatic edge.
    Monochromatic(Vec<usize>),
}

impl Properness {
    pub fn is_proper(&self) -> bool {
        matches!(self, Properness::Proper)
    }
}

/// Checks that no edge of `hg` is monochromatic under `coloring`.
pub fn verify_proper(hg: &KneserHypergraph, coloring: &Coloring) -> Result<Properness> {
    if coloring.len() != hg.vertex_count() {
        return Err(Error::Malformed(format!(
            "coloring covers {} vertices, hypergraph has {}",
            coloring.len(),
            hg.vertex_count()
        )));
    }
    for e in hg.edges() {
        let first = coloring.color(e[0]);
        if e.iter().all(|&v| coloring.color(v) == first) {
            return Ok(Properness::Monochromatic(e.clone()));
        }
    }
    Ok(Properness::Proper)
}

/// `⌈(n − max(r,s)(k−1)) / (r−1)⌉`, the upper bound realised by the explicit
/// colorings below.
pub fn upper_bound(n: u32, k: u32, r: u32, s: u32) -> u32 {
    let top = n as i64 - r.max(s) as i64 * (k as i64 - 1);
    ceil_div(top, r as i64 - 1).max(0) as u32
}

/// Palette size of [`min_element_color`]: `⌈(n − s(k−1)) / (r−1)⌉`.
pub fn min_element_palette(params: &ParamSet) -> u32 {
    let top = params.n as i64 - params.s as i64 * (params.k as i64 - 1);
    ceil_div(top, params.r as i64 - 1).max(0) as u32
}

/// Color of an almost `s`-stable set when `r ≤ s`: `⌈min(S) / (r−1)⌉`.
pub fn min_element_color(set: Subset, params: &ParamSet) -> Result<u32> {
    let ParamSet { n, k, r, s, .. } = *params;
    if r > s {
        return Err(Error::Hypothesis(format!(
            "min-element coloring needs r ≤ s (got r={r}, s={s})"
        )));
    }
    if r < 2 {
        return Err(Error::InvalidParams("r must be at least 2".into()));
    }
    if set.len() != k || !is_stable(set, n, s, Mode::Path) || set.max() > n {
        return Err(Error::Malformed(format!(
            "{set} is not an almost {s}-stable {k}-subset of [{n}]"
        )));
    }
    Ok(ceil_div(set.min() as i64, r as i64 - 1) as u32)
}

/// [`min_element_color`] applied to every vertex of `hg`.
pub fn min_element_coloring(hg: &KneserHypergraph) -> Result<Coloring> {
    let params = hg.params();
    let colors = hg
        .vertices()
        .iter()
        .map(|&v| min_element_color(v, params))
        .collect::<Result<Vec<_>>>()?;
    Coloring::new(colors, min_element_palette(params))
}

/// Palette of [`classical_color`]: `⌈(n − r(k−1)) / (r−1)⌉`.
pub fn classical_palette(n: u32, k: u32, r: u32) -> u32 {
    let top = n as i64 - r as i64 * (k as i64 - 1);
    ceil_div(top, r as i64 - 1).max(1) as u32
}

/// Coloring of the full `KG^r(n,k)`: `min(⌈min(S)/(r−1)⌉, t)` with
/// `t = ⌈(n − r(k−1))/(r−1)⌉`. The last class holds every set inside
/// `[(t−1)(r−1)+1, n]`, which has fewer than `rk` elements.
pub fn classical_color(set: Subset, n: u32, k: u32, r: u32) -> u32 {
    let t = classical_palette(n, k, r);
    (ceil_div(set.min() as i64, r as i64 - 1) as u32).min(t)
}

/// [`classical_color`] on every vertex; valid for any stable subfamily too.
pub fn classical_coloring(hg: &KneserHypergraph) -> Result<Coloring> {
    let ParamSet { n, k, r, .. } = *hg.params();
    let colors = hg.vertices().iter().map(|&v| classical_color(v, n, k, r)).collect();
    Coloring::new(colors, classical_palette(n, k, r))
}

/// Best explicit coloring: min-element when `r ≤ s`, classical otherwise.
/// Stable sets are almost stable, so both rules apply to either mode.
pub fn explicit_coloring(hg: &KneserHypergraph) -> Result<Coloring> {
    let params = hg.params();
    if params.r <= params.s {
        min_element_coloring(hg)
    } else {
        classical_coloring(hg)
    }
}

/// Lifts a proper `t`-coloring of `KG^r(n,k)` (almost `s`-stable) to a
/// `t`-coloring of `KG^{r₁}(n̄,k)` with `n̄ = n + (r₁−r)t`.
///
/// Sets inside `[n]` keep their color; any other set `S` gets
/// `⌈(max(S) − n)/(r₁ − r)⌉`.
pub fn lift_coloring(
    base: &KneserHypergraph,
    coloring: &Coloring,
    r1: u32,
    budget: &Budget,
) -> Result<(KneserHypergraph, Coloring)> {
    let params = *base.params();
    if params.mode != Mode::Path {
        return Err(Error::Hypothesis("lifting applies to almost stable families".into()));
    }
    if r1 <= params.r {
        return Err(Error::InvalidParams(format!(
            "target uniformity r₁={r1} must exceed r={}",
            params.r
        )));
    }
    if params.s < r1 {
        return Err(Error::Hypothesis(format!(
            "lifting needs s ≥ r₁ (s={}, r₁={r1})",
            params.s
        )));
    }
    if coloring.len() != base.vertex_count() {
        return Err(Error::Malformed("coloring does not match the base hypergraph".into()));
    }
    let t = coloring.palette();
    let gap = r1 - params.r;
    let n_bar = params.n + gap * t;
    let lifted = build(&ParamSet::path(n_bar, params.k, r1, params.s), budget)?;
    let colors = lifted
        .vertices()
        .iter()
        .map(|&v| {
            if v.max() <= params.n {
                let i = base
                    .index_of(v)
                    .ok_or_else(|| Error::Inconsistent(format!("{v} missing from the base")))?;
                Ok(coloring.color(i))
            } else {
                Ok(ceil_div((v.max() - params.n) as i64, gap as i64) as u32)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((lifted, Coloring::new(colors, t)?))
}

/// First-fit greedy coloring along `order`.
pub fn greedy_coloring(hg: &KneserHypergraph, order: &[usize]) -> Coloring {
    let nv = hg.vertex_count();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (i, e) in hg.edges().iter().enumerate() {
        for &v in e {
            incident[v].push(i);
        }
    }
    let mut colors = vec![0u32; nv];
    for &v in order {
        let mut c = 1;
        'pick: loop {
            for &ei in &incident[v] {
                let e = &hg.edges()[ei];
                if e.iter().all(|&u| u == v || colors[u] == c) {
                    c += 1;
                    continue 'pick;
                }
            }
            break;
        }
        colors[v] = c;
    }
    Coloring::from_colors(colors).expect("greedy colors are positive")
}

/// `count` greedy colorings over uniformly shuffled vertex orders, seeded.
pub fn random_greedy_colorings(hg: &KneserHypergraph, count: usize, seed: u64) -> Vec<Coloring> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..hg.vertex_count()).collect();
    (0..count)
        .map(|_| {
            order.shuffle(&mut rng);
            greedy_coloring(hg, &order)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(e: &[u32]) -> Subset {
        Subset::from_elements(e.iter().copied())
    }

    fn graph(params: ParamSet) -> KneserHypergraph {
        build(&params, &Budget::default()).unwrap()
    }

    #[test]
    fn verify_examples() {
        let g = graph(ParamSet::path(4, 2, 2, 2));
        // vertices in order {1,3}, {1,4}, {2,4}
        let ok = Coloring::new(vec![1, 1, 2], 2).unwrap();
        assert_eq!(verify_proper(&g, &ok).unwrap(), Properness::Proper);
        let mono = Coloring::new(vec![1, 1, 1], 1).unwrap();
        assert_eq!(verify_proper(&g, &mono).unwrap(), Properness::Monochromatic(vec![0, 2]));

        let edgeless = graph(ParamSet::path(3, 2, 2, 2));
        let any = Coloring::new(vec![1], 1).unwrap();
        assert!(verify_proper(&edgeless, &any).unwrap().is_proper());

        let short = Coloring::new(vec![1, 2], 2).unwrap();
        assert!(verify_proper(&g, &short).is_err());
        assert!(Coloring::new(vec![0, 1], 2).is_err());
        assert!(Coloring::new(vec![3], 2).is_err());
    }

    #[test]
    fn first_violation_is_lexicographic() {
        let g = graph(ParamSet::path(6, 2, 2, 3));
        let mono = Coloring::new(vec![1; 6], 1).unwrap();
        assert_eq!(
            verify_proper(&g, &mono).unwrap(),
            Properness::Monochromatic(g.edges()[0].clone())
        );
    }

    #[test]
    fn min_element_examples() {
        let p = ParamSet::path(6, 2, 2, 3);
        assert_eq!(min_element_color(set(&[2, 6]), &p).unwrap(), 2);
        let p = ParamSet::path(9, 3, 3, 3);
        assert_eq!(min_element_color(set(&[1, 4, 7]), &p).unwrap(), 1);
        // min(S) = n − s(k−1) hits the top of the palette when r = 2
        let p = ParamSet::path(10, 3, 2, 3);
        let t = min_element_palette(&p);
        assert_eq!(t, 4);
        assert_eq!(min_element_color(set(&[4, 7, 10]), &p).unwrap(), t);
        assert!(min_element_color(set(&[1, 4]), &ParamSet::path(8, 2, 3, 2)).is_err());
    }

    #[test]
    fn min_element_coloring_is_proper_and_tight() {
        for n in 1..=12 {
            for k in 1..=3 {
                for s in 2..=4 {
                    for r in 2..=s {
                        if n < s * k {
                            continue;
                        }
                        let g = graph(ParamSet::path(n, k, r, s));
                        let c = min_element_coloring(&g).unwrap();
                        assert!(verify_proper(&g, &c).unwrap().is_proper(), "{}", g.params());
                        assert_eq!(c.distinct() as u32, min_element_palette(g.params()));
                        assert!(c.colors().iter().all(|&x| x <= c.palette()));
                    }
                }
            }
        }
    }

    #[test]
    fn classical_examples() {
        assert_eq!(classical_color(set(&[1, 2]), 5, 2, 2), 1);
        assert_eq!(classical_color(set(&[4, 5]), 5, 2, 2), 3);
        for (k, r) in [(2, 2), (3, 3), (2, 3)] {
            assert_eq!(classical_palette(r * k, k, r), 2);
        }
    }

    #[test]
    fn classical_coloring_is_proper() {
        for n in 2..=10 {
            for k in 1..=3 {
                for r in 2..=3 {
                    if n < r * k {
                        continue;
                    }
                    let g = graph(ParamSet::path(n, k, r, 1));
                    let c = classical_coloring(&g).unwrap();
                    assert!(verify_proper(&g, &c).unwrap().is_proper(), "{}", g.params());
                    assert!(c.colors().iter().all(|&x| x <= classical_palette(n, k, r)));
                }
            }
        }
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(upper_bound(6, 2, 2, 3), 3);
        assert_eq!(upper_bound(7, 2, 3, 2), 2);
        for s in 2..6 {
            for k in 2..4 {
                assert_eq!(upper_bound(s * k, k, 2, s), s);
            }
        }
    }

    #[test]
    fn lift_examples() {
        let b = Budget::default();
        let base = graph(ParamSet::path(6, 2, 2, 3));
        let c = min_element_coloring(&base).unwrap();
        assert_eq!(c.palette(), 3);
        let (lifted, f) = lift_coloring(&base, &c, 3, &b).unwrap();
        assert_eq!(lifted.params().n, 9);
        let color_of = |x: Subset| f.color(lifted.index_of(x).unwrap());
        assert_eq!(color_of(set(&[2, 5])), 2);
        assert_eq!(color_of(set(&[3, 9])), 3);
        assert_eq!(color_of(set(&[4, 8])), 2);
        assert!(verify_proper(&lifted, &f).unwrap().is_proper());
        assert!(lift_coloring(&base, &c, 2, &b).is_err());
    }

    #[test]
    fn lifting_preserves_properness() {
        let b = Budget::default();
        for s in 3..=4 {
            for k in 1..=2 {
                for n in s * k..=8 {
                    let base = graph(ParamSet::path(n, k, 2, s));
                    let c = min_element_coloring(&base).unwrap();
                    let (lifted, f) = lift_coloring(&base, &c, 3, &b).unwrap();
                    assert_eq!(lifted.params().n, n + c.palette());
                    assert!(verify_proper(&lifted, &f).unwrap().is_proper(), "n={n} k={k} s={s}");
                }
            }
        }
    }

    #[test]
    fn greedy_colorings_are_proper_and_seeded() {
        let g = graph(ParamSet::path(8, 2, 2, 2));
        let a = random_greedy_colorings(&g, 20, 5);
        let b = random_greedy_colorings(&g, 20, 5);
        assert_eq!(a, b);
        for c in &a {
            assert!(verify_proper(&g, c).unwrap().is_proper());
        }
        let h = graph(ParamSet::path(8, 2, 3, 2));
        for c in random_greedy_colorings(&h, 20, 1) {
            assert!(verify_proper(&h, &c).unwrap().is_proper());
        }
    }

    #[test]
    fn coloring_json_round_trip() {
        let c = Coloring::new(vec![1, 3, 2], 3).unwrap();
        let text = c.to_json_string().unwrap();
        assert_eq!(text, "[1,3,2]");
        assert_eq!(Coloring::from_json_str(&text).unwrap(), c);
    }
}
