//! Subsets of the ground set `[n] = {1, …, n}` and the two stability notions.
//!
//! A `k`-subset is *almost `s`-stable* when any two of its elements are at
//! distance at least `s` on the path `1 – 2 – … – n`, and *`s`-stable* when the
//! same holds on the `n`-cycle, i.e. `s ≤ |i − j| ≤ n − s` for distinct
//! elements. [`Mode::Path`] selects the former, [`Mode::Cycle`] the latter.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{binomial, Error, Result};

/// Largest supported ground set.
pub const MAX_GROUND: u32 = 64;

/// A subset of `[n]` stored as a bit vector; element `i` lives in bit `i − 1`.
///
/// The derived ordering compares the raw bit vectors, which is the
/// colexicographic order on subsets (largest element decides first).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Builds a subset from 1-based elements. Panics on 0 or elements above 64.
    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Self {
        let mut bits = 0u64;
        for e in elements {
            assert!((1..=MAX_GROUND).contains(&e), "element {e} outside 1..=64");
            bits |= 1 << (e - 1);
        }
        Subset(bits)
    }

    /// Fallible variant of [`Subset::from_elements`] bounded by `n`.
    pub fn try_from_elements(n: u32, elements: &[u32]) -> Result<Self> {
        let mut bits = 0u64;
        for &e in elements {
            if e == 0 || e > n || e > MAX_GROUND {
                return Err(Error::Malformed(format!("element {e} outside [1, {n}]")));
            }
            if bits & (1 << (e - 1)) != 0 {
                return Err(Error::Malformed(format!("element {e} repeated")));
            }
            bits |= 1 << (e - 1);
        }
        Ok(Subset(bits))
    }

    /// The full ground set `[n]`.
    pub fn full(n: u32) -> Self {
        debug_assert!(n <= MAX_GROUND);
        if n == 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(e: u32) -> Self {
        Subset::from_elements([e])
    }

    pub const fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: u32) -> bool {
        (1..=MAX_GROUND).contains(&e) && self.0 & (1 << (e - 1)) != 0
    }

    /// Smallest element, or 0 for the empty set.
    pub const fn min(self) -> u32 {
        if self.0 == 0 {
            0
        } else {
            self.0.trailing_zeros() + 1
        }
    }

    /// Largest element, with `max(∅) = 0`.
    pub const fn max(self) -> u32 {
        64 - self.0.leading_zeros()
    }

    pub const fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    pub const fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub const fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub const fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn insert(&mut self, e: u32) {
        *self = self.union(Subset::singleton(e));
    }

    /// Elements in increasing order.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.elements().collect()
    }

    /// Cyclic shift `i ↦ i mod n + 1` on `[n]`.
    pub fn rotate(self, n: u32) -> Subset {
        Subset::from_elements(self.elements().map(|i| i % n + 1))
    }

    /// Reflection `i ↦ n + 1 − i` on `[n]`.
    pub fn reflect(self, n: u32) -> Subset {
        Subset::from_elements(self.elements().map(|i| n + 1 - i))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Subset {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elements())
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let elements = Vec::<u32>::deserialize(deserializer)?;
        Subset::try_from_elements(MAX_GROUND, &elements).map_err(serde::de::Error::custom)
    }
}

/// Iterator over the elements of a [`Subset`], ascending.
#[derive(Debug, Clone)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() + 1;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// Which distance the stability condition is measured on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// The `n`-cycle: `s`-stable subsets.
    Cycle,
    /// The `n`-path: almost `s`-stable subsets.
    Path,
}

impl Mode {
    pub const ALL: [Mode; 2] = [Mode::Path, Mode::Cycle];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Cycle => "cycle",
            Mode::Path => "path",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cycle" | "stable" => Ok(Mode::Cycle),
            "path" | "almost" => Ok(Mode::Path),
            other => Err(Error::InvalidParams(format!("unknown mode {other:?}"))),
        }
    }
}

/// Parameters of a Kneser hypergraph family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParamSet {
    /// Ground set size.
    pub n: u32,
    /// Subset size.
    pub k: u32,
    /// Uniformity of the hypergraph.
    pub r: u32,
    /// Stability gap.
    pub s: u32,
    pub mode: Mode,
}

impl ParamSet {
    pub fn new(n: u32, k: u32, r: u32, s: u32, mode: Mode) -> Self {
        ParamSet { n, k, r, s, mode }
    }

    /// Shorthand for an almost `s`-stable family.
    pub fn path(n: u32, k: u32, r: u32, s: u32) -> Self {
        ParamSet::new(n, k, r, s, Mode::Path)
    }

    /// Shorthand for an `s`-stable family.
    pub fn cycle(n: u32, k: u32, r: u32, s: u32) -> Self {
        ParamSet::new(n, k, r, s, Mode::Cycle)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.k == 0 || self.s == 0 {
            return Err(Error::InvalidParams(format!(
                "n, k and s must be positive (got n={}, k={}, s={})",
                self.n, self.k, self.s
            )));
        }
        if self.r < 2 {
            return Err(Error::InvalidParams(format!("r must be at least 2 (got {})", self.r)));
        }
        if self.n > MAX_GROUND {
            return Err(Error::InvalidParams(format!(
                "n = {} exceeds the supported ground size {MAX_GROUND}",
                self.n
            )));
        }
        Ok(())
    }

    /// `n ≥ max(r, s)·k`, the standing assumption for the hypergraph families.
    pub fn meets_standing_hypothesis(&self) -> bool {
        self.n >= self.r.max(self.s) * self.k
    }

    /// Cache key `n-k-r-s-mode`.
    pub fn key(&self) -> String {
        format!("{}-{}-{}-{}-{}", self.n, self.k, self.r, self.s, self.mode)
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} k={} r={} s={} mode={}",
            self.n, self.k, self.r, self.s, self.mode
        )
    }
}

/// Whether every pair of distinct elements of `set` is `s` apart on the path
/// (and, for [`Mode::Cycle`], also on the `n`-cycle).
pub fn is_stable(set: Subset, n: u32, s: u32, mode: Mode) -> bool {
    let mut prev: Option<u32> = None;
    for e in set.elements() {
        if let Some(p) = prev {
            if e - p < s {
                return false;
            }
        }
        prev = Some(e);
    }
    match mode {
        Mode::Path => true,
        // the widest pair is (min, max)
        Mode::Cycle => set.len() < 2 || set.max() - set.min() + s <= n,
    }
}

/// All `k`-subsets of `[n]` passing [`is_stable`], in lexicographic order of
/// their sorted element lists.
pub fn stable_subsets(n: u32, k: u32, s: u32, mode: Mode) -> Vec<Subset> {
    let mut out = Vec::new();
    if k == 0 || k > n || n > MAX_GROUND {
        return out;
    }
    let mut stack = Vec::with_capacity(k as usize);
    extend_stable(n, k, s.max(1), mode, 1, &mut stack, &mut out);
    out
}

fn extend_stable(n: u32, k: u32, s: u32, mode: Mode, from: u32, stack: &mut Vec<u32>, out: &mut Vec<Subset>) {
    if stack.len() as u32 == k {
        let set = Subset::from_elements(stack.iter().copied());
        if mode == Mode::Path || is_stable(set, n, s, mode) {
            out.push(set);
        }
        return;
    }
    let remaining = k - stack.len() as u32 - 1;
    // the remaining elements need (remaining · s) room after e
    let last = match n.checked_sub(remaining * s) {
        Some(l) => l,
        None => return,
    };
    for e in from..=last {
        stack.push(e);
        extend_stable(n, k, s, mode, e + s, stack, out);
        stack.pop();
    }
}

/// [`stable_subsets`] for the family described by `params`.
pub fn enumerate_stable(params: &ParamSet) -> Vec<Subset> {
    stable_subsets(params.n, params.k, params.s, params.mode)
}

/// Number of stable `k`-subsets, by closed form.
///
/// Path: `C(n − (s−1)(k−1), k)`. Cycle: `n/k · C(n − (s−1)k − 1, k − 1)`
/// (zero when `n < sk`).
pub fn count_stable(params: &ParamSet) -> u128 {
    let (n, k, s) = (params.n as i64, params.k as i64, params.s.max(1) as i64);
    if k == 0 || k > n {
        return 0;
    }
    match params.mode {
        Mode::Path => {
            let top = n - (s - 1) * (k - 1);
            if top < k {
                0
            } else {
                binomial(top as u64, k as u64)
            }
        }
        Mode::Cycle => {
            if k == 1 {
                return n as u128;
            }
            let top = n - (s - 1) * k - 1;
            if top < k - 1 {
                0
            } else {
                n as u128 * binomial(top as u64, (k - 1) as u64) / k as u128
            }
        }
    }
}

/// Size of the largest almost `s`-stable subset of `set` (greedy from the left).
pub fn max_stable_size(set: Subset, s: u32) -> u32 {
    let mut count = 0;
    let mut next_allowed = 0u32;
    for e in set.elements() {
        if e >= next_allowed {
            count += 1;
            next_allowed = e + s;
        }
    }
    count
}

/// The colexicographically largest almost `s`-stable `k`-subset of `set`,
/// taken greedily from the top.
pub fn colex_max_stable(set: Subset, k: u32, s: u32) -> Option<Subset> {
    let mut picked = Subset::EMPTY;
    let mut count = 0;
    let mut limit = u32::MAX;
    let mut rest = set.bits();
    while rest != 0 && count < k {
        let e = 64 - rest.leading_zeros();
        rest &= !(1u64 << (e - 1));
        if e <= limit {
            picked.insert(e);
            count += 1;
            limit = e.saturating_sub(s);
        }
    }
    (count == k).then_some(picked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(e: &[u32]) -> Subset {
        Subset::from_elements(e.iter().copied())
    }

    /// All k-subsets of [n] by brute force over bitmasks, lex-sorted.
    fn brute_family(n: u32, k: u32, s: u32, mode: Mode) -> Vec<Subset> {
        let mut out: Vec<Subset> = (0u64..1 << n)
            .map(Subset::from_bits)
            .filter(|x| x.len() == k)
            .filter(|x| {
                let v = x.to_vec();
                v.iter().enumerate().all(|(i, &a)| {
                    v[i + 1..].iter().all(|&b| {
                        let d = a.abs_diff(b);
                        d >= s && (mode == Mode::Path || d + s <= n)
                    })
                })
            })
            .collect();
        out.sort_by_key(|x| x.to_vec());
        out
    }

    #[test]
    fn subset_basics() {
        let x = set(&[2, 5, 9]);
        assert_eq!(x.len(), 3);
        assert_eq!(x.min(), 2);
        assert_eq!(x.max(), 9);
        assert_eq!(Subset::EMPTY.max(), 0);
        assert_eq!(x.to_vec(), vec![2, 5, 9]);
        assert_eq!(x.to_string(), "{2,5,9}");
        assert!(set(&[2, 9]).is_subset_of(x));
        assert!(x.is_disjoint(set(&[1, 3])));
        assert_eq!(set(&[3, 6]).rotate(6), set(&[4, 1]));
        assert_eq!(set(&[1, 4]).reflect(6), set(&[6, 3]));
        assert_eq!(Subset::full(64).len(), 64);
    }

    #[test]
    fn stability_examples() {
        assert!(is_stable(set(&[1, 4]), 6, 3, Mode::Path));
        assert!(!is_stable(set(&[1, 4]), 4, 2, Mode::Cycle));
        assert!(is_stable(set(&[2]), 6, 5, Mode::Path));
        assert!(is_stable(set(&[2]), 6, 5, Mode::Cycle));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            stable_subsets(4, 2, 2, Mode::Path),
            vec![set(&[1, 3]), set(&[1, 4]), set(&[2, 4])]
        );
        assert_eq!(stable_subsets(4, 2, 2, Mode::Cycle), vec![set(&[1, 3]), set(&[2, 4])]);
        for mode in Mode::ALL {
            let all = stable_subsets(5, 1, 3, mode);
            assert_eq!(all, (1..=5).map(Subset::singleton).collect::<Vec<_>>());
        }
        assert_eq!(stable_subsets(3, 2, 2, Mode::Path), vec![set(&[1, 3])]);
        assert!(stable_subsets(3, 4, 1, Mode::Path).is_empty());
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_stable(&ParamSet::path(4, 2, 2, 2)), 3);
        assert_eq!(count_stable(&ParamSet::path(6, 2, 2, 3)), 6);
        assert_eq!(count_stable(&ParamSet::cycle(6, 2, 2, 3)), 3);
        assert_eq!(
            stable_subsets(6, 2, 3, Mode::Cycle),
            vec![set(&[1, 4]), set(&[2, 5]), set(&[3, 6])]
        );
    }

    #[test]
    fn enumeration_matches_brute_force_and_closed_form() {
        for n in 1..=14 {
            for k in 1..=4 {
                for s in 1..=4 {
                    for mode in Mode::ALL {
                        let fast = stable_subsets(n, k, s, mode);
                        let slow = brute_family(n, k, s, mode);
                        assert_eq!(fast, slow, "n={n} k={k} s={s} {mode}");
                        let p = ParamSet::new(n, k, 2, s, mode);
                        assert_eq!(count_stable(&p), slow.len() as u128, "{p}");
                    }
                }
            }
        }
    }

    #[test]
    fn greedy_helpers_match_enumeration() {
        for bits in 1u64..1 << 10 {
            let x = Subset::from_bits(bits);
            for s in 1..=4 {
                let best = (1..=x.len())
                    .rev()
                    .find(|&q| stable_subsets(10, q, s, Mode::Path).iter().any(|t| t.is_subset_of(x)))
                    .unwrap_or(0);
                assert_eq!(max_stable_size(x, s), best, "{x} s={s}");
                for k in 1..=3 {
                    let colex = stable_subsets(10, k, s, Mode::Path)
                        .into_iter()
                        .filter(|t| t.is_subset_of(x))
                        .max();
                    assert_eq!(colex_max_stable(x, k, s), colex, "{x} k={k} s={s}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn stability_nests(bits in 1u64..(1 << 12), s in 1u32..5) {
            let x = Subset::from_bits(bits);
            let n = 12;
            if is_stable(x, n, s, Mode::Cycle) {
                prop_assert!(is_stable(x, n, s, Mode::Path));
            }
            for mode in Mode::ALL {
                if is_stable(x, n, s + 1, mode) {
                    prop_assert!(is_stable(x, n, s, mode));
                }
            }
        }

        #[test]
        fn rotation_preserves_cycle_stability(bits in 1u64..(1 << 10), s in 1u32..4) {
            let x = Subset::from_bits(bits);
            prop_assert_eq!(is_stable(x, 10, s, Mode::Cycle), is_stable(x.rotate(10), 10, s, Mode::Cycle));
        }
    }
}
