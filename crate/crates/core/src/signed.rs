//! Signed vectors: elements of `(Z_p ∪ {0})^n`.
//!
//! Coordinate `i` of a signed vector is either `0` or `ω^j` for some
//! `j ∈ [p]`; equivalently the vector is the `p`-tuple of pairwise disjoint
//! parts `X_j = {i : x_i = ω^j}`. For `p = 2` the parts are read as
//! `(X⁺, X⁻) = (X_1, X_2)`.
//!
//! Every vector has a *code*, its coordinates read as base-`(p+1)` digits
//! (digit `0` for a zero coordinate, `j` for `ω^j`, coordinate 1 least
//! significant). Enumeration follows code order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::stable::{Subset, MAX_GROUND};
use crate::{Budget, Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedVector {
    n: u32,
    parts: Vec<Subset>,
}

impl SignedVector {
    /// Builds a vector from its parts `X_1, …, X_p`.
    pub fn new(n: u32, parts: Vec<Subset>) -> Result<Self> {
        if parts.len() < 2 {
            return Err(Error::InvalidParams("a signed vector needs p ≥ 2 parts".into()));
        }
        if n == 0 || n > MAX_GROUND {
            return Err(Error::InvalidParams(format!("ground size {n} out of range")));
        }
        let ground = Subset::full(n);
        let mut seen = Subset::EMPTY;
        for part in &parts {
            if !part.is_subset_of(ground) {
                return Err(Error::Malformed(format!("part {part} not inside [{n}]")));
            }
            if !part.is_disjoint(seen) {
                return Err(Error::Malformed("parts of a signed vector must be disjoint".into()));
            }
            seen = seen.union(*part);
        }
        Ok(SignedVector { n, parts })
    }

    /// `p = 2` constructor from `(X⁺, X⁻)` given as element lists.
    pub fn pm(n: u32, plus: &[u32], minus: &[u32]) -> Result<Self> {
        SignedVector::new(
            n,
            vec![
                Subset::try_from_elements(n, plus)?,
                Subset::try_from_elements(n, minus)?,
            ],
        )
    }

    /// Builds a vector from coordinates in `{0, 1, …, p}`.
    pub fn from_coords(p: u32, coords: &[u32]) -> Result<Self> {
        let n = coords.len() as u32;
        let mut parts = vec![Subset::EMPTY; p as usize];
        for (i, &c) in coords.iter().enumerate() {
            if c > p {
                return Err(Error::Malformed(format!("coordinate {c} exceeds p = {p}")));
            }
            if c > 0 {
                parts[c as usize - 1].insert(i as u32 + 1);
            }
        }
        SignedVector::new(n, parts)
    }

    pub fn from_code(n: u32, p: u32, code: u64) -> Self {
        let radix = p as u64 + 1;
        let mut parts = vec![Subset::EMPTY; p as usize];
        let mut rest = code;
        for i in 1..=n {
            let digit = (rest % radix) as usize;
            rest /= radix;
            if digit > 0 {
                parts[digit - 1].insert(i);
            }
        }
        SignedVector { n, parts }
    }

    pub fn code(&self) -> u64 {
        let radix = self.p() as u64 + 1;
        let mut code = 0u64;
        for i in (1..=self.n).rev() {
            code = code * radix + self.coord(i) as u64;
        }
        code
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.parts.len() as u32
    }

    /// The part `X_j` for `j ∈ [p]`.
    pub fn part(&self, j: u32) -> Subset {
        self.parts[j as usize - 1]
    }

    pub fn parts(&self) -> &[Subset] {
        &self.parts
    }

    /// `X⁺` of a `p = 2` vector.
    pub fn plus(&self) -> Subset {
        self.parts[0]
    }

    /// `X⁻` of a `p = 2` vector.
    pub fn minus(&self) -> Subset {
        self.parts[1]
    }

    /// Coordinate `i` as `0` or the exponent `j` of `ω^j`.
    pub fn coord(&self, i: u32) -> u32 {
        self.parts
            .iter()
            .position(|part| part.contains(i))
            .map_or(0, |j| j as u32 + 1)
    }

    pub fn coords(&self) -> Vec<u32> {
        (1..=self.n).map(|i| self.coord(i)).collect()
    }

    /// Union of the parts.
    pub fn support(&self) -> Subset {
        self.parts.iter().fold(Subset::EMPTY, |acc, &x| acc.union(x))
    }

    /// Number of nonzero coordinates, `|X|`.
    pub fn size(&self) -> u32 {
        self.support().len()
    }

    pub fn is_zero(&self) -> bool {
        self.support().is_empty()
    }

    /// Largest nonzero coordinate, `max(X)`.
    pub fn max(&self) -> u32 {
        self.support().max()
    }

    /// Index `j` of the part containing `max(X)`.
    pub fn max_part(&self) -> Option<u32> {
        let m = self.max();
        (m > 0).then(|| self.coord(m))
    }

    /// `ω^g · X`: every nonzero coordinate `ω^j` becomes `ω^(j+g)`.
    pub fn act(&self, g: u32) -> SignedVector {
        let p = self.parts.len();
        let mut parts = vec![Subset::EMPTY; p];
        for (j, &part) in self.parts.iter().enumerate() {
            parts[(j + g as usize) % p] = part;
        }
        SignedVector { n: self.n, parts }
    }

    /// `−X` for `p = 2`.
    pub fn negate(&self) -> SignedVector {
        self.act(1)
    }

    /// Componentwise order: `X_j ⊆ Y_j` for every `j`.
    pub fn is_subset_of(&self, other: &SignedVector) -> bool {
        self.parts.len() == other.parts.len() && self.parts.iter().zip(&other.parts).all(|(a, b)| a.is_subset_of(*b))
    }
}

impl fmt::Debug for SignedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, part) in self.parts.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{part}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for SignedVector {
    /// Sign-vector notation for `p = 2` (`+`, `-`, `0`), digits otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.n {
            let c = self.coord(i);
            if self.p() == 2 {
                f.write_str(["0", "+", "-"][c as usize])?;
            } else {
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct SignedVectorRepr {
    n: u32,
    parts: Vec<Subset>,
}

impl Serialize for SignedVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SignedVectorRepr {
            n: self.n,
            parts: self.parts.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SignedVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SignedVectorRepr::deserialize(deserializer)?;
        SignedVector::new(repr.n, repr.parts).map_err(serde::de::Error::custom)
    }
}

/// An element of `Z_p × [m]`: the sign `ω^sign` and a positive index.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZpLabel {
    /// Exponent `j ∈ [p]` of `ω^j`.
    pub sign: u32,
    pub index: u32,
}

impl ZpLabel {
    pub fn new(sign: u32, index: u32) -> Self {
        ZpLabel { sign, index }
    }

    /// `ω^g · (ω^j, i) = (ω^(j+g), i)`.
    pub fn act(self, g: u32, p: u32) -> ZpLabel {
        ZpLabel {
            sign: (self.sign - 1 + g) % p + 1,
            index: self.index,
        }
    }
}

impl fmt::Display for ZpLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(ω^{}, {})", self.sign, self.index)
    }
}

/// `(p+1)^n`, or `None` on overflow.
pub(crate) fn space_size(n: u32, p: u32) -> Option<u64> {
    (p as u64 + 1).checked_pow(n)
}

/// Every nonzero vector of `(Z_p ∪ {0})^n` exactly once, in code order.
pub fn enumerate_signed_vectors(n: u32, p: u32, budget: &Budget) -> Result<SignedVectors> {
    check_space(n, p)?;
    let total = space_size(n, p).ok_or_else(|| too_large(n, p))?;
    budget.check_enumeration("signed vectors", total as u128 - 1)?;
    Ok(SignedVectors {
        n,
        p,
        next: 1,
        end: total,
    })
}

fn check_space(n: u32, p: u32) -> Result<()> {
    if n == 0 || n > MAX_GROUND {
        return Err(Error::InvalidParams(format!("ground size {n} out of range")));
    }
    if p < 2 {
        return Err(Error::InvalidParams(format!("p must be at least 2 (got {p})")));
    }
    Ok(())
}

fn too_large(n: u32, p: u32) -> Error {
    Error::BudgetExceeded {
        what: "signed vectors",
        requested: (p as u128 + 1).saturating_pow(n),
        limit: u64::MAX,
    }
}

#[derive(Debug, Clone)]
pub struct SignedVectors {
    n: u32,
    p: u32,
    next: u64,
    end: u64,
}

impl Iterator for SignedVectors {
    type Item = SignedVector;

    fn next(&mut self) -> Option<SignedVector> {
        if self.next >= self.end {
            return None;
        }
        let v = SignedVector::from_code(self.n, self.p, self.next);
        self.next += 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

/// Number of chains `X⁽¹⁾ ⊆ … ⊆ X⁽ᴸ⁾` with `X⁽¹⁾ ≠ 0`.
///
/// Each coordinate is either zero throughout or becomes `ω^j` at one of the
/// `L` positions and stays there, giving `(1+Lp)^n − (1+(L−1)p)^n`.
pub fn chain_count(n: u32, p: u32, len: u32) -> u128 {
    let all = (1 + len as u128 * p as u128).saturating_pow(n);
    let zero_start = (1 + (len as u128 - 1) * p as u128).saturating_pow(n);
    all - zero_start
}

/// All chains `X⁽¹⁾ ⊆ X⁽²⁾ ⊆ … ⊆ X⁽ᴸ⁾` of nonzero vectors, repetitions allowed.
pub fn chains(n: u32, p: u32, len: u32, budget: &Budget) -> Result<Chains> {
    check_space(n, p)?;
    if len == 0 {
        return Err(Error::InvalidParams("chain length must be positive".into()));
    }
    budget.check_enumeration("chains", chain_count(n, p, len))?;
    Ok(Chains {
        n,
        p,
        len,
        options: 1 + len * p,
        state: vec![0; n as usize],
        done: false,
    })
}

/// Odometer over per-coordinate options. Option 0 keeps the coordinate at
/// zero; option `1 + e·p + (j−1)` sets it to `ω^j` from chain position `e`.
#[derive(Debug, Clone)]
pub struct Chains {
    n: u32,
    p: u32,
    len: u32,
    options: u32,
    state: Vec<u32>,
    done: bool,
}

impl Chains {
    fn advance(&mut self) -> bool {
        for digit in self.state.iter_mut() {
            *digit += 1;
            if *digit < self.options {
                return true;
            }
            *digit = 0;
        }
        false
    }

    fn starts_nonzero(&self) -> bool {
        self.state.iter().any(|&o| o > 0 && (o - 1) / self.p == 0)
    }

    fn materialize(&self) -> Vec<SignedVector> {
        (0..self.len)
            .map(|pos| {
                let mut parts = vec![Subset::EMPTY; self.p as usize];
                for (i, &o) in self.state.iter().enumerate() {
                    if o == 0 {
                        continue;
                    }
                    let entry = (o - 1) / self.p;
                    let j = (o - 1) % self.p;
                    if entry <= pos {
                        parts[j as usize].insert(i as u32 + 1);
                    }
                }
                SignedVector { n: self.n, parts }
            })
            .collect()
    }
}

impl Iterator for Chains {
    type Item = Vec<SignedVector>;

    fn next(&mut self) -> Option<Vec<SignedVector>> {
        while !self.done {
            if !self.advance() {
                self.done = true;
                return None;
            }
            if self.starts_nonzero() {
                return Some(self.materialize());
            }
        }
        None
    }
}
