//! Sets of lengths as bitsets, and a memoized oracle computing `L(B)` and
//! `min L(B)` without listing factorizations.

use crate::atoms::AtomSet;
use crate::sequence::mv;
use dashmap::DashMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;

/// A finite set of nonnegative integers.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LengthSet {
    words: Vec<u64>,
}

impl LengthSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(k: u64) -> Self {
        let mut s = Self::new();
        s.insert(k);
        s
    }

    pub fn interval(lo: u64, hi: u64) -> Self {
        Self::from_iter(lo..=hi)
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, k: u64) {
        let w = (k / 64) as usize;
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << (k % 64);
    }

    pub fn contains(&self, k: u64) -> bool {
        self.words
            .get((k / 64) as usize)
            .is_some_and(|w| w >> (k % 64) & 1 == 1)
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first(&self) -> Option<u64> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i as u64 * 64 + w.trailing_zeros() as u64)
    }

    pub fn last(&self) -> Option<u64> {
        self.words
            .last()
            .map(|w| (self.words.len() as u64 - 1) * 64 + 63 - w.leading_zeros() as u64)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            (0..64)
                .filter(move |b| w >> b & 1 == 1)
                .map(move |b| i as u64 * 64 + b)
        })
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }

    pub fn union_with(&mut self, other: &LengthSet) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// `{x + k : x ∈ self}`.
    pub fn shifted(&self, k: u64) -> LengthSet {
        if self.is_empty() {
            return LengthSet::new();
        }
        let (ws, bs) = ((k / 64) as usize, k % 64);
        let mut words = vec![0u64; self.words.len() + ws + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + ws] |= w << bs;
            if bs > 0 {
                words[i + ws + 1] |= w >> (64 - bs);
            }
        }
        let mut s = LengthSet { words };
        s.trim();
        s
    }

    /// Sumset `{a + b}`.
    pub fn sumset(&self, other: &LengthSet) -> LengthSet {
        let mut out = LengthSet::new();
        for b in other.iter() {
            out.union_with(&self.shifted(b));
        }
        out
    }

    /// Successive differences `Δ(L)`.
    pub fn deltas(&self) -> BTreeSet<u64> {
        let v = self.to_vec();
        v.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Whether the set is `{lo, lo+1, …, hi}`.
    pub fn is_interval(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(a), Some(b)) => self.len() as u64 == b - a + 1,
            _ => true,
        }
    }
}

impl fmt::Debug for LengthSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<u64> for LengthSet {
    fn from_iter<I: IntoIterator<Item = u64>>(it: I) -> Self {
        let mut s = Self::new();
        for k in it {
            s.insert(k);
        }
        s
    }
}

impl fmt::Display for LengthSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for LengthSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LengthSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(LengthSet::from_iter(Vec::<u64>::deserialize(d)?))
    }
}

/// Memoized `L(B)` and `min L(B)` over a fixed atom set, safe to share
/// between threads.
///
/// Every factorization of `B` uses an atom containing the first element of
/// `B`, so each step branches only over those atoms.
pub struct LengthOracle<'a> {
    atoms: &'a AtomSet,
    full: DashMap<Box<[u32]>, LengthSet>,
    least: DashMap<Box<[u32]>, u32>,
}

const NONE: u32 = u32::MAX;

impl<'a> LengthOracle<'a> {
    pub fn new(atoms: &'a AtomSet) -> Self {
        LengthOracle {
            atoms,
            full: DashMap::new(),
            least: DashMap::new(),
        }
    }

    pub fn atoms(&self) -> &AtomSet {
        self.atoms
    }

    /// `L(B)`; empty if `B` is not a product of atoms.
    pub fn lengths(&self, b: &[u32]) -> LengthSet {
        let Some(g) = mv::first_nonzero(b) else {
            return LengthSet::singleton(0);
        };
        if let Some(v) = self.full.get(b) {
            return v.clone();
        }
        let mut out = LengthSet::new();
        for &u in self.atoms.containing(g) {
            let a = self.atoms.get(u);
            if mv::divides(a, b) {
                out.union_with(&self.lengths(&mv::sub(b, a)).shifted(1));
            }
        }
        self.full.insert(b.into(), out.clone());
        out
    }

    /// `min L(B)`, or `None` if `B` has no factorization.
    pub fn min_length(&self, b: &[u32]) -> Option<u32> {
        let Some(g) = mv::first_nonzero(b) else {
            return Some(0);
        };
        if let Some(v) = self.least.get(b) {
            return (*v != NONE).then_some(*v);
        }
        let mut best = NONE;
        for &u in self.atoms.containing(g) {
            let a = self.atoms.get(u);
            if mv::divides(a, b) {
                if let Some(m) = self.min_length(&mv::sub(b, a)) {
                    best = best.min(m + 1);
                }
            }
        }
        self.least.insert(b.into(), best);
        (best != NONE).then_some(best)
    }
}
