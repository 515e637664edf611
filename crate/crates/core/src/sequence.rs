//! Alphabets (finite subsets of a group) and sequences (multisets) over them.

use crate::error::{Error, Result};
use crate::group::{parse_element, GroupElement, GroupSpec};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// A finite subset `G₀` of a group, stored in canonical (sorted) order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    group: GroupSpec,
    elements: Vec<GroupElement>,
}

impl Alphabet {
    /// Validates membership, rejects duplicates, and sorts.
    pub fn new(group: GroupSpec, mut elements: Vec<GroupElement>) -> Result<Self> {
        group.validate()?;
        for g in &elements {
            group.check(g)?;
        }
        elements.sort();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(w[0].to_string()));
        }
        Ok(Alphabet { group, elements })
    }

    /// Like [`Alphabet::new`] but silently merges duplicates.
    pub fn new_dedup(group: GroupSpec, mut elements: Vec<GroupElement>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        Self::new(group, elements)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.elements.binary_search(g).ok()
    }

    /// Whether `-G₀ = G₀`.
    pub fn is_symmetric(&self) -> bool {
        self.elements.iter().all(|g| {
            self.group
                .neg(g)
                .ok()
                .and_then(|n| self.index_of(&n))
                .is_some()
        })
    }

    /// Index of `-g` for every element, when present.
    pub fn negation_table(&self) -> Vec<Option<usize>> {
        self.elements
            .iter()
            .map(|g| self.group.neg(g).ok().and_then(|n| self.index_of(&n)))
            .collect()
    }

    /// The sub-alphabet on the given indices.
    pub fn restrict(&self, indices: &[usize]) -> Alphabet {
        let mut elements: Vec<GroupElement> =
            indices.iter().map(|&i| self.elements[i].clone()).collect();
        elements.sort();
        elements.dedup();
        Alphabet {
            group: self.group.clone(),
            elements,
        }
    }

    /// Sum `Σ mult[i]·g_i` computed with checked arithmetic.
    pub fn weighted_sum(&self, mult: &[u32]) -> Result<GroupElement> {
        let mut free = vec![0i64; self.group.free_rank];
        let mut tors = vec![0u128; self.group.torsion.len()];
        for (g, &k) in self.elements.iter().zip(mult) {
            if k == 0 {
                continue;
            }
            for (acc, &x) in free.iter_mut().zip(&g.free) {
                *acc = x
                    .checked_mul(k as i64)
                    .and_then(|t| acc.checked_add(t))
                    .ok_or(Error::Overflow("sequence sum"))?;
            }
            for ((acc, &x), &n) in tors.iter_mut().zip(&g.torsion).zip(&self.group.torsion) {
                *acc = (*acc + x as u128 * k as u128) % n as u128;
            }
        }
        Ok(GroupElement {
            free,
            torsion: tors.into_iter().map(|t| t as u64).collect(),
        })
    }
}

/// Helpers on raw multiplicity vectors, used in hot loops.
pub mod mv {
    pub fn len(a: &[u32]) -> u64 {
        a.iter().map(|&x| x as u64).sum()
    }

    pub fn divides(a: &[u32], b: &[u32]) -> bool {
        a.iter().zip(b).all(|(x, y)| x <= y)
    }

    pub fn add(a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn add_scaled(a: &mut [u32], b: &[u32], k: u32) {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y * k;
        }
    }

    /// `b - a`, assuming `a | b`.
    pub fn sub(b: &[u32], a: &[u32]) -> Vec<u32> {
        b.iter().zip(a).map(|(y, x)| y - x).collect()
    }

    pub fn min(a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| *x.min(y)).collect()
    }

    pub fn first_nonzero(a: &[u32]) -> Option<usize> {
        a.iter().position(|&x| x > 0)
    }

    /// All multiplicity vectors over `n` letters with total length in `1..=max_len`.
    pub fn multisets(n: usize, max_len: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i == cur.len() {
                if cur.iter().any(|&x| x > 0) {
                    out.push(cur.clone());
                }
                return;
            }
            for k in 0..=left {
                cur[i] = k;
                rec(i + 1, left - k, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, max_len, &mut cur, &mut out);
        out
    }
}

/// A finite multiset over an alphabet, stored as a multiplicity vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequence {
    alphabet: Arc<Alphabet>,
    mult: Vec<u32>,
}

impl Sequence {
    pub fn new(alphabet: Arc<Alphabet>, mult: Vec<u32>) -> Result<Self> {
        if mult.len() != alphabet.len() {
            return Err(Error::AlphabetMismatch);
        }
        Ok(Sequence { alphabet, mult })
    }

    pub fn empty(alphabet: Arc<Alphabet>) -> Self {
        let n = alphabet.len();
        Sequence {
            alphabet,
            mult: vec![0; n],
        }
    }

    /// From `(element, multiplicity)` pairs; elements must lie in the alphabet.
    pub fn from_pairs(alphabet: Arc<Alphabet>, pairs: &[(GroupElement, u32)]) -> Result<Self> {
        let mut mult = vec![0; alphabet.len()];
        for (g, k) in pairs {
            let i = alphabet
                .index_of(g)
                .ok_or_else(|| Error::InvalidElement(format!("{g} is not in the alphabet")))?;
            mult[i] += k;
        }
        Ok(Sequence { alphabet, mult })
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn mult(&self) -> &[u32] {
        &self.mult
    }

    pub fn into_mult(self) -> Vec<u32> {
        self.mult
    }

    pub fn len(&self) -> u64 {
        mv::len(&self.mult)
    }

    pub fn is_empty(&self) -> bool {
        self.mult.iter().all(|&k| k == 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.mult.len()).filter(|&i| self.mult[i] > 0).collect()
    }

    pub fn sigma(&self) -> Result<GroupElement> {
        self.alphabet.weighted_sum(&self.mult)
    }

    pub fn is_zero_sum(&self) -> Result<bool> {
        Ok(self.sigma()?.is_zero())
    }

    fn same(&self, other: &Sequence) -> Result<()> {
        if Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    pub fn divides(&self, other: &Sequence) -> Result<bool> {
        self.same(other)?;
        Ok(mv::divides(&self.mult, &other.mult))
    }

    pub fn product(&self, other: &Sequence) -> Result<Sequence> {
        self.same(other)?;
        Ok(Sequence {
            alphabet: self.alphabet.clone(),
            mult: mv::add(&self.mult, &other.mult),
        })
    }

    /// `self · other⁻¹`, if `other` divides `self`.
    pub fn quotient(&self, other: &Sequence) -> Result<Option<Sequence>> {
        self.same(other)?;
        Ok(mv::divides(&other.mult, &self.mult).then(|| Sequence {
            alphabet: self.alphabet.clone(),
            mult: mv::sub(&self.mult, &other.mult),
        }))
    }

    pub fn gcd(&self, other: &Sequence) -> Result<Sequence> {
        self.same(other)?;
        Ok(Sequence {
            alphabet: self.alphabet.clone(),
            mult: mv::min(&self.mult, &other.mult),
        })
    }

    /// `-S`; fails if some `-g` is missing from the alphabet.
    pub fn negate(&self) -> Result<Sequence> {
        let table = self.alphabet.negation_table();
        let mut mult = vec![0; self.mult.len()];
        for (i, &k) in self.mult.iter().enumerate() {
            if k > 0 {
                let j = table[i].ok_or_else(|| {
                    Error::InvalidElement(format!(
                        "negative of {} is not in the alphabet",
                        self.alphabet.elements[i]
                    ))
                })?;
                mult[j] += k;
            }
        }
        Ok(Sequence {
            alphabet: self.alphabet.clone(),
            mult,
        })
    }

    /// Parse `g1^k1 * g2^k2 * …` (or `1` for the empty sequence).
    pub fn parse(alphabet: Arc<Alphabet>, s: &str) -> Result<Self> {
        let s = s.trim();
        let mut seq = Sequence::empty(alphabet.clone());
        if s.is_empty() || s == "1" {
            return Ok(seq);
        }
        for factor in s.split('*') {
            let factor = factor.trim();
            let (elem, exp) = match factor.rfind('^') {
                Some(p) if !factor[p..].contains([')', ']']) => {
                    let k = factor[p + 1..]
                        .trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                    (&factor[..p], k)
                }
                _ => (factor, 1),
            };
            let g = parse_element(alphabet.group(), elem)?;
            let i = alphabet
                .index_of(&g)
                .ok_or_else(|| Error::InvalidElement(format!("{g} is not in the alphabet")))?;
            seq.mult[i] += exp;
        }
        Ok(seq)
    }
}

/// Render a multiplicity vector over an alphabet.
pub fn render(alphabet: &Alphabet, mult: &[u32]) -> String {
    let parts: Vec<String> = alphabet
        .elements()
        .iter()
        .zip(mult)
        .filter(|(_, &k)| k > 0)
        .map(|(g, &k)| {
            if k == 1 {
                g.to_string()
            } else {
                format!("{g}^{k}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" * ")
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.alphabet, &self.mult))
    }
}
