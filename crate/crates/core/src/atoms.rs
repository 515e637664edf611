//! Atoms of a block monoid: the minimal zero-sum sequences over an alphabet.

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::hilbert::hilbert_basis;
use crate::sequence::{mv, render, Alphabet, Sequence};
use std::sync::Arc;

pub const DEFAULT_CAP: u32 = 64;

/// The atoms of `B(G₀)` in canonical order: by length, then multiplicity vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomSet {
    alphabet: Arc<Alphabet>,
    atoms: Vec<Vec<u32>>,
    cap: u32,
    containing: Vec<Vec<usize>>,
}

impl AtomSet {
    pub fn from_vectors(alphabet: Arc<Alphabet>, mut atoms: Vec<Vec<u32>>, cap: u32) -> Self {
        atoms.sort_by(|a, b| mv::len(a).cmp(&mv::len(b)).then_with(|| a.cmp(b)));
        let containing = (0..alphabet.len())
            .map(|g| (0..atoms.len()).filter(|&u| atoms[u][g] > 0).collect())
            .collect();
        AtomSet {
            alphabet,
            atoms,
            cap,
            containing,
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn vectors(&self) -> &[Vec<u32>] {
        &self.atoms
    }

    pub fn get(&self, i: usize) -> &[u32] {
        &self.atoms[i]
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn sequence(&self, i: usize) -> Sequence {
        Sequence::new(self.alphabet.clone(), self.atoms[i].clone()).expect("atom matches alphabet")
    }

    pub fn sequences(&self) -> Vec<Sequence> {
        (0..self.len()).map(|i| self.sequence(i)).collect()
    }

    pub fn render(&self, i: usize) -> String {
        render(&self.alphabet, &self.atoms[i])
    }

    pub fn index_of(&self, v: &[u32]) -> Option<usize> {
        self.atoms.iter().position(|a| a == v)
    }

    /// Indices of atoms having alphabet element `g` in their support.
    pub fn containing(&self, g: usize) -> &[usize] {
        &self.containing[g]
    }

    /// Largest atom length; 0 when there are no atoms.
    pub fn davenport(&self) -> u64 {
        self.atoms.iter().map(|a| mv::len(a)).max().unwrap_or(0)
    }

    /// Atoms whose support lies in the given alphabet subset (as a mask).
    pub fn restrict_indices(&self, mask: &[bool]) -> Vec<usize> {
        (0..self.len())
            .filter(|&u| self.atoms[u].iter().zip(mask).all(|(&k, &m)| k == 0 || m))
            .collect()
    }

    /// An atom is prime iff no other atom shares an element with it.
    pub fn is_prime(&self, i: usize) -> bool {
        self.atoms[i]
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .all(|(g, _)| self.containing[g].iter().all(|&u| u == i))
    }
}

/// Enumerate `A(G₀)`.
pub fn enumerate_atoms(alphabet: Arc<Alphabet>, cap: u32, exec: &Exec) -> Result<AtomSet> {
    let basis = hilbert_basis(alphabet.group(), alphabet.elements(), cap, exec)?;
    Ok(AtomSet::from_vectors(alphabet, basis, cap))
}

pub fn davenport_constant(atoms: &AtomSet) -> u64 {
    atoms.davenport()
}

/// Whether a sequence is an atom: zero-sum, nonempty, and no proper nonempty
/// zero-sum subsequence. Checked directly by subset sums.
pub fn is_atom(seq: &Sequence) -> Result<bool> {
    if seq.is_empty() || !seq.is_zero_sum()? {
        return Ok(false);
    }
    let m = seq.mult();
    let alphabet = seq.alphabet();
    let mut sub = vec![0u32; m.len()];
    // enumerate all sub-multisets via odometer
    loop {
        let mut i = 0;
        while i < m.len() {
            if sub[i] < m[i] {
                sub[i] += 1;
                break;
            }
            sub[i] = 0;
            i += 1;
        }
        if i == m.len() || sub == m {
            return Ok(true);
        }
        if alphabet.weighted_sum(&sub)?.is_zero() {
            return Ok(false);
        }
    }
}

pub(crate) fn require_block(seq: &Sequence) -> Result<()> {
    if seq.is_zero_sum()? {
        Ok(())
    } else {
        Err(Error::NotZeroSum)
    }
}
