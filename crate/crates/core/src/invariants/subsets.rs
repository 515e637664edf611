//! `Δ*(H) = {min Δ(B(G₁)) : G₁ ⊆ G₀, Δ(B(G₁)) ≠ ∅}`.
//!
//! `min Δ(H) = gcd Δ(H)` for atomic monoids, and `gcd Δ(H)` generates the
//! group of length differences `|z| - |z'|` over all pairs with equal
//! product, which is the image of the relation lattice of the atom vectors
//! under the length map. That gives an exact route; the bounded sweep route
//! is kept as an independent check.

use super::sweep::delta_set;
use super::BoundedResult;
use crate::atoms::AtomSet;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::intmat::relation_length_gcd;
use std::collections::{BTreeSet, HashSet};

const MAX_ALPHABET: usize = 20;

/// `min Δ(H)` for the monoid generated by these atom vectors, or `None`
/// when it is half-factorial.
pub fn min_delta_exact(vectors: &[Vec<u32>]) -> Result<Option<u64>> {
    if vectors.is_empty() {
        return Ok(None);
    }
    let g = relation_length_gcd(vectors)?;
    Ok((g > 0).then_some(g))
}

fn support_mask(v: &[u32]) -> u32 {
    v.iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .fold(0, |m, (i, _)| m | 1 << i)
}

/// Distinct divisor-closed submonoids `B(G₁)`, keyed by the union of atom
/// supports inside `G₁`.
fn closed_subsets(atoms: &AtomSet, exec: &Exec) -> Result<Vec<u32>> {
    let n = atoms.alphabet().len();
    if n > MAX_ALPHABET {
        return Err(Error::SearchTooLarge(format!(
            "subset sweep over {n} elements exceeds the limit of {MAX_ALPHABET}"
        )));
    }
    let masks: Vec<u32> = atoms.vectors().iter().map(|v| support_mask(v)).collect();
    let total: u64 = 1 << n;
    let chunk = 1u64 << 12;
    let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
    let found = exec.map(&starts, |&s| {
        let mut seen = HashSet::new();
        for sub in s..(s + chunk).min(total) {
            let sub = sub as u32;
            let closed = masks
                .iter()
                .filter(|&&m| m & !sub == 0)
                .fold(0, |acc, m| acc | m);
            if closed != 0 {
                seen.insert(closed);
            }
        }
        seen
    });
    let mut all: Vec<u32> = found
        .into_iter()
        .flatten()
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    all.sort_unstable();
    Ok(all)
}

fn atoms_within(atoms: &AtomSet, mask: u32) -> Vec<Vec<u32>> {
    atoms
        .vectors()
        .iter()
        .filter(|v| support_mask(v) & !mask == 0)
        .cloned()
        .collect()
}

/// Exact `Δ*` via the relation-lattice gcd.
pub fn delta_star(atoms: &AtomSet, exec: &Exec) -> Result<BoundedResult<BTreeSet<u64>>> {
    let subsets = closed_subsets(atoms, exec)?;
    let mins = exec.try_map(&subsets, |&m| min_delta_exact(&atoms_within(atoms, m)))?;
    Ok(BoundedResult::exact(mins.into_iter().flatten().collect()))
}

/// `Δ*` with each `min Δ(G₁)` taken from a bounded product sweep.
pub fn delta_star_bounded(
    atoms: &AtomSet,
    product_bound: usize,
    exec: &Exec,
) -> Result<BoundedResult<BTreeSet<u64>>> {
    let subsets = closed_subsets(atoms, exec)?;
    let mins = exec.map(&subsets, |&m| {
        let sub = AtomSet::from_vectors(
            atoms.alphabet().clone(),
            atoms_within(atoms, m),
            atoms.cap(),
        );
        delta_set(&sub, product_bound, &Exec::Sequential)
            .value
            .first()
            .copied()
    });
    Ok(BoundedResult::bounded(
        mins.into_iter().flatten().collect(),
        product_bound as u64,
    ))
}
