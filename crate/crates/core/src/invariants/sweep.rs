use super::BoundedResult;
use crate::atoms::AtomSet;
use crate::error::Result;
use crate::exec::Exec;
use crate::factorization::{catenary_profile, factorize_vec, CatenaryProfile, DEFAULT_LIMIT};
use crate::lengths::{LengthOracle, LengthSet};
use crate::sequence::mv;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Distinct products of exactly `k` atoms, built level by level and shared
/// between invariants, together with a memoized length oracle.
pub struct ProductSweep<'a> {
    atoms: &'a AtomSet,
    oracle: LengthOracle<'a>,
    levels: Vec<Vec<Vec<u32>>>,
    exec: Exec,
}

impl<'a> ProductSweep<'a> {
    pub fn new(atoms: &'a AtomSet, exec: Exec) -> Self {
        let empty = vec![vec![0u32; atoms.alphabet().len()]];
        ProductSweep {
            atoms,
            oracle: LengthOracle::new(atoms),
            levels: vec![empty],
            exec,
        }
    }

    pub fn atoms(&self) -> &AtomSet {
        self.atoms
    }

    pub fn oracle(&self) -> &LengthOracle<'a> {
        &self.oracle
    }

    pub fn exec(&self) -> Exec {
        self.exec
    }

    /// Distinct products of exactly `k` atoms, sorted.
    pub fn level(&mut self, k: usize) -> &[Vec<u32>] {
        while self.levels.len() <= k {
            let prev = self.levels.last().expect("level 0 exists");
            let atoms = self.atoms;
            let mut next = self.exec.flat_map(prev, |p| {
                (0..atoms.len()).map(|u| mv::add(p, atoms.get(u))).collect()
            });
            next.sort_unstable();
            next.dedup();
            self.levels.push(next);
        }
        &self.levels[k]
    }

    /// `L(B)` for every product of exactly `k` atoms.
    pub fn level_lengths(&mut self, k: usize) -> Vec<LengthSet> {
        self.level(k);
        let oracle = &self.oracle;
        self.exec.map(&self.levels[k], |b| oracle.lengths(b))
    }

    /// `U_k`: union of all sets of lengths containing `k`.
    pub fn union_set(&mut self, k: usize) -> LengthSet {
        let mut u = LengthSet::new();
        for l in self.level_lengths(k) {
            u.union_with(&l);
        }
        u
    }

    /// Every distinct `L(B)` for products of at most `bound` atoms.
    pub fn distinct_length_sets(&mut self, bound: usize) -> BTreeSet<LengthSet> {
        (1..=bound).flat_map(|k| self.level_lengths(k)).collect()
    }

    /// Smallest `m ≤ max_m` with `K ∈ U_m`; by symmetry of the relation
    /// `K ∈ U_m ⇔ m ∈ U_K` this is exactly `λ_K` when found.
    pub fn lambda_by_duality(&mut self, big_k: u64, max_m: usize) -> Option<u64> {
        (1..=max_m)
            .find(|&m| self.union_set(m).contains(big_k))
            .map(|m| m as u64)
    }
}

/// `Δ` of the union of `Δ(L(B))` over products of at most `bound` atoms.
pub fn delta_set(atoms: &AtomSet, bound: usize, exec: &Exec) -> BoundedResult<BTreeSet<u64>> {
    let mut sweep = ProductSweep::new(atoms, *exec);
    let mut out = BTreeSet::new();
    for k in 1..=bound {
        for l in sweep.level_lengths(k) {
            out.extend(l.deltas());
        }
    }
    BoundedResult::bounded(out, bound as u64)
}

/// `U_k`, `ρ_k = max U_k`, `λ_k = min U_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionProfile {
    pub k: u64,
    pub set: LengthSet,
    pub rho_k: u64,
    pub lambda_k: u64,
}

/// Exact `U_k` by enumerating every product of `k` atoms.
pub fn unions(atoms: &AtomSet, k: usize, exec: &Exec) -> UnionProfile {
    let mut sweep = ProductSweep::new(atoms, *exec);
    union_profile(&mut sweep, k)
}

pub(crate) fn union_profile(sweep: &mut ProductSweep, k: usize) -> UnionProfile {
    let set = sweep.union_set(k);
    UnionProfile {
        k: k as u64,
        rho_k: set.last().unwrap_or(0),
        lambda_k: set.first().unwrap_or(0),
        set,
    }
}

/// `ρ(H)`. For symmetric alphabets this is `D/2` exactly (or 1 when the
/// monoid is factorial); otherwise the lower bound `max ρ_k / k` over `k ≤ k_max`.
pub fn elasticity(atoms: &AtomSet, k_max: usize, exec: &Exec) -> BoundedResult<Ratio<u64>> {
    let d = atoms.davenport();
    if atoms.alphabet().is_symmetric() {
        let v = if d >= 2 {
            Ratio::new(d, 2)
        } else {
            Ratio::from_integer(1)
        };
        return BoundedResult::exact(v);
    }
    let mut sweep = ProductSweep::new(atoms, *exec);
    let mut best = Ratio::from_integer(1u64);
    for k in 1..=k_max {
        if let Some(r) = sweep.union_set(k).last() {
            best = best.max(Ratio::new(r, k as u64));
        }
    }
    BoundedResult::bounded(best, k_max as u64)
}

/// Maximum catenary profile over all products of at most `bound` atoms.
pub fn monoid_catenary(
    atoms: &AtomSet,
    bound: usize,
    exec: &Exec,
) -> Result<BoundedResult<CatenaryProfile>> {
    let mut sweep = ProductSweep::new(atoms, *exec);
    let mut best = CatenaryProfile::default();
    for k in 1..=bound {
        let level = sweep.level(k).to_vec();
        let profiles = exec.try_map(&level, |b| {
            factorize_vec(atoms, b, DEFAULT_LIMIT).map(|zs| catenary_profile(&zs))
        })?;
        for p in profiles {
            best = best.max(p);
        }
    }
    Ok(BoundedResult::bounded(best, bound as u64))
}
