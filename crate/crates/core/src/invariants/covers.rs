//! Minimal covers of an atom and the invariants ω and t built on them.
//!
//! A minimal cover of `u` is a multiset `{v_1,…,v_m}` of atoms with
//! `u | v_1⋯v_m` and `u` dividing no proper subproduct. The coverage
//! `S ↦ |gcd(u, ΠS)|` is submodular, so along any growth order of a minimal
//! cover every added atom strictly increases coverage, and an atom that
//! becomes redundant stays redundant. Both facts prune the search.

use crate::atoms::AtomSet;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::lengths::LengthOracle;
use crate::sequence::mv;

#[derive(Debug, Clone, Copy)]
pub struct CoverLimits {
    /// Maximum number of search nodes per atom.
    pub max_nodes: u64,
}

impl Default for CoverLimits {
    fn default() -> Self {
        CoverLimits {
            max_nodes: 200_000_000,
        }
    }
}

fn coverage(u: &[u32], sum: &[u32]) -> u64 {
    u.iter().zip(sum).map(|(&a, &b)| a.min(b) as u64).sum()
}

/// Visit every minimal cover of atom `u` (as sorted atom indices).
pub fn minimal_covers(
    atoms: &AtomSet,
    u: usize,
    limits: CoverLimits,
    visit: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    let target = atoms.get(u).to_vec();
    let full = mv::len(&target);
    let relevant: Vec<usize> = (0..atoms.len())
        .filter(|&v| {
            atoms
                .get(v)
                .iter()
                .zip(&target)
                .any(|(&a, &b)| a > 0 && b > 0)
        })
        .collect();
    struct St<'a> {
        atoms: &'a AtomSet,
        target: &'a [u32],
        full: u64,
        relevant: &'a [usize],
        nodes: u64,
        limit: u64,
        cover: Vec<usize>,
        sum: Vec<u32>,
    }
    fn non_redundant(st: &St) -> bool {
        let cur = coverage(st.target, &st.sum);
        let mut prev = usize::MAX;
        for &w in &st.cover {
            if w == prev {
                continue;
            }
            prev = w;
            let without = mv::sub(&st.sum, st.atoms.get(w));
            if coverage(st.target, &without) == cur {
                return false;
            }
        }
        true
    }
    fn rec(st: &mut St, start: usize, visit: &mut dyn FnMut(&[usize]) -> Result<()>) -> Result<()> {
        let cur = coverage(st.target, &st.sum);
        for i in start..st.relevant.len() {
            st.nodes += 1;
            if st.nodes > st.limit {
                return Err(Error::SearchTooLarge(format!(
                    "minimal cover search exceeded {} nodes",
                    st.limit
                )));
            }
            let v = st.relevant[i];
            let a = st.atoms.get(v);
            let grown = mv::add(&st.sum, a);
            let cov = coverage(st.target, &grown);
            if cov == cur {
                continue;
            }
            let saved = std::mem::replace(&mut st.sum, grown);
            st.cover.push(v);
            if non_redundant(st) {
                if cov == st.full {
                    visit(&st.cover)?;
                } else {
                    rec(st, i, visit)?;
                }
            }
            st.cover.pop();
            st.sum = saved;
        }
        Ok(())
    }
    let mut st = St {
        atoms,
        target: &target,
        full,
        relevant: &relevant,
        nodes: 0,
        limit: limits.max_nodes,
        cover: Vec::new(),
        sum: vec![0; target.len()],
    };
    rec(&mut st, 0, visit)
}

/// `ω(H, u)`: the largest size of a minimal cover of `u`.
pub fn omega(atoms: &AtomSet, u: usize, limits: CoverLimits) -> Result<u64> {
    let mut best = 0u64;
    minimal_covers(atoms, u, limits, &mut |c| {
        best = best.max(c.len() as u64);
        Ok(())
    })?;
    Ok(best)
}

/// `t(H, u)`: over all minimal covers `v_1⋯v_m` with `m ≥ 2`, the maximum of
/// `max(m, 1 + min L(u⁻¹ v_1⋯v_m))`; 0 when `u` is prime.
pub fn tame(atoms: &AtomSet, u: usize, oracle: &LengthOracle, limits: CoverLimits) -> Result<u64> {
    Ok(omega_tame(atoms, u, oracle, limits)?.1)
}

fn omega_tame(
    atoms: &AtomSet,
    u: usize,
    oracle: &LengthOracle,
    limits: CoverLimits,
) -> Result<(u64, u64)> {
    let target = atoms.get(u).to_vec();
    let (mut om, mut t) = (0u64, 0u64);
    minimal_covers(atoms, u, limits, &mut |c| {
        let m = c.len() as u64;
        om = om.max(m);
        if m >= 2 {
            let mut prod = vec![0u32; target.len()];
            for &v in c {
                mv::add_scaled(&mut prod, atoms.get(v), 1);
            }
            let rest = mv::sub(&prod, &target);
            let k = oracle.min_length(&rest).ok_or_else(|| {
                Error::InvalidParameters("cover quotient has no factorization".into())
            })?;
            t = t.max(m.max(1 + k as u64));
        }
        Ok(())
    })?;
    Ok((om, t))
}

/// `(ω(H), t(H))` as maxima over all atoms, computed in parallel.
pub fn monoid_omega_tame(atoms: &AtomSet, limits: CoverLimits, exec: &Exec) -> Result<(u64, u64)> {
    let oracle = LengthOracle::new(atoms);
    let ids: Vec<usize> = (0..atoms.len()).collect();
    let per = exec.try_map(&ids, |&u| omega_tame(atoms, u, &oracle, limits))?;
    Ok(per
        .into_iter()
        .fold((0, 0), |(a, b), (x, y)| (a.max(x), b.max(y))))
}
