//! Absolutely irreducible atoms: atoms all of whose powers factor uniquely.

use crate::atoms::AtomSet;
use crate::error::Result;
use crate::factorization::{factorize_vec, DEFAULT_LIMIT};
use crate::lengths::LengthOracle;
use serde::{Deserialize, Serialize};

/// An atom `u` is absolutely irreducible iff the torsion-free rank of the
/// subgroup generated by its support is `|supp u| - 1` (minimality of the
/// exponent vector is automatic for atoms).
pub fn absolutely_irreducible(atoms: &AtomSet, u: usize) -> Result<bool> {
    let a = atoms.alphabet();
    let supp: Vec<_> = atoms
        .get(u)
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, _)| a.elements()[i].clone())
        .collect();
    Ok(a.group().subgroup_rank(&supp)? + 1 == supp.len())
}

/// Direct check: `|Z(u^k)| = 1` for all `k ≤ max_power`.
pub fn powers_factor_uniquely(atoms: &AtomSet, u: usize, max_power: u32) -> Result<bool> {
    for k in 1..=max_power {
        let b: Vec<u32> = atoms.get(u).iter().map(|&x| x * k).collect();
        if factorize_vec(atoms, &b, DEFAULT_LIMIT)?.len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsIrredWitness {
    /// Number of distinct absolutely irreducible atoms used.
    pub s: usize,
    pub atoms: Vec<usize>,
    pub exponents: Vec<u32>,
}

/// Smallest `s` for which distinct absolutely irreducible atoms `w_1,…,w_s`
/// and positive exponents `k_i` exist such that `w_1^{k_1}⋯w_s^{k_s}` is a
/// factorization of length `D` of an element that also has a factorization
/// of length 2. Returns `None` if no witness exists, or if `D` exceeds
/// `search_bound`.
pub fn min_abs_irred_witness(
    atoms: &AtomSet,
    search_bound: u64,
) -> Result<Option<AbsIrredWitness>> {
    let d = atoms.davenport();
    if d < 2 || d > search_bound {
        return Ok(None);
    }
    let pool: Vec<usize> = (0..atoms.len())
        .map(|u| absolutely_irreducible(atoms, u).map(|ok| ok.then_some(u)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let oracle = LengthOracle::new(atoms);
    let n = atoms.alphabet().len();
    for s in 1..=pool.len().min(d as usize) {
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let chosen: Vec<usize> = idx.iter().map(|&i| pool[i]).collect();
            if let Some(exps) = search_exponents(atoms, &oracle, &chosen, d as u32, n)? {
                return Ok(Some(AbsIrredWitness {
                    s,
                    atoms: chosen,
                    exponents: exps,
                }));
            }
            if !next_combination(&mut idx, pool.len()) {
                break;
            }
        }
    }
    Ok(None)
}

fn search_exponents(
    atoms: &AtomSet,
    oracle: &LengthOracle,
    chosen: &[usize],
    total: u32,
    n: usize,
) -> Result<Option<Vec<u32>>> {
    let s = chosen.len() as u32;
    if s > total {
        return Ok(None);
    }
    let mut exps = vec![1u32; chosen.len()];
    exps[0] = total - (s - 1);
    loop {
        let mut b = vec![0u32; n];
        for (&u, &k) in chosen.iter().zip(&exps) {
            crate::sequence::mv::add_scaled(&mut b, atoms.get(u), k);
        }
        if oracle.lengths(&b).contains(2) {
            return Ok(Some(exps));
        }
        if !next_composition(&mut exps) {
            return Ok(None);
        }
    }
}

/// Next composition of the same total with all parts ≥ 1 (reverse lex).
fn next_composition(e: &mut [u32]) -> bool {
    let n = e.len();
    if n < 2 {
        return false;
    }
    // find rightmost position i < n-1 with e[i] > 1
    let Some(i) = (0..n - 1).rev().find(|&i| e[i] > 1) else {
        return false;
    };
    e[i] -= 1;
    let tail: u32 = e[i + 1..].iter().sum::<u32>() + 1;
    for x in e[i + 1..].iter_mut() {
        *x = 1;
    }
    e[i + 1] = tail - (n - i - 2) as u32;
    true
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
        return false;
    };
    idx[i] += 1;
    for j in i + 1..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}
