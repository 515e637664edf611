//! Factorizations of blocks into atoms, the factorization distance and the
//! catenary degrees of a single element.

use crate::atoms::{require_block, AtomSet};
use crate::error::{Error, Result};
use crate::lengths::LengthSet;
use crate::sequence::{mv, Sequence};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const DEFAULT_LIMIT: usize = 1_000_000;

/// A formal product of atoms, as multiplicities indexed by atom position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Factorization {
    pub counts: Vec<u32>,
}

impl Factorization {
    pub fn len(&self) -> u64 {
        mv::len(&self.counts)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The product in the monoid, as a multiplicity vector.
    pub fn product(&self, atoms: &AtomSet) -> Vec<u32> {
        let mut out = vec![0; atoms.alphabet().len()];
        for (u, &k) in self.counts.iter().enumerate() {
            mv::add_scaled(&mut out, atoms.get(u), k);
        }
        out
    }

    pub fn render(&self, atoms: &AtomSet) -> String {
        let parts: Vec<String> = self
            .counts
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(u, &k)| {
                let a = format!("({})", atoms.render(u));
                if k == 1 {
                    a
                } else {
                    format!("{a}^{k}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

/// `Z(B)` for a block given as a sequence.
pub fn factorize(atoms: &AtomSet, b: &Sequence, limit: usize) -> Result<Vec<Factorization>> {
    if b.alphabet().as_ref() != atoms.alphabet().as_ref() {
        return Err(Error::AlphabetMismatch);
    }
    require_block(b)?;
    factorize_vec(atoms, b.mult(), limit)
}

/// `Z(B)` for a multiplicity vector, sorted by length then counts.
///
/// Atoms are tried in canonical order, each with nonincreasing multiplicity;
/// a branch dies as soon as some remaining element can no longer be covered
/// by a later atom.
pub fn factorize_vec(atoms: &AtomSet, b: &[u32], limit: usize) -> Result<Vec<Factorization>> {
    let cand: Vec<usize> = (0..atoms.len())
        .filter(|&u| mv::divides(atoms.get(u), b))
        .collect();
    let mut last_cover = vec![None::<usize>; b.len()];
    for (pos, &u) in cand.iter().enumerate() {
        for (g, &k) in atoms.get(u).iter().enumerate() {
            if k > 0 {
                last_cover[g] = Some(pos);
            }
        }
    }
    let mut out = Vec::new();
    let mut counts = vec![0u32; atoms.len()];
    let mut rem = b.to_vec();
    struct Ctx<'a> {
        atoms: &'a AtomSet,
        cand: &'a [usize],
        last_cover: &'a [Option<usize>],
        limit: usize,
    }
    fn rec(
        cx: &Ctx,
        pos: usize,
        rem: &mut [u32],
        counts: &mut [u32],
        out: &mut Vec<Factorization>,
    ) -> Result<()> {
        if rem.iter().all(|&k| k == 0) {
            if out.len() >= cx.limit {
                return Err(Error::TooManyFactorizations(cx.limit));
            }
            out.push(Factorization {
                counts: counts.to_vec(),
            });
            return Ok(());
        }
        for (g, &k) in rem.iter().enumerate() {
            if k > 0 && cx.last_cover[g].is_none_or(|p| p < pos) {
                return Ok(());
            }
        }
        let u = cx.cand[pos];
        let a = cx.atoms.get(u);
        let max = a
            .iter()
            .zip(rem.iter())
            .filter(|(&x, _)| x > 0)
            .map(|(&x, &r)| r / x)
            .min()
            .unwrap_or(0);
        for k in (0..=max).rev() {
            for (r, &x) in rem.iter_mut().zip(a) {
                *r -= x * k;
            }
            counts[u] = k;
            let res = rec(cx, pos + 1, rem, counts, out);
            for (r, &x) in rem.iter_mut().zip(a) {
                *r += x * k;
            }
            counts[u] = 0;
            res?;
        }
        Ok(())
    }
    let cx = Ctx {
        atoms,
        cand: &cand,
        last_cover: &last_cover,
        limit,
    };
    if rem.iter().all(|&k| k == 0) {
        out.push(Factorization { counts });
    } else if !cand.is_empty() {
        rec(&cx, 0, &mut rem, &mut counts, &mut out)?;
    }
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.counts.cmp(&y.counts)));
    Ok(out)
}

/// `L` of a list of factorizations.
pub fn lengths_of(zs: &[Factorization]) -> LengthSet {
    LengthSet::from_iter(zs.iter().map(Factorization::len))
}

/// `d(z, z')`: cancel the common part, take the larger remaining length.
pub fn distance(z: &Factorization, w: &Factorization) -> u64 {
    let (mut a, mut b) = (0u64, 0u64);
    for (&x, &y) in z.counts.iter().zip(&w.counts) {
        if x > y {
            a += (x - y) as u64;
        } else {
            b += (y - x) as u64;
        }
    }
    a.max(b)
}

/// Largest edge of a minimum spanning tree under `distance` (Prim, O(n²)).
fn bottleneck(zs: &[&Factorization]) -> u64 {
    let n = zs.len();
    if n <= 1 {
        return 0;
    }
    let mut best = vec![u64::MAX; n];
    let mut done = vec![false; n];
    let mut cur = 0;
    done[0] = true;
    let mut worst = 0;
    for _ in 1..n {
        let mut next = usize::MAX;
        for j in 0..n {
            if done[j] {
                continue;
            }
            best[j] = best[j].min(distance(zs[cur], zs[j]));
            if next == usize::MAX || best[j] < best[next] {
                next = j;
            }
        }
        worst = worst.max(best[next]);
        done[next] = true;
        cur = next;
    }
    worst
}

/// The catenary degrees of one element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CatenaryProfile {
    pub c: u64,
    pub c_eq: u64,
    pub c_adj: u64,
    pub c_mon: u64,
}

impl CatenaryProfile {
    pub fn max(self, o: CatenaryProfile) -> CatenaryProfile {
        CatenaryProfile {
            c: self.c.max(o.c),
            c_eq: self.c_eq.max(o.c_eq),
            c_adj: self.c_adj.max(o.c_adj),
            c_mon: self.c_mon.max(o.c_mon),
        }
    }
}

/// `c`, `c_eq`, `c_adj` and `c_mon = max(c_eq, c_adj)` for `Z(B)`.
pub fn catenary_profile(zs: &[Factorization]) -> CatenaryProfile {
    let all: Vec<&Factorization> = zs.iter().collect();
    let c = bottleneck(&all);
    let mut by_len: BTreeMap<u64, Vec<&Factorization>> = BTreeMap::new();
    for z in zs {
        by_len.entry(z.len()).or_default().push(z);
    }
    let c_eq = by_len.values().map(|v| bottleneck(v)).max().unwrap_or(0);
    let levels: Vec<&Vec<&Factorization>> = by_len.values().collect();
    let c_adj = levels
        .windows(2)
        .map(|w| {
            w[0].iter()
                .flat_map(|x| w[1].iter().map(move |y| distance(x, y)))
                .min()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0);
    CatenaryProfile {
        c,
        c_eq,
        c_adj,
        c_mon: c_eq.max(c_adj),
    }
}
