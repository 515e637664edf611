//! Explicit systems of sets of lengths, membership with witnesses, sumsets,
//! an additive-closure probe, and fitting arithmetic progressions and
//! almost arithmetic multiprogressions.

use crate::atoms::AtomSet;
use crate::exec::Exec;
use crate::invariants::ProductSweep;
use crate::lengths::LengthSet;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Closed-form systems `𝓛`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LengthSystemFamily {
    /// `{y + 2k + P_k(1)}`: the system of `Z/3`.
    C3,
    /// `{y + k + 1 + P_k(1)} ∪ {y + 2k + P_k(2)}`: the system of `Z/4`.
    C4,
    /// `{m + 2k + P_k(r + α - 2)}`.
    Simplex { r: u32, alpha: u32 },
}

/// Parameters showing that a set belongs to a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberWitness {
    /// Which shape of the family matched (0 or 1).
    pub form: u8,
    pub y: u64,
    pub k: u64,
}

/// `P_k(d) = {0, d, …, kd}`.
pub fn progression(k: u64, d: u64) -> LengthSet {
    LengthSet::from_iter((0..=k).map(|i| i * d))
}

/// If `l` is an arithmetic progression, its difference (`None` for sets of size ≤ 1).
pub fn fit_progression(l: &LengthSet) -> Option<Option<u64>> {
    let ds = l.deltas();
    match ds.len() {
        0 => Some(None),
        1 => Some(ds.into_iter().next()),
        _ => None,
    }
}

/// `(min, steps)` when `l = min + P_steps(d)`.
fn as_progression(l: &LengthSet, d: u64) -> Option<(u64, u64)> {
    let lo = l.first()?;
    let hi = l.last()?;
    match fit_progression(l)? {
        None => Some((lo, 0)),
        Some(e) if e == d => Some((lo, (hi - lo) / d)),
        _ => None,
    }
}

pub fn member(family: LengthSystemFamily, l: &LengthSet) -> Option<MemberWitness> {
    match family {
        LengthSystemFamily::C3 => {
            let (lo, k) = as_progression(l, 1)?;
            (lo >= 2 * k).then(|| MemberWitness {
                form: 0,
                y: lo - 2 * k,
                k,
            })
        }
        LengthSystemFamily::C4 => {
            if let Some((lo, k)) = as_progression(l, 1) {
                if lo > k {
                    return Some(MemberWitness {
                        form: 0,
                        y: lo - k - 1,
                        k,
                    });
                }
            }
            let (lo, k) = as_progression(l, 2)?;
            (lo >= 2 * k).then(|| MemberWitness {
                form: 1,
                y: lo - 2 * k,
                k,
            })
        }
        LengthSystemFamily::Simplex { r, alpha } => {
            let d = (r + alpha) as u64 - 2;
            if d == 0 {
                return (l.len() == 1).then(|| MemberWitness {
                    form: 0,
                    y: l.first().unwrap_or(0),
                    k: 0,
                });
            }
            let (lo, k) = as_progression(l, d)?;
            (lo >= 2 * k).then(|| MemberWitness {
                form: 0,
                y: lo - 2 * k,
                k,
            })
        }
    }
}

/// The set a witness describes.
pub fn realize(family: LengthSystemFamily, w: MemberWitness) -> LengthSet {
    match (family, w.form) {
        (LengthSystemFamily::C3, _) => progression(w.k, 1).shifted(w.y + 2 * w.k),
        (LengthSystemFamily::C4, 0) => progression(w.k, 1).shifted(w.y + w.k + 1),
        (LengthSystemFamily::C4, _) => progression(w.k, 2).shifted(w.y + 2 * w.k),
        (LengthSystemFamily::Simplex { r, alpha }, _) => {
            progression(w.k, (r + alpha) as u64 - 2).shifted(w.y + 2 * w.k)
        }
    }
}

pub fn sumset(a: &LengthSet, b: &LengthSet) -> LengthSet {
    a.sumset(b)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureWitness {
    pub l1: LengthSet,
    pub l2: LengthSet,
    pub sum: LengthSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureVerdict {
    ClosedWithinBound,
    Witness,
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureProbe {
    pub collection_bound: u64,
    pub verification_bound: u64,
    pub collected: usize,
    pub verdict: ClosureVerdict,
    pub witnesses: Vec<ClosureWitness>,
    /// Pairs whose sumset could not be decided within the verification bound.
    pub undecided: usize,
}

/// Realization oracle: a set `S` occurs as some `L(B)` iff it occurs for a
/// product of exactly `min S` atoms, since `min L(B)` atoms always suffice.
pub struct Realizer<'a> {
    sweep: ProductSweep<'a>,
    by_level: BTreeMap<u64, BTreeSet<LengthSet>>,
    verification_bound: u64,
}

impl<'a> Realizer<'a> {
    pub fn new(atoms: &'a AtomSet, verification_bound: u64, exec: Exec) -> Self {
        Realizer {
            sweep: ProductSweep::new(atoms, exec),
            by_level: BTreeMap::new(),
            verification_bound,
        }
    }

    /// `Some(true/false)` when decided, `None` when `min S` exceeds the bound.
    pub fn is_realized(&mut self, s: &LengthSet) -> Option<bool> {
        let m = s.first()?;
        if m > self.verification_bound {
            return None;
        }
        if m == 0 {
            return Some(s.len() == 1);
        }
        let sweep = &mut self.sweep;
        let sets = self.by_level.entry(m).or_insert_with(|| {
            sweep
                .level_lengths(m as usize)
                .into_iter()
                .filter(|l| l.first() == Some(m))
                .collect()
        });
        Some(sets.contains(s))
    }

    pub fn sweep(&mut self) -> &mut ProductSweep<'a> {
        &mut self.sweep
    }
}

/// Collect all `L(B)` for products of at most `collection_bound` atoms and
/// test every pairwise sumset for realization within `verification_bound`.
pub fn additive_closure_probe(
    atoms: &AtomSet,
    collection_bound: u64,
    verification_bound: u64,
    exec: &Exec,
) -> ClosureProbe {
    let mut realizer = Realizer::new(atoms, verification_bound, *exec);
    let collected: Vec<LengthSet> = realizer
        .sweep()
        .distinct_length_sets(collection_bound as usize)
        .into_iter()
        .collect();
    let mut pairs: Vec<(usize, usize, LengthSet)> = Vec::new();
    for i in 0..collected.len() {
        for j in i..collected.len() {
            pairs.push((i, j, collected[i].sumset(&collected[j])));
        }
    }
    pairs.sort_by(|a, b| (a.2.first(), &a.2, a.0, a.1).cmp(&(b.2.first(), &b.2, b.0, b.1)));
    let mut witnesses = Vec::new();
    let mut undecided = 0;
    for (i, j, s) in pairs {
        match realizer.is_realized(&s) {
            Some(true) => {}
            Some(false) => witnesses.push(ClosureWitness {
                l1: collected[i].clone(),
                l2: collected[j].clone(),
                sum: s,
            }),
            None => undecided += 1,
        }
    }
    let verdict = if !witnesses.is_empty() {
        ClosureVerdict::Witness
    } else if undecided > 0 {
        ClosureVerdict::Indeterminate
    } else {
        ClosureVerdict::ClosedWithinBound
    };
    ClosureProbe {
        collection_bound,
        verification_bound,
        collected: collected.len(),
        verdict,
        witnesses,
        undecided,
    }
}

/// An almost arithmetic multiprogression
/// `L = y + (L' ∪ L* ∪ L'') ⊂ y + D + dZ` with `L* = (D + dZ) ∩ [0, max L*]`,
/// `L' ⊂ [-M, -1]`, `L'' ⊂ max L* + [1, M]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Aamp {
    pub y: u64,
    pub d: u64,
    pub period: Vec<u64>,
    pub bound: u64,
    pub central_len: u64,
}

/// Best AAMP fit with difference `d`: least `M`, then smallest period.
pub fn fit_aamp(l: &LengthSet, d: u64) -> Option<Aamp> {
    if l.is_empty() || d == 0 {
        return None;
    }
    let xs = l.to_vec();
    let (lo, hi) = (xs[0], *xs.last().unwrap());
    let mut best: Option<Aamp> = None;
    for &a in &xs {
        let residues: BTreeSet<u64> = xs.iter().map(|&x| (x + d * (hi + 1) - a) % d).collect();
        for &b in xs.iter().filter(|&&b| b >= a) {
            let central_ok = (0..=b - a).all(|x| !residues.contains(&(x % d)) || l.contains(a + x));
            if !central_ok {
                continue;
            }
            let m = (a - lo).max(hi - b);
            let mut period: Vec<u64> = residues.iter().copied().collect();
            period.push(d);
            let cand = Aamp {
                y: a,
                d,
                period,
                bound: m,
                central_len: b - a,
            };
            let better = match &best {
                None => true,
                Some(o) => (cand.bound, cand.period.len()) < (o.bound, o.period.len()),
            };
            if better {
                best = Some(cand);
            }
        }
    }
    best
}
