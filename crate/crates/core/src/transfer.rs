//! Transfer homomorphisms between block monoids induced by maps of
//! alphabets, and counting atoms of Krull monoids with a given
//! characteristic.

use crate::atoms::{enumerate_atoms, AtomSet, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::{ElementInput, GroupElement, GroupSpec};
use crate::hilbert::hilbert_basis;
use crate::lengths::LengthOracle;
use crate::sequence::{mv, render, Alphabet, Sequence};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// A map of alphabets `G₀ → G₀'` inducing `B(G₀) → B(G₀')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferMap {
    source: Arc<Alphabet>,
    target: Arc<Alphabet>,
    image: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlphabetFile {
    pub group: GroupSpec,
    pub elements: Vec<ElementInput>,
}

impl AlphabetFile {
    pub fn build(&self) -> Result<Alphabet> {
        let els = self
            .elements
            .iter()
            .map(|e| e.resolve(&self.group))
            .collect::<Result<Vec<_>>>()?;
        Alphabet::new(self.group.clone(), els)
    }
}

/// On-disk form of a transfer map.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapFile {
    pub source: AlphabetFile,
    pub target: AlphabetFile,
    pub map: Vec<(ElementInput, ElementInput)>,
}

impl TransferMap {
    /// Validates that the map is total and sends every source atom to a
    /// zero-sum sequence.
    pub fn new(
        source: Arc<Alphabet>,
        target: Arc<Alphabet>,
        pairs: &[(GroupElement, GroupElement)],
    ) -> Result<Self> {
        let mut image = vec![usize::MAX; source.len()];
        for (s, t) in pairs {
            let i = source
                .index_of(s)
                .ok_or_else(|| Error::InvalidMap(format!("{s} is not in the source")))?;
            let j = target
                .index_of(t)
                .ok_or_else(|| Error::InvalidMap(format!("{t} is not in the target")))?;
            if image[i] != usize::MAX && image[i] != j {
                return Err(Error::InvalidMap(format!("{s} is assigned twice")));
            }
            image[i] = j;
        }
        if let Some(i) = image.iter().position(|&j| j == usize::MAX) {
            return Err(Error::InvalidMap(format!(
                "{} has no image",
                source.elements()[i]
            )));
        }
        let map = TransferMap {
            source,
            target,
            image,
        };
        let atoms = enumerate_atoms(map.source.clone(), DEFAULT_CAP, &Exec::Sequential)?;
        for u in atoms.vectors() {
            if !map.target.weighted_sum(&map.apply_vec(u))?.is_zero() {
                return Err(Error::InvalidMap(format!(
                    "atom {} does not map to a zero-sum sequence",
                    render(&map.source, u)
                )));
            }
        }
        Ok(map)
    }

    pub fn from_file(f: &MapFile) -> Result<Self> {
        let source = Arc::new(f.source.build()?);
        let target = Arc::new(f.target.build()?);
        let pairs = f
            .map
            .iter()
            .map(|(a, b)| Ok((a.resolve(source.group())?, b.resolve(target.group())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, &pairs)
    }

    pub fn source(&self) -> &Arc<Alphabet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Alphabet> {
        &self.target
    }

    pub fn apply_vec(&self, s: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.target.len()];
        for (i, &k) in s.iter().enumerate() {
            out[self.image[i]] += k;
        }
        out
    }

    pub fn apply(&self, s: &Sequence) -> Result<Sequence> {
        if s.alphabet().as_ref() != self.source.as_ref() {
            return Err(Error::AlphabetMismatch);
        }
        Sequence::new(self.target.clone(), self.apply_vec(s.mult()))
    }

    /// Source letters mapping to each target letter.
    fn fibers(&self) -> Vec<Vec<usize>> {
        let mut f = vec![Vec::new(); self.target.len()];
        for (i, &j) in self.image.iter().enumerate() {
            f[j].push(i);
        }
        f
    }

    /// Calls `visit` on sub-multisets `x ≤ within` (or unrestricted when
    /// `within` is `None`) with `apply_vec(x) = want`; stops when it returns true.
    fn preimages(
        &self,
        want: &[u32],
        within: Option<&[u32]>,
        visit: &mut dyn FnMut(&[u32]) -> bool,
    ) -> bool {
        let fibers = self.fibers();
        let mut x = vec![0u32; self.source.len()];
        #[allow(clippy::too_many_arguments)]
        fn split(
            fibers: &[Vec<usize>],
            want: &[u32],
            within: Option<&[u32]>,
            t: usize,
            pos: usize,
            left: u32,
            x: &mut Vec<u32>,
            visit: &mut dyn FnMut(&[u32]) -> bool,
        ) -> bool {
            if t == fibers.len() {
                return visit(x);
            }
            let fib = &fibers[t];
            if pos + 1 >= fib.len() {
                if fib.is_empty() {
                    return left == 0
                        && split(
                            fibers,
                            want,
                            within,
                            t + 1,
                            0,
                            want.get(t + 1).copied().unwrap_or(0),
                            x,
                            visit,
                        );
                }
                let i = fib[pos];
                if within.is_some_and(|w| w[i] < left) {
                    return false;
                }
                x[i] = left;
                let r = split(
                    fibers,
                    want,
                    within,
                    t + 1,
                    0,
                    want.get(t + 1).copied().unwrap_or(0),
                    x,
                    visit,
                );
                x[i] = 0;
                return r;
            }
            let i = fib[pos];
            let cap = within.map_or(left, |w| w[i].min(left));
            for k in 0..=cap {
                x[i] = k;
                if split(fibers, want, within, t, pos + 1, left - k, x, visit) {
                    x[i] = 0;
                    return true;
                }
            }
            x[i] = 0;
            false
        }
        split(
            &fibers,
            want,
            within,
            0,
            0,
            want.first().copied().unwrap_or(0),
            &mut x,
            visit,
        )
    }
}

/// Outcome of a bounded check of the two transfer conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferReport {
    pub bound: u32,
    /// Every target block of length ≤ bound has a preimage block, and only
    /// the empty block maps to the empty block.
    pub t1: bool,
    pub t1_counterexample: Option<String>,
    /// Every splitting of the image of a source block of length ≤ bound
    /// lifts to a splitting of the source block.
    pub t2: bool,
    pub t2_counterexample: Option<String>,
}

fn zero_sum_multisets(a: &Alphabet, bound: u32) -> Result<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    for x in mv::multisets(a.len(), bound) {
        if a.weighted_sum(&x)?.is_zero() {
            out.push(x);
        }
    }
    Ok(out)
}

pub fn check_transfer(map: &TransferMap, bound: u32, exec: &Exec) -> Result<TransferReport> {
    let targets = zero_sum_multisets(&map.target, bound)?;
    let t1_fail = exec.map(&targets, |b| {
        let mut found = false;
        map.preimages(b, None, &mut |x| {
            found = map.source.weighted_sum(x).is_ok_and(|s| s.is_zero());
            found
        });
        (!found).then(|| render(&map.target, b))
    });
    let t1_counterexample = t1_fail.into_iter().flatten().next();

    let sources = zero_sum_multisets(&map.source, bound)?;
    let t2_fail = exec.map(&sources, |a| {
        let img = map.apply_vec(a);
        let mut bad = None;
        // every zero-sum divisor of the image
        let mut sub = vec![0u32; img.len()];
        loop {
            let mut i = 0;
            while i < img.len() && sub[i] == img[i] {
                sub[i] = 0;
                i += 1;
            }
            if i == img.len() {
                break;
            }
            sub[i] += 1;
            if !map.target.weighted_sum(&sub).is_ok_and(|s| s.is_zero()) {
                continue;
            }
            let lifted = map.preimages(&sub, Some(a), &mut |x| {
                map.source.weighted_sum(x).is_ok_and(|s| s.is_zero())
            });
            if !lifted {
                bad = Some(format!(
                    "source {} with image factor {}",
                    render(&map.source, a),
                    render(&map.target, &sub)
                ));
                break;
            }
        }
        bad
    });
    let t2_counterexample = t2_fail.into_iter().flatten().next();
    Ok(TransferReport {
        bound,
        t1: t1_counterexample.is_none(),
        t1_counterexample,
        t2: t2_counterexample.is_none(),
        t2_counterexample,
    })
}

/// Compare `L(A)` with `L(θ(A))` for every source block of length ≤ bound;
/// returns the first mismatch.
pub fn lengths_preserved(map: &TransferMap, bound: u32, exec: &Exec) -> Result<Option<String>> {
    let sa = enumerate_atoms(map.source.clone(), DEFAULT_CAP, exec)?;
    let ta = enumerate_atoms(map.target.clone(), DEFAULT_CAP, exec)?;
    let (so, to) = (LengthOracle::new(&sa), LengthOracle::new(&ta));
    let sources = zero_sum_multisets(&map.source, bound)?;
    let bad = exec.map(&sources, |a| {
        let (l1, l2) = (so.lengths(a), to.lengths(&map.apply_vec(a)));
        (l1 != l2).then(|| format!("L({}) = {l1} but L(image) = {l2}", render(&map.source, a)))
    });
    Ok(bad.into_iter().flatten().next())
}

/// The reference maps.
pub mod builtin {
    use super::*;

    fn alphabet(g: &GroupSpec, coords: &[&[i64]]) -> Arc<Alphabet> {
        let els = coords
            .iter()
            .map(|c| g.element_from_coords(c).unwrap())
            .collect();
        Arc::new(Alphabet::new(g.clone(), els).unwrap())
    }

    fn build(src: &GroupSpec, tgt: &GroupSpec, pairs: &[(&[i64], &[i64])]) -> Result<TransferMap> {
        let s: Vec<&[i64]> = pairs.iter().map(|p| p.0).collect();
        let mut t: Vec<&[i64]> = pairs.iter().map(|p| p.1).collect();
        t.sort();
        t.dedup();
        let pairs: Vec<_> = pairs
            .iter()
            .map(|(a, b)| {
                (
                    src.element_from_coords(a).unwrap(),
                    tgt.element_from_coords(b).unwrap(),
                )
            })
            .collect();
        TransferMap::new(alphabet(src, &s), alphabet(tgt, &t), &pairs)
    }

    /// `{-2e,-e,0,e,2e} ⊂ Z` onto `Z/3`: `e, -2e ↦ g`, `-e, 2e ↦ -g`.
    pub fn five_point_to_c3() -> TransferMap {
        let z = GroupSpec::free(1);
        let c3 = GroupSpec::cyclic(3).unwrap();
        build(
            &z,
            &c3,
            &[
                (&[1], &[1]),
                (&[-2], &[1]),
                (&[-1], &[2]),
                (&[2], &[2]),
                (&[0], &[0]),
            ],
        )
        .unwrap()
    }

    /// Nine points in `Z²` onto `Z/4`.
    pub fn nine_point_to_c4() -> TransferMap {
        let z2 = GroupSpec::free(2);
        let c4 = GroupSpec::cyclic(4).unwrap();
        build(
            &z2,
            &c4,
            &[
                (&[1, 0], &[1]),
                (&[0, 1], &[1]),
                (&[-1, -2], &[1]),
                (&[-1, 0], &[3]),
                (&[0, -1], &[3]),
                (&[1, 2], &[3]),
                (&[0, 2], &[2]),
                (&[0, -2], &[2]),
                (&[0, 0], &[0]),
            ],
        )
        .unwrap()
    }

    /// `{1,-1} ⊂ Z` onto the zero of the trivial group.
    pub fn collapse() -> TransferMap {
        let z = GroupSpec::free(1);
        let t = GroupSpec::free(0);
        build(&z, &t, &[(&[1], &[]), (&[-1], &[])]).unwrap()
    }
}

/// A class group together with the number of prime divisors in each class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Characteristic {
    pub group: GroupSpec,
    pub classes: Vec<(GroupElement, u64)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharacteristicFile {
    pub group: GroupSpec,
    pub classes: Vec<ClassEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassEntry {
    pub element: ElementInput,
    pub multiplicity: u64,
}

impl Characteristic {
    pub fn new(group: GroupSpec, mut classes: Vec<(GroupElement, u64)>) -> Result<Self> {
        group.validate()?;
        classes.retain(|c| c.1 > 0);
        classes.sort();
        for (g, _) in &classes {
            group.check(g)?;
        }
        if classes.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidParameters("class listed twice".into()));
        }
        Ok(Characteristic { group, classes })
    }

    pub fn from_file(f: &CharacteristicFile) -> Result<Self> {
        let classes = f
            .classes
            .iter()
            .map(|c| Ok((c.element.resolve(&f.group)?, c.multiplicity)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(f.group.clone(), classes)
    }

    pub fn to_file(&self) -> CharacteristicFile {
        CharacteristicFile {
            group: self.group.clone(),
            classes: self
                .classes
                .iter()
                .map(|(g, m)| ClassEntry {
                    element: ElementInput::Coords(g.coords()),
                    multiplicity: *m,
                })
                .collect(),
        }
    }

    /// The classes containing primes, as an alphabet.
    pub fn alphabet(&self) -> Result<Alphabet> {
        Alphabet::new(
            self.group.clone(),
            self.classes.iter().map(|c| c.0.clone()).collect(),
        )
    }

    pub fn multiplicity(&self, g: &GroupElement) -> u64 {
        self.classes.iter().find(|c| &c.0 == g).map_or(0, |c| c.1)
    }

    pub fn total_primes(&self) -> u64 {
        self.classes.iter().map(|c| c.1).sum()
    }
}

fn binomial(n: u64, k: u64) -> Option<u128> {
    let k = k.min(n.saturating_sub(k));
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(r)
}

/// `Σ_U Π_g C(m_g + v_g(U) - 1, v_g(U))` over the atoms `U` of `B(G_P)`.
pub fn count_lifted_atoms(ch: &Characteristic, exec: &Exec) -> Result<u128> {
    let alphabet = Arc::new(ch.alphabet()?);
    let atoms = enumerate_atoms(alphabet.clone(), DEFAULT_CAP, exec)?;
    lifted_count_from_atoms(ch, &atoms)
}

pub fn lifted_count_from_atoms(ch: &Characteristic, atoms: &AtomSet) -> Result<u128> {
    let alphabet = atoms.alphabet();
    let mut total: u128 = 0;
    for u in atoms.vectors() {
        let mut term: u128 = 1;
        for (i, &v) in u.iter().enumerate() {
            if v == 0 {
                continue;
            }
            let m = ch.multiplicity(&alphabet.elements()[i]);
            let c =
                binomial(m + v as u64 - 1, v as u64).ok_or(Error::Overflow("lifted atom count"))?;
            term = term
                .checked_mul(c)
                .ok_or(Error::Overflow("lifted atom count"))?;
        }
        total = total
            .checked_add(term)
            .ok_or(Error::Overflow("lifted atom count"))?;
    }
    Ok(total)
}

/// Count atoms directly in the monoid of zero-sum sequences over labeled
/// primes (one column per prime).
pub fn count_lifted_atoms_brute_force(
    ch: &Characteristic,
    max_primes: u64,
    exec: &Exec,
) -> Result<u128> {
    if ch.total_primes() > max_primes {
        return Err(Error::SearchTooLarge(format!(
            "{} labeled primes",
            ch.total_primes()
        )));
    }
    let cols: Vec<GroupElement> = ch
        .classes
        .iter()
        .flat_map(|(g, m)| std::iter::repeat_n(g.clone(), *m as usize))
        .collect();
    Ok(hilbert_basis(&ch.group, &cols, DEFAULT_CAP, exec)?.len() as u128)
}
