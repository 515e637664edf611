//! Named alphabet families, alphabets read off defining matrices, and
//! structural checks on them.

use crate::atoms::{enumerate_atoms, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::{GroupElement, GroupSpec};
use crate::intmat;
use crate::sequence::Alphabet;
use crate::transfer::Characteristic;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Singularity {
    A(u32),
    D(u32),
    E6,
    E7,
    E8,
}

/// Preset families. The `Display`/`FromStr` names are the wire names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// `{±e_0,…,±e_r}` in `Z^r` with `e_1+…+e_r = α e_0`.
    Simplex { r: u32, alpha: u32 },
    /// Nonzero 0/1 vectors of `Z^r` and their negatives, optionally with 0.
    Cube { r: u32, include_zero: bool },
    /// `{-1,0,1}^q`.
    FullBox { q: u32 },
    /// `{-2,-1,0,1,2} ⊂ Z`.
    FivePoint,
    /// `{-2,-1,1,2} ⊂ Z`.
    FourPoint,
    /// `{0, ±e1, ±e2, ±2e2, ±(e1+2e2)} ⊂ Z²`.
    NinePoint,
    /// `q` disjoint copies of `±{e1, e2, e1+e2}`.
    SplitHexagon { q: u32 },
    /// `q` disjoint copies of `±{e1, e2, 2e2, e1+2e2}`.
    SplitOctagon { q: u32 },
    /// All of `Z/n`.
    Cyclic { n: u32 },
    /// `{-e,0,e} ⊂ Z` (split 1) or `±{(1,1),(1,0),(0,1)} ⊂ Z²` (split 2).
    FiniteType { split: u32 },
    /// Class group and prime counts of an ADE surface singularity.
    Hypersurface(Singularity),
}

impl fmt::Display for Singularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Singularity::A(n) => write!(f, "A{n}"),
            Singularity::D(n) => write!(f, "D{n}"),
            Singularity::E6 => write!(f, "E6"),
            Singularity::E7 => write!(f, "E7"),
            Singularity::E8 => write!(f, "E8"),
        }
    }
}

impl FromStr for Singularity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown singularity `{s}`"));
        let s = s.trim().to_ascii_uppercase();
        match s.as_str() {
            "E6" => return Ok(Singularity::E6),
            "E7" => return Ok(Singularity::E7),
            "E8" => return Ok(Singularity::E8),
            _ => {}
        }
        let (head, num) = s.split_at(1.min(s.len()));
        let n: u32 = num.trim_start_matches('_').parse().map_err(|_| bad())?;
        match head {
            "A" if n >= 1 => Ok(Singularity::A(n)),
            "D" if n >= 4 => Ok(Singularity::D(n)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Simplex { r, alpha } => write!(f, "thm74:{r},{alpha}"),
            Family::Cube { r, include_zero } => write!(f, "cube:{r},{}", u8::from(*include_zero)),
            Family::FullBox { q } => write!(f, "full_box:{q}"),
            Family::FivePoint => write!(f, "five_point"),
            Family::FourPoint => write!(f, "four_point"),
            Family::NinePoint => write!(f, "prop713"),
            Family::SplitHexagon { q } => write!(f, "split1:{q}"),
            Family::SplitOctagon { q } => write!(f, "split2:{q}"),
            Family::Cyclic { n } => write!(f, "cyclic:{n}"),
            Family::FiniteType { split } => write!(f, "frt_t:{split}"),
            Family::Hypersurface(s) => write!(f, "hypersurface:{s}"),
        }
    }
}

/// Wire names with their parameter lists, for `preset list`.
pub const FAMILY_NAMES: &[(&str, &str)] = &[
    ("thm74", "r,alpha"),
    ("cube", "r[,include_zero]"),
    ("full_box", "q"),
    ("five_point", ""),
    ("four_point", ""),
    ("prop713", ""),
    ("split1", "q"),
    ("split2", "q"),
    ("cyclic", "n"),
    ("frt_t", "split"),
    ("hypersurface", "A<n>|D<n>|E6|E7|E8"),
];

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        let name = name.trim();
        let nums = || -> Result<Vec<u32>> {
            args.split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad parameter in `{s}`")))
                })
                .collect()
        };
        let want = |k: usize| -> Result<Vec<u32>> {
            let v = nums()?;
            if v.len() == k {
                Ok(v)
            } else {
                Err(Error::Parse(format!("`{name}` takes {k} parameter(s)")))
            }
        };
        Ok(match name {
            "thm74" => {
                let v = want(2)?;
                Family::Simplex {
                    r: v[0],
                    alpha: v[1],
                }
            }
            "cube" => {
                let v = nums()?;
                match v.as_slice() {
                    [r] => Family::Cube {
                        r: *r,
                        include_zero: false,
                    },
                    [r, z] => Family::Cube {
                        r: *r,
                        include_zero: *z != 0,
                    },
                    _ => return Err(Error::Parse("`cube` takes r[,include_zero]".into())),
                }
            }
            "full_box" => Family::FullBox { q: want(1)?[0] },
            "five_point" => Family::FivePoint,
            "four_point" => Family::FourPoint,
            "prop713" => Family::NinePoint,
            "split1" => Family::SplitHexagon { q: want(1)?[0] },
            "split2" => Family::SplitOctagon { q: want(1)?[0] },
            "cyclic" => Family::Cyclic { n: want(1)?[0] },
            "frt_t" => Family::FiniteType { split: want(1)?[0] },
            "hypersurface" => Family::Hypersurface(args.parse()?),
            _ => return Err(Error::Parse(format!("unknown preset family `{name}`"))),
        })
    }
}

/// A closed-form value attached to a preset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expected {
    Int(u64),
    AtLeast(u64),
    Set(Vec<u64>),
    Contains(Vec<u64>),
    Ratio(u64, u64),
}

/// A computed value in the shape expectations are stated in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Computed {
    Int(u64),
    Set(Vec<u64>),
    Ratio(u64, u64),
}

impl Expected {
    pub fn matches(&self, c: &Computed) -> bool {
        match (self, c) {
            (Expected::Int(a), Computed::Int(b)) => a == b,
            (Expected::AtLeast(a), Computed::Int(b)) => b >= a,
            (Expected::Set(a), Computed::Set(b)) => a == b,
            (Expected::Contains(a), Computed::Set(b)) => a.iter().all(|x| b.contains(x)),
            (Expected::Ratio(p, q), Computed::Ratio(r, s)) => *q != 0 && *s != 0 && p * s == q * r,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedValue {
    pub value: Expected,
    pub formula: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Preset {
    pub name: String,
    pub alphabet: Alphabet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub characteristic: Option<Characteristic>,
    #[serde(default)]
    pub expected: BTreeMap<String, ExpectedValue>,
}

impl Preset {
    pub fn group(&self) -> &GroupSpec {
        self.alphabet.group()
    }

    pub fn alphabet_arc(&self) -> Arc<Alphabet> {
        Arc::new(self.alphabet.clone())
    }

    /// Prime count of a class; 1 when no characteristic is attached.
    pub fn multiplicity(&self, g: &GroupElement) -> u64 {
        self.characteristic
            .as_ref()
            .map_or(1, |c| c.multiplicity(g))
    }

    fn expect(&mut self, key: &str, value: Expected, formula: &str) {
        self.expected.insert(
            key.into(),
            ExpectedValue {
                value,
                formula: formula.into(),
            },
        );
    }
}

fn unit(dim: usize, i: usize, k: i64) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = k;
    v
}

fn with_negatives(vs: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let negs: Vec<Vec<i64>> = vs.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
    vs.into_iter().chain(negs).collect()
}

fn free_alphabet(dim: usize, vs: Vec<Vec<i64>>) -> Result<Alphabet> {
    let g = GroupSpec::free(dim);
    let els = vs
        .into_iter()
        .map(|v| g.element(v, vec![]))
        .collect::<Result<Vec<_>>>()?;
    Alphabet::new(g, els)
}

fn fibonacci(n: u32) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

fn cyclic_characteristic(n: u64, mults: impl Fn(u64) -> u64) -> Result<Characteristic> {
    let g = GroupSpec::cyclic(n)?;
    let classes = (0..n)
        .map(|r| Ok((g.element(vec![], vec![r as i64])?, mults(r))))
        .collect::<Result<Vec<_>>>()?;
    Characteristic::new(g, classes)
}

/// Class group and prime counts of the ADE singularities.
pub fn hypersurface_characteristic(s: Singularity) -> Result<Characteristic> {
    match s {
        Singularity::A(n) => cyclic_characteristic(n as u64 + 1, |_| 1),
        Singularity::D(n) if n % 2 == 0 => {
            let g = GroupSpec::new(0, vec![2, 2])?;
            let el = |a, b| g.element(vec![], vec![a, b]);
            let h = n as u64 / 2;
            Characteristic::new(
                g.clone(),
                vec![
                    (el(0, 0)?, h),
                    (el(1, 0)?, 1),
                    (el(0, 1)?, 1),
                    (el(1, 1)?, h - 1),
                ],
            )
        }
        Singularity::D(n) => {
            cyclic_characteristic(4, |r| if r % 2 == 1 { 1 } else { (n as u64 - 1) / 2 })
        }
        Singularity::E6 => cyclic_characteristic(3, |r| if r == 0 { 3 } else { 2 }),
        Singularity::E7 => cyclic_characteristic(2, |r| if r == 0 { 5 } else { 3 }),
        Singularity::E8 => {
            let g = GroupSpec::free(0);
            Characteristic::new(g.clone(), vec![(g.zero(), 9)])
        }
    }
}

pub fn build_preset(family: Family) -> Result<Preset> {
    let bad = |m: &str| Err(Error::InvalidParameters(format!("{family}: {m}")));
    let mut characteristic = None;
    let alphabet = match family {
        Family::Simplex { r, alpha } => {
            if r < 1 || alpha < 1 || r + alpha < 3 {
                return bad("need r ≥ 1, alpha ≥ 1 and r + alpha ≥ 3");
            }
            let d = r as usize;
            let mut vs: Vec<Vec<i64>> = (0..d).map(|i| unit(d, i, 1)).collect();
            let mut last = unit(d, 0, alpha as i64);
            for x in last.iter_mut().skip(1) {
                *x = -1;
            }
            vs.push(last);
            free_alphabet(d, with_negatives(vs))?
        }
        Family::Cube { r, include_zero } => {
            if !(1..=12).contains(&r) {
                return bad("need 1 ≤ r ≤ 12");
            }
            let d = r as usize;
            let mut vs: Vec<Vec<i64>> = (1u32..1 << r)
                .map(|m| (0..d).map(|i| (m >> i & 1) as i64).collect())
                .collect();
            vs = with_negatives(vs);
            if include_zero {
                vs.push(vec![0; d]);
            }
            free_alphabet(d, vs)?
        }
        Family::FullBox { q } => {
            if !(1..=8).contains(&q) {
                return bad("need 1 ≤ q ≤ 8");
            }
            let d = q as usize;
            let vs = (0..3u32.pow(q))
                .map(|mut m| {
                    (0..d)
                        .map(|_| {
                            let t = (m % 3) as i64 - 1;
                            m /= 3;
                            t
                        })
                        .collect()
                })
                .collect();
            free_alphabet(d, vs)?
        }
        Family::FivePoint => free_alphabet(1, (-2..=2).map(|x| vec![x]).collect())?,
        Family::FourPoint => free_alphabet(1, vec![vec![-2], vec![-1], vec![1], vec![2]])?,
        Family::NinePoint => {
            let mut vs = with_negatives(vec![vec![1, 0], vec![0, 1], vec![0, 2], vec![1, 2]]);
            vs.push(vec![0, 0]);
            free_alphabet(2, vs)?
        }
        Family::SplitHexagon { q } | Family::SplitOctagon { q } => {
            if q < 1 {
                return bad("need q ≥ 1");
            }
            let d = 2 * q as usize;
            let block: &[[i64; 2]] = if matches!(family, Family::SplitHexagon { .. }) {
                &[[1, 0], [0, 1], [1, 1]]
            } else {
                &[[1, 0], [0, 1], [0, 2], [1, 2]]
            };
            let mut vs = Vec::new();
            for k in 0..q as usize {
                for b in block {
                    let mut v = vec![0; d];
                    v[2 * k] = b[0];
                    v[2 * k + 1] = b[1];
                    vs.push(v);
                }
            }
            free_alphabet(d, with_negatives(vs))?
        }
        Family::Cyclic { n } => {
            if n < 2 {
                return bad("need n ≥ 2");
            }
            let ch = cyclic_characteristic(n as u64, |_| 1)?;
            let a = ch.alphabet()?;
            characteristic = Some(ch);
            a
        }
        Family::FiniteType { split } => match split {
            1 => free_alphabet(1, vec![vec![-1], vec![0], vec![1]])?,
            2 => free_alphabet(2, with_negatives(vec![vec![1, 1], vec![1, 0], vec![0, 1]]))?,
            _ => return bad("split must be 1 or 2"),
        },
        Family::Hypersurface(s) => {
            let ch = hypersurface_characteristic(s)?;
            let a = ch.alphabet()?;
            characteristic = Some(ch);
            a
        }
    };
    let mut p = Preset {
        name: family.to_string(),
        alphabet,
        characteristic,
        expected: BTreeMap::new(),
    };
    attach_expectations(&mut p, family);
    Ok(p)
}

fn attach_expectations(p: &mut Preset, family: Family) {
    match family {
        Family::Simplex { r, alpha } => {
            let (r, a) = (r as u64, alpha as u64);
            let d = r + a;
            p.expect("atom_count", Expected::Int(r + 3), "r + 3");
            p.expect("davenport", Expected::Int(d), "r + alpha");
            p.expect("delta", Expected::Set(vec![d - 2]), "{r + alpha - 2}");
            for key in ["catenary", "monotone_catenary", "omega", "tame"] {
                p.expect(key, Expected::Int(d), "r + alpha");
            }
            p.expect("elasticity", Expected::Ratio(d, 2), "(r + alpha)/2");
            p.expect("min_abs_irred_witness", Expected::Int(r + 1), "r + 1");
        }
        Family::Cube { r, .. } => {
            p.expect(
                "davenport",
                Expected::AtLeast(fibonacci(r + 2)),
                "at least F(r+2)",
            );
            if r >= 2 {
                p.expect(
                    "delta_star",
                    Expected::Contains((1..=2 * r as u64 - 3).collect()),
                    "contains [1, 2r-3]",
                );
            }
        }
        Family::FivePoint => {
            p.expect("davenport", Expected::Int(3), "matches Z/3");
            p.expect("delta", Expected::Set(vec![1]), "matches Z/3");
            p.expect("catenary", Expected::Int(3), "matches Z/3");
        }
        Family::NinePoint => {
            p.expect("davenport", Expected::Int(4), "matches Z/4");
            p.expect("delta", Expected::Set(vec![1, 2]), "matches Z/4");
            p.expect("catenary", Expected::Int(4), "matches Z/4");
        }
        Family::Cyclic { n } if n >= 3 => {
            let n = n as u64;
            p.expect("davenport", Expected::Int(n), "n");
            p.expect("catenary", Expected::Int(n), "n");
            p.expect("omega", Expected::Int(n), "n");
            p.expect("delta", Expected::Set((1..=n - 2).collect()), "[1, n-2]");
            p.expect("union_2", Expected::Set((2..=n).collect()), "[2, n]");
            p.expect("elasticity", Expected::Ratio(n, 2), "n/2");
            if n >= 5 {
                p.expect("tame", Expected::AtLeast(n + 1), "greater than n");
            }
        }
        Family::Hypersurface(Singularity::E8) => {
            p.expect("lifted_atom_count", Expected::Int(9), "9");
        }
        Family::Hypersurface(Singularity::E7) => {
            p.expect("lifted_atom_count", Expected::Int(11), "5 + C(4,2)");
        }
        Family::Hypersurface(Singularity::D(n)) if n % 2 == 0 => {
            let n = n as u64;
            let h = n / 2 - 1;
            p.expect(
                "lifted_atom_count",
                Expected::Int(n / 2 + 2 + h * (h + 1) / 2 + h),
                "n/2 + 2 + C((n-2)/2 + 1, 2) + (n-2)/2",
            );
            p.expect(
                "lifted_atom_count_quadratic_form",
                Expected::Int((n * n + 8) / 4),
                "(n^2 + 8)/4",
            );
        }
        _ => {}
    }
}

/// Input format for alphabets read off a defining matrix.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DefiningMatrix {
    pub rows: usize,
    pub columns: Vec<MatrixColumn>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixColumn {
    pub vec: Vec<i64>,
    #[serde(default = "one")]
    pub mult: u64,
}

fn one() -> u64 {
    1
}

/// Classes are the distinct columns; prime counts add up over equal columns.
/// With `reduce`, rows are first brought to echelon form by unimodular row
/// operations and zero rows are dropped, which keeps the kernel.
pub fn from_matrix(m: &DefiningMatrix, reduce: bool) -> Result<Preset> {
    if m.columns.iter().any(|c| c.vec.len() != m.rows) {
        return Err(Error::InvalidParameters(
            "column length differs from row count".into(),
        ));
    }
    let mut cols: Vec<Vec<i64>> = m.columns.iter().map(|c| c.vec.clone()).collect();
    let mut dim = m.rows;
    if reduce {
        let mut rows: Vec<Vec<i128>> = (0..m.rows)
            .map(|i| cols.iter().map(|c| c[i] as i128).collect())
            .collect();
        let r = intmat::eliminate(&mut rows, cols.len())?;
        dim = r;
        for (j, c) in cols.iter_mut().enumerate() {
            *c = (0..r)
                .map(|i| i64::try_from(rows[i][j]).map_err(|_| Error::Overflow("row reduction")))
                .collect::<Result<_>>()?;
        }
    }
    let g = GroupSpec::free(dim);
    let mut classes: BTreeMap<GroupElement, u64> = BTreeMap::new();
    for (c, col) in cols.into_iter().zip(&m.columns) {
        *classes.entry(g.element(c, vec![])?).or_default() += col.mult;
    }
    let ch = Characteristic::new(g.clone(), classes.into_iter().collect())?;
    let alphabet = ch.alphabet()?;
    Ok(Preset {
        name: "matrix".into(),
        alphabet,
        characteristic: Some(ch),
        expected: BTreeMap::new(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorTheoryVerdict {
    /// `None` when a search bound was hit.
    pub holds: Option<bool>,
    pub reason: String,
}

/// Whether every element lies in the support of some atom.
pub fn check_cofinal(alphabet: &Arc<Alphabet>, exec: &Exec) -> Result<bool> {
    let atoms = enumerate_atoms(alphabet.clone(), DEFAULT_CAP, exec)?;
    Ok((0..alphabet.len()).all(|g| !atoms.containing(g).is_empty()))
}

/// Whether `B(G_P) ↪ F(P)` is a divisor theory: the classes must generate a
/// group as a monoid (cofinality), and each class `g` holding a single prime
/// must be a sum of the other classes.
pub fn check_divisor_theory(p: &Preset, exec: &Exec) -> Result<DivisorTheoryVerdict> {
    let a = p.alphabet_arc();
    let g = a.group().clone();
    let verdict = |holds, reason: String| Ok(DivisorTheoryVerdict { holds, reason });
    match check_cofinal(&a, exec) {
        Ok(false) => return verdict(Some(false), "some class lies in no atom".into()),
        Err(Error::BoundExceeded(m)) => return verdict(None, m),
        Err(e) => return Err(e),
        Ok(true) => {}
    }
    for (i, x) in a.elements().iter().enumerate() {
        if p.multiplicity(x) >= 2 || x.is_zero() {
            continue;
        }
        let neg = g.neg(x)?;
        let mut els: Vec<GroupElement> = a
            .elements()
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, e)| e.clone())
            .collect();
        els.push(neg.clone());
        let sub = Arc::new(Alphabet::new_dedup(g.clone(), els)?);
        let k = sub.index_of(&neg).expect("just inserted");
        let atoms = match enumerate_atoms(sub, DEFAULT_CAP, exec) {
            Ok(s) => s,
            Err(Error::BoundExceeded(m)) => return verdict(None, m),
            Err(e) => return Err(e),
        };
        let reachable = atoms
            .containing(k)
            .iter()
            .any(|&u| crate::sequence::mv::len(atoms.get(u)) >= 2);
        if !reachable {
            return verdict(
                Some(false),
                format!("{x} is not a sum of the other classes"),
            );
        }
    }
    verdict(
        Some(true),
        "all classes with one prime are sums of the others".into(),
    )
}

/// Connected components of the alphabet, linking elements that occur
/// together in some atom. Elements in no atom form singletons.
pub fn decompose(alphabet: &Arc<Alphabet>, exec: &Exec) -> Result<Vec<Vec<GroupElement>>> {
    let atoms = enumerate_atoms(alphabet.clone(), DEFAULT_CAP, exec)?;
    let n = alphabet.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for u in atoms.vectors() {
        let supp: Vec<usize> = (0..n).filter(|&i| u[i] > 0).collect();
        for w in supp.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut comps: BTreeMap<usize, Vec<GroupElement>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        comps
            .entry(r)
            .or_default()
            .push(alphabet.elements()[i].clone());
    }
    Ok(comps.into_values().collect())
}
