//! Finitely generated abelian groups `Z^r ⊕ Z/n_1 ⊕ … ⊕ Z/n_t` and their elements.

use crate::error::{Error, Result};
use crate::intmat;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::fmt;

/// The group `Z^free_rank ⊕ Z/torsion[0] ⊕ …`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

/// An element with free coordinates and reduced torsion residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    #[serde(default)]
    pub free: Vec<i64>,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

impl GroupSpec {
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Result<Self> {
        let g = GroupSpec { free_rank, torsion };
        g.validate()?;
        Ok(g)
    }

    pub fn free(r: usize) -> Self {
        GroupSpec {
            free_rank: r,
            torsion: vec![],
        }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(0, vec![n])
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(n) = self.torsion.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidGroup(format!(
                "torsion modulus {n} must be at least 2"
            )));
        }
        Ok(())
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Number of elements, or `None` for infinite groups.
    pub fn order(&self) -> Option<u64> {
        if self.free_rank > 0 {
            return None;
        }
        self.torsion.iter().try_fold(1u64, |a, &n| a.checked_mul(n))
    }

    /// Total number of coordinates (free followed by torsion).
    pub fn dim(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            free: vec![0; self.free_rank],
            torsion: vec![0; self.torsion.len()],
        }
    }

    /// Build an element, reducing torsion coordinates modulo their moduli.
    pub fn element(&self, free: Vec<i64>, torsion: Vec<i64>) -> Result<GroupElement> {
        if free.len() != self.free_rank || torsion.len() != self.torsion.len() {
            return Err(Error::InvalidElement(format!(
                "expected {} free and {} torsion coordinates, got {} and {}",
                self.free_rank,
                self.torsion.len(),
                free.len(),
                torsion.len()
            )));
        }
        let torsion = torsion
            .iter()
            .zip(&self.torsion)
            .map(|(&t, &n)| t.rem_euclid(n as i64) as u64)
            .collect();
        Ok(GroupElement { free, torsion })
    }

    /// Build an element from a flat coordinate list (free first, then torsion).
    pub fn element_from_coords(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.dim() {
            return Err(Error::InvalidElement(format!(
                "expected {} coordinates, got {}",
                self.dim(),
                coords.len()
            )));
        }
        let (f, t) = coords.split_at(self.free_rank);
        self.element(f.to_vec(), t.to_vec())
    }

    pub fn check(&self, g: &GroupElement) -> Result<()> {
        let ok = g.free.len() == self.free_rank
            && g.torsion.len() == self.torsion.len()
            && g.torsion.iter().zip(&self.torsion).all(|(t, n)| t < n);
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidElement(g.to_string()))
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        let free = a
            .free
            .iter()
            .zip(&b.free)
            .map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow("group addition")))
            .collect::<Result<_>>()?;
        let torsion = a
            .torsion
            .iter()
            .zip(&b.torsion)
            .zip(&self.torsion)
            .map(|((x, y), n)| ((*x as u128 + *y as u128) % *n as u128) as u64)
            .collect();
        Ok(GroupElement { free, torsion })
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        let free = a
            .free
            .iter()
            .map(|x| x.checked_neg().ok_or(Error::Overflow("group negation")))
            .collect::<Result<_>>()?;
        let torsion = a
            .torsion
            .iter()
            .zip(&self.torsion)
            .map(|(x, n)| (n - x) % n)
            .collect();
        Ok(GroupElement { free, torsion })
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.add(a, &self.neg(b)?)
    }

    pub fn scale(&self, k: i64, a: &GroupElement) -> Result<GroupElement> {
        let free = a
            .free
            .iter()
            .map(|x| x.checked_mul(k).ok_or(Error::Overflow("group scaling")))
            .collect::<Result<_>>()?;
        let torsion = a
            .torsion
            .iter()
            .zip(&self.torsion)
            .map(|(x, n)| ((*x as i128 * k as i128).rem_euclid(*n as i128)) as u64)
            .collect();
        Ok(GroupElement { free, torsion })
    }

    /// Order of `g`; 0 means infinite order.
    pub fn element_order(&self, g: &GroupElement) -> u64 {
        if g.free.iter().any(|&x| x != 0) {
            return 0;
        }
        g.torsion
            .iter()
            .zip(&self.torsion)
            .fold(1u64, |acc, (&t, &n)| acc.lcm(&(n / t.gcd(&n))))
    }

    /// Torsion-free rank of the subgroup generated by `gens`.
    ///
    /// Projection to the free part has finite kernel on any finitely generated
    /// subgroup, so this is the rank over Q of the free coordinates.
    pub fn subgroup_rank(&self, gens: &[GroupElement]) -> Result<usize> {
        let rows: Vec<Vec<i64>> = gens.iter().map(|g| g.free.clone()).collect();
        intmat::rank(&rows)
    }
}

impl GroupElement {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(|&x| x == 0) && self.torsion.iter().all(|&x| x == 0)
    }

    /// Coordinates as a flat list (free first, then torsion).
    pub fn coords(&self) -> Vec<i64> {
        self.free
            .iter()
            .copied()
            .chain(self.torsion.iter().map(|&t| t as i64))
            .collect()
    }
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for GroupElement {
    /// Free part in parentheses, torsion part in brackets: `(1,-1)[2]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.free.is_empty() || self.torsion.is_empty() {
            write!(f, "({})", join(&self.free))?;
        }
        if !self.torsion.is_empty() {
            write!(f, "[{}]", join(&self.torsion))?;
        }
        Ok(())
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|n| format!("Z/{n}")));
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Element as written in input files: a flat coordinate list (free first,
/// then torsion) or an explicit object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementInput {
    Coords(Vec<i64>),
    Parts {
        #[serde(default)]
        free: Vec<i64>,
        #[serde(default)]
        torsion: Vec<i64>,
    },
}

impl ElementInput {
    pub fn resolve(&self, group: &GroupSpec) -> Result<GroupElement> {
        match self {
            ElementInput::Coords(c) => group.element_from_coords(c),
            ElementInput::Parts { free, torsion } => group.element(free.clone(), torsion.clone()),
        }
    }
}

/// Parse one element written as `(a,b,…)`, `[t,…]` or `(a,…)[t,…]`.
pub fn parse_element(group: &GroupSpec, s: &str) -> Result<GroupElement> {
    let s = s.trim();
    let err = || Error::Parse(format!("malformed element `{s}`"));
    let ints = |body: &str| -> Result<Vec<i64>> {
        let body = body.trim();
        if body.is_empty() {
            return Ok(vec![]);
        }
        body.split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| err()))
            .collect()
    };
    let (free_part, rest) = if let Some(stripped) = s.strip_prefix('(') {
        let close = stripped.find(')').ok_or_else(err)?;
        (ints(&stripped[..close])?, stripped[close + 1..].trim())
    } else {
        (vec![], s)
    };
    let torsion_part = if let Some(stripped) = rest.strip_prefix('[') {
        let body = stripped.strip_suffix(']').ok_or_else(err)?;
        ints(body)?
    } else if rest.is_empty() {
        vec![]
    } else {
        return Err(err());
    };
    let free = if free_part.is_empty() && group.free_rank > 0 {
        return Err(err());
    } else {
        free_part
    };
    group.element(free, torsion_part)
}
