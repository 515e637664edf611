//! Minimal nonnegative integer solutions of `Σ x_j g_j = 0` in a finitely
//! generated abelian group.
//!
//! Torsion coordinates are lifted to integer equations with one slack column
//! `-n_i` per modulus, the homogeneous system is solved with the
//! Contejean–Devie completion procedure, and solutions are projected back.
//! Residues are taken in `[0, n_i)`, so the slack value is a nondecreasing
//! function of `x` and projection preserves minimality.

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::{GroupElement, GroupSpec};
use crate::sequence::mv;
use std::collections::HashSet;

struct System {
    /// Integer columns of the lifted system (original columns, then slacks).
    cols: Vec<Vec<i64>>,
    /// Number of original (non-slack) columns.
    n: usize,
}

impl System {
    fn new(group: &GroupSpec, columns: &[GroupElement]) -> Self {
        let mut cols: Vec<Vec<i64>> = columns.iter().map(GroupElement::coords).collect();
        let d = group.dim();
        for (i, &m) in group.torsion.iter().enumerate() {
            let mut c = vec![0i64; d];
            c[group.free_rank + i] = -(m as i64);
            cols.push(c);
        }
        System {
            cols,
            n: columns.len(),
        }
    }

    fn dot(&self, defect: &[i64], j: usize) -> Result<i128> {
        let mut s: i128 = 0;
        for (a, b) in defect.iter().zip(&self.cols[j]) {
            s = s
                .checked_add(*a as i128 * *b as i128)
                .ok_or(Error::Overflow("completion procedure"))?;
        }
        Ok(s)
    }
}

#[derive(Clone)]
struct Node {
    x: Vec<u32>,
    defect: Vec<i64>,
}

fn dominated(x: &[u32], basis: &[Vec<u32>]) -> bool {
    basis.iter().any(|b| mv::divides(b, x))
}

/// All minimal nonzero `x ∈ N^k` with `Σ x_j columns[j] = 0`, sorted by
/// `(Σx, x)`. Columns may repeat. Fails with `BoundExceeded` when a candidate
/// needs a multiplicity above `cap`.
pub fn hilbert_basis(
    group: &GroupSpec,
    columns: &[GroupElement],
    cap: u32,
    exec: &Exec,
) -> Result<Vec<Vec<u32>>> {
    let sys = System::new(group, columns);
    let total = sys.cols.len();
    let dim = group.dim();
    let mut frontier: Vec<Node> = (0..total)
        .map(|j| {
            let mut x = vec![0u32; total];
            x[j] = 1;
            Node {
                x,
                defect: sys.cols[j].clone(),
            }
        })
        .collect();
    let mut basis: Vec<Vec<u32>> = Vec::new();

    while !frontier.is_empty() {
        let (solved, open): (Vec<Node>, Vec<Node>) = frontier
            .into_iter()
            .partition(|nd| nd.defect.iter().all(|&v| v == 0));
        basis.extend(solved.into_iter().map(|nd| nd.x));

        let step = |nd: &Node| -> Result<Vec<Node>> {
            let mut out = Vec::new();
            for j in 0..total {
                if sys.dot(&nd.defect, j)? >= 0 {
                    continue;
                }
                let mut x = nd.x.clone();
                x[j] += 1;
                if j < sys.n && x[j] > cap {
                    return Err(Error::BoundExceeded(format!(
                        "multiplicity cap {cap} reached during atom enumeration"
                    )));
                }
                if dominated(&x, &basis) {
                    continue;
                }
                let mut defect = nd.defect.clone();
                for (dv, cv) in defect.iter_mut().zip(&sys.cols[j]) {
                    *dv = dv
                        .checked_add(*cv)
                        .ok_or(Error::Overflow("completion procedure"))?;
                }
                out.push(Node { x, defect });
            }
            Ok(out)
        };
        let expanded: Vec<Result<Vec<Node>>> = exec.map(&open, step);
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut next = Vec::new();
        for r in expanded {
            for nd in r? {
                if seen.insert(nd.x.clone()) {
                    next.push(nd);
                }
            }
        }
        next.sort_by(|a, b| a.x.cmp(&b.x));
        debug_assert!(next.iter().all(|nd| nd.defect.len() == dim));
        frontier = next;
    }

    let mut projected: Vec<Vec<u32>> = basis.into_iter().map(|x| x[..sys.n].to_vec()).collect();
    projected.retain(|x| x.iter().any(|&v| v > 0));
    projected.sort_by(|a, b| mv::len(a).cmp(&mv::len(b)).then_with(|| a.cmp(b)));
    projected.dedup();
    let minimal: Vec<Vec<u32>> = projected
        .iter()
        .filter(|x| !projected.iter().any(|y| y != *x && mv::divides(y, x)))
        .cloned()
        .collect();
    Ok(minimal)
}
