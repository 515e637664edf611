//! Small exact integer linear algebra over `i128` with overflow detection.

use crate::error::{Error, Result};
use num_integer::Integer;

/// Row-reduce over Z with unimodular row operations so that, column by column
/// over `0..ncols`, at most one of the not-yet-pivoted rows keeps a nonzero
/// entry. Returns the number of pivots; afterwards `rows[..pivots]` are the
/// pivot rows (upper triangular) and `rows[pivots..]` vanish on `0..ncols`.
pub fn eliminate(rows: &mut [Vec<i128>], ncols: usize) -> Result<usize> {
    let mut top = 0;
    for col in 0..ncols {
        if top == rows.len() {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in top..rows.len() {
                let v = rows[i][col];
                if v != 0 && best.is_none_or(|b| v.abs() < rows[b][col].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            rows.swap(top, b);
            let pivot = rows[top][col];
            let mut done = true;
            for i in top + 1..rows.len() {
                let v = rows[i][col];
                if v == 0 {
                    continue;
                }
                let q = Integer::div_floor(&v, &pivot);
                if q != 0 {
                    let (head, tail) = rows.split_at_mut(i);
                    let p = &head[top];
                    for (x, y) in tail[0].iter_mut().zip(p.iter()) {
                        *x = y
                            .checked_mul(q)
                            .and_then(|t| x.checked_sub(t))
                            .ok_or(Error::Overflow("integer elimination"))?;
                    }
                }
                if rows[i][col] != 0 {
                    done = false;
                }
            }
            if done {
                top += 1;
                break;
            }
        }
    }
    Ok(top)
}

/// Rank over Q of an integer matrix given by rows.
pub fn rank(rows: &[Vec<i64>]) -> Result<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    eliminate(&mut m, ncols)
}

/// For nonnegative vectors `vs` in Z^n, the nonnegative generator of the
/// subgroup `{ sum(x) : x in Z^k, sum_j x_j vs[j] = 0 }` of Z.
pub fn relation_length_gcd(vs: &[Vec<u32>]) -> Result<u64> {
    let n = vs.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<i128>> = vs
        .iter()
        .map(|v| {
            let mut row: Vec<i128> = v.iter().map(|&x| x as i128).collect();
            row.push(1);
            row
        })
        .collect();
    let p = eliminate(&mut m, n)?;
    let g = m[p..].iter().fold(0i128, |g, r| g.gcd(&r[n]));
    Ok(g as u64)
}
