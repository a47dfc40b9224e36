//! Exact feasibility for `G t = b, t >= 0` (cone membership).
//!
//! Phase-one simplex on a dense tableau with Bland's rule, over big
//! rationals. Sizes here are tiny (a handful of rows, a few dozen columns).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg::big;
use crate::Q;

/// Is `target` a nonnegative combination of `generators`?
pub fn cone_contains(generators: &[Vec<Q>], target: &[Q]) -> bool {
    let g: Vec<Vec<BigRational>> = generators
        .iter()
        .map(|v| v.iter().map(big).collect())
        .collect();
    let b: Vec<BigRational> = target.iter().map(big).collect();
    feasible(&g, &b)
}

pub fn cone_contains_int(generators: &[Vec<i64>], target: &[i64]) -> bool {
    let conv = |v: &[i64]| -> Vec<BigRational> {
        v.iter()
            .map(|&x| BigRational::from_integer(BigInt::from(x)))
            .collect()
    };
    let g: Vec<Vec<BigRational>> = generators.iter().map(|v| conv(v)).collect();
    feasible(&g, &conv(target))
}

/// A cone is pointed iff zero is not a nontrivial nonnegative combination.
pub fn is_pointed(generators: &[Vec<Q>]) -> bool {
    if generators.is_empty() {
        return true;
    }
    let dim = generators[0].len();
    let aug: Vec<Vec<Q>> = generators
        .iter()
        .map(|g| {
            let mut v = g.clone();
            v.push(Q::one());
            v
        })
        .collect();
    let mut target = vec![Q::zero(); dim];
    target.push(Q::one());
    !cone_contains(&aug, &target)
}

fn feasible(gens: &[Vec<BigRational>], target: &[BigRational]) -> bool {
    let rows = target.len();
    if target.iter().all(Zero::is_zero) {
        return true;
    }
    let m = gens.len();
    if m == 0 {
        return false;
    }
    // tableau: rows x (m + rows + 1); last column is the right-hand side
    let width = m + rows + 1;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(rows);
    for i in 0..rows {
        let flip = target[i].is_negative();
        let mut row = Vec::with_capacity(width);
        for g in gens {
            let v = g[i].clone();
            row.push(if flip { -v } else { v });
        }
        for k in 0..rows {
            row.push(if k == i {
                BigRational::one()
            } else {
                BigRational::zero()
            });
        }
        row.push(if flip {
            -target[i].clone()
        } else {
            target[i].clone()
        });
        t.push(row);
    }
    let mut basis: Vec<usize> = (m..m + rows).collect();
    // reduced costs of phase one: minimise the sum of artificials
    let mut cost = vec![BigRational::zero(); width];
    for row in &t {
        for j in 0..m {
            cost[j] -= &row[j];
        }
        cost[width - 1] -= &row[width - 1];
    }
    loop {
        let Some(enter) = (0..m + rows).find(|&j| cost[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..rows {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // unbounded direction cannot occur in phase one
            break;
        };
        let inv = t[r][enter].recip();
        for x in t[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= p * &f;
                }
            }
        }
        if !cost[enter].is_zero() {
            let f = cost[enter].clone();
            for (x, p) in cost.iter_mut().zip(&pivot_row) {
                *x -= p * &f;
            }
        }
        basis[r] = enter;
    }
    cost[width - 1].is_zero()
}
