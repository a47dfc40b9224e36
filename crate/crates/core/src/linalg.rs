//! Small exact linear algebra over the rationals.
//!
//! Matrices are dense `Vec<Vec<_>>` in row-major order. Everything here runs
//! on [`BigRational`] internally so intermediate growth cannot overflow;
//! inputs and outputs use the crate-wide [`Q`] type.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::Q;

pub(crate) fn big(q: &Q) -> BigRational {
    BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

pub(crate) fn small(b: &BigRational) -> Q {
    let n = b.numer().to_i64().expect("rational numerator exceeds i64");
    let d = b.denom().to_i64().expect("rational denominator exceeds i64");
    Q::new(n, d)
}

fn to_big(m: &[Vec<Q>]) -> Vec<Vec<BigRational>> {
    m.iter().map(|r| r.iter().map(big).collect()).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(a: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let v = &a[r][j] * &f;
                    a[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Q>]) -> usize {
    let mut a = to_big(m);
    rref(&mut a).len()
}

pub fn determinant(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = to_big(m);
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for i in (c + 1)..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &a[c][c];
                for j in c..n {
                    let v = &a[c][j] * &f;
                    a[i][j] -= v;
                }
            }
        }
    }
    small(&det)
}

pub fn determinant_int(m: &[Vec<i64>]) -> i64 {
    let q: Vec<Vec<Q>> = m
        .iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x)).collect())
        .collect();
    let d = determinant(&q);
    assert!(d.is_integer());
    d.to_integer()
}

pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = to_big(m)
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    let piv = rref(&mut a);
    if piv.len() < n || piv.iter().enumerate().any(|(i, &c)| i != c) {
        return None;
    }
    Some(
        a.iter()
            .map(|row| row[n..].iter().map(small).collect())
            .collect(),
    )
}

/// Solves `m x = b`; `None` if inconsistent. Free variables are set to zero.
pub fn solve(m: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .zip(b)
        .map(|(r, x)| r.iter().chain(std::iter::once(x)).map(big).collect())
        .collect();
    let piv = rref(&mut a);
    if piv.contains(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (i, &c) in piv.iter().enumerate() {
        x[c] = small(&a[i][cols]);
    }
    Some(x)
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn mat_vec(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let bt = transpose(b);
    a.iter()
        .map(|r| {
            bt.iter()
                .map(|c| r.iter().zip(c).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect()
}

/// Scales a rational vector to the primitive integer vector on the same ray.
pub fn primitive_integer(v: &[Q]) -> Vec<i64> {
    let l = v.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i64> = v.iter().map(|x| (x * Q::from_integer(l)).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, x| acc.gcd(x));
    if g == 0 {
        ints
    } else {
        ints.into_iter().map(|x| x / g).collect()
    }
}

/// True when `a` and `b` are nonzero and span the same open half-line.
pub fn same_ray(a: &[Q], b: &[Q]) -> bool {
    let pa = primitive_integer(a);
    let pb = primitive_integer(b);
    pa.iter().any(|x| *x != 0) && pa == pb
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Q::from_integer(x)).collect())
            .collect()
    }

    #[test]
    fn inverse_of_a2_cartan() {
        let c = q(&[&[2, -1], &[-1, 2]]);
        let inv = inverse(&c).unwrap();
        assert_eq!(inv[0][0], Q::new(2, 3));
        assert_eq!(inv[0][1], Q::new(1, 3));
        assert_eq!(mat_mul(&c, &inv), q(&[&[1, 0], &[0, 1]]));
        assert_eq!(determinant(&c), Q::from_integer(3));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = q(&[&[1, 2], &[2, 4]]);
        assert!(inverse(&m).is_none());
        assert_eq!(rank(&m), 1);
        assert_eq!(determinant(&m), Q::zero());
    }

    #[test]
    fn solve_reports_inconsistency() {
        let m = q(&[&[1, 1], &[2, 2]]);
        assert!(solve(&m, &[Q::from_integer(1), Q::from_integer(3)]).is_none());
        let x = solve(&m, &[Q::from_integer(1), Q::from_integer(2)]).unwrap();
        assert_eq!(x[0] + x[1], Q::from_integer(1));
    }

    #[test]
    fn primitive_vectors() {
        let v = [Q::new(1, 2), Q::new(-3, 4), Q::zero()];
        assert_eq!(primitive_integer(&v), vec![2, -3, 0]);
        assert!(same_ray(&v, &[Q::from_integer(2), Q::from_integer(-3), Q::zero()]));
        assert!(!same_ray(&v, &[Q::from_integer(-2), Q::from_integer(3), Q::zero()]));
    }
}
