//! The dominance orders `<=`, `<=_Q`, `<=^lambda`, `<=^lambda_Q`.

use std::collections::HashSet;

use serde::Serialize;

use crate::cartan::{PositiveRoot, RootSystem, Weight};
use crate::error::{Error, Result};
use crate::lp;
use crate::weights::WeightSet;
use crate::Q;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum OrderKind {
    Dominance,
    RationalDominance,
    LambdaDominance(Weight),
    LambdaRationalDominance(Weight),
}

impl OrderKind {
    pub fn lambda(&self) -> Option<&Weight> {
        match self {
            OrderKind::LambdaDominance(l) | OrderKind::LambdaRationalDominance(l) => Some(l),
            _ => None,
        }
    }
}

/// Positive roots whose support meets `Supp(lambda)`.
pub fn phi_plus_lambda(rs: &RootSystem, lambda: &Weight) -> Result<Vec<PositiveRoot>> {
    rs.check_rank(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.clone()));
    }
    Ok(phi_plus_support(rs, lambda.support_mask()))
}

pub(crate) fn phi_plus_support(rs: &RootSystem, support: u64) -> Vec<PositiveRoot> {
    rs.positive_roots()
        .iter()
        .filter(|b| b.support().any(|i| support & (1 << i) != 0))
        .cloned()
        .collect()
}

/// A prepared comparison for one order; reuse it for many pairs.
#[derive(Debug, Clone)]
pub struct Comparator<'a> {
    rs: &'a RootSystem,
    kind: Kind,
}

#[derive(Debug, Clone)]
enum Kind {
    Dominance,
    Rational,
    Lambda(LambdaRoots),
    LambdaRational(Vec<Vec<Q>>),
}

/// `Phi^+(lambda)` by decreasing height, with suffix support masks.
#[derive(Debug, Clone)]
struct LambdaRoots {
    roots: Vec<Vec<i64>>,
    suffix_support: Vec<u64>,
    cone: Vec<Vec<Q>>,
}

impl<'a> Comparator<'a> {
    pub fn new(rs: &'a RootSystem, order: &OrderKind) -> Result<Self> {
        let kind = match order {
            OrderKind::Dominance => Kind::Dominance,
            OrderKind::RationalDominance => Kind::Rational,
            OrderKind::LambdaDominance(l) => {
                let mut roots: Vec<Vec<i64>> = phi_plus_lambda(rs, l)?
                    .into_iter()
                    .map(|r| r.coords)
                    .collect();
                roots.sort_by_key(|r| std::cmp::Reverse(r.iter().sum::<i64>()));
                let mut suffix_support = vec![0u64; roots.len() + 1];
                for k in (0..roots.len()).rev() {
                    let m = roots[k]
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| **c != 0)
                        .fold(0u64, |m, (i, _)| m | (1 << i));
                    suffix_support[k] = suffix_support[k + 1] | m;
                }
                let cone = to_q(&roots);
                Kind::Lambda(LambdaRoots {
                    roots,
                    suffix_support,
                    cone,
                })
            }
            OrderKind::LambdaRationalDominance(l) => {
                let roots: Vec<Vec<i64>> = phi_plus_lambda(rs, l)?
                    .into_iter()
                    .map(|r| r.coords)
                    .collect();
                Kind::LambdaRational(to_q(&roots))
            }
        };
        Ok(Comparator { rs, kind })
    }

    /// `nu <= mu`.
    pub fn le(&self, nu: &Weight, mu: &Weight) -> bool {
        let d = self.rs.root_coords(&(mu - nu));
        let c = d.coords();
        match &self.kind {
            Kind::Dominance => d.is_integral() && d.is_nonneg(),
            Kind::Rational => d.is_nonneg(),
            Kind::LambdaRational(cone) => d.is_nonneg() && lp::cone_contains(cone, c),
            Kind::Lambda(lr) => {
                if !(d.is_integral() && d.is_nonneg()) {
                    return false;
                }
                let target: Vec<i64> = c.iter().map(|x| x.to_integer()).collect();
                lr.contains(&target)
            }
        }
    }

    pub fn lt(&self, nu: &Weight, mu: &Weight) -> bool {
        nu != mu && self.le(nu, mu)
    }
}

fn to_q(v: &[Vec<i64>]) -> Vec<Vec<Q>> {
    v.iter()
        .map(|r| r.iter().map(|&x| Q::from_integer(x)).collect())
        .collect()
}

impl LambdaRoots {
    /// Membership of a nonnegative integer vector in `N[Phi^+(lambda)]`.
    fn contains(&self, target: &[i64]) -> bool {
        if target.iter().all(|&x| x == 0) {
            return true;
        }
        let tq: Vec<Q> = target.iter().map(|&x| Q::from_integer(x)).collect();
        if !lp::cone_contains(&self.cone, &tq) {
            return false;
        }
        let mut failed = HashSet::new();
        self.search(0, &mut target.to_vec(), &mut failed)
    }

    fn search(&self, k: usize, rest: &mut Vec<i64>, failed: &mut HashSet<(usize, Vec<i64>)>) -> bool {
        let support = rest
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .fold(0u64, |m, (i, _)| m | (1 << i));
        if support == 0 {
            return true;
        }
        if k == self.roots.len() || support & !self.suffix_support[k] != 0 {
            return false;
        }
        if failed.contains(&(k, rest.clone())) {
            return false;
        }
        let root = &self.roots[k];
        let bound = root
            .iter()
            .zip(rest.iter())
            .filter(|(r, _)| **r != 0)
            .map(|(r, x)| x / r)
            .min()
            .unwrap_or(0);
        for c in 0..=bound {
            for (x, r) in rest.iter_mut().zip(root) {
                *x -= c * r;
            }
            let ok = self.search(k + 1, rest, failed);
            for (x, r) in rest.iter_mut().zip(root) {
                *x += c * r;
            }
            if ok {
                return true;
            }
        }
        failed.insert((k, rest.clone()));
        false
    }
}

/// Is `nu <= mu` in the given order?
pub fn compare(rs: &RootSystem, nu: &Weight, mu: &Weight, order: &OrderKind) -> Result<bool> {
    rs.check_rank(nu)?;
    rs.check_rank(mu)?;
    Ok(Comparator::new(rs, order)?.le(nu, mu))
}

/// Elements of `s` not strictly below another element, in canonical order.
pub fn maximal_elements(rs: &RootSystem, s: &[Weight], order: &OrderKind) -> Result<WeightSet> {
    for w in s {
        rs.check_rank(w)?;
    }
    let cmp = Comparator::new(rs, order)?;
    Ok(maximal_with(rs, s, &cmp))
}

pub(crate) fn maximal_with(rs: &RootSystem, s: &[Weight], cmp: &Comparator) -> WeightSet {
    let set = WeightSet::from_vec(s.to_vec());
    let mut by_height: Vec<(Q, &Weight)> = set
        .iter()
        .map(|w| (rs.root_coords(w).height(), w))
        .collect();
    by_height.sort_by(|a, b| b.0.cmp(&a.0));
    let mut maxima: Vec<(Q, Weight)> = Vec::new();
    for (h, w) in by_height {
        let dominated = maxima.iter().any(|(hm, m)| *hm > h && cmp.le(w, m));
        if !dominated {
            maxima.push((h, w.clone()));
        }
    }
    WeightSet::from_vec(maxima.into_iter().map(|(_, w)| w).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanType;

    fn rs(kind: CartanType, rank: usize) -> RootSystem {
        RootSystem::simple(kind, rank).unwrap()
    }

    fn w(v: &[i64]) -> Weight {
        Weight::from_ints(v)
    }

    #[test]
    fn phi_plus_lambda_examples() {
        let a2 = rs(CartanType::A, 2);
        assert_eq!(phi_plus_lambda(&a2, &w(&[1, 1])).unwrap().len(), 3);
        let roots: Vec<_> = phi_plus_lambda(&a2, &w(&[1, 0]))
            .unwrap()
            .into_iter()
            .map(|r| r.coords)
            .collect();
        assert_eq!(roots, vec![vec![1, 0], vec![1, 1]]);
        let c2 = rs(CartanType::C, 2);
        let roots: Vec<_> = phi_plus_lambda(&c2, &w(&[0, 1]))
            .unwrap()
            .into_iter()
            .map(|r| r.coords)
            .collect();
        assert_eq!(roots, vec![vec![0, 1], vec![1, 1], vec![2, 1]]);
        assert!(matches!(
            phi_plus_lambda(&a2, &w(&[-1, 0])),
            Err(Error::NotDominant(_))
        ));
    }

    #[test]
    fn compare_examples() {
        let a2 = rs(CartanType::A, 2);
        assert!(compare(&a2, &w(&[0, 0]), &w(&[1, 1]), &OrderKind::Dominance).unwrap());
        assert!(!compare(&a2, &w(&[1, 0]), &w(&[0, 1]), &OrderKind::RationalDominance).unwrap());
        assert!(compare(&a2, &w(&[1, 0]), &w(&[1, 1]), &OrderKind::RationalDominance).unwrap());
        let c2 = rs(CartanType::C, 2);
        let l = w(&[0, 1]);
        let (nu, mu) = (w(&[1, 0]), w(&[0, 1]));
        assert!(compare(&c2, &nu, &mu, &OrderKind::LambdaRationalDominance(l.clone())).unwrap());
        assert!(!compare(&c2, &nu, &mu, &OrderKind::LambdaDominance(l)).unwrap());
        assert!(!compare(&c2, &nu, &mu, &OrderKind::Dominance).unwrap());
        let ld = OrderKind::LambdaDominance(w(&[0, 1]));
        assert!(compare(&c2, &w(&[0, 0]), &w(&[0, 1]), &ld).unwrap());
    }

    #[test]
    fn lambda_dominance_needs_lambda_roots() {
        let a2 = rs(CartanType::A, 2);
        let l = OrderKind::LambdaDominance(w(&[1, 0]));
        // alpha_2 is not in Phi^+(omega_1)
        let alpha2 = a2.simple_root(1);
        assert!(!compare(&a2, &w(&[0, 0]), &alpha2, &l).unwrap());
        let sum = &a2.simple_root(0) + &alpha2;
        assert!(compare(&a2, &w(&[0, 0]), &sum, &l).unwrap());
        // 2 alpha_1 + alpha_2 = alpha_1 + (alpha_1 + alpha_2)
        let v = &sum + &a2.simple_root(0);
        assert!(compare(&a2, &w(&[0, 0]), &v, &l).unwrap());
    }

    #[test]
    fn maximal_examples() {
        let a2 = rs(CartanType::A, 2);
        let s = vec![w(&[1, 0]), w(&[0, 1])];
        let m = maximal_elements(&a2, &s, &OrderKind::RationalDominance).unwrap();
        assert_eq!(m.len(), 2);
        let one = maximal_elements(&a2, &[w(&[2, 1])], &OrderKind::Dominance).unwrap();
        assert_eq!(one.as_slice(), &[w(&[2, 1])]);
        let chain = vec![w(&[1, 1]), w(&[0, 0]), w(&[3, 0])];
        let m = maximal_elements(&a2, &chain, &OrderKind::Dominance).unwrap();
        // 3 omega_1 - (omega_1 + omega_2) = alpha_1
        assert_eq!(m.as_slice(), &[w(&[3, 0])]);
    }
}
