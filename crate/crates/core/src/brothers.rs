//! Adjoint little brothers, rational little brothers `LB_Q(lambda)`, the
//! maximal set `Pi_Q^m(lambda)`, difference sets and regularization.

use serde::Serialize;

use crate::cartan::{CharacterLattice, RootSystem, RootVector, SimpleRootSet, Weight};
use crate::error::{Error, Result};
use crate::orders::{maximal_with, Comparator, OrderKind};
use crate::weights::{pi_g_plus, WeightSet};
use crate::Q;

/// Simple roots of a non-simply-laced component, walked from its extremal
/// long root. `None` for simply-laced components.
fn long_to_short_walk(rs: &RootSystem, k: usize) -> Option<Vec<usize>> {
    let comp = rs.components()[k];
    if comp.kind.is_simply_laced(comp.rank) {
        return None;
    }
    let idx: Vec<usize> = comp.indices().collect();
    let neighbours = |a: usize| idx.iter().filter(move |&&b| rs.adjacent(a, b)).count();
    let start = *idx
        .iter()
        .find(|&&a| rs.is_long_simple(a) && neighbours(a) <= 1)
        .expect("non-simply-laced component has an extremal long root");
    let mut walk = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = idx
        .iter()
        .find(|&&b| b != prev && b != cur && rs.adjacent(cur, b))
    {
        walk.push(next);
        prev = cur;
        cur = next;
    }
    Some(walk)
}

/// Adjoint little brother of `lambda` for component `k`, if defined.
pub fn adjoint_little_brother(rs: &RootSystem, lambda: &Weight, k: usize) -> Option<Weight> {
    let walk = long_to_short_walk(rs, k)?;
    let supp = lambda.support_mask();
    let in_supp = |i: usize| supp & (1 << i) != 0;
    let q_pos = walk.iter().position(|&i| !rs.is_long_simple(i))?;
    if in_supp(walk[q_pos]) {
        return None;
    }
    let p_pos = (0..q_pos).rev().find(|&j| in_supp(walk[j]))?;
    let mut out = lambda.clone();
    for &i in &walk[p_pos..=q_pos] {
        out = &out - &rs.simple_root(i);
    }
    Some(out)
}

/// `LB(lambda)`: one adjoint little brother per eligible non-simply-laced
/// component.
pub fn adjoint_little_brothers(rs: &RootSystem, lambda: &Weight) -> Result<WeightSet> {
    rs.check_rank(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.clone()));
    }
    Ok((0..rs.components().len())
        .filter_map(|k| adjoint_little_brother(rs, lambda, k))
        .collect())
}

/// Everything about the little brothers of one dominant weight.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LittleBrotherReport {
    pub lambda: Weight,
    pub lb_adjoint: WeightSet,
    pub q_maximal: WeightSet,
    pub lb_q: WeightSet,
    pub h_m: Vec<RootVector>,
    pub h: Vec<RootVector>,
    pub regularized_lambda: Weight,
}

struct Computed {
    lb: WeightSet,
    q_maximal: WeightSet,
    lb_q: WeightSet,
}

fn compute(lat: &CharacterLattice, lambda: &Weight, need_qmax: bool) -> Result<Computed> {
    let rs = lat.root_system();
    let lb = adjoint_little_brothers(rs, lambda)?;
    let all = pi_g_plus(lat, lambda)?;
    let q_maximal = if need_qmax {
        let cmp = Comparator::new(rs, &OrderKind::LambdaDominance(lambda.clone()))?;
        maximal_with(rs, all.as_slice(), &cmp).union(&lb)
    } else {
        WeightSet::empty()
    };
    // Pi_G^+ \ Pi^+: members whose difference to lambda is not integral
    let outside: Vec<Weight> = all
        .iter()
        .filter(|mu| !rs.root_coords(&(lambda - *mu)).is_integral())
        .cloned()
        .chain(lb.iter().cloned())
        .collect();
    let cmp = Comparator::new(rs, &OrderKind::LambdaRationalDominance(lambda.clone()))?;
    let lb_q = maximal_with(rs, &outside, &cmp);
    Ok(Computed { lb, q_maximal, lb_q })
}

/// `Pi_Q^m(lambda)`: `<=^lambda`-maximal elements of `Pi_G^+(lambda)`
/// together with `LB(lambda)`.
pub fn q_maximal_set(lat: &CharacterLattice, lambda: &Weight) -> Result<WeightSet> {
    Ok(compute(lat, lambda, true)?.q_maximal)
}

/// `LB_Q(lambda)`: `<=^lambda_Q`-maximal elements of
/// `(Pi_G^+(lambda) \ Pi^+(lambda)) ∪ LB(lambda)`.
pub fn little_brothers(lat: &CharacterLattice, lambda: &Weight) -> Result<WeightSet> {
    Ok(compute(lat, lambda, false)?.lb_q)
}

fn differences(rs: &RootSystem, set: &WeightSet, lambda: &Weight) -> Vec<RootVector> {
    let mut v: Vec<RootVector> = set.iter().map(|mu| rs.root_coords(&(mu - lambda))).collect();
    v.sort();
    v
}

/// `H_G^m(lambda)` and `H_G(lambda)` in simple-root coordinates.
pub fn h_sets(
    lat: &CharacterLattice,
    lambda: &Weight,
) -> Result<(Vec<RootVector>, Vec<RootVector>)> {
    let c = compute(lat, lambda, true)?;
    let rs = lat.root_system();
    Ok((
        differences(rs, &c.q_maximal, lambda),
        differences(rs, &c.lb_q, lambda),
    ))
}

pub fn little_brother_report(lat: &CharacterLattice, lambda: &Weight) -> Result<LittleBrotherReport> {
    let c = compute(lat, lambda, true)?;
    let rs = lat.root_system();
    let (_, regularized_lambda) = regularize(lat, &WeightSet::from_vec(vec![lambda.clone()]))?;
    Ok(LittleBrotherReport {
        lambda: lambda.clone(),
        h_m: differences(rs, &c.q_maximal, lambda),
        h: differences(rs, &c.lb_q, lambda),
        lb_adjoint: c.lb,
        q_maximal: c.q_maximal,
        lb_q: c.lb_q,
        regularized_lambda,
    })
}

/// The unique `<=_Q`-maximal element of `pi`.
pub fn max_element(rs: &RootSystem, pi: &WeightSet) -> Result<Weight> {
    if pi.is_empty() {
        return Err(Error::EmptySet);
    }
    let cmp = Comparator::new(rs, &OrderKind::RationalDominance)?;
    let maxima = maximal_with(rs, pi.as_slice(), &cmp);
    if maxima.len() != 1 {
        return Err(Error::NotSimple(maxima.len()));
    }
    Ok(maxima.as_slice()[0].clone())
}

/// Roots of `Supp(lambda) \ Supp(lambda)°`.
pub fn support_boundary(rs: &RootSystem, lambda: &Weight) -> SimpleRootSet {
    let s = SimpleRootSet::from_mask(rs.rank(), lambda.support_mask());
    s.difference(&s.interior(rs))
}

/// Translates `pi` so that its maximal element `lambda'` satisfies
/// `<lambda', alpha^vee> >= r_alpha` on `Supp \ Supp°`. Each deficient
/// `omega_alpha` is scaled by the least amount at or above the deficit that
/// keeps the total translation inside `X(T)`.
pub fn regularize(lat: &CharacterLattice, pi: &WeightSet) -> Result<(WeightSet, Weight)> {
    let rs = lat.root_system();
    for mu in pi {
        rs.check_rank(mu)?;
        if !mu.is_dominant() {
            return Err(Error::NotDominant(mu.clone()));
        }
    }
    let lambda = max_element(rs, pi)?;
    let n = rs.rank();
    let deficits: Vec<(usize, i64)> = support_boundary(rs, &lambda)
        .iter()
        .filter_map(|a| {
            let r = rs.component_rank(a) as i64;
            let c = lambda.coord(a);
            (c < Q::from_integer(r)).then(|| (a, (Q::from_integer(r) - c).ceil().to_integer()))
        })
        .collect();
    if deficits.is_empty() {
        return Ok((pi.clone(), lambda));
    }
    // k omega_alpha is periodic modulo X(T) with period dividing det(C)
    let e = rs.det();
    let mut best: Option<(i64, Vec<i64>)> = None;
    let mut ks: Vec<i64> = deficits.iter().map(|d| d.1).collect();
    loop {
        let mut t = vec![0i64; n];
        for ((a, _), k) in deficits.iter().zip(&ks) {
            t[*a] = *k;
        }
        if lat.contains_ints(&t) {
            let total: i64 = ks.iter().sum();
            if best.as_ref().map_or(true, |(b, _)| total < *b) {
                best = Some((total, t));
            }
        }
        // odometer over [deficit, deficit + e - 1]
        let mut j = 0;
        loop {
            if j == ks.len() {
                let (_, t) = best.expect("some translation lies in X(T)");
                let t = Weight::from_ints(&t);
                return Ok((pi.translate(&t), &lambda + &t));
            }
            ks[j] += 1;
            if ks[j] < deficits[j].1 + e {
                break;
            }
            ks[j] = deficits[j].1;
            j += 1;
        }
    }
}

/// `lambda-bar`: coefficient 1 on `Supp°`, `r_alpha` on `Supp \ Supp°`.
pub fn lambda_bar(rs: &RootSystem, lambda: &Weight) -> Weight {
    let s = SimpleRootSet::from_mask(rs.rank(), lambda.support_mask());
    let int = s.interior(rs);
    let v: Vec<i64> = (0..rs.rank())
        .map(|i| {
            if int.contains(i) {
                1
            } else if s.contains(i) {
                rs.component_rank(i) as i64
            } else {
                0
            }
        })
        .collect();
    Weight::from_ints(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{CartanType, RootSystemSpec};
    use std::sync::Arc;

    fn lat(kind: CartanType, rank: usize, preset: &str) -> CharacterLattice {
        let rs = Arc::new(RootSystem::simple(kind, rank).unwrap());
        CharacterLattice::preset(rs, preset).unwrap()
    }

    fn w(v: &[i64]) -> Weight {
        Weight::from_ints(v)
    }

    fn set(v: &[&[i64]]) -> WeightSet {
        v.iter().map(|x| w(x)).collect()
    }

    #[test]
    fn adjoint_brothers() {
        let a3 = RootSystem::simple(CartanType::A, 3).unwrap();
        assert!(adjoint_little_brothers(&a3, &w(&[1, 2, 1])).unwrap().is_empty());
        let g2 = RootSystem::simple(CartanType::G, 2).unwrap();
        for n in 1..4 {
            // long root is alpha_2 in Bourbaki numbering
            let l = w(&[0, n]);
            assert_eq!(
                adjoint_little_brothers(&g2, &l).unwrap(),
                set(&[&[1, n - 1]])
            );
        }
        let b3 = RootSystem::simple(CartanType::B, 3).unwrap();
        assert_eq!(
            adjoint_little_brothers(&b3, &w(&[0, 1, 0])).unwrap(),
            set(&[&[1, 0, 0]])
        );
        // short root in the support: nothing
        assert!(adjoint_little_brothers(&b3, &w(&[0, 1, 1])).unwrap().is_empty());
        let c3 = RootSystem::simple(CartanType::C, 3).unwrap();
        // lambda = omega_3, walk alpha_3, alpha_2: lambda - alpha_3 - alpha_2
        let lb = adjoint_little_brothers(&c3, &w(&[0, 0, 1])).unwrap();
        let expect = &(&w(&[0, 0, 1]) - &c3.simple_root(2)) - &c3.simple_root(1);
        assert_eq!(lb, WeightSet::from_vec(vec![expect.clone()]));
        assert!(expect.is_dominant());
    }

    #[test]
    fn sp4_brothers() {
        let sp4 = lat(CartanType::C, 2, "Sp");
        // 0 <^lambda omega_2 but 0 = omega_2 - alpha_2 - alpha_1 is the adjoint little brother
        assert_eq!(
            q_maximal_set(&sp4, &w(&[0, 1])).unwrap(),
            set(&[&[0, 0], &[0, 1], &[1, 0]])
        );
        assert_eq!(little_brothers(&sp4, &w(&[0, 1])).unwrap(), set(&[&[1, 0]]));
    }

    #[test]
    fn sl_omega1_brothers() {
        for r in 1..=4 {
            let sl = lat(CartanType::A, r, "SL");
            for n in 1..=5i64 {
                let mut l = vec![0; r];
                l[0] = n;
                let mut b = vec![0; r];
                b[0] = n - 1;
                let lb = little_brothers(&sl, &w(&l)).unwrap();
                assert_eq!(lb, set(&[&b]), "r={r} n={n}");
            }
        }
    }

    #[test]
    fn h_sets_sl2() {
        let sl2 = lat(CartanType::A, 1, "SL");
        let (_, h) = h_sets(&sl2, &w(&[2])).unwrap();
        assert_eq!(h, vec![RootVector::new(vec![Q::new(-1, 2)])]);
    }

    #[test]
    fn regularization() {
        let sl4 = lat(CartanType::A, 3, "SL");
        let (p, l) = regularize(&sl4, &set(&[&[0, 1, 0]])).unwrap();
        assert_eq!(l, w(&[0, 3, 0]));
        assert_eq!(p, set(&[&[0, 3, 0]]));
        let sl6 = lat(CartanType::A, 5, "SL");
        let (_, l) = regularize(&sl6, &set(&[&[0, 0, 2, 0, 0]])).unwrap();
        assert_eq!(l, w(&[0, 0, 5, 0, 0]));
        let (p2, l2) = regularize(&sl6, &set(&[&[0, 0, 5, 0, 0]])).unwrap();
        assert_eq!((p2, l2), (set(&[&[0, 0, 5, 0, 0]]), w(&[0, 0, 5, 0, 0])));
        // the plain translation 1*omega_2 would leave the adjoint lattice
        let pgl4 = lat(CartanType::A, 3, "PGL");
        let (_, l) = regularize(&pgl4, &set(&[&[0, 2, 0]])).unwrap();
        assert_eq!(l, w(&[0, 4, 0]));
        assert!(pgl4.contains(&l));
        let sl3 = lat(CartanType::A, 2, "SL");
        assert!(matches!(
            regularize(&sl3, &set(&[&[1, 0], &[0, 1]])),
            Err(Error::NotSimple(2))
        ));
    }

    #[test]
    fn products_have_one_brother_per_component() {
        let spec = RootSystemSpec::new(vec![(CartanType::B, 2), (CartanType::G, 2)]).unwrap();
        let rs = RootSystem::new(spec).unwrap();
        let lb = adjoint_little_brothers(&rs, &w(&[1, 0, 0, 1])).unwrap();
        assert_eq!(lb.len(), 2);
    }
}
