//! Weyl group actions and enumeration of `Pi^+(lambda)`, `Pi_G^+(lambda)`,
//! `Pi(lambda)` and the cone `C(lambda)`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::cartan::{CharacterLattice, Limits, RootSystem, Weight};
use crate::error::{Error, Result};
use crate::lp;
use crate::orders::phi_plus_lambda;
use crate::Q;

/// A word in the simple reflections; `[i1, ..., ik]` stands for
/// `s_{i1} ... s_{ik}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, rs: &RootSystem, w: &Weight) -> Weight {
        self.0.iter().rev().fold(w.clone(), |acc, &i| rs.reflect(&acc, i))
    }
}

impl Serialize for WeylWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for i in &self.0 {
            seq.serialize_element(&(i + 1))?;
        }
        seq.end()
    }
}

/// A finite set of weights, deduplicated and sorted lexicographically on
/// fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct WeightSet(Vec<Weight>);

impl WeightSet {
    pub fn from_vec(mut v: Vec<Weight>) -> Self {
        v.sort();
        v.dedup();
        WeightSet(v)
    }

    pub fn empty() -> Self {
        WeightSet(Vec::new())
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Weight> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.0.binary_search(w).is_ok()
    }

    pub fn as_slice(&self) -> &[Weight] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Weight> {
        self.0
    }

    pub fn union(&self, other: &WeightSet) -> WeightSet {
        WeightSet::from_vec(self.0.iter().chain(other.iter()).cloned().collect())
    }

    pub fn difference(&self, other: &WeightSet) -> WeightSet {
        WeightSet(self.0.iter().filter(|w| !other.contains(w)).cloned().collect())
    }

    pub fn is_subset(&self, other: &WeightSet) -> bool {
        self.0.iter().all(|w| other.contains(w))
    }

    /// Adds `t` to every member.
    pub fn translate(&self, t: &Weight) -> WeightSet {
        WeightSet::from_vec(self.0.iter().map(|w| w + t).collect())
    }
}

impl FromIterator<Weight> for WeightSet {
    fn from_iter<I: IntoIterator<Item = Weight>>(iter: I) -> Self {
        WeightSet::from_vec(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a WeightSet {
    type Item = &'a Weight;
    type IntoIter = std::slice::Iter<'a, Weight>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl Serialize for WeightSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for w in &self.0 {
            seq.serialize_element(w)?;
        }
        seq.end()
    }
}

impl fmt::Display for WeightSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|w| w.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// The dominant weight in the orbit of `mu` and a word `w` with
/// `w(dominant) = mu`.
pub fn dominant_conjugate(rs: &RootSystem, mu: &Weight) -> (Weight, WeylWord) {
    let mut cur = mu.clone();
    let mut word = Vec::new();
    while let Some(i) = cur.fw().iter().position(|x| *x < Q::from_integer(0)) {
        cur = rs.reflect(&cur, i);
        word.push(i);
    }
    (cur, WeylWord(word))
}

/// Integer variant used by the oracle; returns the number of reflections.
pub(crate) fn dominant_conjugate_ints(rs: &RootSystem, m: &mut [i64]) -> usize {
    let mut len = 0;
    while let Some(i) = m.iter().position(|x| *x < 0) {
        rs.reflect_ints(m, i);
        len += 1;
    }
    len
}

fn check_lattice_dominant(lat: &CharacterLattice, lambda: &Weight) -> Result<()> {
    lat.root_system().check_rank(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.clone()));
    }
    if !lat.contains(lambda) {
        return Err(Error::NotInLattice(lambda.clone()));
    }
    Ok(())
}

/// Integral dominant `mu` with `mu <=_Q lambda`, i.e. `0 <= C^{-1} m(mu) <=
/// C^{-1} m(lambda)`. All entries of `C^{-1}` are nonnegative, so partial
/// sums only grow and each coordinate can be bounded on the fly.
pub(crate) fn dominant_integral_below(
    rs: &RootSystem,
    lambda: &Weight,
    limits: Limits,
) -> Result<Vec<Vec<i64>>> {
    let n = rs.rank();
    let det = Q::from_integer(rs.det());
    let adj = rs.adjugate();
    let bound: Vec<Q> = rs
        .root_coords(lambda)
        .coords()
        .iter()
        .map(|c| c * det)
        .collect();
    if bound.iter().any(|b| *b < Q::from_integer(0)) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut m = vec![0i64; n];
    let mut partial = vec![0i64; n];
    let mut visited: u64 = 0;
    fn rec(
        i: usize,
        adj: &[Vec<i64>],
        bound: &[Q],
        m: &mut Vec<i64>,
        partial: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
        visited: &mut u64,
        cap: u64,
    ) -> Result<()> {
        let n = m.len();
        if i == n {
            out.push(m.clone());
            return Ok(());
        }
        loop {
            *visited += 1;
            if *visited > cap {
                return Err(Error::ResourceCap {
                    what: "dominant weight candidates",
                    limit: cap as u128,
                });
            }
            rec(i + 1, adj, bound, m, partial, out, visited, cap)?;
            // try m_i + 1
            let fits = (0..n).all(|k| Q::from_integer(partial[k] + adj[k][i]) <= bound[k]);
            if !fits {
                break;
            }
            m[i] += 1;
            for k in 0..n {
                partial[k] += adj[k][i];
            }
        }
        for k in 0..n {
            partial[k] -= adj[k][i] * m[i];
        }
        m[i] = 0;
        Ok(())
    }
    rec(
        0,
        adj,
        &bound,
        &mut m,
        &mut partial,
        &mut out,
        &mut visited,
        limits.max_candidates,
    )?;
    Ok(out)
}

/// `Pi^+(lambda)`: dominant `mu` with `lambda - mu` in `N[Delta]`.
pub fn pi_plus(lat: &CharacterLattice, lambda: &Weight) -> Result<WeightSet> {
    check_lattice_dominant(lat, lambda)?;
    let rs = lat.root_system();
    let cands = dominant_integral_below(rs, lambda, lat.limits())?;
    Ok(cands
        .into_iter()
        .map(|m| Weight::from_ints(&m))
        .filter(|mu| rs.root_coords(&(lambda - mu)).is_integral())
        .collect())
}

/// `Pi_G^+(lambda)`: dominant `mu` in `X(T)` with `mu <=_Q lambda`.
pub fn pi_g_plus(lat: &CharacterLattice, lambda: &Weight) -> Result<WeightSet> {
    check_lattice_dominant(lat, lambda)?;
    pi_g_plus_unchecked(lat, lambda)
}

/// As [`pi_g_plus`] without requiring `lambda` itself to lie in `X(T)`.
pub fn pi_g_plus_unchecked(lat: &CharacterLattice, lambda: &Weight) -> Result<WeightSet> {
    let rs = lat.root_system();
    let cands = dominant_integral_below(rs, lambda, lat.limits())?;
    Ok(cands
        .into_iter()
        .filter(|m| lat.contains_ints(m))
        .map(|m| Weight::from_ints(&m))
        .collect())
}

/// The `W`-orbit of `mu`.
pub fn weyl_orbit(rs: &RootSystem, mu: &Weight) -> Result<WeightSet> {
    weyl_orbit_capped(rs, mu, Limits::default())
}

pub fn weyl_orbit_capped(rs: &RootSystem, mu: &Weight, limits: Limits) -> Result<WeightSet> {
    rs.check_rank(mu)?;
    let mut seen: HashSet<Weight> = HashSet::from([mu.clone()]);
    let mut stack = vec![mu.clone()];
    while let Some(w) = stack.pop() {
        for i in 0..rs.rank() {
            if w.coord(i) != Q::from_integer(0) {
                let r = rs.reflect(&w, i);
                if seen.insert(r.clone()) {
                    if seen.len() as u64 > limits.max_candidates {
                        return Err(Error::ResourceCap {
                            what: "Weyl orbit size",
                            limit: limits.max_candidates as u128,
                        });
                    }
                    stack.push(r);
                }
            }
        }
    }
    Ok(WeightSet::from_vec(seen.into_iter().collect()))
}

/// `Pi(lambda) = W Pi^+(lambda)`.
pub fn pi_lambda(lat: &CharacterLattice, lambda: &Weight) -> Result<WeightSet> {
    let rs = lat.root_system();
    let mut all = BTreeSet::new();
    for mu in &pi_plus(lat, lambda)? {
        all.extend(weyl_orbit_capped(rs, mu, lat.limits())?.into_vec());
    }
    Ok(WeightSet::from_vec(all.into_iter().collect()))
}

/// Is `v` in `C(lambda) = Q^+[Phi^-(lambda)]`?
pub fn cone_lambda_contains(rs: &RootSystem, lambda: &Weight, v: &Weight) -> Result<bool> {
    rs.check_rank(v)?;
    let gens: Vec<Vec<Q>> = phi_plus_lambda(rs, lambda)?
        .into_iter()
        .map(|r| r.coords.iter().map(|&x| Q::from_integer(-x)).collect())
        .collect();
    let target = rs.root_coords(v);
    Ok(lp::cone_contains(&gens, target.coords()))
}

/// The same test through the cone spanned by `P(lambda) - lambda`, whose
/// extreme directions are `w lambda - lambda`.
pub fn cone_lambda_contains_polytope(
    rs: &RootSystem,
    lambda: &Weight,
    v: &Weight,
) -> Result<bool> {
    rs.check_rank(v)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.clone()));
    }
    let gens: Vec<Vec<Q>> = weyl_orbit(rs, lambda)?
        .iter()
        .filter(|w| *w != lambda)
        .map(|w| rs.root_coords(&(w - lambda)).coords().to_vec())
        .collect();
    let target = rs.root_coords(v);
    Ok(lp::cone_contains(&gens, target.coords()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{CartanType, CharacterLattice};
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
    fn dominant_conjugate_examples() {
        let a1 = RootSystem::simple(CartanType::A, 1).unwrap();
        let (d, word) = dominant_conjugate(&a1, &w(&[-3]));
        assert_eq!(d, w(&[3]));
        assert_eq!(word.0, vec![0]);
        let a2 = RootSystem::simple(CartanType::A, 2).unwrap();
        let (d, word) = dominant_conjugate(&a2, &w(&[-1, 1]));
        assert_eq!(d, w(&[1, 0]));
        assert_eq!(word.0, vec![0]);
        assert_eq!(word.apply(&a2, &d), w(&[-1, 1]));
        let (d, word) = dominant_conjugate(&a2, &w(&[2, 1]));
        assert_eq!(d, w(&[2, 1]));
        assert!(word.is_empty());
    }

    #[test]
    fn pi_plus_examples() {
        let sl2 = lat(CartanType::A, 1, "SL");
        assert_eq!(pi_plus(&sl2, &w(&[3])).unwrap(), set(&[&[3], &[1]]));
        let sl3 = lat(CartanType::A, 2, "SL");
        assert_eq!(pi_plus(&sl3, &w(&[1, 1])).unwrap(), set(&[&[1, 1], &[0, 0]]));
        let sp4 = lat(CartanType::C, 2, "Sp");
        assert_eq!(pi_plus(&sp4, &w(&[0, 1])).unwrap(), set(&[&[0, 1], &[0, 0]]));
    }

    #[test]
    fn pi_g_plus_examples() {
        let sl3 = lat(CartanType::A, 2, "SL");
        assert_eq!(
            pi_g_plus(&sl3, &w(&[1, 1])).unwrap(),
            set(&[&[1, 1], &[1, 0], &[0, 1], &[0, 0]])
        );
        let pgl2 = lat(CartanType::A, 1, "PGL");
        assert_eq!(pi_g_plus(&pgl2, &w(&[2])).unwrap(), set(&[&[2], &[0]]));
        let sp4 = lat(CartanType::C, 2, "Sp");
        assert_eq!(
            pi_g_plus(&sp4, &w(&[0, 1])).unwrap(),
            set(&[&[0, 1], &[1, 0], &[0, 0]])
        );
        assert!(matches!(
            pi_g_plus(&pgl2, &w(&[1])),
            Err(Error::NotInLattice(_))
        ));
    }

    #[test]
    fn orbits() {
        let a2 = RootSystem::simple(CartanType::A, 2).unwrap();
        assert_eq!(weyl_orbit(&a2, &w(&[0, 0])).unwrap().len(), 1);
        assert_eq!(weyl_orbit(&a2, &w(&[1, 0])).unwrap().len(), 3);
        let c2 = RootSystem::simple(CartanType::C, 2).unwrap();
        assert_eq!(weyl_orbit(&c2, &w(&[0, 1])).unwrap().len(), 4);
    }

    #[test]
    fn cone_examples() {
        let c2 = RootSystem::simple(CartanType::C, 2).unwrap();
        let l = w(&[0, 1]);
        let half = c2.simple_root(1).scale(Q::new(-1, 2));
        assert!(cone_lambda_contains(&c2, &l, &half).unwrap());
        assert!(cone_lambda_contains_polytope(&c2, &l, &half).unwrap());
        assert!(cone_lambda_contains(&c2, &l, &w(&[0, 0])).unwrap());
        let a2 = RootSystem::simple(CartanType::A, 2).unwrap();
        let v = -a2.simple_root(1);
        assert!(!cone_lambda_contains(&a2, &w(&[1, 0]), &v).unwrap());
        assert!(!cone_lambda_contains_polytope(&a2, &w(&[1, 0]), &v).unwrap());
    }

    #[test]
    fn cap_is_reported() {
        let sl3 = lat(CartanType::A, 2, "SL").with_limits(Limits { max_candidates: 5 });
        assert!(matches!(
            pi_g_plus(&sl3, &w(&[10, 10])),
            Err(Error::ResourceCap { .. })
        ));
    }
}
