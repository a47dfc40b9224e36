//! Brute-force representation theory at desk scale: Freudenthal
//! multiplicities, the Weyl dimension formula, Brauer-Klimyk tensor
//! decomposition, membership in the semigroup `Omega(Pi)` and a tensorial
//! check of normality.
//!
//! Weights are handled as integer fundamental-weight coordinates.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::brothers::{max_element, regularize};
use crate::cartan::{CharacterLattice, RootSystem, SimpleRootSet, Weight};
use crate::classify::normality;
use crate::error::{Error, Result};
use crate::orders::{Comparator, OrderKind};
use crate::weights::{dominant_conjugate_ints, dominant_integral_below, pi_g_plus, WeightSet, WeylWord};

type Ints = Vec<i64>;

/// Caps for the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    /// Distinct weights in a single character.
    pub max_weights: usize,
    /// Components kept alive in an iterated tensor product.
    pub max_components: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_weights: 200_000,
            max_components: 200_000,
        }
    }
}

fn ints(w: &Weight) -> Result<Ints> {
    w.to_ints().ok_or_else(|| Error::NotInLattice(w.clone()))
}

fn dominant_ints(rs: &RootSystem, w: &Weight) -> Result<Ints> {
    rs.check_rank(w)?;
    if !w.is_dominant() {
        return Err(Error::NotDominant(w.clone()));
    }
    ints(w)
}

fn add(a: &[i64], b: &[i64]) -> Ints {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Integer Gram matrix of `2 det(C) (.,.)` in fundamental-weight coordinates.
struct Form {
    gram: Vec<Vec<i64>>,
}

impl Form {
    fn new(rs: &RootSystem) -> Self {
        let n = rs.rank();
        let adj = rs.adjugate();
        let gram = (0..n)
            .map(|i| (0..n).map(|k| adj[k][i] * rs.simple_length(k)).collect())
            .collect();
        Form { gram }
    }

    fn apply(&self, a: &[i64], b: &[i64]) -> i64 {
        self.gram
            .iter()
            .zip(a)
            .map(|(row, x)| x * row.iter().zip(b).map(|(g, y)| g * y).sum::<i64>())
            .sum()
    }
}

fn positive_roots_fw(rs: &RootSystem) -> Vec<Ints> {
    rs.positive_roots()
        .iter()
        .map(|r| rs.root_weight(r).to_ints().expect("roots are integral"))
        .collect()
}

/// `dim V(lambda)` by the Weyl dimension formula.
pub fn weyl_dimension(rs: &RootSystem, lambda: &Weight) -> Result<u128> {
    let l = dominant_ints(rs, lambda)?;
    let form = Form::new(rs);
    let rho = vec![1; rs.rank()];
    let lr = add(&l, &rho);
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for a in positive_roots_fw(rs) {
        num *= form.apply(&lr, &a);
        den *= form.apply(&rho, &a);
    }
    let q = BigRational::new(num, den);
    if !q.is_integer() {
        return Err(Error::Inconsistent(format!("non-integral Weyl dimension for {lambda}")));
    }
    q.to_integer().to_u128().ok_or(Error::ResourceCap {
        what: "dimension",
        limit: u128::MAX,
    })
}

/// `|W mu|` for dominant `mu`: `|W| / |W_mu|`, `W_mu` the parabolic subgroup
/// of the simple roots orthogonal to `mu`.
pub fn orbit_size(rs: &RootSystem, mu: &[i64]) -> u128 {
    let zero = SimpleRootSet::from_mask(
        rs.rank(),
        mu.iter().enumerate().filter(|(_, x)| **x == 0).fold(0u64, |m, (i, _)| m | (1 << i)),
    );
    let stab: u128 = zero
        .components(rs)
        .iter()
        .map(|c| {
            let (kind, rank) = c.induced_type(rs);
            kind.weyl_group_order(rank)
        })
        .product();
    rs.weyl_group_order() / stab
}

fn orbit_ints(rs: &RootSystem, mu: &[i64], cap: usize) -> Result<Vec<Ints>> {
    let mut seen: HashSet<Ints> = HashSet::from([mu.to_vec()]);
    let mut stack = vec![mu.to_vec()];
    while let Some(w) = stack.pop() {
        for i in 0..rs.rank() {
            if w[i] != 0 {
                let mut r = w.clone();
                rs.reflect_ints(&mut r, i);
                if seen.insert(r.clone()) {
                    if seen.len() > cap {
                        return Err(Error::ResourceCap {
                            what: "character weights",
                            limit: cap as u128,
                        });
                    }
                    stack.push(r);
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Weight multiplicities of `V(lambda)` on dominant weights.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable {
    pub highest_weight: Weight,
    pub dominant_multiplicities: BTreeMap<Weight, u64>,
}

#[derive(Serialize)]
struct Entry<'a> {
    weight: &'a Weight,
    multiplicity: u64,
}

fn serialize_multiset<S: Serializer>(m: &BTreeMap<Weight, u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for (weight, &multiplicity) in m {
        seq.serialize_element(&Entry { weight, multiplicity })?;
    }
    seq.end()
}

impl Serialize for CharacterTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            highest_weight: &'a Weight,
            #[serde(serialize_with = "serialize_multiset")]
            dominant_multiplicities: &'a BTreeMap<Weight, u64>,
        }
        Out {
            highest_weight: &self.highest_weight,
            dominant_multiplicities: &self.dominant_multiplicities,
        }
        .serialize(s)
    }
}

impl CharacterTable {
    pub fn multiplicity(&self, mu: &Weight) -> u64 {
        self.dominant_multiplicities.get(mu).copied().unwrap_or(0)
    }

    /// `sum mult(mu) |W mu|`.
    pub fn dimension(&self, rs: &RootSystem) -> u128 {
        self.dominant_multiplicities
            .iter()
            .map(|(mu, &m)| m as u128 * orbit_size(rs, &mu.to_ints().expect("integral")))
            .sum()
    }
}

/// Freudenthal's recursion over the dominant weights of `V(lambda)`, checked
/// against the Weyl dimension formula.
pub fn weight_multiplicities(rs: &RootSystem, lambda: &Weight) -> Result<CharacterTable> {
    weight_multiplicities_with(rs, lambda, OracleLimits::default())
}

pub fn weight_multiplicities_with(rs: &RootSystem, lambda: &Weight, limits: OracleLimits) -> Result<CharacterTable> {
    let dom = dominant_multiplicities(rs, lambda, limits)?;
    let table = CharacterTable {
        highest_weight: lambda.clone(),
        dominant_multiplicities: dom.iter().map(|(m, &k)| (Weight::from_ints(m), k)).collect(),
    };
    let dim = weyl_dimension(rs, lambda)?;
    if table.dimension(rs) != dim {
        return Err(Error::Inconsistent(format!(
            "Freudenthal gives dimension {} for {lambda}, Weyl gives {dim}",
            table.dimension(rs)
        )));
    }
    Ok(table)
}

fn dominant_multiplicities(rs: &RootSystem, lambda: &Weight, limits: OracleLimits) -> Result<HashMap<Ints, u64>> {
    let l = dominant_ints(rs, lambda)?;
    let cands = dominant_integral_below(
        rs,
        lambda,
        crate::cartan::Limits {
            max_candidates: limits.max_weights as u64,
        },
    )?;
    let scaled_l = rs.scaled_root_coords(&l);
    let det = rs.det();
    // dominant weights of V(lambda), ordered by depth below lambda
    let mut dom: Vec<(i64, Ints)> = cands
        .into_iter()
        .filter_map(|m| {
            let s = rs.scaled_root_coords(&m);
            let diff: Vec<i64> = scaled_l.iter().zip(&s).map(|(a, b)| a - b).collect();
            diff.iter()
                .all(|d| d % det == 0)
                .then(|| (diff.iter().sum::<i64>() / det, m))
        })
        .collect();
    dom.sort();
    let form = Form::new(rs);
    let roots = positive_roots_fw(rs);
    let rho = vec![1; rs.rank()];
    let lr = add(&l, &rho);
    let norm_lr = form.apply(&lr, &lr);
    let mut mult: HashMap<Ints, u64> = HashMap::new();
    for (depth, mu) in dom {
        if depth == 0 {
            mult.insert(mu, 1);
            continue;
        }
        let mut s: i64 = 0;
        for a in &roots {
            let mut v = add(&mu, a);
            loop {
                let mut d = v.clone();
                dominant_conjugate_ints(rs, &mut d);
                let Some(&m) = mult.get(&d) else { break };
                s += m as i64 * form.apply(&v, a);
                v = add(&v, a);
            }
        }
        let mr = add(&mu, &rho);
        let den = norm_lr - form.apply(&mr, &mr);
        if den <= 0 || (2 * s) % den != 0 {
            return Err(Error::Inconsistent(format!("Freudenthal recursion failed at {mu:?}")));
        }
        mult.insert(mu, (2 * s / den) as u64);
    }
    Ok(mult)
}

/// Every weight of `V(lambda)` with its multiplicity.
fn full_character(rs: &RootSystem, lambda: &Weight, limits: OracleLimits) -> Result<Vec<(Ints, u64)>> {
    let dom = dominant_multiplicities(rs, lambda, limits)?;
    let dim: u128 = dom.iter().map(|(mu, &m)| m as u128 * orbit_size(rs, mu)).sum();
    if dim != weyl_dimension(rs, lambda)? {
        return Err(Error::Inconsistent(format!("Freudenthal and Weyl dimensions differ for {lambda}")));
    }
    let mut out = Vec::new();
    for (mu, m) in dom {
        for w in orbit_ints(rs, &mu, limits.max_weights)? {
            out.push((w, m));
            if out.len() > limits.max_weights {
                return Err(Error::ResourceCap {
                    what: "character weights",
                    limit: limits.max_weights as u128,
                });
            }
        }
    }
    out.sort();
    Ok(out)
}

/// `V(lambda_1) ⊗ ... ⊗ V(lambda_k)` as a sum of simple modules.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorDecomposition {
    pub factors: Vec<Weight>,
    pub components: BTreeMap<Weight, u64>,
}

impl Serialize for TensorDecomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out<'a> {
            factors: &'a [Weight],
            #[serde(serialize_with = "serialize_multiset")]
            components: &'a BTreeMap<Weight, u64>,
        }
        Out {
            factors: &self.factors,
            components: &self.components,
        }
        .serialize(s)
    }
}

impl TensorDecomposition {
    pub fn multiplicity(&self, nu: &Weight) -> u64 {
        self.components.get(nu).copied().unwrap_or(0)
    }
}

/// Brauer-Klimyk: `V(big) ⊗ V(small)` from the weights of `V(small)`.
fn klimyk(rs: &RootSystem, big: &[i64], small_char: &[(Ints, u64)]) -> Result<HashMap<Ints, u64>> {
    let mut acc: HashMap<Ints, i64> = HashMap::new();
    for (nu, m) in small_char {
        let mut v: Ints = big.iter().zip(nu).map(|(a, b)| a + b + 1).collect();
        let len = dominant_conjugate_ints(rs, &mut v);
        if v.iter().any(|&x| x == 0) {
            continue;
        }
        let key: Ints = v.iter().map(|x| x - 1).collect();
        let sign = if len % 2 == 0 { 1 } else { -1 };
        *acc.entry(key).or_insert(0) += sign * *m as i64;
    }
    let mut out = HashMap::new();
    for (k, c) in acc {
        match c {
            0 => {}
            c if c > 0 => {
                out.insert(k, c as u64);
            }
            _ => return Err(Error::Inconsistent("negative Klimyk multiplicity".into())),
        }
    }
    Ok(out)
}

fn to_decomposition(factors: Vec<Weight>, comps: HashMap<Ints, u64>) -> TensorDecomposition {
    TensorDecomposition {
        factors,
        components: comps.into_iter().map(|(k, c)| (Weight::from_ints(&k), c)).collect(),
    }
}

fn check_dimension(rs: &RootSystem, d: &TensorDecomposition) -> Result<()> {
    let mut lhs: u128 = 0;
    for (nu, &c) in &d.components {
        lhs += c as u128 * weyl_dimension(rs, nu)?;
    }
    let mut rhs: u128 = 1;
    for f in &d.factors {
        rhs *= weyl_dimension(rs, f)?;
    }
    if lhs != rhs {
        return Err(Error::Inconsistent(format!("dimension identity fails: {lhs} != {rhs}")));
    }
    Ok(())
}

/// `V(lambda) ⊗ V(mu)` by Brauer-Klimyk; the dimension identity is checked.
pub fn tensor_decompose(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<TensorDecomposition> {
    tensor_decompose_with(rs, lambda, mu, OracleLimits::default())
}

pub fn tensor_decompose_with(
    rs: &RootSystem,
    lambda: &Weight,
    mu: &Weight,
    limits: OracleLimits,
) -> Result<TensorDecomposition> {
    let l = dominant_ints(rs, lambda)?;
    let m = dominant_ints(rs, mu)?;
    let (big, small) = if weyl_dimension(rs, lambda)? >= weyl_dimension(rs, mu)? {
        (&l, mu)
    } else {
        (&m, lambda)
    };
    let ch = full_character(rs, small, limits)?;
    let d = to_decomposition(vec![lambda.clone(), mu.clone()], klimyk(rs, big, &ch)?);
    check_dimension(rs, &d)?;
    Ok(d)
}

/// The same decomposition by multiplying full characters and peeling off
/// highest weights; an independent check on Brauer-Klimyk.
pub fn decompose_by_characters(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<TensorDecomposition> {
    let limits = OracleLimits::default();
    let a = full_character(rs, lambda, limits)?;
    let b = full_character(rs, mu, limits)?;
    let mut prod: HashMap<Ints, i64> = HashMap::new();
    for (x, m) in &a {
        for (y, k) in &b {
            *prod.entry(add(x, y)).or_insert(0) += (*m * *k) as i64;
        }
    }
    let mut comps: HashMap<Ints, u64> = HashMap::new();
    loop {
        prod.retain(|_, c| *c != 0);
        let top = prod
            .iter()
            .filter(|(w, _)| w.iter().all(|&x| x >= 0))
            .max_by_key(|(w, _)| (rs.scaled_root_coords(w).iter().sum::<i64>(), (*w).clone()))
            .map(|(w, &c)| (w.clone(), c));
        let Some((top, c)) = top else { break };
        if c < 0 {
            return Err(Error::Inconsistent("negative character coefficient".into()));
        }
        comps.insert(top.clone(), c as u64);
        for (w, m) in full_character(rs, &Weight::from_ints(&top), limits)? {
            *prod.entry(w).or_insert(0) -= c * m as i64;
        }
    }
    if !prod.is_empty() {
        return Err(Error::Inconsistent("character product did not decompose".into()));
    }
    Ok(to_decomposition(vec![lambda.clone(), mu.clone()], comps))
}

/// Components `kappa` worth keeping: `goal <= kappa + rest` for some goal.
fn prune(rs: &RootSystem, comps: &mut HashMap<Ints, u64>, goals: &[Ints], rest: &[i64]) {
    let det = rs.det();
    let goals: Vec<Ints> = goals.iter().map(|g| rs.scaled_root_coords(g)).collect();
    let rest = rs.scaled_root_coords(rest);
    comps.retain(|k, _| {
        let s = rs.scaled_root_coords(k);
        goals.iter().any(|g| {
            s.iter()
                .zip(&rest)
                .zip(g)
                .all(|((a, r), b)| (a + r - b) >= 0 && (a + r - b) % det == 0)
        })
    });
}

/// Components of `V(f_1) ⊗ ... ⊗ V(f_k)` that can still lie below a goal.
fn iterated_product(
    rs: &RootSystem,
    factors: &[Ints],
    goals: &[Ints],
    limits: OracleLimits,
    cache: &mut HashMap<Ints, Vec<(Ints, u64)>>,
) -> Result<HashMap<Ints, u64>> {
    let total = factors.iter().fold(vec![0; rs.rank()], |a, f| add(&a, f));
    let mut comps: HashMap<Ints, u64> = HashMap::from([(factors[0].clone(), 1)]);
    let mut used = factors[0].clone();
    for f in &factors[1..] {
        if !cache.contains_key(f) {
            cache.insert(f.clone(), full_character(rs, &Weight::from_ints(f), limits)?);
        }
        let ch = &cache[f];
        let mut next: HashMap<Ints, u64> = HashMap::new();
        for (k, c) in &comps {
            for (nu, m) in klimyk(rs, k, ch)? {
                *next.entry(nu).or_insert(0) += c * m;
            }
        }
        used = add(&used, f);
        let rest: Ints = total.iter().zip(&used).map(|(t, u)| t - u).collect();
        prune(rs, &mut next, goals, &rest);
        if next.len() > limits.max_components {
            return Err(Error::ResourceCap {
                what: "tensor product components",
                limit: limits.max_components as u128,
            });
        }
        comps = next;
    }
    Ok(comps)
}

/// Does `V(nu)` occur in `V(f_1) ⊗ ... ⊗ V(f_k)`?
pub fn contains_in_tensor(rs: &RootSystem, nu: &Weight, factors: &[Weight]) -> Result<bool> {
    contains_in_tensor_with(rs, nu, factors, OracleLimits::default())
}

pub fn contains_in_tensor_with(
    rs: &RootSystem,
    nu: &Weight,
    factors: &[Weight],
    limits: OracleLimits,
) -> Result<bool> {
    let n = dominant_ints(rs, nu)?;
    if factors.is_empty() {
        return Ok(n.iter().all(|&x| x == 0));
    }
    let fs: Vec<Ints> = factors.iter().map(|f| dominant_ints(rs, f)).collect::<Result<_>>()?;
    let comps = iterated_product(rs, &fs, std::slice::from_ref(&n), limits, &mut HashMap::new())?;
    Ok(comps.get(&n).copied().unwrap_or(0) > 0)
}

/// Dominant representative of `w lambda + w' mu`, a PRV component of
/// `V(lambda) ⊗ V(mu)`.
pub fn prv_weight(rs: &RootSystem, lambda: &Weight, mu: &Weight, w: &WeylWord, w2: &WeylWord) -> Weight {
    let v = &w.apply(rs, lambda) + &w2.apply(rs, mu);
    crate::weights::dominant_conjugate(rs, &v).0
}

/// Why a difference cannot lie in `Omega(Pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Refutation {
    /// No `mu` in `Pi` has `nu <=^lambda_Q mu`.
    Necessity,
    /// `nu - lambda` is not in the subgroup of `X(T)/Z[Delta]` generated by
    /// the admissible `mu - lambda`.
    Class,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum OmegaSearch {
    Witness {
        n: usize,
        factors: Vec<Weight>,
        nu: Weight,
    },
    Refuted {
        reason: Refutation,
    },
    /// No witness with at most `max_n` factors; not a proof of absence.
    Unresolved {
        max_n: usize,
    },
}

impl OmegaSearch {
    pub fn is_witness(&self) -> bool {
        matches!(self, OmegaSearch::Witness { .. })
    }
}

/// Searches several differences `nu - lambda` at once, sharing the partial
/// products of each factor multiset.
fn omega_search(
    lat: &CharacterLattice,
    pi: &WeightSet,
    lambda: &Weight,
    targets: &[Weight],
    max_n: usize,
    limits: OracleLimits,
) -> Result<Vec<OmegaSearch>> {
    let rs = lat.root_system();
    let l = ints(lambda)?;
    let members: Vec<Ints> = pi.iter().map(ints).collect::<Result<_>>()?;
    let qcmp = Comparator::new(rs, &OrderKind::LambdaRationalDominance(lambda.clone()))?;
    let below_lambda = Comparator::new(rs, &OrderKind::RationalDominance)?;
    let mut results: Vec<Option<OmegaSearch>> = vec![None; targets.len()];
    // admissible factor indices per target
    let mut admissible: Vec<Vec<usize>> = Vec::new();
    for (t, target) in targets.iter().enumerate() {
        let nu = target + lambda;
        let in_polytope = nu.is_dominant() && lat.contains(&nu) && below_lambda.le(&nu, lambda);
        let allowed: Vec<usize> = (0..members.len())
            .filter(|&i| !in_polytope || qcmp.le(&nu, &pi.as_slice()[i]))
            .collect();
        if allowed.is_empty() {
            results[t] = Some(OmegaSearch::Refuted {
                reason: Refutation::Necessity,
            });
        } else {
            let diffs: Vec<Weight> = allowed.iter().map(|&i| &pi.as_slice()[i] - lambda).collect();
            let group = lat.generated_classes(&diffs);
            match target.to_ints() {
                Some(m) if group.contains(&lat.class_key(&m)) => {}
                _ => {
                    results[t] = Some(OmegaSearch::Refuted {
                        reason: Refutation::Class,
                    })
                }
            }
        }
        admissible.push(allowed);
    }
    let nus: Vec<Option<Ints>> = targets.iter().map(|t| (t + lambda).to_ints()).collect();
    let mut chars: HashMap<usize, Vec<(Ints, u64)>> = HashMap::new();
    // pruned components of each factor multiset, keyed by the sorted multiset
    let mut level: Vec<(Vec<usize>, HashMap<Ints, u64>)> = vec![(vec![], HashMap::new())];
    for n in 1..=max_n {
        let pending: Vec<usize> = (0..targets.len()).filter(|&t| results[t].is_none()).collect();
        if pending.is_empty() {
            break;
        }
        let shift: Ints = l.iter().map(|x| x * (n as i64 - 1)).collect();
        let mut next_level = Vec::new();
        for (prefix, prefix_comps) in &level {
            let start = prefix.last().copied().unwrap_or(0);
            for i in start..members.len() {
                let mut ms = prefix.clone();
                ms.push(i);
                let live: Vec<usize> = pending
                    .iter()
                    .copied()
                    .filter(|&t| results[t].is_none() && ms.iter().all(|j| admissible[t].contains(j)))
                    .collect();
                // a later factor adds at most lambda, so a component kappa
                // can only lead to nu + (m-1) lambda if nu + (n-1) lambda <=_Q kappa
                let floors: Vec<Ints> = live
                    .iter()
                    .filter_map(|&t| nus[t].as_ref())
                    .map(|nu| rs.scaled_root_coords(&add(nu, &shift)))
                    .collect();
                if floors.is_empty() {
                    continue;
                }
                let mut comps: HashMap<Ints, u64> = if n == 1 {
                    HashMap::from([(members[i].clone(), 1)])
                } else {
                    if !chars.contains_key(&i) {
                        chars.insert(i, full_character(rs, &pi.as_slice()[i], limits)?);
                    }
                    let mut acc: HashMap<Ints, u64> = HashMap::new();
                    for (k, c) in prefix_comps {
                        for (nu, m) in klimyk(rs, k, &chars[&i])? {
                            *acc.entry(nu).or_insert(0) += c * m;
                        }
                    }
                    acc
                };
                comps.retain(|k, _| {
                    let s = rs.scaled_root_coords(k);
                    floors.iter().any(|f| s.iter().zip(f).all(|(a, b)| a >= b))
                });
                if comps.len() > limits.max_components {
                    return Err(Error::ResourceCap {
                        what: "tensor product components",
                        limit: limits.max_components as u128,
                    });
                }
                for &t in &live {
                    let Some(nu) = &nus[t] else { continue };
                    let goal = add(nu, &shift);
                    if results[t].is_none() && comps.get(&goal).copied().unwrap_or(0) > 0 {
                        results[t] = Some(OmegaSearch::Witness {
                            n,
                            factors: ms.iter().map(|&j| pi.as_slice()[j].clone()).collect(),
                            nu: Weight::from_ints(&goal),
                        });
                    }
                }
                next_level.push((ms, comps));
            }
        }
        level = next_level;
    }
    Ok(results
        .into_iter()
        .map(|r| r.unwrap_or(OmegaSearch::Unresolved { max_n }))
        .collect())
}

/// Smallest `n <= max_n` and factors `mu_1..mu_n` in `Pi` with
/// `V(target + n lambda) ⊂ V(mu_1) ⊗ ... ⊗ V(mu_n)`.
pub fn omega_membership(
    lat: &CharacterLattice,
    pi: &WeightSet,
    target: &Weight,
    max_n: usize,
) -> Result<OmegaSearch> {
    lat.root_system().check_rank(target)?;
    let lambda = max_element(lat.root_system(), pi)?;
    Ok(omega_search(lat, pi, &lambda, std::slice::from_ref(target), max_n, OracleLimits::default())?.remove(0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NuStatus {
    pub nu: Weight,
    pub search: OmegaSearch,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalityCheck {
    pub lambda: Weight,
    pub regularized_pi: WeightSet,
    pub per_nu: Vec<NuStatus>,
    /// `Some(true)` when every `nu` has a witness, `Some(false)` when some
    /// `nu` is refuted, `None` otherwise.
    pub brute_force: Option<bool>,
    pub theorem: bool,
    pub agrees: Option<bool>,
}

/// Checks `nu - lambda ∈ Omega(Pi)` for every `nu ∈ Pi_G^+(lambda)` after
/// regularizing `Pi`, and compares with the little-brother verdict.
pub fn verify_normality_bruteforce(lat: &CharacterLattice, pi: &WeightSet, max_n: usize) -> Result<NormalityCheck> {
    verify_normality_bruteforce_with(lat, pi, max_n, OracleLimits::default())
}

pub fn verify_normality_bruteforce_with(
    lat: &CharacterLattice,
    pi: &WeightSet,
    max_n: usize,
    limits: OracleLimits,
) -> Result<NormalityCheck> {
    let theorem = normality(pi, lat)?.answer == Some(true);
    let (regularized_pi, lambda) = regularize(lat, pi)?;
    let nus = pi_g_plus(lat, &lambda)?;
    let targets: Vec<Weight> = nus.iter().map(|nu| nu - &lambda).collect();
    let found = omega_search(lat, &regularized_pi, &lambda, &targets, max_n, limits)?;
    let brute_force = if found.iter().any(|s| matches!(s, OmegaSearch::Refuted { .. })) {
        Some(false)
    } else if found.iter().all(OmegaSearch::is_witness) {
        Some(true)
    } else {
        None
    };
    Ok(NormalityCheck {
        per_nu: nus
            .iter()
            .cloned()
            .zip(found)
            .map(|(nu, search)| NuStatus { nu, search })
            .collect(),
        lambda,
        regularized_pi,
        agrees: brute_force.map(|b| b == theorem),
        brute_force,
        theorem,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cartan::CartanType;

    fn rs(kind: CartanType, rank: usize) -> RootSystem {
        RootSystem::simple(kind, rank).unwrap()
    }

    fn lat(kind: CartanType, rank: usize, preset: &str) -> CharacterLattice {
        CharacterLattice::preset(Arc::new(rs(kind, rank)), preset).unwrap()
    }

    fn w(v: &[i64]) -> Weight {
        Weight::from_ints(v)
    }

    fn set(v: &[&[i64]]) -> WeightSet {
        v.iter().map(|x| w(x)).collect()
    }

    fn table(entries: &[(&[i64], u64)]) -> BTreeMap<Weight, u64> {
        entries.iter().map(|(k, m)| (w(k), *m)).collect()
    }

    #[test]
    fn multiplicities() {
        let a2 = rs(CartanType::A, 2);
        let t = weight_multiplicities(&a2, &w(&[1, 0])).unwrap();
        assert_eq!(t.dominant_multiplicities, table(&[(&[1, 0], 1)]));
        assert_eq!(t.dimension(&a2), 3);
        let t = weight_multiplicities(&a2, &w(&[1, 1])).unwrap();
        assert_eq!(t.dominant_multiplicities, table(&[(&[1, 1], 1), (&[0, 0], 2)]));
        assert_eq!(weyl_dimension(&a2, &w(&[1, 1])).unwrap(), 8);
        let c2 = rs(CartanType::C, 2);
        let t = weight_multiplicities(&c2, &w(&[0, 1])).unwrap();
        assert_eq!(t.dominant_multiplicities, table(&[(&[0, 1], 1), (&[0, 0], 1)]));
        assert_eq!(t.dimension(&c2), 5);
        let g2 = rs(CartanType::G, 2);
        assert_eq!(weyl_dimension(&g2, &w(&[1, 0])).unwrap(), 7);
        assert_eq!(weyl_dimension(&g2, &w(&[0, 1])).unwrap(), 14);
        assert_eq!(weight_multiplicities(&g2, &w(&[0, 1])).unwrap().multiplicity(&w(&[0, 0])), 2);
        let e8 = rs(CartanType::E, 8);
        assert_eq!(weyl_dimension(&e8, &Weight::fundamental(8, 7)).unwrap(), 248);
    }

    #[test]
    fn caps_are_reported() {
        let a3 = rs(CartanType::A, 3);
        let tiny = OracleLimits {
            max_weights: 3,
            max_components: 3,
        };
        assert!(matches!(
            weight_multiplicities_with(&a3, &w(&[2, 2, 2]), tiny),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn tensor_examples() {
        let a1 = rs(CartanType::A, 1);
        let d = tensor_decompose(&a1, &w(&[1]), &w(&[1])).unwrap();
        assert_eq!(d.components, table(&[(&[2], 1), (&[0], 1)]));
        assert_eq!(d, decompose_by_characters(&a1, &w(&[1]), &w(&[1])).unwrap());
        let a2 = rs(CartanType::A, 2);
        let d = tensor_decompose(&a2, &w(&[1, 0]), &w(&[0, 1])).unwrap();
        assert_eq!(d.components, table(&[(&[1, 1], 1), (&[0, 0], 1)]));
        assert_eq!(d, decompose_by_characters(&a2, &w(&[1, 0]), &w(&[0, 1])).unwrap());
        let d = tensor_decompose(&a2, &w(&[1, 1]), &w(&[1, 1])).unwrap();
        assert_eq!(d.multiplicity(&w(&[1, 1])), 2);
        assert_eq!(d.components.values().sum::<u64>(), 6);
        let b3 = rs(CartanType::B, 3);
        let d = tensor_decompose(&b3, &w(&[0, 1, 1]), &w(&[0, 0, 0])).unwrap();
        assert_eq!(d.components, table(&[(&[0, 1, 1], 1)]));
    }

    #[test]
    fn sl5_multiplication_not_surjective() {
        let sl5 = lat(CartanType::A, 4, "SL");
        let lambda = w(&[1, 0, 0, 1]);
        let pg = pi_g_plus(&sl5, &lambda).unwrap();
        let target = w(&[1, 1, 0, 0]);
        for a in &pg {
            for b in &pg {
                assert!(!contains_in_tensor(sl5.root_system(), &target, &[a.clone(), b.clone()]).unwrap());
            }
        }
    }

    #[test]
    fn prv_and_translation() {
        let a2 = rs(CartanType::A, 2);
        let adj = w(&[1, 1]);
        let w0 = WeylWord(vec![0, 1, 0]);
        let nu = prv_weight(&a2, &adj, &adj, &WeylWord(vec![]), &w0);
        assert_eq!(nu, w(&[0, 0]));
        assert!(contains_in_tensor(&a2, &nu, &[adj.clone(), adj]).unwrap());
        let a1 = rs(CartanType::A, 1);
        assert!(contains_in_tensor(&a1, &w(&[0]), &[w(&[1]), w(&[1])]).unwrap());
        assert!(contains_in_tensor(&a1, &w(&[1]), &[w(&[2]), w(&[1])]).unwrap());
        assert!(!contains_in_tensor(&a1, &w(&[1]), &[w(&[1]), w(&[1])]).unwrap());
    }

    #[test]
    fn omega_examples() {
        let sp4 = lat(CartanType::C, 2, "Sp");
        let pi = set(&[&[0, 1], &[1, 0]]);
        let s = omega_membership(&sp4, &pi, &w(&[0, 0]), 3).unwrap();
        assert_eq!(
            s,
            OmegaSearch::Witness {
                n: 1,
                factors: vec![w(&[0, 1])],
                nu: w(&[0, 1])
            }
        );
        let s = omega_membership(&sp4, &pi, &w(&[1, -1]), 3).unwrap();
        assert!(matches!(s, OmegaSearch::Witness { n: 1, .. }));
        // -omega_1 is not in the root lattice, while V(lambda)^{⊗n} only
        // carries weights congruent to n lambda
        let sl3 = lat(CartanType::A, 2, "SL");
        let s = omega_membership(&sl3, &set(&[&[1, 1]]), &w(&[-1, 0]), 4).unwrap();
        assert_eq!(
            s,
            OmegaSearch::Refuted {
                reason: Refutation::Class
            }
        );
    }

    #[test]
    fn bruteforce_normality() {
        let sl2 = lat(CartanType::A, 1, "SL");
        let r = verify_normality_bruteforce(&sl2, &set(&[&[2], &[1]]), 3).unwrap();
        assert_eq!(r.per_nu.len(), 3);
        assert_eq!(r.brute_force, Some(true));
        assert_eq!(r.agrees, Some(true));
        let pgl3 = lat(CartanType::A, 2, "PGL");
        let r = verify_normality_bruteforce(&pgl3, &set(&[&[1, 1]]), 3).unwrap();
        assert!(r.theorem);
        assert_eq!(r.agrees, Some(true));
        // over SL(3) the fundamental weights lie in Pi_G^+ but not in the
        // root-lattice classes reachable from the adjoint representation
        let sl3 = lat(CartanType::A, 2, "SL");
        let r = verify_normality_bruteforce(&sl3, &set(&[&[1, 1]]), 3).unwrap();
        assert!(!r.theorem);
        assert_eq!(r.agrees, Some(true));
        let sp4 = lat(CartanType::C, 2, "Sp");
        let r = verify_normality_bruteforce(&sp4, &set(&[&[0, 1]]), 3).unwrap();
        assert!(!r.theorem);
        assert_ne!(r.brute_force, Some(true));
        assert!(r.per_nu.iter().any(|s| !s.search.is_witness()));
    }
}
