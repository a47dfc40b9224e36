//! Verdicts on a weight set `Pi`: simplicity and faithfulness, normality of
//! `X_Pi`, the colored cone of the normalization `X~_lambda`, factoriality
//! and smoothness.
//!
//! Cocharacters are written in simple-coroot coordinates; a weight with
//! fundamental-weight coordinates `m` pairs with `b` as `m . b`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::brothers::{little_brothers, max_element, regularize};
use crate::cartan::{serialize_rationals, CartanType, CharacterLattice, RootSystem, SimpleRootSet, Weight};
use crate::error::{Error, Result};
use crate::linalg;
use crate::lp;
use crate::orders::{maximal_with, Comparator, OrderKind};
use crate::weights::WeightSet;
use crate::Q;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiClassification {
    pub is_simple: bool,
    pub is_adjoint: bool,
    pub is_faithful: bool,
    pub is_almost_faithful: bool,
    pub max_element: Option<Weight>,
}

fn check_members(pi: &WeightSet, lat: &CharacterLattice) -> Result<()> {
    let rs = lat.root_system();
    if pi.is_empty() {
        return Err(Error::EmptySet);
    }
    for mu in pi {
        rs.check_rank(mu)?;
        if !lat.contains(mu) {
            return Err(Error::NotInLattice(mu.clone()));
        }
        if !mu.is_dominant() {
            return Err(Error::NotDominant(mu.clone()));
        }
    }
    Ok(())
}

pub fn classify_pi(pi: &WeightSet, lat: &CharacterLattice) -> Result<PiClassification> {
    check_members(pi, lat)?;
    let rs = lat.root_system();
    let cmp = Comparator::new(rs, &OrderKind::RationalDominance)?;
    let maxima = maximal_with(rs, pi.as_slice(), &cmp);
    let base = &pi.as_slice()[0];
    let diffs: Vec<Weight> = pi.iter().map(|mu| mu - base).collect();
    let supp = pi.iter().fold(0u64, |m, mu| m | mu.support_mask());
    Ok(PiClassification {
        is_simple: maxima.len() == 1,
        is_adjoint: diffs.iter().all(|d| rs.root_coords(d).is_integral()),
        is_faithful: lat.generated_classes(&diffs) == lat.class_set(),
        is_almost_faithful: rs
            .components()
            .iter()
            .all(|c| c.indices().any(|i| supp & (1 << i) != 0)),
        max_element: (maxima.len() == 1).then(|| maxima.as_slice()[0].clone()),
    })
}

/// A cocharacter in simple-coroot coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coweight(Vec<Q>);

impl Coweight {
    pub fn new(coords: Vec<Q>) -> Self {
        Coweight(coords)
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    /// The simple coroot `alpha_i^vee`.
    pub fn coroot(rank: usize, i: usize) -> Self {
        let mut v = vec![Q::from_integer(0); rank];
        v[i] = Q::from_integer(1);
        Coweight(v)
    }

    /// `-omega_i^vee`.
    pub fn neg_fundamental(rs: &RootSystem, i: usize) -> Self {
        Coweight(rs.fundamental_coweight(i).into_iter().map(|x| -x).collect())
    }

    pub fn pair(&self, w: &Weight) -> Q {
        w.fw().iter().zip(&self.0).map(|(a, b)| a * b).sum()
    }
}

impl Serialize for Coweight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_rationals(&self.0, s)
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", v.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColoredCone {
    pub support: SimpleRootSet,
    pub generators: Vec<Coweight>,
    /// Primitive elements of `X(T)^vee`; empty when the cone contains a line.
    pub extremal_rays: Vec<Coweight>,
    pub is_pointed: bool,
    pub is_simplicial: bool,
    pub is_unimodular_basis: bool,
}

fn coords(v: &[Coweight]) -> Vec<Vec<Q>> {
    v.iter().map(|c| c.0.clone()).collect()
}

/// `|det(rays)| * det(C) == |X(T)/Z[Delta]|`, i.e. the rays form a basis of
/// `X(T)^vee`.
fn is_lattice_basis(lat: &CharacterLattice, rays: &[Coweight]) -> bool {
    let n = lat.rank();
    if rays.len() != n {
        return false;
    }
    let d = linalg::determinant(&coords(rays));
    let d = if d < Q::from_integer(0) { -d } else { d };
    d * Q::from_integer(lat.root_system().det()) == Q::from_integer(lat.order() as i64)
}

/// The cone generated by `{alpha^vee : alpha not in S}` and the negative Weyl
/// chamber. Extremal rays are the generators not in the cone of the others.
pub fn colored_cone(s: &SimpleRootSet, lat: &CharacterLattice) -> Result<ColoredCone> {
    let rs = lat.root_system();
    let n = rs.rank();
    if s.rank() != n {
        return Err(Error::RankMismatch {
            expected: n,
            found: s.rank(),
        });
    }
    let mut generators: Vec<Coweight> = s.complement().iter().map(|i| Coweight::coroot(n, i)).collect();
    generators.extend((0..n).map(|i| Coweight::neg_fundamental(rs, i)));
    let gq = coords(&generators);
    let is_pointed = lp::is_pointed(&gq);
    let mut extremal_rays = Vec::new();
    if is_pointed {
        let mut distinct: Vec<&Vec<Q>> = Vec::new();
        for g in &gq {
            if !distinct.iter().any(|d| linalg::same_ray(d, g)) {
                distinct.push(g);
            }
        }
        for (k, g) in distinct.iter().enumerate() {
            let others: Vec<Vec<Q>> = distinct
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, v)| (*v).clone())
                .collect();
            if !lp::cone_contains(&others, g) {
                extremal_rays.push(Coweight(lat.primitive_dual(g)));
            }
        }
    }
    let is_simplicial =
        is_pointed && extremal_rays.len() == n && linalg::rank(&coords(&extremal_rays)) == n;
    let is_unimodular_basis = is_simplicial && is_lattice_basis(lat, &extremal_rays);
    Ok(ColoredCone {
        support: *s,
        generators,
        extremal_rays,
        is_pointed,
        is_simplicial,
        is_unimodular_basis,
    })
}

impl ColoredCone {
    /// Exact re-validation: the rays lie in `X(T)^vee`, generate the same
    /// cone as the generators, and the flags follow from them.
    pub fn recheck(&self, lat: &CharacterLattice) -> bool {
        let n = lat.rank();
        let g = coords(&self.generators);
        let r = coords(&self.extremal_rays);
        if lp::is_pointed(&g) != self.is_pointed {
            return false;
        }
        if !self.is_pointed {
            return self.extremal_rays.is_empty() && !self.is_simplicial && !self.is_unimodular_basis;
        }
        let rays_ok = r.iter().all(|v| lat.dual_contains(v) && lp::cone_contains(&g, v))
            && g.iter().all(|v| lp::cone_contains(&r, v));
        let simplicial = r.len() == n && linalg::rank(&r) == n;
        rays_ok
            && simplicial == self.is_simplicial
            && (simplicial && is_lattice_basis(lat, &self.extremal_rays)) == self.is_unimodular_basis
    }
}

fn diagram_extremal(rs: &RootSystem) -> SimpleRootSet {
    SimpleRootSet::full(rs.rank()).extremal_roots(rs)
}

/// Roots adjacent to exactly three others.
fn branch_nodes(rs: &RootSystem) -> Vec<usize> {
    (0..rs.rank())
        .filter(|&a| (0..rs.rank()).filter(|&b| b != a && rs.adjacent(a, b)).count() == 3)
        .collect()
}

/// `S` contains every branch node together with at least two of its three
/// neighbours.
fn branch_condition(rs: &RootSystem, s: &SimpleRootSet) -> bool {
    branch_nodes(rs).into_iter().all(|b| {
        s.contains(b)
            && (0..rs.rank())
                .filter(|&c| c != b && rs.adjacent(b, c) && s.contains(c))
                .count()
                >= 2
    })
}

/// In each component of the diagram `S` is nonempty and connected, and a
/// singleton is an end of that component.
fn component_connectivity(rs: &RootSystem, s: &SimpleRootSet) -> bool {
    let ends = diagram_extremal(rs);
    (0..rs.components().len()).all(|k| {
        let t = s.restrict_to_component(rs, k);
        !t.is_empty() && t.is_connected(rs) && (t.len() != 1 || t.is_subset(&ends))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QFactorialConditions {
    pub connected: bool,
    pub branch: bool,
}

impl QFactorialConditions {
    pub fn holds(&self) -> bool {
        self.connected && self.branch
    }
}

/// Combinatorial conditions for `X~_lambda` to be Q-factorial, `S = Supp(lambda)`.
pub fn q_factorial_conditions(rs: &RootSystem, s: &SimpleRootSet) -> QFactorialConditions {
    QFactorialConditions {
        connected: component_connectivity(rs, s),
        branch: branch_condition(rs, s),
    }
}

/// `{alpha^vee : alpha not in S} ∪ {-omega_alpha^vee : alpha in S° ∪ (Delta^e \ S)}`.
pub fn predicted_rays(rs: &RootSystem, s: &SimpleRootSet) -> Vec<Coweight> {
    let n = rs.rank();
    let mut out: Vec<Coweight> = s.complement().iter().map(|i| Coweight::coroot(n, i)).collect();
    let neg = s.interior(rs).union(&diagram_extremal(rs).difference(s));
    out.extend(neg.iter().map(|i| Coweight::neg_fundamental(rs, i)));
    out
}

/// Conditions i-iv of the smoothness theorem for adjoint simple groups.
pub fn adjoint_theorem_conditions(rs: &RootSystem, s: &SimpleRootSet) -> [bool; 4] {
    let n = rs.rank();
    let comp = rs.components()[0];
    let cond_i = if comp.kind.is_simply_laced(comp.rank) {
        true
    } else {
        let has_long = s.iter().any(|a| rs.is_long_simple(a));
        let special = (0..n)
            .find(|&a| !rs.is_long_simple(a) && (0..n).any(|b| rs.is_long_simple(b) && rs.adjacent(a, b)))
            .expect("non-simply-laced diagram has a short root next to a long one");
        !has_long || s.contains(special)
    };
    let cond_ii = !s.is_empty()
        && s.is_connected(rs)
        && (s.len() != 1 || s.is_subset(&diagram_extremal(rs)));
    let cond_iv = s
        .complement()
        .components(rs)
        .iter()
        .all(|c| c.induced_type(rs).0 == CartanType::A);
    [cond_i, cond_ii, branch_condition(rs, s), cond_iv]
}

/// Index of the long simple root `alpha_r` when `lat` is `Sp(2r)`, in the
/// numbering of its own root system (`C_r`, or `B_2`, or `A_1`).
pub fn symplectic_long_root(lat: &CharacterLattice) -> Option<usize> {
    let rs = lat.root_system();
    if rs.components().len() != 1 || !lat.is_simply_connected() {
        return None;
    }
    let c = rs.components()[0];
    match (c.kind, c.rank) {
        (CartanType::C, r) => Some(r - 1),
        (CartanType::A, 1) | (CartanType::B, 2) => Some(0),
        _ => None,
    }
}

/// The smoothness criterion for simple non-adjoint groups: `G = Sp(2r)`,
/// `S` connected and `alpha_r` in `S`.
pub fn sp_theorem_holds(lat: &CharacterLattice, s: &SimpleRootSet) -> bool {
    match symplectic_long_root(lat) {
        Some(r) => s.is_connected(lat.root_system()) && s.contains(r),
        None => false,
    }
}

/// One block of the dual-basis partition: the enumerated component
/// `alpha_1..alpha_n` and the dual-basis indices of `pi_1..pi_{n+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    #[serde(serialize_with = "one_based")]
    pub roots: Vec<usize>,
    pub dual: Vec<usize>,
}

fn one_based<S: Serializer>(v: &[usize], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|i| i + 1))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimashevReport {
    pub support: SimpleRootSet,
    pub complement_components: Vec<SimpleRootSet>,
    pub condition_i: bool,
    pub condition_ii: bool,
    pub condition_iii: bool,
    /// `B(lambda)`, present when condition ii holds.
    pub basis: Vec<Coweight>,
    /// `B(lambda)^*`, dual to `basis`.
    pub dual_basis: Vec<Weight>,
    pub partition: Vec<Block>,
    pub obstruction: Option<String>,
}

impl TimashevReport {
    pub fn smooth(&self) -> bool {
        self.condition_i && self.condition_ii && self.condition_iii
    }
}

/// Type A component as a path, from one end.
fn path_order(rs: &RootSystem, comp: &SimpleRootSet) -> Vec<usize> {
    let start = comp.extremal_roots(rs).iter().next().expect("nonempty path");
    let mut out = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(next) = comp.iter().find(|&b| b != prev && b != cur && rs.adjacent(cur, b)) {
        out.push(next);
        prev = cur;
        cur = next;
    }
    out
}

/// `omega^L_j` of an `A_n` chain, as a weight of the ambient system.
fn levi_fundamental(rs: &RootSystem, chain: &[usize], j: usize) -> Weight {
    let n = chain.len() as i64;
    let jj = j as i64 + 1;
    let mut w = Weight::zero(rs.rank());
    for (i, &a) in chain.iter().enumerate() {
        let ii = i as i64 + 1;
        let c = if ii <= jj {
            Q::new(ii * (n - jj + 1), n + 1)
        } else {
            Q::new(jj * (n - ii + 1), n + 1)
        };
        w = &w + &rs.simple_root(a).scale(c);
    }
    w
}

/// Checks the pairing and fundamental-weight identities for one block.
fn block_valid(rs: &RootSystem, s: &SimpleRootSet, dual: &[Weight], block: &Block) -> bool {
    let n = block.roots.len();
    if block.dual.len() != n + 1 || block.dual.iter().any(|&d| d >= dual.len()) {
        return false;
    }
    let last = &dual[block.dual[n]];
    let pairing_ok = block.dual.iter().enumerate().all(|(j, &d)| {
        s.complement().iter().all(|a| {
            let want = if j < n && block.roots[j] == a { 1 } else { 0 };
            dual[d].coord(a) == Q::from_integer(want)
        })
    });
    pairing_ok
        && (0..n).all(|j| {
            let lhs = &dual[block.dual[j]] - &last.scale(Q::new(j as i64 + 1, n as i64 + 1));
            lhs == levi_fundamental(rs, &block.roots, j)
        })
}

fn search_partition(
    rs: &RootSystem,
    s: &SimpleRootSet,
    dual: &[Weight],
    chains: &[Vec<usize>],
    used: &mut Vec<bool>,
    out: &mut Vec<Block>,
) -> bool {
    let Some((chain, rest)) = chains.split_first() else {
        return true;
    };
    let mut orientations = vec![chain.clone()];
    if chain.len() > 1 {
        orientations.push(chain.iter().rev().cloned().collect());
    }
    let comp = s.complement();
    for roots in orientations {
        let n = roots.len();
        for top in 0..dual.len() {
            if used[top] || comp.iter().any(|a| dual[top].coord(a) != Q::from_integer(0)) {
                continue;
            }
            // pi_j is forced: omega^L_j + j/(n+1) pi_{n+1}
            let mut block_dual = Vec::with_capacity(n + 1);
            for j in 0..n {
                let want = &levi_fundamental(rs, &roots, j) + &dual[top].scale(Q::new(j as i64 + 1, n as i64 + 1));
                match (0..dual.len()).find(|&d| !used[d] && d != top && dual[d] == want) {
                    Some(d) if !block_dual.contains(&d) => block_dual.push(d),
                    _ => break,
                }
            }
            if block_dual.len() != n {
                continue;
            }
            block_dual.push(top);
            let block = Block {
                roots: roots.clone(),
                dual: block_dual,
            };
            if !block_valid(rs, s, dual, &block) {
                continue;
            }
            for &d in &block.dual {
                used[d] = true;
            }
            out.push(block);
            if search_partition(rs, s, dual, rest, used, out) {
                return true;
            }
            let block = out.pop().unwrap();
            for &d in &block.dual {
                used[d] = false;
            }
        }
    }
    false
}

fn timashev_report(s: &SimpleRootSet, lat: &CharacterLattice) -> Result<TimashevReport> {
    let rs = lat.root_system();
    let comps = s.complement().components(rs);
    let condition_i = comps.len() <= s.len()
        && comps.iter().all(|c| c.induced_type(rs).0 == CartanType::A);
    let cone = colored_cone(s, lat)?;
    let condition_ii = cone.is_unimodular_basis;
    let mut report = TimashevReport {
        support: *s,
        complement_components: comps.clone(),
        condition_i,
        condition_ii,
        condition_iii: false,
        basis: Vec::new(),
        dual_basis: Vec::new(),
        partition: Vec::new(),
        obstruction: None,
    };
    if !condition_i {
        report.obstruction = Some("condition i: complement has a component not of type A or too many components".into());
        return Ok(report);
    }
    if !condition_ii {
        report.obstruction = Some("condition ii: the colored cone is not generated by a basis of X(T)^vee".into());
        return Ok(report);
    }
    let basis = cone.extremal_rays;
    let rt = linalg::transpose(&coords(&basis));
    let dual_rows = linalg::inverse(&rt).ok_or_else(|| Error::Inconsistent("basis is singular".into()))?;
    // rows of (R^T)^{-1} pair with the basis as the identity
    let dual: Vec<Weight> = dual_rows.into_iter().map(Weight::new).collect();
    let mut chains: Vec<Vec<usize>> = comps.iter().map(|c| path_order(rs, c)).collect();
    chains.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let mut used = vec![false; dual.len()];
    let mut partition = Vec::new();
    let found = search_partition(rs, s, &dual, &chains, &mut used, &mut partition);
    report.basis = basis;
    report.dual_basis = dual;
    report.condition_iii = found;
    if found {
        report.partition = partition;
    } else {
        report.obstruction = Some("condition iii: no partition of the dual basis fits the complement".into());
    }
    Ok(report)
}

impl TimashevReport {
    /// Re-derives every condition from the stored data.
    pub fn recheck(&self, lat: &CharacterLattice) -> Result<bool> {
        let rs = lat.root_system();
        let s = &self.support;
        let comps = s.complement().components(rs);
        let cond_i = comps.len() <= s.len() && comps.iter().all(|c| c.induced_type(rs).0 == CartanType::A);
        if cond_i != self.condition_i || comps != self.complement_components {
            return Ok(false);
        }
        if !cond_i {
            return Ok(!self.smooth());
        }
        let cone = colored_cone(s, lat)?;
        if cone.is_unimodular_basis != self.condition_ii {
            return Ok(false);
        }
        if !self.condition_ii {
            return Ok(!self.smooth());
        }
        let g = coords(&cone.generators);
        let b = coords(&self.basis);
        let basis_ok = is_lattice_basis(lat, &self.basis)
            && b.iter().all(|v| lat.dual_contains(v) && lp::cone_contains(&g, v))
            && g.iter().all(|v| lp::cone_contains(&b, v));
        let dual_ok = self.dual_basis.len() == self.basis.len()
            && self.dual_basis.iter().enumerate().all(|(i, w)| {
                self.basis
                    .iter()
                    .enumerate()
                    .all(|(j, v)| v.pair(w) == Q::from_integer((i == j) as i64))
            });
        if !(basis_ok && dual_ok) {
            return Ok(false);
        }
        if self.condition_iii {
            let mut seen = vec![false; self.dual_basis.len()];
            let mut covered = SimpleRootSet::empty(s.rank());
            for block in &self.partition {
                if !block_valid(rs, s, &self.dual_basis, block) {
                    return Ok(false);
                }
                for &d in &block.dual {
                    if std::mem::replace(&mut seen[d], true) {
                        return Ok(false);
                    }
                }
                let roots = SimpleRootSet::new(s.rank(), block.roots.iter().copied())?;
                if !comps.contains(&roots) {
                    return Ok(false);
                }
                covered = covered.union(&roots);
            }
            Ok(covered == s.complement())
        } else {
            Ok(!timashev_report(s, lat)?.condition_iii)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Question {
    Normal,
    QFactorial,
    LocallyFactorial,
    Smooth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    LittleBrothers,
    ColoredCone,
    AdjointTheorem,
    SpTheorem,
    Timashev,
    FactorSplit,
    NotAlmostFaithful,
}

/// Per simple factor evidence for smoothness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorCheck {
    /// 1-based index of the simple factor.
    pub factor: usize,
    pub lattice: String,
    pub support: SimpleRootSet,
    pub route: Route,
    /// Prediction of the adjoint or non-adjoint smoothness theorem.
    pub theorem_answer: bool,
    /// Conditions i-iv of the adjoint theorem, when it applies.
    pub adjoint_conditions: Option<[bool; 4]>,
    pub timashev: TimashevReport,
    pub smooth: bool,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Normality {
        lambda: Weight,
        /// `lambda - max(Pi)`, added to every element of `Pi`.
        translation: Weight,
        regularized_pi: WeightSet,
        little_brothers: WeightSet,
        missing: WeightSet,
        /// `missing` translated back to the coordinates of `Pi`.
        missing_untranslated: WeightSet,
    },
    Cone {
        lambda: Weight,
        cone: ColoredCone,
        conditions: QFactorialConditions,
    },
    Timashev {
        report: TimashevReport,
    },
    Smoothness {
        lambda: Weight,
        normality: Box<Verdict>,
        almost_faithful: bool,
        splits: bool,
        whole_group: Option<TimashevReport>,
        factors: Vec<FactorCheck>,
        cross_checks_agree: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub question: Question,
    /// `None` when the question does not apply.
    pub answer: Option<bool>,
    pub route: Route,
    pub certificate: Certificate,
}

fn simple_max(pi: &WeightSet, lat: &CharacterLattice) -> Result<Weight> {
    check_members(pi, lat)?;
    max_element(lat.root_system(), pi)
}

/// `X_Pi` is normal iff the regularized `Pi'` contains `LB_Q(lambda')`.
pub fn normality(pi: &WeightSet, lat: &CharacterLattice) -> Result<Verdict> {
    let original = simple_max(pi, lat)?;
    let (regularized_pi, lambda) = regularize(lat, pi)?;
    let translation = &lambda - &original;
    let lb = little_brothers(lat, &lambda)?;
    let missing = lb.difference(&regularized_pi);
    Ok(Verdict {
        question: Question::Normal,
        answer: Some(missing.is_empty()),
        route: Route::LittleBrothers,
        certificate: Certificate::Normality {
            missing_untranslated: missing.translate(&-&translation),
            lambda,
            translation,
            regularized_pi,
            little_brothers: lb,
            missing,
        },
    })
}

fn cone_verdict(pi: &WeightSet, lat: &CharacterLattice, question: Question) -> Result<Verdict> {
    let lambda = simple_max(pi, lat)?;
    let rs = lat.root_system();
    let s = SimpleRootSet::from_mask(rs.rank(), lambda.support_mask());
    let cone = colored_cone(&s, lat)?;
    let answer = cone.is_pointed.then_some(match question {
        Question::QFactorial => cone.is_simplicial,
        _ => cone.is_unimodular_basis,
    });
    Ok(Verdict {
        question,
        answer,
        route: Route::ColoredCone,
        certificate: Certificate::Cone {
            lambda,
            conditions: q_factorial_conditions(rs, &s),
            cone,
        },
    })
}

/// Q-factoriality of `X~_lambda`: the colored cone is simplicial.
pub fn q_factoriality(pi: &WeightSet, lat: &CharacterLattice) -> Result<Verdict> {
    cone_verdict(pi, lat, Question::QFactorial)
}

/// Local factoriality of `X~_lambda`: the colored cone is generated by a
/// basis of `X(T)^vee`.
pub fn local_factoriality(pi: &WeightSet, lat: &CharacterLattice) -> Result<Verdict> {
    cone_verdict(pi, lat, Question::LocallyFactorial)
}

/// The three-condition smoothness criterion for `X~_lambda`, `S = Supp(lambda)`.
pub fn timashev_check(s: &SimpleRootSet, lat: &CharacterLattice) -> Result<Verdict> {
    let report = timashev_report(s, lat)?;
    Ok(Verdict {
        question: Question::Smooth,
        answer: Some(report.smooth()),
        route: Route::Timashev,
        certificate: Certificate::Timashev { report },
    })
}

fn factor_check(lat: &CharacterLattice, s: &SimpleRootSet, k: usize) -> Result<FactorCheck> {
    let rs = lat.root_system();
    let sub = lat.component_lattice(k);
    let local = s.localize(rs, k);
    let timashev = timashev_report(&local, &sub)?;
    let (route, adjoint_conditions, theorem_answer) = if sub.is_adjoint() {
        let c = adjoint_theorem_conditions(sub.root_system(), &local);
        (Route::AdjointTheorem, Some(c), c.iter().all(|&x| x))
    } else if symplectic_long_root(&sub).is_some() {
        (Route::SpTheorem, None, sp_theorem_holds(&sub, &local))
    } else {
        (Route::Timashev, None, false)
    };
    let smooth = match route {
        Route::Timashev => timashev.smooth(),
        _ => theorem_answer,
    };
    Ok(FactorCheck {
        factor: k + 1,
        lattice: sub.describe(),
        support: local,
        route,
        theorem_answer,
        adjoint_conditions,
        agrees: theorem_answer == timashev.smooth(),
        timashev,
        smooth,
    })
}

/// `X_Pi` is smooth iff `X~_lambda` is smooth and `Pi' ⊇ LB_Q(lambda')`.
pub fn smoothness(pi: &WeightSet, lat: &CharacterLattice) -> Result<Verdict> {
    let normal = normality(pi, lat)?;
    let Certificate::Normality { lambda, .. } = &normal.certificate else {
        unreachable!("normality returns a normality certificate")
    };
    let lambda = lambda.clone();
    let rs = lat.root_system();
    let s = SimpleRootSet::from_mask(rs.rank(), lambda.support_mask());
    let almost_faithful = component_has_support(rs, &s);
    let splits = lat.splits();
    let mut factors = Vec::new();
    let mut whole_group = None;
    let (answer, route, cross_checks_agree) = if !almost_faithful {
        (None, Route::NotAlmostFaithful, true)
    } else {
        let whole = timashev_report(&s, lat)?;
        let whole_smooth = whole.smooth();
        whole_group = Some(whole);
        if !splits {
            (Some(false), Route::FactorSplit, !whole_smooth)
        } else {
            for k in 0..rs.components().len() {
                factors.push(factor_check(lat, &s, k)?);
            }
            let tilde_smooth = factors.iter().all(|f| f.smooth);
            let agree = factors.iter().all(|f| f.agrees) && tilde_smooth == whole_smooth;
            let route = if factors.len() == 1 {
                factors[0].route
            } else {
                Route::Timashev
            };
            (Some(tilde_smooth && normal.answer == Some(true)), route, agree)
        }
    };
    Ok(Verdict {
        question: Question::Smooth,
        answer,
        route,
        certificate: Certificate::Smoothness {
            lambda,
            normality: Box::new(normal),
            almost_faithful,
            splits,
            whole_group,
            factors,
            cross_checks_agree,
        },
    })
}

fn component_has_support(rs: &RootSystem, s: &SimpleRootSet) -> bool {
    (0..rs.components().len()).all(|k| !s.restrict_to_component(rs, k).is_empty())
}

impl Verdict {
    /// Re-evaluates the certificate against `lat` and confirms it reproduces
    /// the answer.
    pub fn recheck(&self, lat: &CharacterLattice) -> Result<bool> {
        let rs = lat.root_system();
        match &self.certificate {
            Certificate::Normality {
                lambda,
                translation,
                regularized_pi,
                little_brothers: lb,
                missing,
                missing_untranslated,
            } => {
                let lb_now = little_brothers(lat, lambda)?;
                Ok(max_element(rs, regularized_pi)? == *lambda
                    && lb_now == *lb
                    && lb.difference(regularized_pi) == *missing
                    && missing.translate(&-translation) == *missing_untranslated
                    && self.answer == Some(missing.is_empty()))
            }
            Certificate::Cone {
                lambda,
                cone,
                conditions,
            } => {
                let s = SimpleRootSet::from_mask(rs.rank(), lambda.support_mask());
                let flag = match self.question {
                    Question::QFactorial => cone.is_simplicial,
                    _ => cone.is_unimodular_basis,
                };
                Ok(cone.support == s
                    && cone.recheck(lat)
                    && *conditions == q_factorial_conditions(rs, &s)
                    && self.answer == cone.is_pointed.then_some(flag))
            }
            Certificate::Timashev { report } => {
                Ok(report.recheck(lat)? && self.answer == Some(report.smooth()))
            }
            Certificate::Smoothness {
                lambda,
                normality,
                almost_faithful,
                splits,
                whole_group,
                factors,
                ..
            } => {
                if !normality.recheck(lat)? {
                    return Ok(false);
                }
                let s = SimpleRootSet::from_mask(rs.rank(), lambda.support_mask());
                if *almost_faithful != component_has_support(rs, &s) || *splits != lat.splits() {
                    return Ok(false);
                }
                if !almost_faithful {
                    return Ok(self.answer.is_none());
                }
                if let Some(w) = whole_group {
                    if !w.recheck(lat)? {
                        return Ok(false);
                    }
                }
                if !splits {
                    return Ok(self.answer == Some(false));
                }
                for f in factors {
                    let again = factor_check(lat, &s, f.factor - 1)?;
                    if again != *f || !f.timashev.recheck(&lat.component_lattice(f.factor - 1))? {
                        return Ok(false);
                    }
                }
                let expect = factors.iter().all(|f| f.smooth) && normality.answer == Some(true);
                Ok(factors.len() == rs.components().len() && self.answer == Some(expect))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::weights::pi_g_plus;

    fn lat(kind: CartanType, rank: usize, preset: &str) -> CharacterLattice {
        CharacterLattice::preset(Arc::new(RootSystem::simple(kind, rank).unwrap()), preset).unwrap()
    }

    fn w(v: &[i64]) -> Weight {
        Weight::from_ints(v)
    }

    fn set(v: &[&[i64]]) -> WeightSet {
        v.iter().map(|x| w(x)).collect()
    }

    fn roots(rank: usize, v: &[usize]) -> SimpleRootSet {
        SimpleRootSet::new(rank, v.iter().copied()).unwrap()
    }

    #[test]
    fn classify_examples() {
        let sl2 = lat(CartanType::A, 1, "SL");
        let c = classify_pi(&set(&[&[2]]), &sl2).unwrap();
        assert!(c.is_simple && c.is_adjoint && c.is_almost_faithful && !c.is_faithful);
        let c = classify_pi(&set(&[&[2], &[1]]), &sl2).unwrap();
        assert!(c.is_simple && c.is_faithful && !c.is_adjoint);
        assert_eq!(c.max_element, Some(w(&[2])));
        let sl3 = lat(CartanType::A, 2, "SL");
        let c = classify_pi(&set(&[&[1, 0], &[0, 1]]), &sl3).unwrap();
        assert!(!c.is_simple && c.max_element.is_none());
        let pgl3 = lat(CartanType::A, 2, "PGL");
        assert!(matches!(
            classify_pi(&set(&[&[1, 0]]), &pgl3),
            Err(Error::NotInLattice(_))
        ));
    }

    #[test]
    fn normality_examples() {
        let sl4 = lat(CartanType::A, 3, "SL");
        let pi2 = pi_g_plus(&sl4, &w(&[0, 2, 0])).unwrap();
        assert_eq!(normality(&pi2, &sl4).unwrap().answer, Some(true));
        let pi1 = pi_g_plus(&sl4, &w(&[0, 1, 0])).unwrap();
        let v = normality(&pi1, &sl4).unwrap();
        assert_eq!(v.answer, Some(false));
        assert!(v.recheck(&sl4).unwrap());

        let sp4 = lat(CartanType::C, 2, "Sp");
        let v = normality(&set(&[&[0, 1]]), &sp4).unwrap();
        assert_eq!(v.answer, Some(false));
        match &v.certificate {
            Certificate::Normality {
                missing,
                missing_untranslated,
                ..
            } => {
                assert_eq!(*missing_untranslated, set(&[&[1, 0]]));
                assert_eq!(*missing, set(&[&[1, 1]]));
            }
            other => panic!("{other:?}"),
        }
        let v = normality(&set(&[&[0, 1], &[1, 0]]), &sp4).unwrap();
        assert_eq!(v.answer, Some(true));
        assert!(v.recheck(&sp4).unwrap());

        let sl3 = lat(CartanType::A, 2, "SL");
        assert!(matches!(
            normality(&set(&[&[1, 0], &[0, 1]]), &sl3),
            Err(Error::NotSimple(2))
        ));
    }

    #[test]
    fn cone_examples() {
        let a2 = lat(CartanType::A, 2, "ad");
        let rs = a2.root_system();
        let full = colored_cone(&SimpleRootSet::full(2), &a2).unwrap();
        assert!(full.is_simplicial);
        assert_eq!(full.extremal_rays.len(), 2);
        for (i, r) in full.extremal_rays.iter().enumerate() {
            assert!(linalg::same_ray(r.coords(), Coweight::neg_fundamental(rs, i).coords()));
        }
        let c = colored_cone(&roots(2, &[0]), &a2).unwrap();
        assert!(c.is_simplicial && c.is_unimodular_basis);
        let want = [Coweight::coroot(2, 1), Coweight::neg_fundamental(rs, 1)];
        assert_eq!(c.extremal_rays, want.to_vec());
        // -omega_1^vee = alpha_2^vee + 2 (-omega_2^vee)
        let sum: Vec<Q> = (0..2)
            .map(|i| want[0].coords()[i] + want[1].coords()[i] * Q::from_integer(2))
            .collect();
        assert_eq!(sum, Coweight::neg_fundamental(rs, 0).coords());
        assert!(c.recheck(&a2));

        let d4 = lat(CartanType::D, 4, "ad");
        assert!(!colored_cone(&roots(4, &[1]), &d4).unwrap().is_simplicial);

        let a1 = lat(CartanType::A, 1, "SL");
        assert!(!colored_cone(&SimpleRootSet::empty(1), &a1).unwrap().is_pointed);
    }

    #[test]
    fn timashev_examples() {
        let sp4 = lat(CartanType::C, 2, "Sp");
        let v = timashev_check(&roots(2, &[1]), &sp4).unwrap();
        assert_eq!(v.answer, Some(true));
        let Certificate::Timashev { report } = &v.certificate else {
            panic!()
        };
        assert_eq!(report.dual_basis.len(), 2);
        assert!(report.dual_basis.contains(&w(&[1, -1])));
        assert!(report.dual_basis.contains(&w(&[0, -1])));
        assert_eq!(report.partition.len(), 1);
        assert!(v.recheck(&sp4).unwrap());

        for (k, r) in [(CartanType::B, 3), (CartanType::E, 6), (CartanType::G, 2)] {
            let ad = lat(k, r, "ad");
            assert_eq!(timashev_check(&SimpleRootSet::full(r), &ad).unwrap().answer, Some(true));
        }
        let spin7 = lat(CartanType::B, 3, "sc");
        let v = timashev_check(&SimpleRootSet::full(3), &spin7).unwrap();
        let Certificate::Timashev { report } = &v.certificate else {
            panic!()
        };
        assert!(report.condition_i && !report.condition_ii);
        assert!(v.recheck(&spin7).unwrap());
    }

    #[test]
    fn smoothness_examples() {
        let sp6 = lat(CartanType::C, 3, "Sp");
        let l = w(&[0, 1, 1]);
        let pi = set(&[&[0, 1, 1], &[0, 2, 0]]);
        assert_eq!(&pi.as_slice()[0], &l);
        let v = smoothness(&pi, &sp6).unwrap();
        assert_eq!(v.answer, Some(true));
        assert_eq!(v.route, Route::SpTheorem);
        assert!(v.recheck(&sp6).unwrap());

        let spin7 = lat(CartanType::B, 3, "sc");
        for lambda in [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [2, 0, 2]] {
            let pi = pi_g_plus(&spin7, &w(&lambda)).unwrap();
            assert_eq!(smoothness(&pi, &spin7).unwrap().answer, Some(false));
        }

        let pgl4 = lat(CartanType::A, 3, "PGL");
        let v = smoothness(&set(&[&[4, 0, 0]]), &pgl4).unwrap();
        assert_eq!(v.answer, Some(true));
        assert_eq!(v.route, Route::AdjointTheorem);
        let v = smoothness(&set(&[&[0, 2, 0]]), &pgl4).unwrap();
        assert_eq!(v.answer, Some(false));
        let Certificate::Smoothness { factors, cross_checks_agree, .. } = &v.certificate else {
            panic!()
        };
        assert!(cross_checks_agree);
        assert_eq!(factors[0].adjoint_conditions, Some([true, false, true, true]));
        assert!(v.recheck(&pgl4).unwrap());
    }

    #[test]
    fn products_and_splitting() {
        let rs = Arc::new(RootSystem::new(crate::RootSystemSpec::new(vec![(CartanType::C, 2), (CartanType::A, 1)]).unwrap()).unwrap());
        let sc = CharacterLattice::simply_connected(rs.clone());
        // the A1 factor needs its own little brother lambda - omega_1
        let pi = set(&[&[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(smoothness(&pi, &sc).unwrap().answer, Some(false));
        let pi = set(&[&[0, 1, 1], &[1, 0, 1], &[0, 1, 0]]);
        let v = smoothness(&pi, &sc).unwrap();
        assert_eq!(v.answer, Some(true));
        assert!(v.recheck(&sc).unwrap());
        // diagonal central subgroup: X(T) does not split
        let diag = CharacterLattice::new(rs, vec![w(&[1, 0, 1])]).unwrap();
        assert!(!diag.splits());
        let pi = set(&[&[1, 0, 1]]);
        let v = smoothness(&pi, &diag).unwrap();
        assert_eq!(v.answer, Some(false));
        assert_eq!(v.route, Route::FactorSplit);
        assert!(v.recheck(&diag).unwrap());
    }

    #[test]
    fn factoriality_verdicts() {
        let d4 = lat(CartanType::D, 4, "ad");
        let v = q_factoriality(&set(&[&[0, 2, 0, 0]]), &d4).unwrap();
        assert_eq!(v.answer, Some(false));
        assert!(v.recheck(&d4).unwrap());
        let v = local_factoriality(&set(&[&[2, 2, 2, 2]]), &d4).unwrap();
        assert_eq!(v.answer, Some(true));
        let so8 = lat(CartanType::D, 4, "SO");
        let v = local_factoriality(&set(&[&[1, 1, 1, 1]]), &so8).unwrap();
        assert_eq!(v.answer, Some(false));
        assert!(v.recheck(&so8).unwrap());
    }
}
