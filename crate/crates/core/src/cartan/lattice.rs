use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use super::{CartanType, RootSystem, Weight};
use crate::error::{Error, Result};
use crate::linalg;
use crate::Q;

pub const DEFAULT_MAX_CANDIDATES: u64 = 1_000_000;

/// Resource caps for enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_candidates: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_candidates: DEFAULT_MAX_CANDIDATES,
        }
    }
}

type ClassKey = Vec<i64>;

/// A character lattice `X(T)` with `Z[Delta] <= X(T) <= Lambda`, stored as a
/// subgroup of the finite group `Lambda / Z[Delta]`.
#[derive(Debug, Clone)]
pub struct CharacterLattice {
    rs: Arc<RootSystem>,
    gens: Vec<Weight>,
    /// class key -> integral representative
    classes: BTreeMap<ClassKey, Vec<i64>>,
    name: Option<String>,
    limits: Limits,
}

impl PartialEq for CharacterLattice {
    fn eq(&self, other: &Self) -> bool {
        self.rs.spec() == other.rs.spec() && self.class_set() == other.class_set()
    }
}

impl CharacterLattice {
    /// Lattice generated by the root lattice and `gens`.
    pub fn new(rs: Arc<RootSystem>, gens: Vec<Weight>) -> Result<Self> {
        for g in &gens {
            rs.check_rank(g)?;
            if !g.is_integral() {
                return Err(Error::NonIntegralGenerator(g.clone()));
            }
        }
        let reps: Vec<Vec<i64>> = gens.iter().map(|g| g.to_ints().unwrap()).collect();
        let classes = closure(&rs, &reps);
        Ok(CharacterLattice {
            rs,
            gens,
            classes,
            name: None,
            limits: Limits::default(),
        })
    }

    fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn simply_connected(rs: Arc<RootSystem>) -> Self {
        let n = rs.rank();
        let gens = (0..n).map(|i| Weight::fundamental(n, i)).collect();
        Self::new(rs, gens).expect("fundamental weights are integral").named("sc")
    }

    pub fn adjoint(rs: Arc<RootSystem>) -> Self {
        Self::new(rs, Vec::new()).expect("empty generator list").named("ad")
    }

    /// Named presets: `sc`, `ad`, `SL`, `PGL`, `Sp`, `PSp`, `Spin`, `SO`,
    /// `HalfSpin`. Classical names require a single component of the
    /// matching type.
    pub fn preset(rs: Arc<RootSystem>, name: &str) -> Result<Self> {
        match name {
            "sc" => return Ok(Self::simply_connected(rs)),
            "ad" => return Ok(Self::adjoint(rs)),
            _ => {}
        }
        let comps = rs.components();
        let (kind, rank) = (comps[0].kind, comps[0].rank);
        let mismatch = || Error::PresetMismatch {
            preset: name.to_string(),
            kind,
            rank,
        };
        if comps.len() != 1 {
            return Err(mismatch());
        }
        let lat = match (name, kind) {
            ("SL", CartanType::A) | ("Sp", CartanType::C) => Self::simply_connected(rs),
            ("Spin", CartanType::B | CartanType::D) => Self::simply_connected(rs),
            ("PGL", CartanType::A) | ("PSp", CartanType::C) => Self::adjoint(rs),
            ("SO", CartanType::B) => Self::adjoint(rs),
            ("SO", CartanType::D) => Self::new(rs, vec![Weight::fundamental(rank, 0)])?,
            ("HalfSpin", CartanType::D) if rank % 2 == 0 => {
                Self::new(rs, vec![Weight::fundamental(rank, rank - 1)])?
            }
            _ => return Err(mismatch()),
        };
        Ok(lat.named(name))
    }

    /// Every lattice between the root lattice and the weight lattice.
    pub fn all_sublattices(rs: Arc<RootSystem>) -> Vec<CharacterLattice> {
        let full = closure(&rs, &identity_reps(rs.rank()));
        let elements: Vec<&Vec<i64>> = full.values().collect();
        let mut found: BTreeMap<BTreeSet<ClassKey>, Vec<Vec<i64>>> = BTreeMap::new();
        let trivial = closure(&rs, &[]);
        found.insert(trivial.keys().cloned().collect(), Vec::new());
        let mut frontier: Vec<Vec<Vec<i64>>> = vec![Vec::new()];
        while let Some(gens) = frontier.pop() {
            for e in &elements {
                let mut g = gens.clone();
                g.push((*e).clone());
                let cl = closure(&rs, &g);
                let key: BTreeSet<ClassKey> = cl.keys().cloned().collect();
                if !found.contains_key(&key) {
                    found.insert(key, g.clone());
                    frontier.push(g);
                }
            }
        }
        let mut out: Vec<CharacterLattice> = found
            .into_values()
            .map(|g| {
                let gens = g.iter().map(|m| Weight::from_ints(m)).collect();
                CharacterLattice::new(rs.clone(), gens).expect("integral generators")
            })
            .collect();
        out.sort_by_key(|l| l.order());
        out
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn root_system_arc(&self) -> Arc<RootSystem> {
        self.rs.clone()
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn generators(&self) -> &[Weight] {
        &self.gens
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// `|X(T) / Z[Delta]|`.
    pub fn order(&self) -> usize {
        self.classes.len()
    }

    pub fn is_adjoint(&self) -> bool {
        self.order() == 1
    }

    pub fn is_simply_connected(&self) -> bool {
        self.order() as i64 == self.rs.det()
    }

    /// Exponent of `X(T) / Z[Delta]`.
    pub fn exponent(&self) -> i64 {
        let det = self.rs.det();
        self.classes
            .keys()
            .map(|k| {
                let g = k.iter().fold(det, |acc, x| acc.gcd(x));
                det / g
            })
            .fold(1, |acc, x| acc.lcm(&x))
    }

    pub fn class_set(&self) -> BTreeSet<ClassKey> {
        self.classes.keys().cloned().collect()
    }

    /// Class of an integral weight in `Lambda / Z[Delta]`.
    pub fn class_key(&self, m: &[i64]) -> ClassKey {
        class_key(&self.rs, m)
    }

    pub fn class_representatives(&self) -> Vec<Weight> {
        self.classes.values().map(|m| Weight::from_ints(m)).collect()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        match w.to_ints() {
            Some(m) if m.len() == self.rank() => self.classes.contains_key(&self.class_key(&m)),
            _ => false,
        }
    }

    pub fn contains_ints(&self, m: &[i64]) -> bool {
        self.classes.contains_key(&self.class_key(m))
    }

    /// Whether `mu - nu` lies in the root lattice.
    pub fn same_class(&self, mu: &Weight, nu: &Weight) -> bool {
        let d = mu - nu;
        self.rs.root_coords(&d).is_integral()
    }

    /// Subgroup of `X(T)/Z[Delta]` generated by the classes of `ws`.
    pub fn generated_classes(&self, ws: &[Weight]) -> BTreeSet<ClassKey> {
        let reps: Vec<Vec<i64>> = ws.iter().filter_map(|w| w.to_ints()).collect();
        closure(&self.rs, &reps).into_keys().collect()
    }

    /// Does a cocharacter, in simple-coroot coordinates, lie in `X(T)^vee`?
    pub fn dual_contains(&self, b: &[Q]) -> bool {
        let n = self.rank();
        let c = self.rs.cartan();
        for j in 0..n {
            let s: Q = (0..n).map(|i| Q::from_integer(c[i][j]) * b[i]).sum();
            if !s.is_integer() {
                return false;
            }
        }
        self.gens.iter().all(|g| {
            let p: Q = g.fw().iter().zip(b).map(|(x, y)| x * y).sum();
            p.is_integer()
        })
    }

    /// The generator of `X(T)^vee` on the half-line through `u`.
    pub fn primitive_dual(&self, u: &[Q]) -> Vec<Q> {
        let p = linalg::primitive_integer(u);
        let n = self.rank();
        let c = self.rs.cartan();
        let g = (0..n)
            .map(|j| (0..n).map(|i| c[i][j] * p[i]).sum::<i64>())
            .fold(0i64, |acc, x| acc.gcd(&x));
        let pq: Vec<Q> = p.iter().map(|&x| Q::from_integer(x)).collect();
        let mut best = 1;
        for k in 1..=g.max(1) {
            if g % k == 0 {
                let v: Vec<Q> = pq.iter().map(|x| x / Q::from_integer(k)).collect();
                if self.dual_contains(&v) {
                    best = k;
                }
            }
        }
        pq.iter().map(|x| x / Q::from_integer(best)).collect()
    }

    /// Order of `X(T) cap Lambda_k / Z[Delta_k]` for component `k`.
    pub fn component_order(&self, k: usize) -> usize {
        let comp = self.rs.components()[k];
        self.classes
            .keys()
            .filter(|key| (0..self.rank()).all(|i| comp.contains(i) || key[i] == 0))
            .count()
    }

    /// True when `X(T)` is the product of its intersections with the
    /// weight lattices of the simple factors.
    pub fn splits(&self) -> bool {
        let prod: usize = (0..self.rs.components().len())
            .map(|k| self.component_order(k))
            .product();
        prod == self.order()
    }

    /// The lattice `X(T) cap Lambda_k` on the root system of component `k`.
    pub fn component_lattice(&self, k: usize) -> CharacterLattice {
        let comp = self.rs.components()[k];
        let sub = Arc::new(self.rs.component_system(k));
        let gens: Vec<Weight> = self
            .classes
            .iter()
            .filter(|(key, _)| (0..self.rank()).all(|i| comp.contains(i) || key[i] == 0))
            .map(|(_, m)| {
                // shift the representative onto the component
                let restricted: Vec<i64> = comp.indices().map(|i| m[i]).collect();
                Weight::from_ints(&restricted)
            })
            .filter(|w| !w.is_zero())
            .collect();
        let mut lat = CharacterLattice::new(sub, gens)
            .expect("restriction is integral")
            .with_limits(self.limits);
        if lat.is_adjoint() {
            lat.name = Some("ad".into());
        } else if lat.is_simply_connected() {
            lat.name = Some("sc".into());
        }
        lat
    }

    /// Short description of the lattice for reports.
    pub fn describe(&self) -> String {
        match &self.name {
            Some(n) => format!("{}:{}", self.rs.spec(), n),
            None => {
                let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
                format!("{}:gens({})", self.rs.spec(), gens.join(";"))
            }
        }
    }
}

impl fmt::Display for CharacterLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

fn class_key(rs: &RootSystem, m: &[i64]) -> ClassKey {
    let det = rs.det();
    rs.scaled_root_coords(m)
        .into_iter()
        .map(|x| x.rem_euclid(det))
        .collect()
}

fn identity_reps(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect()
}

/// Subgroup of `Lambda / Z[Delta]` generated by the given integral weights.
fn closure(rs: &RootSystem, reps: &[Vec<i64>]) -> BTreeMap<ClassKey, Vec<i64>> {
    let n = rs.rank();
    let zero = vec![0; n];
    let mut out = BTreeMap::new();
    out.insert(class_key(rs, &zero), zero.clone());
    let mut stack = vec![zero];
    while let Some(m) = stack.pop() {
        for g in reps {
            let s: Vec<i64> = m.iter().zip(g).map(|(a, b)| a + b).collect();
            let k = class_key(rs, &s);
            if !out.contains_key(&k) {
                out.insert(k, s.clone());
                stack.push(s);
            }
        }
    }
    out
}
