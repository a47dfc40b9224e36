//! Root-system arithmetic, character lattices and Dynkin-diagram combinatorics.
//!
//! Conventions: simple roots are numbered as in Bourbaki within each
//! component, and components are concatenated in the order given. The Cartan
//! matrix is stored as `cartan[i][j] = <alpha_j, alpha_i^vee>`, so the
//! fundamental-weight coordinates of `alpha_j` form column `j`, and the
//! root-basis coordinates of a weight `mu` are `C^{-1} m(mu)`. Cocharacters are
//! written in the basis of simple coroots; the pairing of a weight (in
//! fundamental-weight coordinates) with a cocharacter is then the dot product.

mod diagram;
mod lattice;
mod parse;
mod weight;

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

pub use diagram::{ComponentInfo, DiagramAnalysis, SimpleRootSet};
pub use lattice::{CharacterLattice, Limits, DEFAULT_MAX_CANDIDATES};
pub use parse::{
    parse_group, parse_group_spec, parse_weight, parse_weight_list, GroupSpec, LatticeSpec,
};
pub use weight::{RootVector, Weight};
pub(crate) use weight::serialize_rationals;

use crate::error::{Error, Result};
use crate::linalg;
use crate::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CartanType::A => "A",
            CartanType::B => "B",
            CartanType::C => "C",
            CartanType::D => "D",
            CartanType::E => "E",
            CartanType::F => "F",
            CartanType::G => "G",
        };
        f.write_str(s)
    }
}

impl CartanType {
    pub fn valid_rank(self, rank: usize) -> bool {
        match self {
            CartanType::A => rank >= 1,
            CartanType::B => rank >= 2,
            CartanType::C => rank >= 1,
            CartanType::D => rank >= 3,
            CartanType::E => (6..=8).contains(&rank),
            CartanType::F => rank == 4,
            CartanType::G => rank == 2,
        }
    }

    pub fn is_simply_laced(self, rank: usize) -> bool {
        match self {
            CartanType::A | CartanType::D | CartanType::E => true,
            // C1 is A1
            CartanType::C => rank == 1,
            _ => false,
        }
    }

    /// Number of positive roots.
    pub fn positive_root_count(self, rank: usize) -> usize {
        let r = rank;
        match self {
            CartanType::A => r * (r + 1) / 2,
            CartanType::B | CartanType::C => r * r,
            CartanType::D => r * (r - 1),
            CartanType::E => match r {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            CartanType::F => 24,
            CartanType::G => 6,
        }
    }

    pub fn weyl_group_order(self, rank: usize) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match self {
            CartanType::A => fact(rank + 1),
            CartanType::B | CartanType::C => (1u128 << rank) * fact(rank),
            CartanType::D => (1u128 << (rank - 1)) * fact(rank),
            CartanType::E => match rank {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            CartanType::F => 1152,
            CartanType::G => 12,
        }
    }

    /// Squared lengths of the simple roots in Bourbaki order.
    fn simple_lengths(self, rank: usize) -> Vec<i64> {
        match self {
            CartanType::A | CartanType::D | CartanType::E => vec![2; rank],
            CartanType::B => (0..rank).map(|i| if i + 1 == rank { 1 } else { 2 }).collect(),
            CartanType::C if rank == 1 => vec![2],
            CartanType::C => (0..rank).map(|i| if i + 1 == rank { 2 } else { 1 }).collect(),
            CartanType::F => vec![2, 2, 1, 1],
            CartanType::G => vec![1, 3],
        }
    }

    /// Edges of the Dynkin diagram (0-based, Bourbaki order).
    fn edges(self, rank: usize) -> Vec<(usize, usize)> {
        let path = |n: usize| (1..n).map(|i| (i - 1, i)).collect::<Vec<_>>();
        match self {
            CartanType::A | CartanType::B | CartanType::C | CartanType::F | CartanType::G => {
                path(rank)
            }
            CartanType::D => {
                let mut e = path(rank - 1);
                e.push((rank - 3, rank - 1));
                e
            }
            CartanType::E => {
                let mut e = vec![(0, 2), (2, 3), (3, 4), (1, 3)];
                e.extend((5..rank).map(|i| (i - 1, i)));
                e
            }
        }
    }
}

/// One simple factor of the root system, as a block of consecutive indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Component {
    pub kind: CartanType,
    pub rank: usize,
    pub offset: usize,
}

impl Component {
    pub fn indices(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.rank
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices().contains(&i)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootSystemSpec {
    pub components: Vec<(CartanType, usize)>,
}

impl RootSystemSpec {
    pub fn new(components: Vec<(CartanType, usize)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyRootSystem);
        }
        for &(kind, rank) in &components {
            if !kind.valid_rank(rank) {
                return Err(Error::InvalidRank { kind, rank });
            }
        }
        Ok(Self { components })
    }

    pub fn simple(kind: CartanType, rank: usize) -> Result<Self> {
        Self::new(vec![(kind, rank)])
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.1).sum()
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (kind, rank)) in self.components.iter().enumerate() {
            if k > 0 {
                f.write_str("x")?;
            }
            write!(f, "{kind}{rank}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositiveRoot {
    /// Coordinates in the basis of simple roots.
    pub coords: Vec<i64>,
    pub long: bool,
}

impl PositiveRoot {
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, _)| i)
    }
}

/// Cartan data of a (possibly reducible) root system.
#[derive(Debug, Clone)]
pub struct RootSystem {
    spec: RootSystemSpec,
    components: Vec<Component>,
    component_of: Vec<usize>,
    cartan: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Q>>,
    det: i64,
    adjugate: Vec<Vec<i64>>,
    lengths: Vec<i64>,
    positive_roots: Vec<PositiveRoot>,
}

impl RootSystem {
    pub fn new(spec: RootSystemSpec) -> Result<Self> {
        let spec = RootSystemSpec::new(spec.components)?;
        let n = spec.rank();
        let mut components = Vec::new();
        let mut component_of = vec![0; n];
        let mut lengths = Vec::with_capacity(n);
        let mut sym2 = vec![vec![0i64; n]; n];
        let mut offset = 0;
        for (k, &(kind, rank)) in spec.components.iter().enumerate() {
            components.push(Component { kind, rank, offset });
            let ls = kind.simple_lengths(rank);
            for i in 0..rank {
                component_of[offset + i] = k;
                sym2[offset + i][offset + i] = 2 * ls[i];
            }
            for (a, b) in kind.edges(rank) {
                let v = -ls[a].max(ls[b]);
                sym2[offset + a][offset + b] = v;
                sym2[offset + b][offset + a] = v;
            }
            lengths.extend(ls);
            offset += rank;
        }
        // <alpha_j, alpha_i^vee> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| sym2[i][j] / lengths[i]).collect())
            .collect();
        let cq: Vec<Vec<Q>> = cartan
            .iter()
            .map(|r| r.iter().map(|&x| Q::from_integer(x)).collect())
            .collect();
        let cartan_inv = linalg::inverse(&cq).expect("Cartan matrix is invertible");
        let det = linalg::determinant_int(&cartan);
        let adjugate = cartan_inv
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        let v = x * Q::from_integer(det);
                        debug_assert!(v.is_integer());
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();
        let mut rs = RootSystem {
            spec,
            components,
            component_of,
            cartan,
            cartan_inv,
            det,
            adjugate,
            lengths,
            positive_roots: Vec::new(),
        };
        rs.positive_roots = rs.generate_positive_roots();
        Ok(rs)
    }

    pub fn simple(kind: CartanType, rank: usize) -> Result<Self> {
        Self::new(RootSystemSpec::simple(kind, rank)?)
    }

    /// Positive roots by closure under adding simple roots, using root
    /// strings: `beta + alpha_i` is a root iff `p - <beta, alpha_i^vee> > 0`,
    /// where `p` is the length of the string below `beta`.
    fn generate_positive_roots(&self) -> Vec<PositiveRoot> {
        use std::collections::HashSet;
        let n = self.rank();
        let mut all: HashSet<Vec<i64>> = HashSet::new();
        let mut layer: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        all.extend(layer.iter().cloned());
        while !layer.is_empty() {
            let mut next = Vec::new();
            for beta in &layer {
                for i in 0..n {
                    let pairing: i64 = (0..n).map(|j| self.cartan[i][j] * beta[j]).sum();
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if down[i] < 0 || !all.contains(&down) {
                            break;
                        }
                        p += 1;
                    }
                    if p - pairing > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if all.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            layer = next;
        }
        let mut roots: Vec<Vec<i64>> = all.into_iter().collect();
        roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let norm = |c: &Vec<i64>| -> i64 {
            // 2 (beta, beta) via the doubled symmetric form
            let mut s = 0;
            for i in 0..n {
                for j in 0..n {
                    if c[i] != 0 && c[j] != 0 {
                        s += c[i] * c[j] * self.cartan[i][j] * self.lengths[i];
                    }
                }
            }
            s
        };
        let maxlen: Vec<i64> = self
            .components
            .iter()
            .map(|c| c.indices().map(|i| self.lengths[i]).max().unwrap())
            .collect();
        roots
            .into_iter()
            .map(|c| {
                let comp = self.component_of[c.iter().position(|x| *x != 0).unwrap()];
                let long = norm(&c) == 2 * maxlen[comp];
                PositiveRoot { coords: c, long }
            })
            .collect()
    }

    pub fn spec(&self) -> &RootSystemSpec {
        &self.spec
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component_of(&self, i: usize) -> &Component {
        &self.components[self.component_of[i]]
    }

    pub fn component_index_of(&self, i: usize) -> usize {
        self.component_of[i]
    }

    /// Rank of the connected component containing simple root `i`.
    pub fn component_rank(&self, i: usize) -> usize {
        self.component_of(i).rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_inv(&self) -> &[Vec<Q>] {
        &self.cartan_inv
    }

    pub fn det(&self) -> i64 {
        self.det
    }

    /// `det(C) * C^{-1}`, an integer matrix.
    pub fn adjugate(&self) -> &[Vec<i64>] {
        &self.adjugate
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive_roots
    }

    /// Squared length of simple root `i` (short roots have length 1 in
    /// non-simply-laced components, all roots have length 2 otherwise).
    pub fn simple_length(&self, i: usize) -> i64 {
        self.lengths[i]
    }

    pub fn is_long_simple(&self, i: usize) -> bool {
        let c = self.component_of(i);
        self.lengths[i] == c.indices().map(|j| self.lengths[j]).max().unwrap()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[i][j] != 0
    }

    pub fn weyl_group_order(&self) -> u128 {
        self.components
            .iter()
            .map(|c| c.kind.weyl_group_order(c.rank))
            .product()
    }

    pub fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: w.rank(),
            });
        }
        Ok(())
    }

    /// Fundamental-weight coordinates of simple root `i`.
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight::from_ints(&self.cartan.iter().map(|r| r[i]).collect::<Vec<_>>())
    }

    pub fn rho(&self) -> Weight {
        Weight::from_ints(&vec![1; self.rank()])
    }

    /// Root-basis coordinates of a weight.
    pub fn root_coords(&self, w: &Weight) -> RootVector {
        RootVector::new(linalg::mat_vec(&self.cartan_inv, w.fw()))
    }

    /// Root-basis coordinates of an integral weight, multiplied by `det(C)`.
    pub fn scaled_root_coords(&self, m: &[i64]) -> Vec<i64> {
        self.adjugate
            .iter()
            .map(|r| r.iter().zip(m).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Weight with the given root-basis coordinates.
    pub fn weight_from_root_coords(&self, c: &[Q]) -> Weight {
        let cq: Vec<Vec<Q>> = self
            .cartan
            .iter()
            .map(|r| r.iter().map(|&x| Q::from_integer(x)).collect())
            .collect();
        Weight::new(linalg::mat_vec(&cq, c))
    }

    pub fn root_weight(&self, root: &PositiveRoot) -> Weight {
        let c: Vec<Q> = root.coords.iter().map(|&x| Q::from_integer(x)).collect();
        self.weight_from_root_coords(&c)
    }

    /// The invariant form `(mu, nu)`; short roots of non-simply-laced
    /// components have squared length 1.
    pub fn inner_product(&self, mu: &Weight, nu: &Weight) -> Q {
        let c = self.root_coords(mu);
        c.coords()
            .iter()
            .enumerate()
            .map(|(k, ck)| ck * Q::new(self.lengths[k], 2) * nu.fw()[k])
            .sum()
    }

    /// `<mu, beta^vee>` for a positive root `beta`.
    pub fn coroot_pairing(&self, mu: &Weight, root: &PositiveRoot) -> Q {
        let beta = self.root_weight(root);
        let num = self.inner_product(mu, &beta) * Q::from_integer(2);
        num / self.inner_product(&beta, &beta)
    }

    /// Simple reflection `s_i`.
    pub fn reflect(&self, w: &Weight, i: usize) -> Weight {
        let k = w.fw()[i];
        if k.is_zero() {
            return w.clone();
        }
        let fw = w
            .fw()
            .iter()
            .enumerate()
            .map(|(j, x)| x - k * Q::from_integer(self.cartan[j][i]))
            .collect();
        Weight::new(fw)
    }

    pub fn reflect_ints(&self, m: &mut [i64], i: usize) {
        let k = m[i];
        if k != 0 {
            for (j, x) in m.iter_mut().enumerate() {
                *x -= k * self.cartan[j][i];
            }
        }
    }

    /// Coroot-basis coordinates of the fundamental coweight `omega_i^vee`.
    pub fn fundamental_coweight(&self, i: usize) -> Vec<Q> {
        self.cartan_inv[i].clone()
    }

    /// The highest short root of the component containing `i`, in simple-root
    /// coordinates (the highest root when the component is simply laced).
    pub fn highest_short_root(&self, component: usize) -> Vec<i64> {
        let comp = self.components[component];
        let simply_laced = comp.kind.is_simply_laced(comp.rank);
        self.positive_roots
            .iter()
            .filter(|r| comp.contains(r.support().next().unwrap()))
            .filter(|r| simply_laced || !r.long)
            .max_by_key(|r| r.height())
            .map(|r| r.coords.clone())
            .expect("component has roots")
    }

    /// Root system of a single component, renumbered from zero.
    pub fn component_system(&self, component: usize) -> RootSystem {
        let c = self.components[component];
        RootSystem::simple(c.kind, c.rank).expect("component spec is valid")
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec)
    }
}
