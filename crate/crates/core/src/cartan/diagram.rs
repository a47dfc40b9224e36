use std::collections::VecDeque;
use std::fmt;

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use super::{CartanType, RootSystem};
use crate::error::{Error, Result};

/// A subset of the simple roots, as a bitmask over `0..rank`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleRootSet {
    mask: u64,
    rank: usize,
}

impl SimpleRootSet {
    pub fn from_mask(rank: usize, mask: u64) -> Self {
        debug_assert!(rank <= 64);
        let all = if rank == 64 { u64::MAX } else { (1u64 << rank) - 1 };
        SimpleRootSet {
            mask: mask & all,
            rank,
        }
    }

    pub fn new(rank: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut mask = 0;
        for i in members {
            if i >= rank {
                return Err(Error::RootIndexOutOfRange { index: i, rank });
            }
            mask |= 1 << i;
        }
        Ok(SimpleRootSet { mask, rank })
    }

    pub fn empty(rank: usize) -> Self {
        Self::from_mask(rank, 0)
    }

    pub fn full(rank: usize) -> Self {
        Self::from_mask(rank, u64::MAX)
    }

    /// All subsets of the simple roots of a rank-`rank` diagram.
    pub fn all(rank: usize) -> impl Iterator<Item = SimpleRootSet> {
        (0..(1u64 << rank)).map(move |m| SimpleRootSet::from_mask(rank, m))
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.rank && self.mask & (1 << i) != 0
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank).filter(move |&i| self.contains(i))
    }

    pub fn complement(&self) -> Self {
        Self::from_mask(self.rank, !self.mask)
    }

    pub fn union(&self, o: &Self) -> Self {
        Self::from_mask(self.rank, self.mask | o.mask)
    }

    pub fn intersection(&self, o: &Self) -> Self {
        Self::from_mask(self.rank, self.mask & o.mask)
    }

    pub fn difference(&self, o: &Self) -> Self {
        Self::from_mask(self.rank, self.mask & !o.mask)
    }

    pub fn is_subset(&self, o: &Self) -> bool {
        self.mask & !o.mask == 0
    }

    fn neighbours_in(&self, rs: &RootSystem, i: usize) -> usize {
        self.iter().filter(|&j| rs.adjacent(i, j)).count()
    }

    /// `∂I`: roots outside `I` adjacent to some root of `I`.
    pub fn border(&self, rs: &RootSystem) -> Self {
        let mut m = 0;
        for a in self.complement().iter() {
            if self.iter().any(|b| rs.adjacent(a, b)) {
                m |= 1 << a;
            }
        }
        Self::from_mask(self.rank, m)
    }

    /// `I° = I \ ∂(Δ \ I)`.
    pub fn interior(&self, rs: &RootSystem) -> Self {
        self.difference(&self.complement().border(rs))
    }

    /// Connected components of the induced subdiagram, ordered by least index.
    pub fn components(&self, rs: &RootSystem) -> Vec<SimpleRootSet> {
        let mut left = self.mask;
        let mut out = Vec::new();
        while left != 0 {
            let start = left.trailing_zeros() as usize;
            let mut comp = 1u64 << start;
            let mut queue = VecDeque::from([start]);
            while let Some(a) = queue.pop_front() {
                for b in self.iter() {
                    if comp & (1 << b) == 0 && rs.adjacent(a, b) {
                        comp |= 1 << b;
                        queue.push_back(b);
                    }
                }
            }
            left &= !comp;
            out.push(Self::from_mask(self.rank, comp));
        }
        out
    }

    /// At most one connected component (the empty set counts as connected).
    pub fn is_connected(&self, rs: &RootSystem) -> bool {
        self.components(rs).len() <= 1
    }

    /// Roots of `I` joined to at most one other root of `I`.
    pub fn extremal_roots(&self, rs: &RootSystem) -> Self {
        let mut m = 0;
        for a in self.iter() {
            if self.neighbours_in(rs, a) <= 1 {
                m |= 1 << a;
            }
        }
        Self::from_mask(self.rank, m)
    }

    /// Restriction to the simple roots of one component of the diagram.
    pub fn restrict_to_component(&self, rs: &RootSystem, k: usize) -> Self {
        let comp = rs.components()[k];
        let m = comp.indices().fold(0u64, |m, i| m | (1 << i));
        Self::from_mask(self.rank, self.mask & m)
    }

    /// Renumber a subset of one component to that component's own indices.
    pub fn localize(&self, rs: &RootSystem, k: usize) -> Self {
        let comp = rs.components()[k];
        Self::from_mask(comp.rank, (self.mask >> comp.offset) & ((1u64 << comp.rank) - 1))
    }

    /// Type and rank of a connected subset.
    pub fn induced_type(&self, rs: &RootSystem) -> (CartanType, usize) {
        let n = self.len();
        let nodes: Vec<usize> = self.iter().collect();
        let mut max_bond = 1;
        let mut branch = None;
        for &a in &nodes {
            let deg = self.neighbours_in(rs, a);
            if deg >= 3 {
                branch = Some(a);
            }
            for &b in &nodes {
                if rs.adjacent(a, b) {
                    max_bond = max_bond.max(rs.cartan()[a][b] * rs.cartan()[b][a]);
                }
            }
        }
        if max_bond == 3 {
            return (CartanType::G, 2);
        }
        if let Some(c) = branch {
            // arm lengths from the branch node
            let mut arms: Vec<usize> = nodes
                .iter()
                .filter(|&&b| rs.adjacent(c, b))
                .map(|&b| {
                    let mut len = 1;
                    let (mut prev, mut cur) = (c, b);
                    loop {
                        let next = nodes
                            .iter()
                            .find(|&&x| x != prev && x != cur && rs.adjacent(cur, x));
                        match next {
                            Some(&x) => {
                                prev = cur;
                                cur = x;
                                len += 1;
                            }
                            None => break len,
                        }
                    }
                })
                .collect();
            arms.sort();
            return if arms[0] == 1 && arms[1] == 1 {
                (CartanType::D, n)
            } else {
                (CartanType::E, n)
            };
        }
        if max_bond == 1 {
            return (CartanType::A, n);
        }
        if n == 4 {
            let ends = self.extremal_roots(rs);
            let doubled_at_end = ends.iter().any(|e| {
                nodes
                    .iter()
                    .any(|&b| rs.adjacent(e, b) && rs.cartan()[e][b] * rs.cartan()[b][e] == 2)
            });
            if !doubled_at_end {
                return (CartanType::F, 4);
            }
        }
        // double bond at an end of the path: B if that end is short, C if long
        let ends = self.extremal_roots(rs);
        for e in ends.iter() {
            for &b in &nodes {
                if rs.adjacent(e, b) && rs.cartan()[e][b] * rs.cartan()[b][e] == 2 {
                    if n == 2 {
                        return (CartanType::B, 2);
                    }
                    return if rs.simple_length(e) < rs.simple_length(b) {
                        (CartanType::B, n)
                    } else {
                        (CartanType::C, n)
                    };
                }
            }
        }
        unreachable!("connected subdiagram with a double bond")
    }

    /// Distance in the Dynkin diagram between two roots of one component.
    pub fn distance(rs: &RootSystem, a: usize, b: usize) -> Result<usize> {
        Ok(Self::path(rs, a, b)?.len() - 1)
    }

    /// `I(a, b)`: the minimal connected subset containing `a` and `b`.
    pub fn path(rs: &RootSystem, a: usize, b: usize) -> Result<SimpleRootSet> {
        let n = rs.rank();
        for &i in &[a, b] {
            if i >= n {
                return Err(Error::RootIndexOutOfRange { index: i, rank: n });
            }
        }
        if rs.component_index_of(a) != rs.component_index_of(b) {
            return Err(Error::DistanceAcrossComponents(a, b));
        }
        let mut prev = vec![usize::MAX; n];
        prev[a] = a;
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            for y in 0..n {
                if prev[y] == usize::MAX && rs.adjacent(x, y) {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        let mut mask = 1u64 << b;
        let mut cur = b;
        while cur != a {
            cur = prev[cur];
            mask |= 1 << cur;
        }
        Ok(Self::from_mask(n, mask))
    }

    pub fn analyze(&self, rs: &RootSystem) -> DiagramAnalysis {
        let diagram_ends = SimpleRootSet::full(rs.rank()).extremal_roots(rs);
        let components = self
            .components(rs)
            .into_iter()
            .map(|c| {
                let (kind, rank) = c.induced_type(rs);
                let extremal = c.extremal_roots(rs);
                ComponentInfo {
                    members: c,
                    kind,
                    rank,
                    extremal,
                    extremal_in_diagram: extremal.intersection(&diagram_ends),
                }
            })
            .collect();
        DiagramAnalysis {
            set: *self,
            interior: self.interior(rs),
            border: self.border(rs),
            diagram_extremal: diagram_ends,
            components,
        }
    }
}

impl fmt::Display for SimpleRootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", v.join(","))
    }
}

/// Serialized as the sorted list of 1-based simple-root indices.
impl Serialize for SimpleRootSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for i in self.iter() {
            seq.serialize_element(&(i + 1))?;
        }
        seq.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentInfo {
    pub members: SimpleRootSet,
    pub kind: CartanType,
    pub rank: usize,
    pub extremal: SimpleRootSet,
    pub extremal_in_diagram: SimpleRootSet,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagramAnalysis {
    pub set: SimpleRootSet,
    pub interior: SimpleRootSet,
    pub border: SimpleRootSet,
    pub diagram_extremal: SimpleRootSet,
    pub components: Vec<ComponentInfo>,
}
