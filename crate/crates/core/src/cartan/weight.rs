use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::Q;

/// An element of the rational weight space, in fundamental-weight
/// coordinates: entry `i` is `<mu, alpha_i^vee>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<Q>);

impl Weight {
    pub fn new(fw: Vec<Q>) -> Self {
        Weight(fw)
    }

    pub fn from_ints(fw: &[i64]) -> Self {
        Weight(fw.iter().map(|&x| Q::from_integer(x)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![Q::zero(); rank])
    }

    /// The fundamental weight `omega_i`.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![Q::zero(); rank];
        v[i] = Q::from_integer(1);
        Weight(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn fw(&self) -> &[Q] {
        &self.0
    }

    pub fn coord(&self, i: usize) -> Q {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// Integer coordinates; `None` unless integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.is_integral()
            .then(|| self.0.iter().map(|x| x.to_integer()).collect())
    }

    /// Simple roots `alpha_i` with `<mu, alpha_i^vee> != 0`, as a bitmask.
    pub fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    pub fn scale(&self, k: Q) -> Self {
        Weight(self.0.iter().map(|x| x * k).collect())
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(Q::from_integer(k))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_rationals(&self.0, s)
    }
}

/// Integers become JSON numbers, proper fractions become `"p/q"` strings.
pub(crate) fn serialize_rationals<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        if x.is_integer() {
            seq.serialize_element(&x.to_integer())?;
        } else {
            seq.serialize_element(&x.to_string())?;
        }
    }
    seq.end()
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        &self + &o
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        &self - &o
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

impl Mul<i64> for &Weight {
    type Output = Weight;
    fn mul(self, k: i64) -> Weight {
        self.scale_int(k)
    }
}

/// Coordinates in the basis of simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector(Vec<Q>);

impl RootVector {
    pub fn new(c: Vec<Q>) -> Self {
        RootVector(c)
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn height(&self) -> Q {
        self.0.iter().sum()
    }

    /// Simple roots with nonzero coefficient, as a bitmask.
    pub fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .fold(0, |m, (i, _)| m | (1 << i))
    }
}

impl Serialize for RootVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_rationals(&self.0, s)
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Weight(self.0.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_flags() {
        let a = Weight::from_ints(&[1, -1]);
        let b = Weight::new(vec![Q::new(1, 2), Q::from_integer(1)]);
        let s = &a + &b;
        assert_eq!(s.fw(), &[Q::new(3, 2), Q::zero()]);
        assert!(!a.is_dominant());
        assert!(s.is_dominant());
        assert!(!s.is_integral());
        assert_eq!(s.support_mask(), 0b01);
        assert_eq!(&s - &b, a);
        assert_eq!(format!("{s}"), "[3/2,0]");
    }
}
