//! Text formats: `A2xB3:sc`, `D4:gens(1,0,0,0)`, and weights `1,-1/2,0`.

use std::sync::Arc;

use super::{CartanType, CharacterLattice, RootSystem, RootSystemSpec, Weight};
use crate::error::{Error, Result};
use crate::Q;

#[derive(Debug, Clone, PartialEq)]
pub enum LatticeSpec {
    Preset(String),
    Gens(Vec<Weight>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupSpec {
    pub root_system: RootSystemSpec,
    pub lattice: LatticeSpec,
}

impl GroupSpec {
    pub fn to_lattice(&self) -> Result<CharacterLattice> {
        let rs = Arc::new(RootSystem::new(self.root_system.clone())?);
        match &self.lattice {
            LatticeSpec::Preset(p) => CharacterLattice::preset(rs, p),
            LatticeSpec::Gens(g) => CharacterLattice::new(rs, g.clone()),
        }
    }
}

fn err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

/// Parses a group description and builds its character lattice.
pub fn parse_group(s: &str) -> Result<CharacterLattice> {
    parse_group_spec(s)?.to_lattice()
}

pub fn parse_group_spec(s: &str) -> Result<GroupSpec> {
    let (types, lattice, lat_pos) = match s.find(':') {
        Some(i) => (&s[..i], &s[i + 1..], i + 1),
        None => (s, "sc", s.len()),
    };
    let mut components = Vec::new();
    let mut pos = 0;
    for part in types.split('x') {
        let mut chars = part.chars();
        let kind = match chars.next() {
            Some('A') => CartanType::A,
            Some('B') => CartanType::B,
            Some('C') => CartanType::C,
            Some('D') => CartanType::D,
            Some('E') => CartanType::E,
            Some('F') => CartanType::F,
            Some('G') => CartanType::G,
            Some(c) => return Err(err(pos, format!("unknown root system type `{c}`"))),
            None => return Err(err(pos, "expected a root system type")),
        };
        let digits = &part[1..];
        let rank: usize = digits
            .parse()
            .map_err(|_| err(pos + 1, format!("expected a rank, found `{digits}`")))?;
        if !kind.valid_rank(rank) {
            return Err(err(pos, format!("invalid rank {rank} for type {kind}")));
        }
        components.push((kind, rank));
        pos += part.len() + 1;
    }
    let root_system = RootSystemSpec::new(components)?;
    let lattice = if let Some(body) = lattice.strip_prefix("gens(") {
        let inner = body
            .strip_suffix(')')
            .ok_or_else(|| err(s.len(), "missing `)`"))?;
        let inner_pos = lat_pos + 5;
        let gens = if inner.trim().is_empty() {
            Vec::new()
        } else {
            parse_weight_list_at(inner, inner_pos)?
        };
        for g in &gens {
            if g.rank() != root_system.rank() {
                return Err(err(
                    inner_pos,
                    format!(
                        "generator {g} has {} coordinates, expected {}",
                        g.rank(),
                        root_system.rank()
                    ),
                ));
            }
        }
        LatticeSpec::Gens(gens)
    } else {
        match lattice {
            "sc" | "ad" | "SL" | "PGL" | "Sp" | "PSp" | "Spin" | "SO" | "HalfSpin" => {
                LatticeSpec::Preset(lattice.to_string())
            }
            other => return Err(err(lat_pos, format!("unknown lattice `{other}`"))),
        }
    };
    Ok(GroupSpec {
        root_system,
        lattice,
    })
}

fn parse_rational(tok: &str, pos: usize) -> Result<Q> {
    let t = tok.trim();
    let bad = || err(pos, format!("invalid rational `{t}`"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(err(pos, "zero denominator"));
            }
            Ok(Q::new(n, d))
        }
        None => t.parse::<i64>().map(Q::from_integer).map_err(|_| bad()),
    }
}

fn parse_weight_at(s: &str, offset: usize) -> Result<Weight> {
    let s_trim = s.trim_start_matches('[').trim_end_matches(']');
    let lead = s.len() - s.trim_start_matches('[').len();
    if s_trim.trim().is_empty() {
        return Err(err(offset, "empty weight"));
    }
    let mut out = Vec::new();
    let mut pos = offset + lead;
    for tok in s_trim.split(',') {
        out.push(parse_rational(tok, pos)?);
        pos += tok.len() + 1;
    }
    Ok(Weight::new(out))
}

/// A weight as comma-separated rationals in fundamental-weight coordinates.
pub fn parse_weight(s: &str) -> Result<Weight> {
    parse_weight_at(s, 0)
}

fn parse_weight_list_at(s: &str, offset: usize) -> Result<Vec<Weight>> {
    let mut out = Vec::new();
    let mut pos = offset;
    for part in s.split(';') {
        out.push(parse_weight_at(part, pos)?);
        pos += part.len() + 1;
    }
    Ok(out)
}

/// Weights separated by `;`.
pub fn parse_weight_list(s: &str) -> Result<Vec<Weight>> {
    parse_weight_list_at(s, 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups() {
        let l = parse_group("C3:sc").unwrap();
        assert_eq!(l.order(), 2);
        let l = parse_group("A4:ad").unwrap();
        assert!(l.is_adjoint());
        let l = parse_group("A2xA1:gens(1,0,0;0,0,1)").unwrap();
        assert_eq!(l.order(), 6);
        let l = parse_group("E6").unwrap();
        assert_eq!(l.order(), 3);
        assert_eq!(parse_group("D4:HalfSpin").unwrap().order(), 2);
    }

    #[test]
    fn group_errors_carry_positions() {
        match parse_group("A2xQ3:sc") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_group("B1:sc"), Err(Error::Parse { .. })));
        assert!(matches!(parse_group("A2:foo"), Err(Error::Parse { position: 3, .. })));
        assert!(matches!(parse_group("A2:gens(1,0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_group("A2:gens(1,0,0)"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_group("A2:gens(1/2,0)"),
            Err(Error::NonIntegralGenerator(_))
        ));
        assert!(matches!(parse_group("B3:Sp"), Err(Error::PresetMismatch { .. })));
        assert!(matches!(parse_group("A"), Err(Error::Parse { .. })));
        assert!(matches!(parse_group(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn weights() {
        let w = parse_weight("1,-1/2, 0").unwrap();
        assert_eq!(w.fw(), &[Q::from_integer(1), Q::new(-1, 2), Q::from_integer(0)]);
        assert_eq!(parse_weight("[2,3]").unwrap(), Weight::from_ints(&[2, 3]));
        match parse_weight("1,x,0") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_weight("1/0").is_err());
        assert!(parse_weight("").is_err());
        assert_eq!(parse_weight_list("1,0;0,1").unwrap().len(), 2);
    }
}
