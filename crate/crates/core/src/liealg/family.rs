use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::LieError;

/// Cartan-Killing family label of a simple Lie algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::B | Family::C | Family::D)
    }

    /// Checks that `(self, rank)` names a simple type.
    pub fn validate(self, rank: usize) -> Result<(), LieError> {
        let fail = |constraint| {
            Err(LieError::InvalidType {
                family: self.letter(),
                rank,
                constraint,
            })
        };
        match self {
            Family::A if rank < 1 => fail("type A requires rank >= 1"),
            Family::B if rank < 2 => fail("type B requires rank >= 2"),
            Family::C if rank < 2 => fail("type C requires rank >= 2"),
            Family::D if rank < 3 => fail("type D requires rank >= 3"),
            Family::E if !(6..=8).contains(&rank) => fail("type E requires rank 6, 7 or 8"),
            Family::F if rank != 4 => fail("type F requires rank 4"),
            Family::G if rank != 2 => fail("type G requires rank 2"),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Family {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            _ => Err(LieError::UnknownFamily(s.to_string())),
        }
    }
}

/// Classification data attached to a simple type: the orders of the
/// basic invariants, the normal real form, its maximal compact subgroup
/// and the rank of that subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeData {
    pub degrees: Vec<u32>,
    pub real_form: String,
    pub compact_subgroup: String,
    pub rank_u: usize,
}

/// Invariant degrees and compact-subgroup data for a validated type.
pub fn type_data(family: Family, rank: usize) -> Result<TypeData, LieError> {
    family.validate(rank)?;
    let l = rank as u32;
    let (degrees, real_form, compact, rank_u): (Vec<u32>, String, String, usize) = match family {
        Family::A => {
            let n = l + 1;
            (
                (2..=n).collect(),
                format!("SL({n},R)"),
                format!("SO({n})"),
                (n / 2) as usize,
            )
        }
        Family::B => (
            (1..=l).map(|k| 2 * k).collect(),
            format!("SO({},{l})", l + 1),
            format!("SO({})xSO({l})", l + 1),
            rank,
        ),
        Family::C => (
            (1..=l).map(|k| 2 * k).collect(),
            format!("Sp({l},R)"),
            format!("U({l})"),
            rank,
        ),
        Family::D => {
            let mut d: Vec<u32> = (1..l).map(|k| 2 * k).collect();
            d.push(l);
            d.sort_unstable();
            (
                d,
                format!("SO({l},{l})"),
                format!("SO({l})xSO({l})"),
                2 * (rank / 2),
            )
        }
        Family::G => (vec![2, 6], "G2(R)".into(), "SU(2)xSU(2)".into(), 2),
        Family::F => (vec![2, 6, 8, 12], "F4(R)".into(), "Sp(3)xSU(2)".into(), 4),
        Family::E => match rank {
            6 => (vec![2, 5, 6, 8, 9, 12], "E6(R)".into(), "Sp(4)".into(), 4),
            7 => (
                vec![2, 6, 8, 10, 12, 14, 18],
                "E7(R)".into(),
                "SU(8)".into(),
                7,
            ),
            _ => (
                vec![2, 8, 12, 14, 18, 20, 24, 30],
                "E8(R)".into(),
                "SO(16)".into(),
                8,
            ),
        },
    };
    Ok(TypeData {
        degrees,
        real_form,
        compact_subgroup: compact,
        rank_u,
    })
}
