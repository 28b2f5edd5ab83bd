//! Gapless three-valued semantics with an absorbing gap value `u`.
//!
//! This is weak Kleene (Bochvar's internal system): a compound with a gappy
//! operand is gappy, whatever the other operand is. `t | u` is `u`, not `t`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{combined_atoms, Formula, TruthValue2, Valuation};

/// Largest atom count accepted by [`equivalent3`].
pub const MAX_ENUM_ATOMS3: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TruthValue3 {
    #[serde(rename = "t")]
    T,
    #[serde(rename = "f")]
    F,
    #[serde(rename = "u")]
    U,
}

/// Enumeration order used by tables and exhaustive checks.
pub const VALUES3: [TruthValue3; 3] = [TruthValue3::F, TruthValue3::T, TruthValue3::U];

pub type Valuation3 = Valuation<TruthValue3>;

impl TruthValue3 {
    pub fn is_gap(self) -> bool {
        self == TruthValue3::U
    }

    pub fn to_bool(self) -> Option<bool> {
        match self {
            TruthValue3::T => Some(true),
            TruthValue3::F => Some(false),
            TruthValue3::U => None,
        }
    }

    fn lift(x: TruthValue3, y: TruthValue3, op: impl Fn(bool, bool) -> bool) -> TruthValue3 {
        match (x.to_bool(), y.to_bool()) {
            (Some(a), Some(b)) => op(a, b).into(),
            _ => TruthValue3::U,
        }
    }

    pub fn and(self, other: TruthValue3) -> TruthValue3 {
        Self::lift(self, other, |a, b| a & b)
    }

    pub fn or(self, other: TruthValue3) -> TruthValue3 {
        Self::lift(self, other, |a, b| a | b)
    }

    pub fn implies(self, other: TruthValue3) -> TruthValue3 {
        self.negate().or(other)
    }

    pub fn iff(self, other: TruthValue3) -> TruthValue3 {
        Self::lift(self, other, |a, b| a == b)
    }

    pub fn negate(self) -> TruthValue3 {
        match self {
            TruthValue3::T => TruthValue3::F,
            TruthValue3::F => TruthValue3::T,
            TruthValue3::U => TruthValue3::U,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            TruthValue3::T => "t",
            TruthValue3::F => "f",
            TruthValue3::U => "u",
        }
    }
}

impl From<bool> for TruthValue3 {
    fn from(b: bool) -> Self {
        if b {
            TruthValue3::T
        } else {
            TruthValue3::F
        }
    }
}

impl From<TruthValue2> for TruthValue3 {
    fn from(v: TruthValue2) -> Self {
        v.as_bool().into()
    }
}

impl fmt::Display for TruthValue3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Identity of two sentence values: `u` if either side is `u`, else whether they agree.
pub fn identity_value(x: TruthValue3, y: TruthValue3) -> TruthValue3 {
    TruthValue3::lift(x, y, |a, b| a == b)
}

pub fn eval3(f: &Formula, v: &Valuation3) -> Result<TruthValue3> {
    Ok(match f {
        Formula::Atom(name) => v.lookup(name)?,
        Formula::Top => TruthValue3::T,
        Formula::Bottom => TruthValue3::F,
        Formula::Not(g) => eval3(g, v)?.negate(),
        Formula::And(l, r) => eval3(l, v)?.and(eval3(r, v)?),
        Formula::Or(l, r) => eval3(l, v)?.or(eval3(r, v)?),
        Formula::Implies(l, r) => eval3(l, v)?.implies(eval3(r, v)?),
        Formula::Iff(l, r) => eval3(l, v)?.iff(eval3(r, v)?),
        Formula::Identity(l, r) => identity_value(eval3(l, v)?, eval3(r, v)?),
    })
}

/// All `3^n` valuations over `atoms`, in lexicographic order of [`VALUES3`].
pub fn valuations3(atoms: &[String]) -> impl Iterator<Item = Valuation3> + '_ {
    let n = atoms.len();
    (0..3usize.pow(n as u32)).map(move |mut row| {
        let mut digits = vec![0usize; n];
        for d in digits.iter_mut().rev() {
            *d = row % 3;
            row /= 3;
        }
        atoms
            .iter()
            .zip(digits)
            .map(|(a, d)| (a.clone(), VALUES3[d]))
            .collect()
    })
}

pub fn equivalent3(f: &Formula, g: &Formula) -> Result<bool> {
    let atoms = combined_atoms([f, g]);
    if atoms.len() > MAX_ENUM_ATOMS3 {
        return Err(Error::TooManyAtoms {
            count: atoms.len(),
            limit: MAX_ENUM_ATOMS3,
        });
    }
    for v in valuations3(&atoms) {
        if eval3(f, &v)? != eval3(g, &v)? {
            return Ok(false);
        }
    }
    Ok(true)
}
