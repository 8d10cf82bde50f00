//! Points of the projective line over the cyclotomic field.

use std::fmt;

use crate::scalars::Cyclotomic;

#[derive(Clone, PartialEq, Eq)]
pub enum ProjPoint {
    Finite(Cyclotomic),
    Infinity,
}

impl ProjPoint {
    pub fn zero() -> Self {
        ProjPoint::Finite(Cyclotomic::zero())
    }

    pub fn from_int(n: i64) -> Self {
        ProjPoint::Finite(Cyclotomic::from_int(n))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjPoint::Infinity)
    }

    pub fn finite(&self) -> Option<&Cyclotomic> {
        match self {
            ProjPoint::Finite(c) => Some(c),
            ProjPoint::Infinity => None,
        }
    }

    /// Deterministic ordering key for reports.
    pub fn sort_key(&self) -> (u8, String) {
        match self {
            ProjPoint::Finite(c) => (0, format!("{:>40}", c)),
            ProjPoint::Infinity => (1, String::new()),
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(c) => write!(f, "{}", c),
            ProjPoint::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
