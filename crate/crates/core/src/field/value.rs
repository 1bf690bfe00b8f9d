use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Rational64;
use num_traits::Zero;

/// An element of the value group `Q` or the top element `+∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Val {
    Finite(Rational64),
    Infinite,
}

impl Val {
    pub fn int(n: i64) -> Self {
        Val::Finite(Rational64::from_integer(n))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Val::Infinite)
    }

    pub fn finite(&self) -> Option<Rational64> {
        match self {
            Val::Finite(r) => Some(*r),
            Val::Infinite => None,
        }
    }

    /// Translate by a finite amount; `+∞` absorbs.
    pub fn shift(&self, by: Rational64) -> Val {
        match self {
            Val::Finite(r) => Val::Finite(r + by),
            Val::Infinite => Val::Infinite,
        }
    }
}

impl From<Option<i64>> for Val {
    fn from(v: Option<i64>) -> Self {
        v.map_or(Val::Infinite, Val::int)
    }
}

impl PartialOrd for Val {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Val {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Val::Finite(a), Val::Finite(b)) => a.cmp(b),
            (Val::Finite(_), Val::Infinite) => Ordering::Less,
            (Val::Infinite, Val::Finite(_)) => Ordering::Greater,
            (Val::Infinite, Val::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(r) => write!(f, "{r}"),
            Val::Infinite => write!(f, "inf"),
        }
    }
}

/// `q + d·δ` for a positive infinitesimal `δ`, ordered lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtVal {
    pub q: Rational64,
    pub d: i64,
}

impl ExtVal {
    pub fn new(q: Rational64, d: i64) -> Self {
        ExtVal { q, d }
    }

    pub fn int(q: i64, d: i64) -> Self {
        ExtVal { q: Rational64::from_integer(q), d }
    }

    pub fn zero() -> Self {
        ExtVal { q: Rational64::zero(), d: 0 }
    }
}

impl Add for ExtVal {
    type Output = ExtVal;
    fn add(self, o: ExtVal) -> ExtVal {
        ExtVal { q: self.q + o.q, d: self.d + o.d }
    }
}

impl Sub for ExtVal {
    type Output = ExtVal;
    fn sub(self, o: ExtVal) -> ExtVal {
        ExtVal { q: self.q - o.q, d: self.d - o.d }
    }
}

impl Neg for ExtVal {
    type Output = ExtVal;
    fn neg(self) -> ExtVal {
        ExtVal { q: -self.q, d: -self.d }
    }
}

impl fmt::Display for ExtVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.q, self.d)
    }
}
