//! Concrete valued fields and the arithmetic traits shared by the linear
//! algebra layer.
//!
//! Two backends are provided: the rationals with a p-adic valuation and
//! rational functions over `F_q` with the t-adic valuation. Both have a
//! discrete value group `Z` and finite residue field. [`ExtField`] adjoins an
//! infinitesimal `ε` with `0 < val(ε) <` every positive rational, which keeps
//! strict valuation cuts distinguishable from non-strict ones.

mod ext;
mod fq;
pub mod poly;
mod sample;
mod scalar;
mod value;

pub use ext::{ExtField, ExtScalar};
pub use fq::{Fq, ResidueElem};
pub use sample::{sample_with_residue, ResidueTarget};
pub use scalar::{Backend, FieldDescriptor, Scalar};
pub use value::{ExtVal, Val};

use std::fmt::Debug;
use std::ops::{Add, Neg, Sub};

/// A field given as a ring object acting on plain element values.
pub trait Field: Clone + PartialEq + Debug {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// Panics on division by zero.
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b).expect("division by zero"))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// A field with a Krull valuation whose value group is totally ordered.
pub trait ValuedField: Field {
    type Value: Clone + Ord + Debug + Add<Output = Self::Value> + Sub<Output = Self::Value> + Neg<Output = Self::Value>;

    /// `None` encodes `+∞`, the valuation of zero.
    fn val(&self, a: &Self::Elem) -> Option<Self::Value>;

    /// A pure uniformizer monomial of the given value (`π^n`, or `π^q ε^d`).
    fn monomial(&self, v: &Self::Value) -> Self::Elem;

    fn zero_value(&self) -> Self::Value;
}
