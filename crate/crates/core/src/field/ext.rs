use num_rational::Rational64;
use num_traits::Zero;

use super::poly::{self, RatFunc};
use super::{ExtVal, Field, FieldDescriptor, Scalar, ValuedField};

/// `K(ε)` with the Gauss valuation extending `val` and sending `ε` to the
/// infinitesimal `(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtField {
    base: FieldDescriptor,
}

/// An element of `K(ε)`: a reduced rational function in `ε`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtScalar(pub RatFunc<Scalar>);

impl ExtField {
    pub fn new(base: FieldDescriptor) -> Self {
        ExtField { base }
    }

    pub fn base(&self) -> &FieldDescriptor {
        &self.base
    }

    pub fn embed(&self, x: &Scalar) -> ExtScalar {
        ExtScalar(RatFunc::from_poly(&self.base, vec![x.clone()]))
    }

    pub fn epsilon(&self) -> ExtScalar {
        ExtScalar(RatFunc::from_poly(&self.base, poly::monomial(&self.base, Scalar::one(&self.base), 1)))
    }

    /// `π^q ε^d`; `q` must be an integer.
    pub fn monomial_of(&self, q: i64, d: i64) -> ExtScalar {
        let pi = Scalar::uniformizer_pow(&self.base, q);
        let e = poly::monomial(&self.base, Scalar::one(&self.base), d.unsigned_abs() as usize);
        let r = if d >= 0 {
            RatFunc { num: poly::scale(&self.base, &e, &pi), den: vec![Scalar::one(&self.base)] }
        } else {
            RatFunc::new(&self.base, vec![pi], e)
        };
        ExtScalar(r)
    }

    /// The element as a constant of `K`, if it has no `ε`-dependence.
    pub fn as_base(&self, x: &ExtScalar) -> Option<Scalar> {
        let r = &x.0;
        if r.den.len() != 1 || r.num.len() > 1 {
            return None;
        }
        let c = r.num.first().cloned().unwrap_or_else(|| Scalar::zero(&self.base));
        Some(&c / &r.den[0])
    }

    fn poly_val(&self, p: &[Scalar]) -> Option<ExtVal> {
        p.iter().enumerate().filter_map(|(j, c)| c.ord().map(|v| ExtVal::int(v, j as i64))).min()
    }
}

impl Field for ExtField {
    type Elem = ExtScalar;

    fn zero(&self) -> ExtScalar {
        ExtScalar(RatFunc::zero(&self.base))
    }

    fn one(&self) -> ExtScalar {
        self.embed(&Scalar::one(&self.base))
    }

    fn is_zero(&self, a: &ExtScalar) -> bool {
        a.0.is_zero()
    }

    fn add(&self, a: &ExtScalar, b: &ExtScalar) -> ExtScalar {
        ExtScalar(a.0.add(&self.base, &b.0))
    }

    fn neg(&self, a: &ExtScalar) -> ExtScalar {
        ExtScalar(a.0.neg(&self.base))
    }

    fn mul(&self, a: &ExtScalar, b: &ExtScalar) -> ExtScalar {
        ExtScalar(a.0.mul(&self.base, &b.0))
    }

    fn inv(&self, a: &ExtScalar) -> Option<ExtScalar> {
        a.0.inv(&self.base).map(ExtScalar)
    }
}

impl ValuedField for ExtField {
    type Value = ExtVal;

    fn val(&self, a: &ExtScalar) -> Option<ExtVal> {
        if a.0.is_zero() {
            return None;
        }
        Some(self.poly_val(&a.0.num)? - self.poly_val(&a.0.den)?)
    }

    fn monomial(&self, v: &ExtVal) -> ExtScalar {
        assert!(v.q.is_integer(), "monomial of fractional value {v}");
        self.monomial_of(v.q.to_integer(), v.d)
    }

    fn zero_value(&self) -> ExtVal {
        ExtVal { q: Rational64::zero(), d: 0 }
    }
}
