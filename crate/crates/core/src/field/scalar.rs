use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::fq::{is_prime, prime_power};
use super::poly::{self, RatFunc};
use super::{Field, Fq, ResidueElem, Val, ValuedField};
use crate::error::{Error, Result};

/// Which concrete valued field a descriptor names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Backend {
    /// `Q` with the `p`-adic valuation, residue field `F_p`.
    Padic { p: u64 },
    /// `F_q(t)` with the `t`-adic valuation, residue field `F_q`.
    Laurent { q: u64 },
}

struct Inner {
    backend: Backend,
    residue: Arc<Fq>,
}

/// Immutable handle naming a concrete valued field. Cheap to clone; every
/// [`Scalar`] carries one.
#[derive(Clone)]
pub struct FieldDescriptor(Arc<Inner>);

impl FieldDescriptor {
    pub fn padic(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        let residue = Arc::new(Fq::new(p)?);
        Ok(FieldDescriptor(Arc::new(Inner { backend: Backend::Padic { p }, residue })))
    }

    pub fn laurent(q: u64) -> Result<Self> {
        if prime_power(q).is_none() {
            return Err(Error::InvalidArgument(format!("{q} is not a prime power")));
        }
        let residue = Arc::new(Fq::new(q)?);
        Ok(FieldDescriptor(Arc::new(Inner { backend: Backend::Laurent { q }, residue })))
    }

    /// Parse `"padic:p"` or `"laurent:q"`.
    pub fn parse(s: &str) -> Result<Self> {
        let (kind, n) = s.split_once(':').ok_or_else(|| Error::MalformedInput(format!("field descriptor {s:?}")))?;
        let n: u64 = n.trim().parse().map_err(|_| Error::MalformedInput(format!("field descriptor {s:?}")))?;
        match kind.trim() {
            "padic" => Self::padic(n),
            "laurent" => Self::laurent(n),
            _ => Err(Error::MalformedInput(format!("unknown field backend {kind:?}"))),
        }
    }

    pub fn backend(&self) -> Backend {
        self.0.backend
    }

    pub fn residue_field(&self) -> &Arc<Fq> {
        &self.0.residue
    }

    pub fn residue_order(&self) -> u64 {
        self.0.residue.order()
    }

    pub fn characteristic_p(&self) -> u64 {
        self.0.residue.characteristic()
    }

    pub fn residue_elem(&self, v: u64) -> Result<ResidueElem> {
        ResidueElem::new(self.0.residue.clone(), v)
    }
}

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.0.backend == other.0.backend
    }
}

impl Eq for FieldDescriptor {}

impl Hash for FieldDescriptor {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.backend.hash(state)
    }
}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.backend {
            Backend::Padic { p } => write!(f, "padic:{p}"),
            Backend::Laurent { q } => write!(f, "laurent:{q}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rat(BigRational),
    Fn(RatFunc<u64>),
}

/// An exact element of a concrete valued field, in canonical reduced form.
#[derive(Clone)]
pub struct Scalar {
    field: FieldDescriptor,
    repr: Repr,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr && self.field == other.field
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.repr.hash(state)
    }
}

fn bigint_ord(n: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

impl Scalar {
    pub fn zero(field: &FieldDescriptor) -> Self {
        let repr = match field.backend() {
            Backend::Padic { .. } => Repr::Rat(BigRational::zero()),
            Backend::Laurent { .. } => Repr::Fn(RatFunc::zero(field.residue_field().as_ref())),
        };
        Scalar { field: field.clone(), repr }
    }

    pub fn one(field: &FieldDescriptor) -> Self {
        Self::from_int(field, 1)
    }

    /// The image of an integer (reduced mod `p` in the Laurent backend).
    pub fn from_int(field: &FieldDescriptor, n: i64) -> Self {
        match field.backend() {
            Backend::Padic { .. } => {
                Scalar { field: field.clone(), repr: Repr::Rat(BigRational::from_integer(n.into())) }
            }
            Backend::Laurent { .. } => {
                let fq = field.residue_field();
                Self::from_poly(field, vec![fq.from_int(n)])
            }
        }
    }

    /// A rational number; only meaningful for the p-adic backend.
    pub fn from_rational(field: &FieldDescriptor, r: BigRational) -> Result<Self> {
        match field.backend() {
            Backend::Padic { .. } => Ok(Scalar { field: field.clone(), repr: Repr::Rat(r) }),
            Backend::Laurent { .. } => Err(Error::MixedFields),
        }
    }

    pub fn from_frac(field: &FieldDescriptor, num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = Self::from_int(field, num);
        let d = Self::from_int(field, den);
        n.checked_div(&d)
    }

    /// A polynomial in `t` with coefficients in `F_q` (low degree first).
    pub fn from_poly(field: &FieldDescriptor, coeffs: Vec<u64>) -> Self {
        let fq = field.residue_field().as_ref();
        Scalar { field: field.clone(), repr: Repr::Fn(RatFunc::from_poly(fq, coeffs)) }
    }

    /// `num/den` in `F_q(t)`; coefficient lists low degree first.
    pub fn from_ratfunc(field: &FieldDescriptor, num: Vec<u64>, den: Vec<u64>) -> Result<Self> {
        let fq = field.residue_field().as_ref();
        if !matches!(field.backend(), Backend::Laurent { .. }) {
            return Err(Error::MixedFields);
        }
        if num.iter().chain(&den).any(|c| !fq.contains(*c)) {
            return Err(Error::InvalidArgument("coefficient outside the residue field".into()));
        }
        if poly::trim(fq, den.clone()).is_empty() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar { field: field.clone(), repr: Repr::Fn(RatFunc::new(fq, num, den)) })
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rat(r) => Some(r),
            Repr::Fn(_) => None,
        }
    }

    pub fn as_ratfunc(&self) -> Option<&RatFunc<u64>> {
        match &self.repr {
            Repr::Fn(r) => Some(r),
            Repr::Rat(_) => None,
        }
    }

    fn fq(&self) -> &Fq {
        self.field.residue_field().as_ref()
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => r.is_zero(),
            Repr::Fn(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one(&self.field)
    }

    fn same_field(&self, o: &Self) -> Result<()> {
        if self.field == o.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.same_field(o)?;
        let repr = match (&self.repr, &o.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a + b),
            (Repr::Fn(a), Repr::Fn(b)) => Repr::Fn(a.add(self.fq(), b)),
            _ => return Err(Error::MixedFields),
        };
        Ok(Scalar { field: self.field.clone(), repr })
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.same_field(o)?;
        let repr = match (&self.repr, &o.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a * b),
            (Repr::Fn(a), Repr::Fn(b)) => Repr::Fn(a.mul(self.fq(), b)),
            _ => return Err(Error::MixedFields),
        };
        Ok(Scalar { field: self.field.clone(), repr })
    }

    pub fn neg(&self) -> Self {
        let repr = match &self.repr {
            Repr::Rat(a) => Repr::Rat(-a),
            Repr::Fn(a) => Repr::Fn(a.neg(self.fq())),
        };
        Scalar { field: self.field.clone(), repr }
    }

    pub fn checked_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let repr = match &self.repr {
            Repr::Rat(a) => Repr::Rat(a.recip()),
            Repr::Fn(a) => Repr::Fn(a.inv(self.fq()).expect("nonzero")),
        };
        Ok(Scalar { field: self.field.clone(), repr })
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.checked_add(&o.neg())
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        self.same_field(o)?;
        self.checked_mul(&o.checked_inv()?)
    }

    pub fn inv(&self) -> Option<Self> {
        self.checked_inv().ok()
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let mut r = Scalar::one(&self.field);
        for _ in 0..n.unsigned_abs() {
            r = &r * &base;
        }
        r
    }

    /// Exact valuation as an integer; `None` for zero.
    pub fn ord(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.repr {
            Repr::Rat(r) => {
                let p = self.field.characteristic_p();
                bigint_ord(r.numer(), p) - bigint_ord(r.denom(), p)
            }
            Repr::Fn(r) => {
                let fq = self.fq();
                poly::order(fq, &r.num).unwrap() as i64 - poly::order(fq, &r.den).unwrap() as i64
            }
        })
    }

    pub fn val(&self) -> Val {
        self.ord().into()
    }

    pub fn is_integral(&self) -> bool {
        self.ord().is_none_or(|v| v >= 0)
    }

    /// `π^n`: `p^n` or `t^n`.
    pub fn uniformizer_pow(field: &FieldDescriptor, n: i64) -> Self {
        match field.backend() {
            Backend::Padic { p } => {
                let pn = num_traits::pow(BigInt::from(p), n.unsigned_abs() as usize);
                let r = if n >= 0 { BigRational::from_integer(pn) } else { BigRational::new(BigInt::one(), pn) };
                Scalar { field: field.clone(), repr: Repr::Rat(r) }
            }
            Backend::Laurent { .. } => {
                let fq = field.residue_field().as_ref();
                let t = poly::monomial(fq, 1u64, n.unsigned_abs() as usize);
                let r = if n >= 0 { RatFunc::from_poly(fq, t) } else { RatFunc { num: vec![1], den: t } };
                Scalar { field: field.clone(), repr: Repr::Fn(r) }
            }
        }
    }

    /// Residue in `k`; fails for non-integral elements.
    pub fn residue(&self) -> Result<ResidueElem> {
        let v = match self.ord() {
            None => return self.field.residue_elem(0),
            Some(v) if v < 0 => return Err(Error::NotIntegral),
            Some(v) if v > 0 => 0,
            Some(_) => match &self.repr {
                Repr::Rat(r) => {
                    let p = BigInt::from(self.field.characteristic_p());
                    let n = r.numer().mod_floor(&p);
                    let d = r.denom().mod_floor(&p);
                    (n * mod_inverse(&d, &p)).mod_floor(&p).to_u64().unwrap()
                }
                Repr::Fn(r) => {
                    let fq = self.fq();
                    fq.div(&r.num[0], &r.den[0])
                }
            },
        };
        self.field.residue_elem(v)
    }

    /// The canonical lift of a residue-field element: the integer in
    /// `[0, p)` or the constant polynomial.
    pub fn lift_residue(field: &FieldDescriptor, r: u64) -> Self {
        match field.backend() {
            Backend::Padic { .. } => {
                Scalar { field: field.clone(), repr: Repr::Rat(BigRational::from_integer(r.into())) }
            }
            Backend::Laurent { .. } => Self::from_poly(field, vec![r]),
        }
    }

    /// Digits of the π-adic expansion `x = Σ d_j π^j` for `j` in
    /// `[from, to)`, each digit in the canonical residue system.
    pub fn digits(&self, from: i64, to: i64) -> Vec<u64> {
        if to <= from {
            return Vec::new();
        }
        let len = (to - from) as usize;
        let Some(v) = self.ord() else {
            return vec![0; len];
        };
        if v >= to {
            return vec![0; len];
        }
        let start = v.max(from);
        let count = (to - start) as usize;
        let unit_digits: Vec<u64> = match &self.repr {
            Repr::Rat(r) => {
                let p = self.field.characteristic_p();
                let pb = BigInt::from(p);
                let pv = num_traits::pow(pb.clone(), v.unsigned_abs() as usize);
                let (n, d) =
                    if v >= 0 { (r.numer() / &pv, r.denom().clone()) } else { (r.numer().clone(), r.denom() / &pv) };
                // Digits from exponent v upward; skip those below `start`.
                let skip = (start - v) as usize;
                let modulus = num_traits::pow(pb.clone(), skip + count);
                let mut m = (n.mod_floor(&modulus) * mod_inverse(&d.mod_floor(&modulus), &modulus)).mod_floor(&modulus);
                let mut out = Vec::with_capacity(skip + count);
                for _ in 0..skip + count {
                    let (q, rem) = m.div_rem(&pb);
                    out.push(rem.to_u64().unwrap());
                    m = q;
                }
                out.split_off(skip)
            }
            Repr::Fn(r) => {
                let fq = self.fq();
                let on = poly::order(fq, &r.num).unwrap();
                let od = poly::order(fq, &r.den).unwrap();
                let n = &r.num[on..];
                let d = &r.den[od..];
                let skip = (start - v) as usize;
                let total = skip + count;
                let d0_inv = fq.inv(&d[0]).unwrap();
                let mut c: Vec<u64> = Vec::with_capacity(total);
                for i in 0..total {
                    let mut acc = n.get(i).copied().unwrap_or(0);
                    for j in 1..=i.min(d.len() - 1) {
                        acc = fq.sub(&acc, &fq.mul(&d[j], &c[i - j]));
                    }
                    c.push(fq.mul(&acc, &d0_inv));
                }
                c.split_off(skip)
            }
        };
        let mut out = vec![0; (start - from) as usize];
        out.extend(unit_digits);
        out
    }

    /// The truncated expansion `Σ_{j < a} d_j π^j`: the canonical
    /// representative of `x` modulo `π^a O`.
    pub fn expansion_below(&self, a: i64) -> Self {
        let Some(v) = self.ord() else {
            return self.clone();
        };
        if v >= a {
            return Scalar::zero(&self.field);
        }
        Self::from_digits(&self.field, v, &self.digits(v, a))
    }

    /// `Σ_i digits[i] π^(from + i)`.
    pub fn from_digits(field: &FieldDescriptor, from: i64, digits: &[u64]) -> Self {
        match field.backend() {
            Backend::Padic { p } => {
                let pb = BigInt::from(p);
                let m = digits.iter().rev().fold(BigInt::zero(), |acc, &d| acc * &pb + BigInt::from(d));
                let scale = Self::uniformizer_pow(field, from);
                &Scalar { field: field.clone(), repr: Repr::Rat(BigRational::from_integer(m)) } * &scale
            }
            Backend::Laurent { .. } => {
                let body = Self::from_poly(field, digits.to_vec());
                &body * &Self::uniformizer_pow(field, from)
            }
        }
    }

    fn sort_key(&self) -> (Vec<i64>, Vec<i64>) {
        match &self.repr {
            Repr::Rat(_) => unreachable!(),
            Repr::Fn(r) => {
                let k = |p: &Vec<u64>| {
                    let mut v = vec![p.len() as i64];
                    v.extend(p.iter().rev().map(|&c| c as i64));
                    v
                };
                (k(&r.den), k(&r.num))
            }
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A deterministic total order: numeric for rationals, by degree then
/// coefficients for rational functions.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => a.cmp(b),
            (Repr::Fn(_), Repr::Fn(_)) => self.sort_key().cmp(&other.sort_key()),
            (Repr::Rat(_), Repr::Fn(_)) => Ordering::Less,
            (Repr::Fn(_), Repr::Rat(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn fmt_poly(p: &[u64]) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let terms: Vec<String> = p
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(i, c)| match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "t".into(),
            (1, c) => format!("{c}t"),
            (i, 1) => format!("t^{i}"),
            (i, c) => format!("{c}t^{i}"),
        })
        .collect();
    terms.join("+")
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rat(r) => write!(f, "{r}"),
            Repr::Fn(r) => {
                if r.den == [1] {
                    write!(f, "{}", fmt_poly(&r.num))
                } else {
                    write!(f, "({})/({})", fmt_poly(&r.num), fmt_poly(&r.den))
                }
            }
        }
    }
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                self.$checked(o).expect(concat!("scalar ", stringify!($m)))
            }
        }
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);
forward_op!(Div, div, checked_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

impl Field for FieldDescriptor {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        Scalar::zero(self)
    }

    fn one(&self) -> Scalar {
        Scalar::one(self)
    }

    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a + b
    }

    fn neg(&self, a: &Scalar) -> Scalar {
        -a
    }

    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }

    fn inv(&self, a: &Scalar) -> Option<Scalar> {
        a.inv()
    }

    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a - b
    }
}

impl ValuedField for FieldDescriptor {
    type Value = i64;

    fn val(&self, a: &Scalar) -> Option<i64> {
        a.ord()
    }

    fn monomial(&self, v: &i64) -> Scalar {
        Scalar::uniformizer_pow(self, *v)
    }

    fn zero_value(&self) -> i64 {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn padic(p: u64) -> FieldDescriptor {
        FieldDescriptor::padic(p).unwrap()
    }

    fn laurent(q: u64) -> FieldDescriptor {
        FieldDescriptor::laurent(q).unwrap()
    }

    #[test]
    fn padic_arithmetic_examples() {
        let k = padic(3);
        let a = Scalar::from_frac(&k, 9, 2).unwrap();
        let b = Scalar::from_frac(&k, 1, 2).unwrap();
        assert_eq!(&a + &b, Scalar::from_int(&k, 5));
        assert_eq!(Scalar::zero(&k).checked_inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn laurent_multiplication_example() {
        let k = laurent(2);
        let t = Scalar::from_poly(&k, vec![0, 1]);
        let u = Scalar::from_ratfunc(&k, vec![1], vec![1, 1]).unwrap();
        let prod = &t * &u;
        assert_eq!(prod, Scalar::from_ratfunc(&k, vec![0, 1], vec![1, 1]).unwrap());
    }

    #[test]
    fn valuation_examples() {
        let k = padic(3);
        assert_eq!(Scalar::from_frac(&k, 9, 2).unwrap().ord(), Some(2));
        assert_eq!(Scalar::from_frac(&k, 2, 9).unwrap().ord(), Some(-2));
        assert_eq!(Scalar::zero(&k).val(), Val::Infinite);
        let l = laurent(2);
        let x = Scalar::from_ratfunc(&l, vec![0, 0, 0, 1], vec![1, 1]).unwrap();
        assert_eq!(x.ord(), Some(3));
    }

    #[test]
    fn residue_examples() {
        let k = padic(3);
        assert_eq!(Scalar::from_int(&k, 7).residue().unwrap().value(), 1);
        // 2^{-1} = 2 in F_3, so res(7/2) = 1·2 = 2.
        assert_eq!(Scalar::from_frac(&k, 7, 2).unwrap().residue().unwrap().value(), 2);
        assert_eq!(Scalar::from_frac(&k, 1, 3).unwrap().residue(), Err(Error::NotIntegral));
    }

    #[test]
    fn uniformizer_powers() {
        let k = padic(5);
        assert_eq!(Scalar::uniformizer_pow(&k, 2), Scalar::from_int(&k, 25));
        assert_eq!(Scalar::uniformizer_pow(&k, -1), Scalar::from_frac(&k, 1, 5).unwrap());
        let l = laurent(2);
        assert_eq!(Scalar::uniformizer_pow(&l, 0), Scalar::one(&l));
        assert_eq!(Scalar::uniformizer_pow(&l, -3).ord(), Some(-3));
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = Scalar::one(&padic(3));
        let b = Scalar::one(&padic(5));
        assert_eq!(a.checked_add(&b), Err(Error::MixedFields));
        let c = Scalar::one(&laurent(3));
        assert_eq!(a.checked_mul(&c), Err(Error::MixedFields));
    }

    #[test]
    fn padic_digits_and_truncation() {
        let k = padic(3);
        // 7/2 = 2 + 0·3 + 1·9 + ... in Z_3 (2·(7/2) = 7)
        let x = Scalar::from_frac(&k, 7, 2).unwrap();
        let d = x.digits(0, 4);
        let back = Scalar::from_digits(&k, 0, &d);
        assert!((&x - &back).ord().unwrap() >= 4);
        assert_eq!(Scalar::from_int(&k, 10).expansion_below(2), Scalar::from_int(&k, 1));
        let y = Scalar::from_frac(&k, 1, 3).unwrap();
        assert_eq!(y.expansion_below(0), y);
        assert_eq!(y.expansion_below(-1), Scalar::zero(&k));
    }

    #[test]
    fn laurent_digits_and_truncation() {
        let k = laurent(2);
        // 1/(1+t) = 1 + t + t^2 + ...
        let x = Scalar::from_ratfunc(&k, vec![1], vec![1, 1]).unwrap();
        assert_eq!(x.digits(0, 4), vec![1, 1, 1, 1]);
        assert_eq!(x.expansion_below(3), Scalar::from_poly(&k, vec![1, 1, 1]));
        let y = &x * &Scalar::uniformizer_pow(&k, -2);
        assert_eq!(y.digits(-3, 1), vec![0, 1, 1, 1]);
    }

    #[test]
    fn ordering_is_total_and_deterministic() {
        let k = laurent(3);
        let mut xs = vec![
            Scalar::from_poly(&k, vec![0, 1]),
            Scalar::from_poly(&k, vec![2]),
            Scalar::from_ratfunc(&k, vec![1], vec![1, 1]).unwrap(),
            Scalar::zero(&k),
        ];
        xs.sort();
        let again = {
            let mut v = xs.clone();
            v.reverse();
            v.sort();
            v
        };
        assert_eq!(xs, again);
    }
}
