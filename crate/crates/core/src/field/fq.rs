use std::fmt;
use std::sync::Arc;

use super::Field;
use crate::error::{Error, Result};

/// Largest non-prime field order for which log tables are built.
const MAX_TABLE_ORDER: u64 = 1 << 20;

/// The finite field `F_q`, `q = p^k`.
///
/// Elements are integers in `[0, q)`: the base-`p` digits are the
/// coefficients of a polynomial in `x` reduced modulo a fixed irreducible
/// (the lexicographically first monic irreducible of degree `k`).
#[derive(Clone)]
pub struct Fq {
    p: u64,
    k: u32,
    q: u64,
    modulus: Vec<u64>,
    exp: Vec<u64>,
    log: Vec<u64>,
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl Eq for Fq {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Decompose `q = p^k` with `p` prime.
pub(crate) fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let (mut rest, mut k) = (q, 0u32);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

// Dense polynomials over F_p (low degree first) used to build F_{p^k}.
fn fp_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = fp_trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = pow_mod(m[dm], p - 2, p);
    while r.len() > dm {
        let dr = r.len() - 1;
        let c = r[dr] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            let j = dr - dm + i;
            r[j] = (r[j] + p - c * mi % p) % p;
        }
        r = fp_trim(r);
    }
    r
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_trim(out)
}

fn digits(mut v: u64, p: u64, k: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(k as usize);
    for _ in 0..k {
        out.push(v % p);
        v /= p;
    }
    out
}

fn undigits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}

fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut cand = digits(low, p, d as u32);
            cand.push(1);
            if fp_rem(poly, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Fq {
    /// Build `F_q`; fails unless `q` is a prime power (and not too large
    /// when `q` is not prime).
    pub fn new(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime power")))?;
        if p > u32::MAX as u64 {
            return Err(Error::InvalidArgument(format!("characteristic {p} too large")));
        }
        if k == 1 {
            return Ok(Fq { p, k, q, modulus: Vec::new(), exp: Vec::new(), log: Vec::new() });
        }
        if q > MAX_TABLE_ORDER {
            return Err(Error::InvalidArgument(format!("field order {q} too large")));
        }
        let modulus = (0..p.pow(k))
            .map(|low| {
                let mut m = digits(low, p, k);
                m.push(1);
                m
            })
            .find(|m| is_irreducible(m, p))
            .expect("irreducible polynomials exist in every degree");
        let mut f = Fq { p, k, q, modulus: modulus[..k as usize].to_vec(), exp: Vec::new(), log: Vec::new() };
        f.build_tables(&modulus);
        Ok(f)
    }

    fn build_tables(&mut self, modulus: &[u64]) {
        let (p, k, q) = (self.p, self.k, self.q);
        let mul = |a: u64, b: u64| {
            let prod = fp_mul(&digits(a, p, k), &digits(b, p, k), p);
            let mut r = fp_rem(&prod, modulus, p);
            r.resize(k as usize, 0);
            undigits(&r, p)
        };
        for g in 2..q {
            let mut exp = Vec::with_capacity((q - 1) as usize);
            let mut x = 1u64;
            let mut ok = true;
            for i in 0..q - 1 {
                if i > 0 && x == 1 {
                    ok = false;
                    break;
                }
                exp.push(x);
                x = mul(x, g);
            }
            if ok && x == 1 {
                let mut log = vec![0u64; q as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u64;
                }
                self.exp = exp;
                self.log = log;
                return;
            }
        }
        unreachable!("multiplicative group of a finite field is cyclic");
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    /// Low coefficients of the defining monic irreducible (empty when `k = 1`).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn contains(&self, a: u64) -> bool {
        a < self.q
    }

    pub fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.q
    }
}

impl Field for Fq {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        if self.p == 2 {
            return a ^ b;
        }
        let (da, db) = (digits(*a, self.p, self.k), digits(*b, self.p, self.k));
        let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        undigits(&s, self.p)
    }

    fn neg(&self, a: &u64) -> u64 {
        if self.k == 1 {
            return (self.p - a % self.p) % self.p;
        }
        if self.p == 2 {
            return *a;
        }
        let d: Vec<u64> = digits(*a, self.p, self.k).iter().map(|x| (self.p - x) % self.p).collect();
        undigits(&d, self.p)
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        if self.k == 1 {
            return ((*a as u128 * *b as u128) % self.p as u128) as u64;
        }
        if *a == 0 || *b == 0 {
            return 0;
        }
        let e = (self.log[*a as usize] + self.log[*b as usize]) % (self.q - 1);
        self.exp[e as usize]
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        if self.k == 1 {
            return Some(pow_mod(*a, self.p - 2, self.p));
        }
        let e = (self.q - 1 - self.log[*a as usize]) % (self.q - 1);
        Some(self.exp[e as usize])
    }
}

/// An element of a residue field together with the field it lives in.
#[derive(Clone)]
pub struct ResidueElem {
    field: Arc<Fq>,
    value: u64,
}

impl ResidueElem {
    pub fn new(field: Arc<Fq>, value: u64) -> Result<Self> {
        if !field.contains(value) {
            return Err(Error::InvalidArgument(format!("{value} is not an element of {field:?}")));
        }
        Ok(ResidueElem { field, value })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn field(&self) -> &Arc<Fq> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn with(&self, value: u64) -> Self {
        ResidueElem { field: self.field.clone(), value }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.with(self.field.add(&self.value, &o.value))
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.with(self.field.mul(&self.value, &o.value))
    }

    pub fn neg(&self) -> Self {
        self.with(self.field.neg(&self.value))
    }

    pub fn inv(&self) -> Option<Self> {
        self.field.inv(&self.value).map(|v| self.with(v))
    }
}

impl PartialEq for ResidueElem {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.field == other.field
    }
}

impl Eq for ResidueElem {}

impl fmt::Debug for ResidueElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Shared handle to a residue field; behaves exactly like the field itself.
impl Field for Arc<Fq> {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.as_ref().add(a, b)
    }

    fn neg(&self, a: &u64) -> u64 {
        self.as_ref().neg(a)
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.as_ref().mul(a, b)
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        self.as_ref().inv(a)
    }
}
