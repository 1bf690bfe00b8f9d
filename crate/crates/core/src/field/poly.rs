//! Dense univariate polynomials and reduced rational functions over any
//! [`Field`]. Coefficient vectors are stored low degree first with no
//! trailing zeros; the zero polynomial is the empty vector.

use super::Field;

pub type Poly<E> = Vec<E>;

pub fn trim<F: Field>(f: &F, mut a: Poly<F::Elem>) -> Poly<F::Elem> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

pub fn constant<F: Field>(f: &F, c: F::Elem) -> Poly<F::Elem> {
    trim(f, vec![c])
}

/// `c·x^n`.
pub fn monomial<F: Field>(f: &F, c: F::Elem, n: usize) -> Poly<F::Elem> {
    if f.is_zero(&c) {
        return Vec::new();
    }
    let mut v = vec![f.zero(); n];
    v.push(c);
    v
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => f.add(x, y),
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(f, out)
}

pub fn neg<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F::Elem> {
    a.iter().map(|x| f.neg(x)).collect()
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    add(f, a, &neg(f, b))
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, out)
}

pub fn scale<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> Poly<F::Elem> {
    trim(f, a.iter().map(|x| f.mul(x, c)).collect())
}

/// Euclidean division; panics if `b` is zero.
pub fn divrem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Poly<F::Elem>, Poly<F::Elem>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let db = b.len() - 1;
    let lead_inv = f.inv(&b[db]).expect("leading coefficient is nonzero");
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![f.zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = f.mul(&r[dr], &lead_inv);
        for (i, bi) in b.iter().enumerate() {
            let j = dr - db + i;
            r[j] = f.sub(&r[j], &f.mul(&c, bi));
        }
        q[dr - db] = c;
        r.pop();
        r = trim(f, r);
    }
    (trim(f, q), r)
}

pub fn make_monic<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(lead) => scale(f, a, &f.inv(lead).expect("nonzero leading coefficient")),
    }
}

/// Monic greatest common divisor (zero if both inputs are zero).
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        let (_, r) = divrem(f, &x, &y);
        x = y;
        y = r;
    }
    make_monic(f, &x)
}

pub fn eval<F: Field>(f: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    a.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

/// Index of the lowest nonzero coefficient (`None` for zero).
pub fn order<F: Field>(f: &F, a: &[F::Elem]) -> Option<usize> {
    a.iter().position(|c| !f.is_zero(c))
}

/// A rational function `num/den` with `den` monic and coprime to `num`.
/// Zero is `0/1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc<E> {
    pub num: Poly<E>,
    pub den: Poly<E>,
}

impl<E: Clone + PartialEq> RatFunc<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, num: Poly<E>, den: Poly<E>) -> Self {
        let num = trim(f, num);
        let den = trim(f, den);
        assert!(!den.is_empty(), "rational function with zero denominator");
        if num.is_empty() {
            return RatFunc { num, den: vec![f.one()] };
        }
        let g = gcd(f, &num, &den);
        let (mut n, _) = divrem(f, &num, &g);
        let (mut d, _) = divrem(f, &den, &g);
        let lead_inv = f.inv(d.last().unwrap()).unwrap();
        n = scale(f, &n, &lead_inv);
        d = scale(f, &d, &lead_inv);
        RatFunc { num: n, den: d }
    }

    pub fn from_poly<F: Field<Elem = E>>(f: &F, p: Poly<E>) -> Self {
        RatFunc { num: trim(f, p), den: vec![f.one()] }
    }

    pub fn zero<F: Field<Elem = E>>(f: &F) -> Self {
        RatFunc { num: Vec::new(), den: vec![f.one()] }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(f, add(f, &self.num, &o.num), self.den.clone());
        }
        let num = add(f, &mul(f, &self.num, &o.den), &mul(f, &o.num, &self.den));
        Self::new(f, num, mul(f, &self.den, &o.den))
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Self {
        RatFunc { num: neg(f, &self.num), den: self.den.clone() }
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, o: &Self) -> Self {
        Self::new(f, mul(f, &self.num, &o.num), mul(f, &self.den, &o.den))
    }

    pub fn inv<F: Field<Elem = E>>(&self, f: &F) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::new(f, self.den.clone(), self.num.clone()))
    }
}
