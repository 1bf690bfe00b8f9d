//! Multisets of points of `K^m` coded by the coefficients of
//! `Π_i (T_0 + x_{i1} T_1 + … + x_{im} T_m)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::poly::{self, Poly};
use crate::field::{Backend, Field, FieldDescriptor, Fq, Scalar};

/// The non-leading coefficients of the product form, monomials of degree
/// `n` in `T_0 … T_m` ordered lexicographically with `T_0 > T_1 > …`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymCode {
    pub n: usize,
    pub m: usize,
    pub coefficients: Vec<Scalar>,
}

/// Exponent vectors of degree `n` in `m + 1` variables, lexicographically
/// descending.
pub fn monomials_of_degree(n: usize, vars: usize) -> Vec<Vec<u32>> {
    fn rec(left: u32, vars: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if vars == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(left - e, vars - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as u32, vars, &mut Vec::new(), &mut out);
    out
}

pub fn sym_code(field: &FieldDescriptor, points: &[Vec<Scalar>]) -> Result<SymCode> {
    let n = points.len();
    let m = points.first().map_or(0, Vec::len);
    if points.iter().any(|p| p.len() != m) {
        return Err(Error::ShapeMismatch("points of different arity".into()));
    }
    let mut prod: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
    prod.insert(vec![0; m + 1], Scalar::one(field));
    for p in points {
        let mut next: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
        for (e, c) in &prod {
            for v in 0..=m {
                let coef = if v == 0 { c.clone() } else { c.checked_mul(&p[v - 1])? };
                if coef.is_zero() {
                    continue;
                }
                let mut e2 = e.clone();
                e2[v] += 1;
                let slot = next.entry(e2).or_insert_with(|| Scalar::zero(field));
                *slot = &*slot + &coef;
            }
        }
        prod = next;
    }
    let coefficients = monomials_of_degree(n, m + 1)
        .into_iter()
        .skip(1)
        .map(|e| prod.get(&e).cloned().unwrap_or_else(|| Scalar::zero(field)))
        .collect();
    Ok(SymCode { n, m, coefficients })
}

/// Recover a multiset of scalars (`m = 1`) as the negated roots of
/// `X^n + c_1 X^{n-1} + … + c_n`, sorted.
pub fn sym_decode(field: &FieldDescriptor, code: &SymCode) -> Result<Vec<Scalar>> {
    if code.m != 1 {
        return Err(Error::BadDimension(format!("decoding needs m = 1, got {}", code.m)));
    }
    if code.coefficients.len() != code.n {
        return Err(Error::ShapeMismatch(format!("{} coefficients for n = {}", code.coefficients.len(), code.n)));
    }
    let mut p: Poly<Scalar> = code.coefficients.iter().rev().cloned().collect();
    p.push(Scalar::one(field));
    let roots = match field.backend() {
        Backend::Padic { .. } => rational_roots(field, &p)?,
        Backend::Laurent { .. } => function_field_roots(field, &p)?,
    };
    let mut out = Vec::new();
    let mut rest = p;
    for r in roots {
        let lin = vec![r.neg(), Scalar::one(field)];
        loop {
            let (q, rem) = poly::divrem(field, &rest, &lin);
            if !rem.is_empty() {
                break;
            }
            rest = q;
            out.push(r.neg());
        }
    }
    if out.len() != code.n {
        return Err(Error::NotSplit);
    }
    out.sort();
    Ok(out)
}

/// `X ↦ X / D` with `D` a common denominator, giving a monic polynomial
/// with integral coefficients whose roots are `D` times the originals.
fn lcm_denominators_padic(p: &[Scalar]) -> BigInt {
    p.iter().fold(BigInt::one(), |l, c| l.lcm(c.as_rational().unwrap().denom()))
}

#[derive(Debug, Clone, PartialEq)]
struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
}

fn derivative<F: Field>(f: &F, p: &[F::Elem]) -> Poly<F::Elem> {
    let mut out = Vec::new();
    for (i, c) in p.iter().enumerate().skip(1) {
        let mut acc = f.zero();
        for _ in 0..i {
            acc = f.add(&acc, c);
        }
        out.push(acc);
    }
    poly::trim(f, out)
}

fn sign_changes(chain: &[Poly<BigRational>], x: &BigRational) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|p| {
            let v = poly::eval(&Rationals, p, x);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|s| *s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn rational_roots(field: &FieldDescriptor, p: &[Scalar]) -> Result<Vec<Scalar>> {
    let q = Rationals;
    let pr: Poly<BigRational> = p.iter().map(|c| c.as_rational().unwrap().clone()).collect();
    let g = poly::gcd(&q, &pr, &derivative(&q, &pr));
    let (sf, _) = poly::divrem(&q, &pr, &g);
    let sf = poly::make_monic(&q, &sf);
    let sf_scalars: Vec<Scalar> = sf.iter().map(|c| Scalar::from_rational(field, c.clone()).unwrap()).collect();
    let d = lcm_denominators_padic(&sf_scalars);
    let dr = BigRational::from_integer(d.clone());
    // T(Y) = D^s · S(Y / D) is monic with integer coefficients.
    let s = sf.len() - 1;
    let t: Poly<BigRational> = sf.iter().enumerate().map(|(i, c)| c * num_traits::pow(dr.clone(), s - i)).collect();
    let bound =
        t[..s].iter().map(|c| c.abs()).fold(BigRational::zero(), |a, b| if b > a { b } else { a }) + BigRational::one();
    let bound = bound.ceil().to_integer();
    let mut chain = vec![t.clone(), derivative(&q, &t)];
    while chain.last().is_some_and(|c| c.len() > 1) {
        let n = chain.len();
        let (_, r) = poly::divrem(&q, &chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(poly::neg(&q, &r));
    }
    let mut roots = Vec::new();
    let mut stack = vec![(-bound.clone() - BigInt::one(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let count = sign_changes(&chain, &BigRational::from_integer(lo.clone()))
            - sign_changes(&chain, &BigRational::from_integer(hi.clone()));
        if count == 0 {
            continue;
        }
        if &hi - &lo == BigInt::one() {
            let h = BigRational::from_integer(hi.clone());
            if poly::eval(&q, &t, &h).is_zero() {
                roots.push(Scalar::from_rational(field, h / &dr).unwrap());
            }
            continue;
        }
        let mid = (&lo + &hi).div_floor(&BigInt::from(2));
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    Ok(roots)
}

fn function_field_roots(field: &FieldDescriptor, p: &[Scalar]) -> Result<Vec<Scalar>> {
    let fq: &Fq = field.residue_field().as_ref();
    let n = p.len() - 1;
    let mut d: Poly<u64> = vec![1];
    for c in p {
        let den = &c.as_ratfunc().unwrap().den;
        let g = poly::gcd(fq, &d, den);
        let (dd, _) = poly::divrem(fq, &poly::mul(fq, &d, den), &g);
        d = dd;
    }
    let dscalar = Scalar::from_poly(field, d.clone());
    // a_i = D^{n-i} · c_i, polynomials in t.
    let a: Vec<Poly<u64>> = p
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let s = c * &dscalar.pow((n - i) as i64);
            let r = s.as_ratfunc().unwrap();
            debug_assert_eq!(r.den, vec![1]);
            r.num.clone()
        })
        .collect();
    let max_deg = (0..n).filter(|&i| !a[i].is_empty()).map(|i| (a[i].len() - 1) / (n - i) + 1).max().unwrap_or(0);
    let eval = |y: &Poly<u64>| -> Poly<u64> {
        a.iter().rev().fold(Vec::new(), |acc, c| poly::add(fq, &poly::mul(fq, &acc, y), c))
    };
    let mut found: Vec<Poly<u64>> = Vec::new();
    let mut stack: Vec<(Poly<u64>, usize)> = vec![(Vec::new(), 0)];
    while let Some((y, level)) = stack.pop() {
        if level > max_deg {
            if eval(&y).is_empty() && !found.contains(&y) {
                found.push(y);
            }
            continue;
        }
        for digit in fq.elements() {
            let y2 = poly::add(fq, &y, &poly::monomial(fq, digit, level));
            let v = eval(&y2);
            if poly::order(fq, &v).is_none_or(|o| o > level) {
                stack.push((y2, level + 1));
            }
        }
    }
    Ok(found.into_iter().map(|y| &Scalar::from_poly(field, y) / &dscalar).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_symmetric() {
        let k = FieldDescriptor::padic(3).unwrap();
        let s = |n| Scalar::from_int(&k, n);
        let c = sym_code(&k, &[vec![s(3)], vec![s(5)]]).unwrap();
        assert_eq!(c.coefficients, vec![s(8), s(15)]);
        assert_eq!(sym_decode(&k, &c).unwrap(), vec![s(3), s(5)]);
    }

    #[test]
    fn two_dimensional_points() {
        let k = FieldDescriptor::padic(5).unwrap();
        let s = |n| Scalar::from_int(&k, n);
        let c = sym_code(&k, &[vec![s(1), s(2)], vec![s(3), s(4)]]).unwrap();
        assert_eq!(c.coefficients, vec![s(4), s(6), s(3), s(10), s(8)]);
        let c2 = sym_code(&k, &[vec![s(3), s(4)], vec![s(1), s(2)]]).unwrap();
        assert_eq!(c, c2);
    }

    #[test]
    fn decode_with_repeats_and_fractions() {
        let k = FieldDescriptor::padic(7).unwrap();
        let pts = [
            Scalar::from_frac(&k, -2, 3).unwrap(),
            Scalar::from_frac(&k, -2, 3).unwrap(),
            Scalar::from_int(&k, 0),
            Scalar::from_frac(&k, 49, 5).unwrap(),
        ];
        let c = sym_code(&k, &pts.iter().map(|x| vec![x.clone()]).collect::<Vec<_>>()).unwrap();
        let mut expected = pts.to_vec();
        expected.sort();
        assert_eq!(sym_decode(&k, &c).unwrap(), expected);
    }

    #[test]
    fn decode_function_field() {
        let k = FieldDescriptor::laurent(4).unwrap();
        let pts = [
            Scalar::from_ratfunc(&k, vec![1, 2], vec![3, 1]).unwrap(),
            Scalar::from_poly(&k, vec![0, 0, 1]),
            Scalar::from_poly(&k, vec![0, 0, 1]),
        ];
        let c = sym_code(&k, &pts.iter().map(|x| vec![x.clone()]).collect::<Vec<_>>()).unwrap();
        let mut expected = pts.to_vec();
        expected.sort();
        assert_eq!(sym_decode(&k, &c).unwrap(), expected);
    }

    #[test]
    fn irreducible_quadratic_does_not_split() {
        let k = FieldDescriptor::padic(3).unwrap();
        let code = SymCode { n: 2, m: 1, coefficients: vec![Scalar::zero(&k), Scalar::one(&k)] };
        assert_eq!(sym_decode(&k, &code), Err(Error::NotSplit));
    }
}
