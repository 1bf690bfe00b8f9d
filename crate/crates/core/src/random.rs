//! Seeded generators for scalars, matrices and lattices, shared by the
//! examples and the test suites.

use rand::Rng;

use crate::field::{FieldDescriptor, Scalar};
use crate::lattice::Lattice;
use crate::matrix::MatrixK;

/// A random element with valuation in `[lo, hi]` (or zero, with
/// probability `1/q^{hi-lo+1}`). The expansion is divided by a random
/// one-unit `1 + π·u` so that reduced forms have nontrivial denominators.
pub fn scalar<R: Rng>(field: &FieldDescriptor, rng: &mut R, lo: i64, hi: i64) -> Scalar {
    let q = field.residue_order();
    let digits: Vec<u64> = (lo..=hi).map(|_| rng.gen_range(0..q)).collect();
    let x = Scalar::from_digits(field, lo, &digits);
    let u = Scalar::from_digits(field, 1, &[rng.gen_range(0..q), rng.gen_range(0..q)]);
    &x / &(&Scalar::one(field) + &u)
}

/// A random element of exact valuation `v`.
pub fn scalar_of_val<R: Rng>(field: &FieldDescriptor, rng: &mut R, v: i64, digits: usize) -> Scalar {
    let q = field.residue_order();
    let mut d = vec![rng.gen_range(1..q)];
    d.extend((1..digits).map(|_| rng.gen_range(0..q)));
    let x = Scalar::from_digits(field, v, &d);
    let u = Scalar::from_digits(field, 1, &[rng.gen_range(0..q)]);
    &x / &(&Scalar::one(field) + &u)
}

/// A nonzero scalar with valuation in `[lo, hi]`.
pub fn nonzero_scalar<R: Rng>(field: &FieldDescriptor, rng: &mut R, lo: i64, hi: i64) -> Scalar {
    let v = rng.gen_range(lo..=hi);
    scalar_of_val(field, rng, v, 3)
}

pub fn vector<R: Rng>(field: &FieldDescriptor, rng: &mut R, n: usize, lo: i64, hi: i64) -> Vec<Scalar> {
    (0..n).map(|_| scalar(field, rng, lo, hi)).collect()
}

pub fn matrix<R: Rng>(field: &FieldDescriptor, rng: &mut R, rows: usize, cols: usize, lo: i64, hi: i64) -> MatrixK {
    let data = (0..rows * cols).map(|_| scalar(field, rng, lo, hi)).collect();
    MatrixK::new(field, rows, cols, data).expect("shape")
}

/// A random element of `GL_n(O)`: lower unitriangular times upper
/// triangular with unit diagonal, then a column permutation.
pub fn unit_matrix<R: Rng>(field: &FieldDescriptor, rng: &mut R, n: usize) -> MatrixK {
    let mut l = MatrixK::identity(field, n);
    let mut u = MatrixK::identity(field, n);
    for i in 0..n {
        for j in 0..n {
            if i > j {
                l.set(i, j, scalar(field, rng, 0, 2));
            } else if i < j {
                u.set(i, j, scalar(field, rng, 0, 2));
            } else {
                u.set(i, i, scalar_of_val(field, rng, 0, 2));
            }
        }
    }
    let mut g = l.mul(&u).expect("square");
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        g.swap_cols(i, j);
    }
    g
}

/// A random element of `GL_n(K)` with entries of valuation in `[lo, hi]`.
pub fn invertible<R: Rng>(field: &FieldDescriptor, rng: &mut R, n: usize, lo: i64, hi: i64) -> MatrixK {
    loop {
        let m = matrix(field, rng, n, n, lo, hi);
        if !m.det().expect("square").is_zero() {
            return m;
        }
    }
}

pub fn lattice<R: Rng>(field: &FieldDescriptor, rng: &mut R, n: usize, lo: i64, hi: i64) -> Lattice {
    Lattice::new(invertible(field, rng, n, lo, hi)).expect("nonsingular")
}
