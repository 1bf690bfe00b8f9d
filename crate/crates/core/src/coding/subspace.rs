use crate::field::{Field, FieldDescriptor, Scalar};
use crate::matrix::{Matrix, MatrixK};

/// The canonical description of a subspace of `K^N`: its RREF rows and
/// pivots, plus the non-pivot standard vectors, whose images form a basis
/// of the quotient `K^N / V`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceCode {
    pub basis: MatrixK,
    pub pivots: Vec<usize>,
    pub quotient_basis: Vec<usize>,
}

impl SubspaceCode {
    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// The RREF rows flattened into one tuple of scalars.
    pub fn flat(&self) -> Vec<Scalar> {
        self.basis.entries().to_vec()
    }

    /// Coordinates of the class of `x` in `K^N / V` with respect to the
    /// quotient basis: reduce by the RREF rows, read the free columns.
    pub fn quotient_coords(&self, x: &[Scalar]) -> Vec<Scalar> {
        let r = reduce(&self.basis, &self.pivots, x);
        self.quotient_basis.iter().map(|&j| r[j].clone()).collect()
    }
}

/// Subtract multiples of the RREF rows so that `x` vanishes on the pivots.
pub fn reduce<F: Field>(rref: &Matrix<F>, pivots: &[usize], x: &[F::Elem]) -> Vec<F::Elem> {
    let f = rref.field();
    let mut y = x.to_vec();
    for (i, &p) in pivots.iter().enumerate() {
        let c = y[p].clone();
        if !f.is_zero(&c) {
            for (j, yj) in y.iter_mut().enumerate() {
                *yj = f.sub(yj, &f.mul(&c, rref.get(i, j)));
            }
        }
    }
    y
}

/// The code of the span of `generators` inside `K^n`.
pub fn subspace_code(field: &FieldDescriptor, n: usize, generators: &[Vec<Scalar>]) -> SubspaceCode {
    let m = if generators.is_empty() {
        MatrixK::zeros(field, 0, n)
    } else {
        MatrixK::from_rows(field, generators.to_vec()).expect("generators of equal length")
    };
    let (basis, pivots) = m.row_space_basis();
    let quotient_basis = (0..n).filter(|j| !pivots.contains(j)).collect();
    SubspaceCode { basis, pivots, quotient_basis }
}
