//! Definable types over `K` presented degree by degree: the ideal `I_d` of
//! polynomials of degree `≤ d` vanishing on the type, and the induced
//! valuation on `V_d / I_d`.

use std::collections::BTreeMap;

use super::{subspace_code, CodeEntry, GeomCode};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar, Val};
use crate::lattice::Lattice;
use crate::matrix::MatrixK;
use crate::submodule::code_of_standard_form;
use crate::vvspace::NormPresentation;

/// Exponent vectors in `n` variables of total degree `≤ d`, by degree and
/// then lexicographically descending (`X_1 > X_2 > …`).
pub fn monomials_up_to(n: usize, d: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for deg in 0..=d {
        if n == 0 {
            if deg == 0 {
                out.push(Vec::new());
            }
            continue;
        }
        out.extend(super::monomials_of_degree(deg, n));
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct DefTypePresentation {
    pub n: usize,
    pub d: usize,
    /// Rows spanning `I_d` in monomial coordinates.
    pub ideal: MatrixK,
    /// The norm on the quotient, in the coordinates of the monomials that
    /// are not pivots of the RREF of `ideal`.
    pub norm: NormPresentation,
}

type MPoly = BTreeMap<Vec<u32>, Scalar>;

fn mpoly_mul(field: &FieldDescriptor, a: &MPoly, b: &MPoly) -> MPoly {
    let mut out = MPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let slot = out.entry(e).or_insert_with(|| Scalar::zero(field));
            *slot = &*slot + &(ca * cb);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// The matrix of `Q(X) ↦ Q(B·Y)` on `V_d`: column `μ` holds the
/// coefficients of `(B·Y)^μ`.
pub fn substitution_matrix(b: &MatrixK, d: usize) -> MatrixK {
    let field = b.field().clone();
    let n = b.rows();
    let mons = monomials_up_to(n, d);
    let index: BTreeMap<&Vec<u32>, usize> = mons.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let linear: Vec<MPoly> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| !b.get(i, j).is_zero())
                .map(|j| {
                    let mut e = vec![0; n];
                    e[j] = 1;
                    (e, b.get(i, j).clone())
                })
                .collect()
        })
        .collect();
    let mut cols = Vec::with_capacity(mons.len());
    for mu in &mons {
        let mut p = MPoly::new();
        p.insert(vec![0; n], Scalar::one(&field));
        for (i, &e) in mu.iter().enumerate() {
            for _ in 0..e {
                p = mpoly_mul(&field, &p, &linear[i]);
            }
        }
        let mut col = vec![Scalar::zero(&field); mons.len()];
        for (e, c) in p {
            col[index[&e]] = c;
        }
        cols.push(col);
    }
    MatrixK::from_cols(&field, mons.len(), &cols).expect("square")
}

/// The generic type of `Λ = B·O^n` in degree `d`: no polynomial vanishes,
/// and `val Q(a) = min_ν val (coefficient of Y^ν in Q(B·Y))`.
pub fn lattice_generic_type(basis: &MatrixK, d: usize) -> Result<DefTypePresentation> {
    Lattice::new(basis.clone())?;
    let field = basis.field().clone();
    let n = basis.rows();
    let t = substitution_matrix(basis, d);
    let big_n = t.rows();
    Ok(DefTypePresentation {
        n,
        d,
        ideal: MatrixK::zeros(&field, 0, big_n),
        norm: NormPresentation::new(t, vec![num_rational::Rational64::from_integer(0); big_n])?,
    })
}

impl DefTypePresentation {
    pub fn field(&self) -> &FieldDescriptor {
        self.norm.field()
    }

    /// `val Q(a)` for `a` realizing the type, `Q` given by its coefficients
    /// on [`monomials_up_to`].
    pub fn val(&self, coeffs: &[Scalar]) -> Result<Val> {
        let code = subspace_code(self.field(), self.ideal.cols(), &self.ideal.to_rows());
        if coeffs.len() != code.ambient() {
            return Err(Error::ShapeMismatch(format!(
                "{} coefficients for {} monomials",
                coeffs.len(),
                code.ambient()
            )));
        }
        self.norm.val(&code.quotient_coords(coeffs))
    }
}

/// The RREF of `I_d`, followed by the codes of the ball lattices of the
/// quotient norm.
pub fn type_code(p: &DefTypePresentation) -> Result<GeomCode> {
    let big_n = monomials_up_to(p.n, p.d).len();
    if p.ideal.cols() != big_n {
        return Err(Error::InconsistentPresentation(format!(
            "ideal has {} columns, V_d has dimension {big_n}",
            p.ideal.cols()
        )));
    }
    let ideal = subspace_code(p.field(), big_n, &p.ideal.to_rows());
    if p.norm.dim() != big_n - ideal.dim() {
        return Err(Error::InconsistentPresentation(format!(
            "norm on dimension {}, quotient has dimension {}",
            p.norm.dim(),
            big_n - ideal.dim()
        )));
    }
    let mut code = GeomCode(vec![CodeEntry::KTuple(ideal.flat())]);
    for sf in p.norm.vvs_code() {
        code.extend(code_of_standard_form(&sf)?);
    }
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_order() {
        assert_eq!(monomials_up_to(2, 2), vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn scaled_line() {
        let k = FieldDescriptor::padic(5).unwrap();
        let b = MatrixK::from_ints(&k, &[&[5]]);
        let t = lattice_generic_type(&b, 1).unwrap();
        let c = [Scalar::from_int(&k, 25), Scalar::from_int(&k, 1)];
        assert_eq!(t.val(&c).unwrap(), Val::int(1));
        let c = [Scalar::from_int(&k, 1), Scalar::from_int(&k, 1)];
        assert_eq!(t.val(&c).unwrap(), Val::int(0));
    }

    #[test]
    fn code_ignores_basis_choice() {
        let k = FieldDescriptor::padic(3).unwrap();
        let b = MatrixK::from_ints(&k, &[&[3, 1], &[0, 9]]);
        let g = MatrixK::from_ints(&k, &[&[1, 2], &[1, 3]]);
        let c1 = type_code(&lattice_generic_type(&b, 2).unwrap()).unwrap();
        let c2 = type_code(&lattice_generic_type(&b.mul(&g).unwrap(), 2).unwrap()).unwrap();
        assert_eq!(c1, c2);
        let other = MatrixK::from_ints(&k, &[&[3, 0], &[0, 9]]);
        assert_ne!(c1, type_code(&lattice_generic_type(&other, 2).unwrap()).unwrap());
    }

    #[test]
    fn inconsistent_dimensions() {
        let k = FieldDescriptor::padic(3).unwrap();
        let mut p = lattice_generic_type(&MatrixK::identity(&k, 2), 1).unwrap();
        p.ideal = MatrixK::zeros(&k, 0, 4);
        assert!(matches!(type_code(&p), Err(Error::InconsistentPresentation(_))));
    }
}
