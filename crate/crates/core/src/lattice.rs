//! Lattices: full-rank `O`-submodules of `K^n`, stored as basis matrices
//! whose columns generate them.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, ResidueElem, Scalar};
use crate::matrix::{MatrixK, ResMatrix};
use crate::rng::{derive, seeded};

#[derive(Clone, PartialEq)]
pub struct Lattice {
    basis: MatrixK,
    canonical: bool,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice{:?}", self.basis.to_cols())
    }
}

impl Lattice {
    /// The lattice spanned by the columns of `basis`.
    pub fn new(basis: MatrixK) -> Result<Self> {
        if !basis.is_square() {
            return Err(Error::ShapeMismatch(format!("{}x{} lattice basis", basis.rows(), basis.cols())));
        }
        if basis.det()?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(Lattice { basis, canonical: false })
    }

    /// `O^n`.
    pub fn standard(field: &FieldDescriptor, n: usize) -> Self {
        Lattice { basis: MatrixK::identity(field, n), canonical: true }
    }

    /// `π^{a_1}O × … × π^{a_n}O`.
    pub fn diagonal(field: &FieldDescriptor, exponents: &[i64]) -> Self {
        let d: Vec<Scalar> = exponents.iter().map(|&a| Scalar::uniformizer_pow(field, a)).collect();
        Lattice { basis: MatrixK::diagonal(field, &d), canonical: true }
    }

    pub fn field(&self) -> &FieldDescriptor {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &MatrixK {
        &self.basis
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    /// Valuation of the basis determinant: the index of the lattice
    /// relative to `O^n`, as an exponent.
    pub fn det_val(&self) -> i64 {
        self.basis.det().expect("square").ord().expect("nonsingular")
    }

    /// The canonical basis: upper triangular with diagonal `π^{a_i}` and
    /// each entry above the diagonal in row `i` a truncated expansion
    /// `Σ_{j < a_i} d_j π^j`.
    pub fn canon(&self) -> Lattice {
        if self.canonical {
            return self.clone();
        }
        let field = self.field().clone();
        let n = self.dim();
        let mut b = self.basis.clone();
        let mut a = vec![0i64; n];
        for i in (0..n).rev() {
            let (j, v) = (0..=i)
                .filter_map(|j| b.get(i, j).ord().map(|v| (j, v)))
                .min_by_key(|&(j, v)| (v, j))
                .expect("nonsingular basis");
            b.swap_cols(i, j);
            let s = &Scalar::uniformizer_pow(&field, v) / b.get(i, i);
            b.scale_col(i, &s);
            a[i] = v;
            let piv = b.get(i, i).clone();
            for j in 0..i {
                if !b.get(i, j).is_zero() {
                    let c = -(b.get(i, j) / &piv);
                    b.add_col_multiple(j, i, &c);
                }
            }
        }
        for j in 1..n {
            for i in (0..j).rev() {
                let x = b.get(i, j).clone();
                let rep = x.expansion_below(a[i]);
                if rep != x {
                    let c = -(&(&x - &rep) / b.get(i, i));
                    b.add_col_multiple(j, i, &c);
                }
            }
        }
        Lattice { basis: b, canonical: true }
    }

    fn check_compatible(&self, o: &Lattice) -> Result<()> {
        if self.field() != o.field() {
            return Err(Error::MixedFields);
        }
        if self.dim() != o.dim() {
            return Err(Error::ShapeMismatch(format!("lattices in K^{} and K^{}", self.dim(), o.dim())));
        }
        Ok(())
    }

    /// Same lattice iff `B1⁻¹ B2 ∈ GL_n(O)`.
    pub fn lattice_eq(&self, o: &Lattice) -> Result<bool> {
        self.check_compatible(o)?;
        Ok(self.basis.inv()?.mul(&o.basis)?.is_unit_matrix())
    }

    /// Coordinates of `x` in the stored basis.
    pub fn coords(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.dim() {
            return Err(Error::ShapeMismatch(format!("vector of length {} in K^{}", x.len(), self.dim())));
        }
        if x.iter().any(|c| c.field() != self.field()) {
            return Err(Error::MixedFields);
        }
        self.basis.inv()?.mul_vec(x)
    }

    pub fn member(&self, x: &[Scalar]) -> Result<bool> {
        Ok(self.coords(x)?.iter().all(Scalar::is_integral))
    }

    /// `self ⊆ o`.
    pub fn is_sublattice_of(&self, o: &Lattice) -> Result<bool> {
        self.check_compatible(o)?;
        Ok(o.basis.inv()?.mul(&self.basis)?.is_integral())
    }

    /// The image `g·Λ`.
    pub fn transform(&self, g: &MatrixK) -> Result<Lattice> {
        Lattice::new(g.mul(&self.basis)?)
    }

    /// `π^k Λ`.
    pub fn scale(&self, k: i64) -> Lattice {
        let s = Scalar::uniformizer_pow(self.field(), k);
        Lattice { basis: self.basis.scale(&s), canonical: false }.canon()
    }

    /// The `O`-span of both lattices.
    pub fn join(&self, o: &Lattice) -> Result<Lattice> {
        self.check_compatible(o)?;
        let n = self.dim();
        let g = self.basis.hstack(&o.basis)?;
        let snf = g.smith_normal_form();
        let cols: Vec<usize> = (0..n).collect();
        let rows: Vec<usize> = (0..n).collect();
        let d = snf.d.submatrix(&rows, &cols);
        Ok(Lattice::new(snf.u.inv()?.mul(&d)?)?.canon())
    }

    /// `{y : ⟨y, Λ⟩ ⊆ O}`, with basis the inverse transpose.
    pub fn dual(&self) -> Lattice {
        let b = self.basis.inv().expect("nonsingular").transpose();
        Lattice { basis: b, canonical: false }.canon()
    }

    pub fn meet(&self, o: &Lattice) -> Result<Lattice> {
        Ok(self.dual().join(&o.dual())?.dual())
    }

    /// `∧^ℓ Λ` inside `∧^ℓ K^n ≅ K^{C(n,ℓ)}`.
    pub fn wedge(&self, l: usize) -> Result<Lattice> {
        Ok(Lattice::new(self.basis.minors_matrix(l)?)?.canon())
    }

    /// The canonical basis columns, which map to the standard basis of
    /// `res Λ ≅ k^n`.
    pub fn res_basis(&self) -> Vec<Vec<Scalar>> {
        self.canon().basis.to_cols()
    }

    /// Coordinates of `res(v)` in the canonical residue basis; fails with
    /// `NotInLattice` when `v ∉ Λ`.
    pub fn res_coords(&self, v: &[Scalar]) -> Result<Vec<ResidueElem>> {
        let c = self.canon().coords(v)?;
        c.iter().map(|x| x.residue().map_err(|_| Error::NotInLattice)).collect()
    }

    /// The vector `B·lift(ξ)` for residue coordinates `ξ` in the canonical
    /// basis.
    pub fn lift_res(&self, xi: &[u64]) -> Result<Vec<Scalar>> {
        let c: Vec<Scalar> = xi.iter().map(|&r| Scalar::lift_residue(self.field(), r)).collect();
        self.canon().basis.mul_vec(&c)
    }

    /// `m` vectors of `Λ` with `k`-linearly independent residues, drawn by
    /// rejection sampling: random `O`-coordinates of `depth + 1` digits in
    /// the canonical basis, redrawn while the residue rank is short.
    pub fn generic_sample(&self, m: usize, seed: u64, depth: usize, retry_budget: usize) -> Result<Vec<Vec<Scalar>>> {
        let n = self.dim();
        if m > n {
            return Err(Error::InvalidArgument(format!("{m} independent residues in dimension {n}")));
        }
        let field = self.field().clone();
        let q = field.residue_order();
        let canon = self.canon();
        for attempt in 0..retry_budget {
            let mut rng = seeded(derive(seed, attempt as u64));
            let mut coeffs = MatrixK::zeros(&field, n, m);
            let mut res = ResMatrix::zeros(field.residue_field(), n, m);
            for i in 0..n {
                for j in 0..m {
                    let digits: Vec<u64> = (0..=depth).map(|_| rng.gen_range(0..q)).collect();
                    res.set(i, j, digits[0]);
                    coeffs.set(i, j, Scalar::from_digits(&field, 0, &digits));
                }
            }
            if res.rank() == m {
                return Ok(canon.basis.mul(&coeffs)?.to_cols());
            }
        }
        Err(Error::RetryBudgetExceeded(retry_budget))
    }
}
