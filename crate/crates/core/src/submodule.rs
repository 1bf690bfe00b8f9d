//! Definable `O`-submodules of `K^n` given by valuation constraints, their
//! classification as `K^{n1} × O^{n2} × M^{n3}`, and the residue sorts
//! `R_{n,ℓ}` and `T_n`.
//!
//! Strict cuts are read over a divisible value group: `val(y) > γ` is not
//! the same as `val(y) ≥ γ + 1`. The classification keeps the distinction
//! by working over `K(ε)`, where a strict cut becomes `val(y) ≥ γ + val(ε)`.

use num_rational::Rational64;

use crate::coding::{reduce, subspace_code, CodeEntry, GeomCode};
use crate::error::{Error, Result};
use crate::field::{ExtField, ExtScalar, Field, FieldDescriptor, Scalar, Val};
use crate::lattice::Lattice;
use crate::matrix::{Matrix, MatrixK, ResMatrix};

/// One constraint `val(row · x) ≥ γ`, or `> γ` when `strict`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cut {
    pub gamma: Rational64,
    pub strict: bool,
}

impl Cut {
    pub fn ge(gamma: i64) -> Self {
        Cut { gamma: Rational64::from_integer(gamma), strict: false }
    }

    pub fn gt(gamma: i64) -> Self {
        Cut { gamma: Rational64::from_integer(gamma), strict: true }
    }

    pub fn holds(&self, v: Val) -> bool {
        let g = Val::Finite(self.gamma);
        if self.strict {
            v > g
        } else {
            v >= g
        }
    }
}

/// `N = {x : E x = 0, val((A x)_i) ≥ γ_i (strict where flagged)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulePresentation {
    pub e: MatrixK,
    pub a: MatrixK,
    pub cuts: Vec<Cut>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoordType {
    K,
    O,
    M,
}

/// `N = g · (K^{n1} × Π_j π^{c_j} τ_j × 0^{n - n1 - n2 - n3})` where each
/// `τ_j` is `O` or `M`; the coordinates are ordered `K` first, then the
/// bounded ones by `(shift, O before M)`, then the zero coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleStandardForm {
    pub g: MatrixK,
    pub signature: (usize, usize, usize),
    pub shifts: Vec<i64>,
    pub types: Vec<CoordType>,
}

/// `(Λ, V)` with `V ⊆ res Λ` given by RREF rows in canonical residue
/// coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct RnlElement {
    lattice: Lattice,
    v: ResMatrix,
}

/// `(Λ, ξ)` with `ξ ∈ res Λ` in canonical residue coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct TnElement {
    lattice: Lattice,
    xi: Vec<u64>,
}

impl ModulePresentation {
    pub fn new(e: MatrixK, a: MatrixK, cuts: Vec<Cut>) -> Result<Self> {
        if e.cols() != a.cols() {
            return Err(Error::ShapeMismatch("E and A act on different dimensions".into()));
        }
        if a.rows() != cuts.len() {
            return Err(Error::ShapeMismatch(format!("{} constraint rows but {} cuts", a.rows(), cuts.len())));
        }
        if e.field() != a.field() {
            return Err(Error::MixedFields);
        }
        Ok(ModulePresentation { e, a, cuts })
    }

    /// Only valuation constraints, no equations.
    pub fn from_constraints(a: MatrixK, cuts: Vec<Cut>) -> Result<Self> {
        let e = MatrixK::zeros(a.field(), 0, a.cols());
        Self::new(e, a, cuts)
    }

    pub fn field(&self) -> &FieldDescriptor {
        self.a.field()
    }

    pub fn dim(&self) -> usize {
        self.a.cols()
    }

    pub fn member(&self, x: &[Scalar]) -> Result<bool> {
        if !self.e.mul_vec(x)?.iter().all(Scalar::is_zero) {
            return Ok(false);
        }
        let ax = self.a.mul_vec(x)?;
        Ok(ax.iter().zip(&self.cuts).all(|(y, c)| c.holds(y.val())))
    }

    /// The same module in new coordinates: `{y : h y ∈ N}`.
    pub fn pullback(&self, h: &MatrixK) -> Result<Self> {
        Self::new(self.e.mul(h)?, self.a.mul(h)?, self.cuts.clone())
    }

    pub fn classify(&self) -> Result<ModuleStandardForm> {
        classify(self)
    }
}

impl ModuleStandardForm {
    pub fn field(&self) -> &FieldDescriptor {
        self.g.field()
    }

    pub fn dim(&self) -> usize {
        self.g.rows()
    }

    /// `n1 + n2 + n3`, the dimension of the span of `N`.
    pub fn span_dim(&self) -> usize {
        self.types.len()
    }

    pub fn coords(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        self.g.inv()?.mul_vec(x)
    }

    /// Membership decided through the standard product.
    pub fn member(&self, x: &[Scalar]) -> Result<bool> {
        let y = self.coords(x)?;
        let (n1, _, _) = self.signature;
        let r = self.span_dim();
        if !y[r..].iter().all(Scalar::is_zero) {
            return Ok(false);
        }
        Ok(self.types.iter().enumerate().skip(n1).all(|(j, t)| {
            let c = Rational64::from_integer(self.shifts[j - n1]);
            let cut = Cut { gamma: c, strict: *t == CoordType::M };
            cut.holds(y[j].val())
        }))
    }

    /// The vector `g·y`.
    pub fn point(&self, y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.g.mul_vec(y)
    }
}

fn classify(p: &ModulePresentation) -> Result<ModuleStandardForm> {
    if let Some(c) = p.cuts.iter().find(|c| !c.gamma.is_integer()) {
        return Err(Error::FractionalCut(c.gamma.to_string()));
    }
    let field = p.field().clone();
    let n = p.dim();
    let z = p.e.kernel();
    let k = z.cols();
    let b = p.a.mul(&z)?;
    let ext = ExtField::new(field.clone());
    let mut bx: Matrix<ExtField> = Matrix::zeros(&ext, b.rows(), k);
    for (i, cut) in p.cuts.iter().enumerate() {
        let m = ext.monomial_of(-cut.gamma.to_integer(), if cut.strict { -1 } else { 0 });
        for j in 0..k {
            bx.set(i, j, ext.mul(&m, &ext.embed(b.get(i, j))));
        }
    }
    let snf = bx.smith_normal_form();
    let v = snf.v.map_into(&field, |x: &ExtScalar| ext.as_base(x).expect("column operations stay in K"));
    let rank = snf.exponents.len();
    let zv = z.mul(&v)?;

    let mut bounded: Vec<(i64, CoordType, usize)> = snf
        .exponents
        .iter()
        .enumerate()
        .map(|(j, e)| {
            let c = e.q.to_integer();
            let t = if e.d >= 0 { CoordType::O } else { CoordType::M };
            (-c, t, j)
        })
        .collect();
    bounded.sort();

    let mut cols: Vec<Vec<Scalar>> = (rank..k).map(|j| zv.col(j)).collect();
    let mut types = vec![CoordType::K; k - rank];
    let mut shifts = Vec::new();
    for &(c, t, j) in &bounded {
        cols.push(zv.col(j));
        types.push(t);
        shifts.push(c);
    }
    let (_, e_pivots) = p.e.rref();
    for &piv in &e_pivots {
        let mut e = vec![Scalar::zero(&field); n];
        e[piv] = Scalar::one(&field);
        cols.push(e);
    }
    let g = MatrixK::from_cols(&field, n, &cols)?;
    let n2 = types.iter().filter(|t| **t == CoordType::O).count();
    let n3 = types.iter().filter(|t| **t == CoordType::M).count();
    Ok(ModuleStandardForm { g, signature: (k - rank, n2, n3), shifts, types })
}

impl RnlElement {
    /// Canonicalizes the lattice and puts `V` in RREF. `v` is given by
    /// spanning rows in the canonical residue coordinates of `lattice`.
    pub fn new(lattice: Lattice, v: ResMatrix) -> Result<Self> {
        if v.cols() != lattice.dim() {
            return Err(Error::ShapeMismatch(format!("subspace of k^{} in res of rank {}", v.cols(), lattice.dim())));
        }
        if v.field() != lattice.field().residue_field() {
            return Err(Error::MixedFields);
        }
        let (v, _) = v.row_space_basis();
        Ok(RnlElement { lattice: lattice.canon(), v })
    }

    pub fn from_rows(lattice: Lattice, rows: &[Vec<u64>]) -> Result<Self> {
        let k = lattice.field().residue_field().clone();
        let n = lattice.dim();
        let v = if rows.is_empty() { ResMatrix::zeros(&k, 0, n) } else { ResMatrix::from_rows(&k, rows.to_vec())? };
        if v.entries().iter().any(|x| !k.contains(*x)) {
            return Err(Error::InvalidArgument("residue outside the field".into()));
        }
        Self::new(lattice, v)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn subspace(&self) -> &ResMatrix {
        &self.v
    }

    /// `ℓ = dim V`.
    pub fn ell(&self) -> usize {
        self.v.rows()
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    /// The preimage of `V` in `Λ`.
    pub fn to_module(&self) -> ModuleStandardForm {
        module_of_rnl(self)
    }
}

impl TnElement {
    pub fn new(lattice: Lattice, xi: Vec<u64>) -> Result<Self> {
        if xi.len() != lattice.dim() {
            return Err(Error::ShapeMismatch(format!(
                "residue vector of length {} in dimension {}",
                xi.len(),
                lattice.dim()
            )));
        }
        let k = lattice.field().residue_field();
        if xi.iter().any(|x| !k.contains(*x)) {
            return Err(Error::InvalidArgument("residue outside the field".into()));
        }
        Ok(TnElement { lattice: lattice.canon(), xi })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn xi(&self) -> &[u64] {
        &self.xi
    }
}

/// Complete the RREF rows of `v` by the non-pivot standard vectors into an
/// invertible matrix whose first `ℓ` columns span `V`.
fn complete_basis(v: &ResMatrix) -> ResMatrix {
    let k = v.field().clone();
    let n = v.cols();
    let (r, pivots) = v.rref();
    let mut cols: Vec<Vec<u64>> = (0..pivots.len()).map(|i| r.row(i)).collect();
    for j in (0..n).filter(|j| !pivots.contains(j)) {
        let mut e = vec![0; n];
        e[j] = 1;
        cols.push(e);
    }
    ResMatrix::from_cols(&k, n, &cols).expect("square")
}

/// The module `res⁻¹(V) ⊆ Λ`, of signature `(0, ℓ, n − ℓ)`.
pub fn module_of_rnl(e: &RnlElement) -> ModuleStandardForm {
    let field = e.lattice.field().clone();
    let n = e.dim();
    let l = e.ell();
    let lift = MatrixK::lift(&field, &complete_basis(&e.v));
    let g = e.lattice.basis().mul(&lift).expect("square");
    let mut types = vec![CoordType::O; l];
    types.extend(vec![CoordType::M; n - l]);
    ModuleStandardForm { g, signature: (0, l, n - l), shifts: vec![0; n], types }
}

/// The subspace `N / MΛ ⊆ res Λ` of a module with `MΛ ⊆ N ⊆ Λ`.
pub fn rnl_of_module(sf: &ModuleStandardForm, lattice: &Lattice) -> Result<RnlElement> {
    let n = lattice.dim();
    if sf.dim() != n || sf.field() != lattice.field() {
        return Err(Error::ShapeMismatch("module and lattice live in different spaces".into()));
    }
    if sf.signature.0 != 0 || sf.span_dim() != n {
        return Err(Error::NotBetween);
    }
    let field = lattice.field().clone();
    let canon = lattice.canon();
    let h = canon.basis().inv()?.mul(&sf.g)?;
    let hinv = h.inv()?;
    for j in 0..n {
        let c = sf.shifts[j];
        let m = h.col(j).iter().filter_map(Scalar::ord).min().expect("nonzero column");
        if m + c < 0 {
            return Err(Error::NotBetween);
        }
        let mi = hinv.row(j).iter().filter_map(Scalar::ord).min().expect("nonzero row");
        if mi < c {
            return Err(Error::NotBetween);
        }
    }
    let k = field.residue_field().clone();
    let mut rows = Vec::new();
    for j in (0..n).filter(|&j| sf.types[j] == CoordType::O) {
        let s = Scalar::uniformizer_pow(&field, sf.shifts[j]);
        let col: Vec<u64> = h.col(j).iter().map(|x| (x * &s).residue().map(|r| r.value())).collect::<Result<_>>()?;
        rows.push(col);
    }
    let v = if rows.is_empty() { ResMatrix::zeros(&k, 0, n) } else { ResMatrix::from_rows(&k, rows)? };
    RnlElement::new(canon, v)
}

/// A geometric code of the module: codes of its span `V⁺` and maximal
/// subspace `V⁻`, then the image of `N` in `V⁺/V⁻ ≅ K^m` as an element of
/// `R_{m,ℓ}` (its lattice closure together with the residue subspace).
pub fn module_code(p: &ModulePresentation) -> Result<GeomCode> {
    code_of_standard_form(&p.classify()?)
}

pub fn code_of_standard_form(sf: &ModuleStandardForm) -> Result<GeomCode> {
    let field = sf.field().clone();
    let n = sf.dim();
    let (n1, n2, n3) = sf.signature;
    let cols = sf.g.to_cols();
    let vplus = subspace_code(&field, n, &cols[..n1 + n2 + n3]);
    let vminus = subspace_code(&field, n, &cols[..n1]);
    let reduced: Vec<Vec<Scalar>> =
        cols[n1..n1 + n2 + n3].iter().map(|c| reduce(&vminus.basis, &vminus.pivots, c)).collect();
    let image = subspace_code(&field, n, &reduced);
    let m = n2 + n3;
    let hcols: Vec<Vec<Scalar>> =
        reduced.iter().map(|c| image.pivots.iter().map(|&p| c[p].clone()).collect()).collect();
    let h = MatrixK::from_cols(&field, m, &hcols)?;
    let quotient = ModuleStandardForm {
        g: h.clone(),
        signature: (0, n2, n3),
        shifts: sf.shifts.clone(),
        types: sf.types[n1..].to_vec(),
    };
    let diag: Vec<Scalar> = sf.shifts.iter().map(|&c| Scalar::uniformizer_pow(&field, c)).collect();
    let closure = Lattice::new(h.mul(&MatrixK::diagonal(&field, &diag))?)?;
    let rnl = rnl_of_module(&quotient, &closure)?;
    Ok(GeomCode(vec![CodeEntry::KTuple(vplus.flat()), CodeEntry::KTuple(vminus.flat()), CodeEntry::RnlEntry(rnl)]))
}
