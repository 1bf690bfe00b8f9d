//! Reductions between residue sorts: `R_{n,ℓ}` into lines of exterior
//! powers, and lines `R_{n,1}` into lattices and elements of `T_n`.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::lattice::Lattice;
use crate::matrix::{MatrixK, ResMatrix};
use crate::submodule::{RnlElement, TnElement};

/// `(Λ, V)` sent to `(Λ, ∧^ℓ Λ, res(∧^ℓ V))`. The line is given in the
/// canonical residue coordinates of `∧^ℓ Λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PluckerCode {
    pub lattice: Lattice,
    pub ell: usize,
    pub line: RnlElement,
}

pub fn rnl_to_plucker(e: &RnlElement) -> Result<PluckerCode> {
    let l = e.ell();
    if l == 0 {
        return Err(Error::BadDimension("the zero subspace has no Plücker line".into()));
    }
    let lat = e.lattice().clone();
    let field = lat.field().clone();
    let plucker = e.subspace().minors_matrix(l)?.row(0);
    let wedge = lat.wedge(l)?;
    let lifted: Vec<Scalar> = plucker.iter().map(|&r| Scalar::lift_residue(&field, r)).collect();
    let w = lat.basis().minors_matrix(l)?.mul_vec(&lifted)?;
    let xi: Vec<u64> = wedge.res_coords(&w)?.iter().map(|r| r.value()).collect();
    Ok(PluckerCode { ell: l, line: RnlElement::from_rows(wedge, &[xi])?, lattice: lat })
}

pub fn plucker_to_rnl(c: &PluckerCode) -> Result<RnlElement> {
    let lat = c.lattice.canon();
    let n = lat.dim();
    let l = c.ell;
    if l == 0 || l > n || c.line.ell() != 1 {
        return Err(Error::BadDimension(format!("ℓ = {l}, line of dimension {}", c.line.ell())));
    }
    let wedge = lat.wedge(l)?;
    if wedge != *c.line.lattice() {
        return Err(Error::InconsistentPresentation("line does not live in ∧^ℓ Λ".into()));
    }
    let k = lat.field().residue_field().clone();
    let w = wedge.lift_res(&c.line.subspace().row(0))?;
    let coords = lat.basis().minors_matrix(l)?.inv()?.mul_vec(&w)?;
    let p: Vec<u64> = coords.iter().map(|x| x.residue().map(|r| r.value())).collect::<Result<_>>()?;
    let subsets = (0..n).combinations(l).collect_vec();
    let i0 = p.iter().position(|&x| x != 0).expect("nonzero line");
    let base = &subsets[i0];
    let inv = k.inv(&p[i0]).expect("nonzero");
    let mut rows = Vec::with_capacity(l);
    for a in 0..l {
        let mut row = vec![0; n];
        for (j, slot) in row.iter_mut().enumerate() {
            let mut seq = base.clone();
            seq[a] = j;
            if seq.iter().duplicates().next().is_some() {
                continue;
            }
            let inversions =
                (0..l).flat_map(|x| (x + 1..l).map(move |y| (x, y))).filter(|&(x, y)| seq[x] > seq[y]).count();
            let mut sorted = seq.clone();
            sorted.sort_unstable();
            let idx = subsets.iter().position(|s| *s == sorted).expect("subset");
            let mut v = k.mul(&p[idx], &inv);
            if inversions % 2 == 1 {
                v = k.neg(&v);
            }
            *slot = v;
        }
        rows.push(row);
    }
    let e = RnlElement::new(lat, ResMatrix::from_rows(&k, rows)?)?;
    if e.ell() != l || rnl_to_plucker(&e)? != *c {
        return Err(Error::InvalidArgument("line is not a decomposable ℓ-vector".into()));
    }
    Ok(e)
}

/// A line in `res Λ` coded by the flag `Λ ⊇ Λ ∩ ({0}×K^{n−1})`: either
/// the line lies in the residue space of the kernel lattice, or it fixes a
/// splitting of `res Λ → res π_1(Λ)`, coded in `T_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct StCode {
    pub lattice: Lattice,
    pub path: StPath,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StPath {
    Base(RnlElement),
    Kernel(Box<StCode>),
    Split(TnElement),
}

/// A basis of `Λ` whose first column is `(π^c, *)` and whose other columns
/// have first coordinate zero; `π_1(Λ) = π^c O`.
fn adapted_basis(lat: &Lattice) -> (MatrixK, i64) {
    let field = lat.field().clone();
    let mut b = lat.basis().clone();
    let n = b.cols();
    let j0 =
        (0..n).filter(|&j| !b.get(0, j).is_zero()).min_by_key(|&j| b.get(0, j).ord().unwrap()).expect("invertible");
    b.swap_cols(0, j0);
    for j in 1..n {
        let f = b.get(0, j) / b.get(0, 0);
        b.add_col_multiple(j, 0, &f.neg());
    }
    let c = b.get(0, 0).ord().unwrap();
    let unit = &Scalar::uniformizer_pow(&field, c) / b.get(0, 0);
    b.scale_col(0, &unit);
    (b, c)
}

fn kernel_lattice(b: &MatrixK) -> Result<Lattice> {
    let n = b.rows();
    let idx: Vec<usize> = (1..n).collect();
    Ok(Lattice::new(b.submatrix(&idx, &idx))?.canon())
}

pub fn rn1_to_st(e: &RnlElement) -> Result<StCode> {
    if e.ell() != 1 {
        return Err(Error::BadDimension(format!("expected a line, got dimension {}", e.ell())));
    }
    let lat = e.lattice().clone();
    let field = lat.field().clone();
    let n = lat.dim();
    if n == 1 {
        return Ok(StCode { lattice: lat, path: StPath::Base(e.clone()) });
    }
    let (b, c) = adapted_basis(&lat);
    let v = lat.lift_res(&e.subspace().row(0))?;
    let w = b.inv()?.mul_vec(&v)?;
    let r: Vec<u64> = w.iter().map(|x| x.residue().map(|r| r.value())).collect::<Result<_>>()?;
    let path = if r[0] == 0 {
        let sub = kernel_lattice(&b)?;
        let lifted: Vec<Scalar> = r.iter().map(|&x| Scalar::lift_residue(&field, x)).collect();
        let mut only_kernel = lifted.clone();
        only_kernel[0] = Scalar::zero(&field);
        let u = b.mul_vec(&only_kernel)?;
        let xi: Vec<u64> = sub.res_coords(&u[1..])?.iter().map(|x| x.value()).collect();
        StPath::Kernel(Box::new(rn1_to_st(&RnlElement::from_rows(sub, &[xi])?)?))
    } else {
        let k = field.residue_field();
        let inv = k.inv(&r[0]).expect("nonzero");
        let lifted: Vec<Scalar> = r.iter().map(|&x| Scalar::lift_residue(&field, k.mul(&x, &inv))).collect();
        let v = b.mul_vec(&lifted)?;
        let h = lat.scale(-c);
        let s = Scalar::uniformizer_pow(&field, -c);
        let scaled: Vec<Scalar> = v.iter().map(|x| &s * x).collect();
        let xi: Vec<u64> = h.res_coords(&scaled)?.iter().map(|x| x.value()).collect();
        StPath::Split(TnElement::new(h, xi)?)
    };
    Ok(StCode { lattice: lat, path })
}

pub fn st_to_rn1(code: &StCode) -> Result<RnlElement> {
    let lat = code.lattice.canon();
    let field = lat.field().clone();
    match &code.path {
        StPath::Base(e) => {
            if *e.lattice() != lat || e.ell() != 1 {
                return Err(Error::InconsistentPresentation("base line does not match the lattice".into()));
            }
            Ok(e.clone())
        }
        StPath::Kernel(sub) => {
            if lat.dim() < 2 {
                return Err(Error::BadDimension("no kernel step in dimension 1".into()));
            }
            let (b, _) = adapted_basis(&lat);
            let kl = kernel_lattice(&b)?;
            if sub.lattice.canon() != kl {
                return Err(Error::InconsistentPresentation("kernel lattice does not match".into()));
            }
            let inner = st_to_rn1(sub)?;
            let mut u = vec![Scalar::zero(&field)];
            u.extend(kl.lift_res(&inner.subspace().row(0))?);
            let xi: Vec<u64> = lat.res_coords(&u)?.iter().map(|x| x.value()).collect();
            RnlElement::from_rows(lat, &[xi])
        }
        StPath::Split(tn) => {
            if lat.dim() < 2 {
                return Err(Error::BadDimension("no splitting step in dimension 1".into()));
            }
            let (_, c) = adapted_basis(&lat);
            if *tn.lattice() != lat.scale(-c) {
                return Err(Error::InconsistentPresentation("T_n lattice is not Hom(π_1 Λ, Λ)".into()));
            }
            let x = tn.lattice().lift_res(tn.xi())?;
            if x[0].residue().map(|r| r.value()) != Ok(1) {
                return Err(Error::InvalidArgument("splitting vector is not normalized".into()));
            }
            let s = Scalar::uniformizer_pow(&field, c);
            let v: Vec<Scalar> = x.iter().map(|y| &s * y).collect();
            let xi: Vec<u64> = lat.res_coords(&v)?.iter().map(|x| x.value()).collect();
            RnlElement::from_rows(lat, &[xi])
        }
    }
}
