//! Dense matrices over a [`Field`], with reduced row echelon form over the
//! field and Smith normal form over its valuation ring.

use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::field::{Field, FieldDescriptor, Fq, Scalar, ValuedField};

/// A row-major dense matrix whose entries are interpreted by `field`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Matrices over a concrete valued field.
pub type MatrixK = Matrix<FieldDescriptor>;

/// Matrices over the residue field.
pub type ResMatrix = Matrix<Arc<Fq>>;

/// `U·A·V = D` with `U`, `V` invertible over the valuation ring and `D`
/// diagonal with pure uniformizer powers. `exponents` lists the valuations
/// of the nonzero diagonal entries in order.
#[derive(Debug, Clone, PartialEq)]
pub struct Snf<F: ValuedField> {
    pub u: Matrix<F>,
    pub d: Matrix<F>,
    pub v: Matrix<F>,
    pub exponents: Vec<F::Value>,
}

impl<F: Field> Matrix<F> {
    pub fn new(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Self::new(field, r, c, rows.into_iter().flatten().collect())
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_cols(field: &F, rows: usize, cols: &[Vec<F::Elem>]) -> Result<Self> {
        if cols.iter().any(|c| c.len() != rows) {
            return Err(Error::ShapeMismatch("column length".into()));
        }
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn diagonal(field: &F, diag: &[F::Elem]) -> Self {
        let mut m = Self::zeros(field, diag.len(), diag.len());
        for (i, x) in diag.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: F::Elem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<F::Elem> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn to_cols(&self) -> Vec<Vec<F::Elem>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn map(&self, f: impl Fn(&F::Elem) -> F::Elem) -> Self {
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Apply `f` entrywise, landing in another field.
    pub fn map_into<G: Field>(&self, g: &G, f: impl Fn(&F::Elem) -> G::Elem) -> Matrix<G> {
        Matrix { field: g.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.field != o.field {
            return Err(Error::MixedFields);
        }
        if self.cols != o.rows {
            return Err(Error::ShapeMismatch(format!("{}x{} times {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !f.is_zero(b) {
                        let s = f.add(out.get(i, j), &f.mul(a, b));
                        out.set(i, j, s);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if x.len() != self.cols {
            return Err(Error::ShapeMismatch(format!("vector of length {} for {} columns", x.len(), self.cols)));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| (0..self.cols).fold(f.zero(), |acc, j| f.add(&acc, &f.mul(self.get(i, j), &x[j]))))
            .collect())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(Error::ShapeMismatch("sum of differently shaped matrices".into()));
        }
        let f = &self.field;
        let data = self.data.iter().zip(&o.data).map(|(a, b)| f.add(a, b)).collect();
        Ok(Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.map(|x| self.field.mul(x, c))
    }

    /// Columns side by side.
    pub fn hstack(&self, o: &Self) -> Result<Self> {
        if self.rows != o.rows {
            return Err(Error::ShapeMismatch("hstack row counts".into()));
        }
        let mut cols = self.to_cols();
        cols.extend(o.to_cols());
        Self::from_cols(&self.field, self.rows, &cols)
    }

    /// Rows on top of each other.
    pub fn vstack(&self, o: &Self) -> Result<Self> {
        if self.cols != o.cols {
            return Err(Error::ShapeMismatch("vstack column counts".into()));
        }
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Self::new(&self.field, self.rows + o.rows, self.cols, data)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let data = rows.iter().flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone())).collect();
        Matrix { field: self.field.clone(), rows: rows.len(), cols: cols.len(), data }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &F::Elem) {
        for j in 0..self.cols {
            let x = self.field.mul(self.get(i, j), c);
            self.set(i, j, x);
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &F::Elem) {
        for i in 0..self.rows {
            let x = self.field.mul(self.get(i, j), c);
            self.set(i, j, x);
        }
    }

    /// `row[dst] += c·row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: &F::Elem) {
        if self.field.is_zero(c) {
            return;
        }
        for j in 0..self.cols {
            let x = self.field.add(self.get(dst, j), &self.field.mul(c, self.get(src, j)));
            self.set(dst, j, x);
        }
    }

    /// `col[dst] += c·col[src]`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, c: &F::Elem) {
        if self.field.is_zero(c) {
            return;
        }
        for i in 0..self.rows {
            let x = self.field.add(self.get(i, dst), &self.field.mul(c, self.get(i, src)));
            self.set(i, dst, x);
        }
    }

    pub fn det(&self) -> Result<F::Elem> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let f = &self.field;
        let mut m = self.clone();
        let mut det = f.one();
        for k in 0..self.rows {
            let Some(p) = (k..self.rows).find(|&i| !f.is_zero(m.get(i, k))) else {
                return Ok(f.zero());
            };
            if p != k {
                m.swap_rows(p, k);
                det = f.neg(&det);
            }
            let piv = m.get(k, k).clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv).expect("nonzero pivot");
            for i in k + 1..self.rows {
                let c = f.neg(&f.mul(m.get(i, k), &inv));
                m.add_row_multiple(i, k, &c);
            }
        }
        Ok(det)
    }

    pub fn inv(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!("inverse of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(&self.field, n))?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(r.submatrix(&(0..n).collect_vec(), &(n..2 * n).collect_vec()))
    }

    /// Reduced row echelon form and its pivot columns (0-based).
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            m.scale_row(r, &inv);
            for i in 0..self.rows {
                if i != r && !f.is_zero(m.get(i, c)) {
                    let c2 = f.neg(m.get(i, c));
                    m.add_row_multiple(i, r, &c2);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{x : Ax = 0}` as the columns of the result, one per free
    /// column of the RREF.
    pub fn kernel(&self) -> Self {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(f, self.cols, free.len());
        for (t, &c) in free.iter().enumerate() {
            k.set(c, t, f.one());
            for (i, &p) in pivots.iter().enumerate() {
                k.set(p, t, f.neg(r.get(i, c)));
            }
        }
        k
    }

    /// The nonzero rows of the RREF.
    pub fn row_space_basis(&self) -> (Self, Vec<usize>) {
        let (r, pivots) = self.rref();
        let rows = (0..pivots.len()).collect_vec();
        let cols = (0..self.cols).collect_vec();
        (r.submatrix(&rows, &cols), pivots)
    }

    /// Solve `A x = b`; `None` if inconsistent. Free variables are set to 0.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        let bm = Self::from_cols(f, self.rows, &[b.to_vec()]).ok()?;
        let (r, pivots) = self.hstack(&bm).ok()?.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// The matrix of the induced map on `ℓ`-th exterior powers: entry
    /// `(I, J)` is the `I×J` minor, subsets in lexicographic order.
    pub fn minors_matrix(&self, l: usize) -> Result<Self> {
        if l == 0 || l > self.rows.min(self.cols) {
            return Err(Error::BadExponent(l));
        }
        let rs = (0..self.rows).combinations(l).collect_vec();
        let cs = (0..self.cols).combinations(l).collect_vec();
        let mut data = Vec::with_capacity(rs.len() * cs.len());
        for ri in &rs {
            for ci in &cs {
                data.push(self.submatrix(ri, ci).det()?);
            }
        }
        Self::new(&self.field, rs.len(), cs.len(), data)
    }
}

impl<F: ValuedField> Matrix<F> {
    /// Smallest entry valuation (`None` for the zero matrix).
    pub fn min_val(&self) -> Option<F::Value> {
        self.data.iter().filter_map(|x| self.field.val(x)).min()
    }

    pub fn is_integral(&self) -> bool {
        self.min_val().is_none_or(|v| v >= self.field.zero_value())
    }

    /// Membership in `GL_n(O)`.
    pub fn is_unit_matrix(&self) -> bool {
        if !self.is_square() || !self.is_integral() {
            return false;
        }
        let det = self.det().expect("square");
        self.field.val(&det) == Some(self.field.zero_value())
    }

    /// Smith normal form with minimal-valuation pivoting, ties broken by
    /// the lowest `(row, column)`.
    pub fn smith_normal_form(&self) -> Snf<F> {
        let f = &self.field;
        let (m, n) = (self.rows, self.cols);
        let mut u = Self::identity(f, m);
        let mut v = Self::identity(f, n);
        let mut d = self.clone();
        let mut exponents = Vec::new();
        for k in 0..m.min(n) {
            let mut best: Option<(F::Value, usize, usize)> = None;
            for i in k..m {
                for j in k..n {
                    if let Some(val) = f.val(d.get(i, j)) {
                        if best.as_ref().is_none_or(|(b, _, _)| val < *b) {
                            best = Some((val, i, j));
                        }
                    }
                }
            }
            let Some((val, pi, pj)) = best else { break };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);
            let s = f.div(&f.monomial(&val), d.get(k, k));
            d.scale_row(k, &s);
            u.scale_row(k, &s);
            let pinv = f.inv(d.get(k, k)).expect("nonzero pivot");
            for i in k + 1..m {
                if !f.is_zero(d.get(i, k)) {
                    let c = f.neg(&f.mul(d.get(i, k), &pinv));
                    d.add_row_multiple(i, k, &c);
                    u.add_row_multiple(i, k, &c);
                }
            }
            for j in k + 1..n {
                if !f.is_zero(d.get(k, j)) {
                    let c = f.neg(&f.mul(d.get(k, j), &pinv));
                    d.add_col_multiple(j, k, &c);
                    v.add_col_multiple(j, k, &c);
                }
            }
            exponents.push(val);
        }
        Snf { u, d, v, exponents }
    }
}

impl MatrixK {
    /// Build from scalars, rejecting entries from another field.
    pub fn from_scalars(field: &FieldDescriptor, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        if rows.iter().flatten().any(|x| x.field() != field) {
            return Err(Error::MixedFields);
        }
        Self::from_rows(field, rows)
    }

    /// Entrywise residues; fails with `NotIntegral` unless all entries lie in `O`.
    pub fn residue(&self) -> Result<ResMatrix> {
        let k = self.field.residue_field();
        let data = self.data.iter().map(|x| x.residue().map(|r| r.value())).collect::<Result<Vec<_>>>()?;
        Matrix::new(k, self.rows, self.cols, data)
    }

    /// Entrywise canonical lifts of a residue matrix.
    pub fn lift(field: &FieldDescriptor, r: &ResMatrix) -> Self {
        r.map_into(field, |x| Scalar::lift_residue(field, *x))
    }

    /// Convenience constructor from integer entries.
    pub fn from_ints(field: &FieldDescriptor, rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(field, x)).collect()).collect();
        Self::from_rows(field, rows).expect("rectangular")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn padic(p: u64) -> FieldDescriptor {
        FieldDescriptor::padic(p).unwrap()
    }

    #[test]
    fn determinants() {
        let k = padic(2);
        assert!(MatrixK::identity(&k, 3).det().unwrap().is_one());
        let a = MatrixK::from_ints(&k, &[&[2, 1], &[0, 2]]);
        assert_eq!(a.det().unwrap(), Scalar::from_int(&k, 4));
        let s = MatrixK::from_ints(&k, &[&[1, 2], &[2, 4]]);
        assert_eq!(s.inv(), Err(Error::Singular));
    }

    #[test]
    fn inverse_round_trip() {
        let k = padic(3);
        let a = MatrixK::from_ints(&k, &[&[2, 1, 0], &[1, 3, 1], &[0, 1, 5]]);
        let ai = a.inv().unwrap();
        assert_eq!(a.mul(&ai).unwrap(), MatrixK::identity(&k, 3));
    }

    #[test]
    fn snf_example() {
        let k = padic(2);
        let a = MatrixK::from_ints(&k, &[&[2, 1], &[0, 2]]);
        let s = a.smith_normal_form();
        assert_eq!(s.exponents, vec![0, 2]);
        assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d);
        assert_eq!(s.d, MatrixK::from_ints(&k, &[&[1, 0], &[0, 4]]));
        assert!(s.u.is_unit_matrix() && s.v.is_unit_matrix());
    }

    #[test]
    fn snf_laurent_scalar_matrix() {
        let k = FieldDescriptor::laurent(2).unwrap();
        let t = Scalar::from_poly(&k, vec![0, 1]);
        let a = MatrixK::diagonal(&k, &[t.clone(), t.clone()]);
        let s = a.smith_normal_form();
        assert_eq!(s.d, a);
        assert_eq!(s.exponents, vec![1, 1]);
    }

    #[test]
    fn unit_matrix_tests() {
        let k = padic(5);
        assert!(MatrixK::from_ints(&k, &[&[1, 1], &[0, 1]]).is_unit_matrix());
        let p = Scalar::from_int(&k, 5);
        let a = MatrixK::diagonal(&k, &[p.clone(), p.inv().unwrap()]);
        assert!(!a.is_unit_matrix());
        assert!(!MatrixK::from_ints(&k, &[&[1, 0], &[0, 5]]).is_unit_matrix());
    }

    #[test]
    fn rref_examples() {
        let k = padic(3);
        let a = MatrixK::from_ints(&k, &[&[1, 2, 0], &[0, 0, 1]]);
        assert_eq!(a.rref(), (a.clone(), vec![0, 2]));
        let z = MatrixK::zeros(&k, 2, 2);
        assert_eq!(z.rref(), (z.clone(), vec![]));
        let b = MatrixK::from_ints(&k, &[&[2, 4], &[1, 2]]);
        assert_eq!(b.rref(), (MatrixK::from_ints(&k, &[&[1, 2], &[0, 0]]), vec![0]));
    }

    #[test]
    fn minors_of_diagonal() {
        let k = padic(3);
        let a = MatrixK::from_ints(&k, &[&[1, 0, 0], &[0, 3, 0], &[0, 0, 9]]);
        let m = a.minors_matrix(2).unwrap();
        assert_eq!(m, MatrixK::from_ints(&k, &[&[3, 0, 0], &[0, 9, 0], &[0, 0, 27]]));
        assert_eq!(a.minors_matrix(3).unwrap().get(0, 0), &a.det().unwrap());
        assert_eq!(a.minors_matrix(4), Err(Error::BadExponent(4)));
    }

    #[test]
    fn kernel_and_solve() {
        let k = padic(5);
        let a = MatrixK::from_ints(&k, &[&[1, 2, 3], &[2, 4, 7]]);
        let ker = a.kernel();
        assert_eq!(ker.cols(), 1);
        assert!(a.mul(&ker).unwrap().is_zero());
        let b = vec![Scalar::from_int(&k, 1), Scalar::from_int(&k, 3)];
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), b);
    }
}
