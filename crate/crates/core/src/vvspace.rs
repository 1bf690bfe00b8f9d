//! Valued `K`-vector spaces `val_V(x) = min_i (val((A x)_i) + γ_i)`.
//!
//! Everything is computed from the unit-ball lattices
//! `L_c = {x : val_V(x) ≥ c}`. Values of `val_V` lie in the finitely many
//! cosets `frac(γ_i) + Z`, so `val_V` is determined by `L_c` for `c` in a
//! single period, and between `L_{r_1}` and `π L_{r_1}` these lattices
//! form a flag in `res L_{r_1}`.

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar, Val};
use crate::lattice::Lattice;
use crate::matrix::{MatrixK, ResMatrix};
use crate::submodule::{CoordType, ModuleStandardForm};

#[derive(Debug, Clone, PartialEq)]
pub struct NormPresentation {
    pub a: MatrixK,
    pub shifts: Vec<Rational64>,
}

/// Columns `w_i` of `w` with `val_V(W x) = min_i (val(x_i) + δ_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparatingBasis {
    pub w: MatrixK,
    pub delta: Vec<Rational64>,
}

/// Orbit representatives of `Γ(K) = Z` on `Γ(V)`, with the filtration by
/// convex classes. Over a rank-one value group there is a single class, so
/// the filtration is `0 ⊂ V`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitDecomposition {
    pub representatives: Vec<Rational64>,
    pub filtration: Vec<MatrixK>,
    pub classes: Vec<Vec<usize>>,
}

fn frac(r: Rational64) -> Rational64 {
    r - r.floor()
}

fn ceil_int(r: Rational64) -> i64 {
    r.ceil().to_integer()
}

impl NormPresentation {
    pub fn new(a: MatrixK, shifts: Vec<Rational64>) -> Result<Self> {
        if a.rows() != shifts.len() {
            return Err(Error::ShapeMismatch(format!("{} rows but {} shifts", a.rows(), shifts.len())));
        }
        if a.rank() != a.cols() {
            return Err(Error::InvalidArgument("norm matrix must have full column rank".into()));
        }
        Ok(NormPresentation { a, shifts })
    }

    /// The standard norm `min_i val(x_i)` on `K^m`.
    pub fn standard(field: &FieldDescriptor, m: usize) -> Self {
        NormPresentation { a: MatrixK::identity(field, m), shifts: vec![Rational64::zero(); m] }
    }

    /// `min_i (val(x_i) + δ_i)`.
    pub fn diagonal(field: &FieldDescriptor, delta: &[Rational64]) -> Self {
        NormPresentation { a: MatrixK::identity(field, delta.len()), shifts: delta.to_vec() }
    }

    pub fn field(&self) -> &FieldDescriptor {
        self.a.field()
    }

    pub fn dim(&self) -> usize {
        self.a.cols()
    }

    pub fn val(&self, x: &[Scalar]) -> Result<Val> {
        let ax = self.a.mul_vec(x)?;
        Ok(ax.iter().zip(&self.shifts).map(|(y, g)| y.val().shift(*g)).min().unwrap_or(Val::Infinite))
    }

    /// The norm restricted to the column span of `basis`, in its coordinates.
    pub fn restrict(&self, basis: &MatrixK) -> Result<Self> {
        Self::new(self.a.mul(basis)?, self.shifts.clone())
    }

    /// Candidate values in `[0, 1)`: the distinct fractional parts of the shifts.
    fn candidates(&self) -> Vec<Rational64> {
        let mut c: Vec<Rational64> = self.shifts.iter().map(|g| frac(*g)).collect();
        c.sort();
        c.dedup();
        c
    }

    /// `L_c = {x : val_V(x) ≥ c}`.
    pub fn ball(&self, c: Rational64) -> Lattice {
        let field = self.field().clone();
        let mut scaled = self.a.clone();
        for (i, g) in self.shifts.iter().enumerate() {
            let k = ceil_int(c - g);
            scaled.scale_row(i, &Scalar::uniformizer_pow(&field, -k));
        }
        let snf = scaled.smith_normal_form();
        let d: Vec<Scalar> = snf.exponents.iter().map(|&a| Scalar::uniformizer_pow(&field, -a)).collect();
        let basis = snf.v.mul(&MatrixK::diagonal(&field, &d)).expect("square");
        Lattice::new(basis).expect("full column rank").canon()
    }

    /// The attained orbit representatives in `[0, 1)`, ascending.
    pub fn attained(&self) -> Vec<Rational64> {
        let c = self.candidates();
        if self.dim() == 0 {
            return Vec::new();
        }
        let balls: Vec<Lattice> = c.iter().map(|&r| self.ball(r)).collect();
        let bottom = balls[0].scale(1);
        (0..c.len())
            .filter(|&j| {
                let next = if j + 1 < c.len() { &balls[j + 1] } else { &bottom };
                balls[j] != *next
            })
            .map(|j| c[j])
            .collect()
    }

    pub fn orbit_reps(&self) -> OrbitDecomposition {
        let field = self.field();
        let m = self.dim();
        OrbitDecomposition {
            representatives: self.attained(),
            filtration: vec![MatrixK::zeros(field, m, 0), MatrixK::identity(field, m)],
            classes: vec![(0..self.shifts.len()).collect()],
        }
    }

    /// A separating basis from the flag of unit balls: residue vectors
    /// adapted to the flag, deepest level first, lifted through the top
    /// ball; each gets the level it first appears at as its shift.
    pub fn separating_basis(&self) -> SeparatingBasis {
        let field = self.field().clone();
        let m = self.dim();
        let reps = self.attained();
        if m == 0 {
            return SeparatingBasis { w: MatrixK::zeros(&field, 0, 0), delta: Vec::new() };
        }
        let top = self.ball(reps[0]);
        let k = field.residue_field().clone();
        let levels: Vec<ResMatrix> = reps
            .iter()
            .map(|&r| {
                let ball = self.ball(r);
                let cols = ball.basis().to_cols();
                let rows: Vec<Vec<u64>> = cols
                    .iter()
                    .map(|c| top.res_coords(c).expect("nested balls").iter().map(|x| x.value()).collect())
                    .collect();
                ResMatrix::from_rows(&k, rows).expect("square").row_space_basis().0
            })
            .collect();
        let mut chosen: Vec<(Vec<u64>, Rational64)> = Vec::new();
        for (j, level) in levels.iter().enumerate().rev() {
            for row in level.to_rows() {
                let mut rows: Vec<Vec<u64>> = chosen.iter().map(|(v, _)| v.clone()).collect();
                rows.push(row.clone());
                if ResMatrix::from_rows(&k, rows).expect("rows").rank() == chosen.len() + 1 {
                    chosen.push((row, reps[j]));
                }
            }
        }
        let mut order: Vec<usize> = (0..chosen.len()).collect();
        order.sort_by_key(|&i| chosen[i].1);
        let cols: Vec<Vec<Scalar>> = order.iter().map(|&i| top.lift_res(&chosen[i].0).expect("dimension")).collect();
        let delta = order.iter().map(|&i| chosen[i].1).collect();
        SeparatingBasis { w: MatrixK::from_cols(&field, m, &cols).expect("square"), delta }
    }

    /// Whether `val_V(W x) = min_i (val(x_i) + δ_i)` for every `x`, decided
    /// by comparing unit balls over one period of candidate values.
    pub fn is_separating(&self, w: &MatrixK, delta: &[Rational64]) -> Result<bool> {
        if w.cols() != delta.len() || w.rows() != self.dim() {
            return Err(Error::ShapeMismatch("basis and shifts".into()));
        }
        if w.det()?.is_zero() {
            return Ok(false);
        }
        let pulled = self.restrict(w)?;
        let diag = NormPresentation::diagonal(self.field(), delta);
        let mut cs = pulled.candidates();
        cs.extend(diag.candidates());
        cs.sort();
        cs.dedup();
        Ok(cs.iter().all(|&c| pulled.ball(c) == diag.ball(c)))
    }

    /// An element of `a + span(Vsub)` of maximal value, and that value.
    pub fn max_close(&self, a: &[Scalar], vsub: &[Vec<Scalar>]) -> Result<(Vec<Scalar>, Rational64)> {
        let field = self.field().clone();
        let m = self.dim();
        let sub = if vsub.is_empty() {
            MatrixK::zeros(&field, 0, m)
        } else {
            MatrixK::from_rows(&field, vsub.to_vec())?.row_space_basis().0
        };
        let s = sub.rows();
        let span = sub.vstack(&MatrixK::from_rows(&field, vec![a.to_vec()])?)?;
        if span.rank() == s {
            return Err(Error::InSubspace);
        }
        let sb = span.transpose();
        let sep = self.restrict(&sb)?.separating_basis();
        let mut best: Option<(Rational64, usize)> = None;
        for i in 0..=s {
            let lam = sep.w.get(s, i);
            if let Some(v) = lam.ord() {
                let score = sep.delta[i] - Rational64::from_integer(v);
                if best.is_none_or(|(b, _)| score > b) {
                    best = Some((score, i));
                }
            }
        }
        let (value, i) = best.expect("a is outside the subspace");
        let lam = sep.w.get(s, i).clone();
        let y: Vec<Scalar> = sep.w.col(i).iter().map(|c| c / &lam).collect();
        let x = sb.mul_vec(&y)?;
        let v: Vec<Scalar> = x.iter().zip(a).map(|(xi, ai)| xi - ai).collect();
        Ok((v, value))
    }

    /// Whether the spans of `u` and `w` (given by rows) are perpendicular.
    pub fn perp_check(&self, u: &[Vec<Scalar>], w: &[Vec<Scalar>]) -> Result<bool> {
        let field = self.field().clone();
        let m = self.dim();
        let basis = |rows: &[Vec<Scalar>]| -> Result<MatrixK> {
            if rows.is_empty() {
                return Ok(MatrixK::zeros(&field, m, 0));
            }
            Ok(MatrixK::from_rows(&field, rows.to_vec())?.row_space_basis().0.transpose())
        };
        let (ub, wb) = (basis(u)?, basis(w)?);
        let both = ub.hstack(&wb)?;
        if both.rank() != ub.cols() + wb.cols() {
            return Err(Error::NotDisjoint);
        }
        let su = self.restrict(&ub)?.separating_basis();
        let sw = self.restrict(&wb)?.separating_basis();
        let cols = ub.mul(&su.w)?.hstack(&wb.mul(&sw.w)?)?;
        let mut delta = su.delta;
        delta.extend(sw.delta);
        let sub = self.restrict(&cols)?;
        sub.is_separating(&MatrixK::identity(&field, cols.cols()), &delta)
    }

    /// One lattice `{x : val_V(x) ≥ r}` per attained representative `r`.
    pub fn vvs_code(&self) -> Vec<ModuleStandardForm> {
        let m = self.dim();
        self.attained()
            .into_iter()
            .map(|r| ModuleStandardForm {
                g: self.ball(r).basis().clone(),
                signature: (0, m, 0),
                shifts: vec![0; m],
                types: vec![CoordType::O; m],
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn padic(p: u64) -> FieldDescriptor {
        FieldDescriptor::padic(p).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn ints(k: &FieldDescriptor, v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_int(k, x)).collect()
    }

    #[test]
    fn norm_values() {
        let k = padic(3);
        let p = NormPresentation::diagonal(&k, &[r(0, 1), r(1, 2)]);
        assert_eq!(p.val(&ints(&k, &[1, 3])).unwrap(), Val::int(0));
        assert_eq!(p.val(&ints(&k, &[0, 0])).unwrap(), Val::Infinite);
        let a = MatrixK::from_ints(&k, &[&[1, 0], &[1, 3]]);
        let p = NormPresentation::new(a, vec![r(0, 1); 2]).unwrap();
        let x = vec![Scalar::one(&k), Scalar::from_frac(&k, -1, 3).unwrap()];
        assert_eq!(p.val(&x).unwrap(), Val::int(0));
    }

    #[test]
    fn orbit_examples() {
        let k = padic(3);
        let p = NormPresentation::diagonal(&k, &[r(0, 1), r(1, 2)]);
        assert_eq!(p.orbit_reps().representatives, vec![r(0, 1), r(1, 2)]);
        assert_eq!(NormPresentation::standard(&k, 3).orbit_reps().representatives, vec![r(0, 1)]);
        let a = MatrixK::from_ints(&k, &[&[1, 0], &[0, 1], &[1, 1]]);
        let p = NormPresentation::new(a, vec![r(0, 1), r(1, 3), r(1, 2)]).unwrap();
        assert!(p.orbit_reps().representatives.len() <= 2);
    }

    #[test]
    fn separating_examples() {
        let k = padic(3);
        let a = MatrixK::from_ints(&k, &[&[1, 0], &[1, 3]]);
        let p = NormPresentation::new(a, vec![r(0, 1); 2]).unwrap();
        let s = p.separating_basis();
        let third = Scalar::from_frac(&k, 1, 3).unwrap();
        let expected = MatrixK::diagonal(&k, &[Scalar::one(&k), third]);
        assert_eq!(s.w, expected);
        assert_eq!(s.delta, vec![r(0, 1); 2]);
        assert!(p.is_separating(&s.w, &s.delta).unwrap());

        let p = NormPresentation::diagonal(&k, &[r(0, 1), r(1, 2)]);
        let s = p.separating_basis();
        assert_eq!(s.w, MatrixK::identity(&k, 2));
        assert_eq!(s.delta, vec![r(0, 1), r(1, 2)]);
        assert!(p.is_separating(&MatrixK::from_ints(&k, &[&[1, 0], &[1, 1]]), &s.delta).unwrap());
        assert!(!p.is_separating(&MatrixK::from_ints(&k, &[&[1, 1], &[0, 1]]), &s.delta).unwrap());
    }

    #[test]
    fn max_close_examples() {
        let k = padic(3);
        let p = NormPresentation::standard(&k, 2);
        let c = Scalar::from_int(&k, 9);
        let (v, val) = p.max_close(&[Scalar::zero(&k), c], &[ints(&k, &[1, 0])]).unwrap();
        assert_eq!(val, r(2, 1));
        assert_eq!(v, ints(&k, &[0, 0]));
        let (v, val) = p.max_close(&ints(&k, &[1, 0]), &[ints(&k, &[1, 1])]).unwrap();
        assert_eq!(val, r(0, 1));
        let x: Vec<Scalar> = v.iter().zip(ints(&k, &[1, 0])).map(|(a, b)| a + &b).collect();
        assert_eq!(p.val(&x).unwrap(), Val::int(0));
        assert_eq!(p.max_close(&ints(&k, &[2, 2]), &[ints(&k, &[1, 1])]), Err(Error::InSubspace));
    }

    #[test]
    fn perpendicularity() {
        let k = padic(3);
        let p = NormPresentation::standard(&k, 2);
        assert!(p.perp_check(&[ints(&k, &[1, 0])], &[ints(&k, &[0, 1])]).unwrap());
        assert!(p.perp_check(&[ints(&k, &[1, 0])], &[ints(&k, &[1, 1])]).unwrap());
        assert!(!p.perp_check(&[ints(&k, &[1, 0])], &[ints(&k, &[1, 3])]).unwrap());
        assert_eq!(p.perp_check(&[ints(&k, &[1, 0])], &[ints(&k, &[2, 0])]), Err(Error::NotDisjoint));
    }

    #[test]
    fn codes() {
        let k = padic(3);
        let a = MatrixK::from_ints(&k, &[&[1, 0], &[1, 3]]);
        let p = NormPresentation::new(a, vec![r(0, 1); 2]).unwrap();
        let code = p.vvs_code();
        assert_eq!(code.len(), 1);
        let third = Scalar::from_frac(&k, 1, 3).unwrap();
        assert_eq!(code[0].g, MatrixK::diagonal(&k, &[Scalar::one(&k), third]));
        assert_eq!(NormPresentation::diagonal(&k, &[r(0, 1), r(1, 2)]).vvs_code().len(), 2);
    }
}
