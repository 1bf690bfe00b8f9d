//! Valued vector spaces: separating bases, orbits, maximally close vectors.
use acvf::field::{FieldDescriptor, Scalar};
use acvf::matrix::MatrixK;
use acvf::vvspace::NormPresentation;
use num_rational::Rational64;

fn main() -> acvf::Result<()> {
    let f = FieldDescriptor::padic(3)?;
    let int = |n| Scalar::from_int(&f, n);
    let a = MatrixK::from_rows(&f, vec![vec![int(1), int(1)], vec![int(0), int(3)], vec![int(1), int(0)]])?;
    let p = NormPresentation::new(a, vec![Rational64::new(1, 2), Rational64::from_integer(0), Rational64::new(1, 3)])?;
    let sep = p.separating_basis();
    println!("separating basis {:?} with delta {:?}", sep.w, sep.delta);
    println!("verified separating: {}", p.is_separating(&sep.w, &sep.delta)?);
    println!("orbit representatives {:?}", p.orbit_reps().representatives);

    let std = NormPresentation::standard(&f, 2);
    let (v, value) = std.max_close(&[int(1), int(0)], &[vec![int(1), int(1)]])?;
    println!("closest to (1,0) along (1,1): shift {v:?}, value {value}");
    let x: Vec<Scalar> = [int(1), int(0)].iter().zip(&v).map(|(a, b)| a + b).collect();
    println!("complement line perpendicular: {}", std.perp_check(&[x], &[vec![int(1), int(1)]])?);
    Ok(())
}
