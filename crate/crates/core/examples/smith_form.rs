//! Smith normal form over the valuation ring, with its certificate.
use acvf::field::{FieldDescriptor, Scalar};
use acvf::matrix::MatrixK;

fn main() -> acvf::Result<()> {
    let f = FieldDescriptor::padic(2)?;
    let int = |n| Scalar::from_int(&f, n);
    let a = MatrixK::from_rows(
        &f,
        vec![vec![int(2), int(4), int(6)], vec![int(8), int(12), int(20)], vec![int(1), int(3), int(5)]],
    )?;
    let s = a.smith_normal_form();
    println!("exponents {:?}", s.exponents);
    println!("U A V == D: {}", s.u.mul(&a)?.mul(&s.v)? == s.d);
    println!("U, V in GL_n(O): {} {}", s.u.is_unit_matrix(), s.v.is_unit_matrix());
    println!("det val {:?}, rank {}", a.det()?.ord(), a.rank());
    Ok(())
}
