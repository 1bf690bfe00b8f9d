//! Definable submodules of K^n: standard form, membership and geometric code.
use acvf::field::{FieldDescriptor, Scalar};
use acvf::matrix::MatrixK;
use acvf::submodule::{module_code, Cut, ModulePresentation};

fn main() -> acvf::Result<()> {
    let f = FieldDescriptor::padic(2)?;
    let int = |n| Scalar::from_int(&f, n);
    // val(x1 + x2) >= 1, val(x2) > -1, x3 free
    let a = MatrixK::from_rows(&f, vec![vec![int(1), int(1), int(0)], vec![int(0), int(1), int(0)]])?;
    let p = ModulePresentation::from_constraints(a, vec![Cut::ge(1), Cut::gt(-1)])?;
    let sf = p.classify()?;
    println!("signature (K, O, M) = {:?}, shifts {:?}, types {:?}", sf.signature, sf.shifts, sf.types);
    for x in [[int(1), int(1), int(5)], [int(1), int(3), int(0)], [Scalar::from_frac(&f, 1, 2)?, int(0), int(0)]] {
        println!("{:?}: presentation {} standard form {}", x, p.member(&x)?, sf.member(&x)?);
    }
    println!("code {:?}", module_code(&p)?);
    Ok(())
}
