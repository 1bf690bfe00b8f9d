//! Exact arithmetic in Q_p and F_q((t)): valuations, residues, digits.
use acvf::field::{FieldDescriptor, Scalar};

fn main() -> acvf::Result<()> {
    let q3 = FieldDescriptor::parse("padic:3")?;
    let x = Scalar::from_frac(&q3, 9, 2)?;
    let y = Scalar::from_frac(&q3, -1, 2)?;
    println!("in {q3}: val({x}) = {}, res({y}) = {:?}", x.val(), y.residue()?);
    println!("digits of {y} from 0 to 6: {:?}", y.digits(0, 6));
    println!("{x} * {y} = {}, val {}", &x * &y, (&x * &y).val());

    let f4 = FieldDescriptor::parse("laurent:4")?;
    let t = Scalar::uniformizer_pow(&f4, 1);
    let u = Scalar::from_ratfunc(&f4, vec![1, 1], vec![1, 2])?;
    println!("in {f4}: u = {u}, val(t^3 u) = {}", (&t.pow(3) * &u).val());
    println!("digits of u from 0 to 5: {:?}", u.digits(0, 5));
    Ok(())
}
