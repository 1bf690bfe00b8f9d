//! Codes for unordered tuples and finite subsets.
use acvf::coding::{finite_set_injection, sym_code, sym_decode};
use acvf::field::{FieldDescriptor, Scalar};

fn main() -> acvf::Result<()> {
    let f = FieldDescriptor::padic(5)?;
    let int = |n| Scalar::from_int(&f, n);
    let pts = vec![vec![int(3)], vec![Scalar::from_frac(&f, 1, 5)?], vec![int(3)]];
    let code = sym_code(&f, &pts)?;
    println!("code of {{3, 1/5, 3}}: {:?}", code.coefficients);
    println!("decoded: {:?}", sym_decode(&f, &code)?);

    let s = [int(0), int(1), int(5), int(30)];
    let inj = finite_set_injection(&f, &s, 1, 3)?;
    for p in &inj.pairs {
        println!("ball {:?} generic {}", p.ball, p.generic);
    }
    for (x, tags) in &inj.table {
        println!("{x} -> {tags:?}");
    }
    Ok(())
}
