//! The generic type of a lattice at degree 2, checked on sampled points.
use acvf::coding::{lattice_generic_type, monomials_up_to, type_code};
use acvf::field::{FieldDescriptor, Scalar};
use acvf::lattice::Lattice;

fn main() -> acvf::Result<()> {
    let f = FieldDescriptor::padic(101)?;
    let lat = Lattice::diagonal(&f, &[0, 1]);
    let pres = lattice_generic_type(lat.basis(), 2)?;
    let mons = monomials_up_to(2, 2);
    let q: Vec<Scalar> = (0..mons.len() as i64).map(|i| Scalar::from_int(&f, i + 1)).collect();
    println!("monomials {mons:?}");
    println!("generic value of Q: {}", pres.val(&q)?);
    for seed in 0..3 {
        let v = lat.generic_sample(1, seed, 3, 64)?.remove(0);
        let value = mons.iter().zip(&q).fold(Scalar::zero(&f), |acc, (mu, c)| {
            let term = mu.iter().zip(&v).fold(c.clone(), |t, (&e, x)| &t * &x.pow(e as i64));
            &acc + &term
        });
        println!("Q at a sampled point has value {}", value.val());
    }
    println!("type code has {} entries", type_code(&pres)?.entries().len());
    Ok(())
}
