//! Definable subsets of the line as canonical swiss cheeses.
use acvf::cheese::{beta, Ball, OneVarSet, SwissCheese};
use acvf::field::{FieldDescriptor, Scalar};
use num_rational::Rational64;

fn main() -> acvf::Result<()> {
    let f = FieldDescriptor::padic(5)?;
    let int = |n| Scalar::from_int(&f, n);
    println!("smallest ball containing 1 and 26: {:?}", beta(&int(1), &int(26))?);

    let o = Ball::closed(&int(0), Rational64::from_integer(0));
    let m = Ball::open(&int(0), Rational64::from_integer(0));
    let annulus = OneVarSet::new(vec![SwissCheese::new(o.clone(), vec![m])]);
    let near_two = OneVarSet::ball(Ball::closed(&int(2), Rational64::from_integer(1)));
    let s = annulus.difference(&near_two);
    println!("units away from 2 + 5Z_5: {:?}", s.cheeses());
    println!(
        "contains 1: {}, 7: {}, 5: {}",
        s.contains_point(&int(1)),
        s.contains_point(&int(7)),
        s.contains_point(&int(5))
    );
    println!("complement {:?}", s.complement().cheeses());
    println!("union with 2 + 5Z_5 is the annulus again: {}", s.union(&near_two).set_eq(&annulus));
    println!("generic point {}", s.generic_sample(&f, 3, 4)?);
    Ok(())
}
