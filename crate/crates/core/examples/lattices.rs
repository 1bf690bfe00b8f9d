//! Canonical bases, lattice operations and generic samples.
use acvf::field::FieldDescriptor;
use acvf::lattice::Lattice;
use acvf::random;
use acvf::rng::seeded;

fn main() -> acvf::Result<()> {
    let f = FieldDescriptor::padic(3)?;
    let mut rng = seeded(7);
    let l = random::lattice(&f, &mut rng, 3, -1, 2);
    let g = random::unit_matrix(&f, &mut rng, 3);
    let c = l.canon();
    println!("canonical basis {c:?}");
    println!("same lattice after a unit change of basis: {}", Lattice::new(l.basis().mul(&g)?)?.canon() == c);

    let a = Lattice::diagonal(&f, &[1, 2, 0]);
    let b = Lattice::diagonal(&f, &[2, 0, 1]);
    let (j, m) = (a.join(&b)?, a.meet(&b)?);
    println!("join {j:?}\nmeet {m:?}");
    println!("det vals: join {} + meet {} = {} + {}", j.det_val(), m.det_val(), a.det_val(), b.det_val());
    println!("dual of join equals meet of duals: {}", j.dual() == a.dual().meet(&b.dual())?);
    println!("second wedge {:?}", a.wedge(2)?);
    for v in c.generic_sample(2, 11, 3, 64)? {
        println!("generic point {v:?}, residue coords {:?}", c.res_coords(&v)?);
    }
    Ok(())
}
