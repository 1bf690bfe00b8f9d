//! Reductions between sorts: subspaces, lines through Plücker coordinates,
//! and lines into the flag sort.
use acvf::coding::{plucker_to_rnl, rn1_to_st, rnl_to_plucker, st_to_rn1, subspace_code};
use acvf::field::{FieldDescriptor, Scalar};
use acvf::lattice::Lattice;
use acvf::submodule::RnlElement;

fn main() -> acvf::Result<()> {
    let f = FieldDescriptor::laurent(4)?;
    let t = Scalar::uniformizer_pow(&f, 1);
    let one = Scalar::one(&f);
    let sc = subspace_code(&f, 3, &[vec![one.clone(), t.clone(), Scalar::zero(&f)]]);
    println!("subspace code pivots {:?}", sc.pivots);

    let lat = Lattice::diagonal(&f, &[0, 1, 2]);
    let plane = RnlElement::from_rows(lat.clone(), &[vec![1, 0, 2], vec![0, 1, 3]])?;
    let pc = rnl_to_plucker(&plane)?;
    println!("plane coded as a line in the second wedge: {:?}", pc.line);
    println!("decodes: {}", plucker_to_rnl(&pc)? == plane);

    let line = RnlElement::from_rows(lat, &[vec![0, 1, 1]])?;
    let st = rn1_to_st(&line)?;
    println!("line coded through the flag sort: {:?}", st.path);
    println!("decodes: {}", st_to_rn1(&st)? == line);
    Ok(())
}
