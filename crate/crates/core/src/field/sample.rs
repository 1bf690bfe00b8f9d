use rand::Rng;

use super::{FieldDescriptor, Scalar};
use crate::error::{Error, Result};
use crate::rng::seeded;

/// What the leading residue digit of a sample must satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResidueTarget {
    Exact(u64),
    Avoid(Vec<u64>),
}

/// Draw `x = π^shift · (r_0 + r_1 π + … + r_depth π^depth)` where `r_0`
/// meets the target and the later digits are uniform.
///
/// With a nonzero exact target `val(x) = shift` and `res(π^-shift x)` is the
/// target. In avoid mode the leading digit is uniform over the residues not
/// in the avoid set.
pub fn sample_with_residue(
    field: &FieldDescriptor,
    target: &ResidueTarget,
    shift: i64,
    seed: u64,
    depth: usize,
) -> Result<Scalar> {
    let k = field.residue_field();
    let q = k.order();
    let mut rng = seeded(seed);
    let lead = match target {
        ResidueTarget::Exact(r) => {
            if !k.contains(*r) {
                return Err(Error::InvalidArgument(format!("{r} is not a residue in F_{q}")));
            }
            *r
        }
        ResidueTarget::Avoid(avoid) => {
            let allowed: Vec<u64> = k.elements().filter(|r| !avoid.contains(r)).collect();
            if allowed.is_empty() {
                return Err(Error::ResidueFieldExhausted(format!("avoid set covers F_{q}")));
            }
            allowed[rng.gen_range(0..allowed.len())]
        }
    };
    let mut digits = Vec::with_capacity(depth + 1);
    digits.push(lead);
    for _ in 0..depth {
        digits.push(rng.gen_range(0..q));
    }
    Ok(Scalar::from_digits(field, shift, &digits))
}
