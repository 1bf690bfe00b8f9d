//! Injection of a finite set `S ⊆ K` into `K × k`-valued tables indexed
//! by the balls `β(x, y)` it spans.

use std::collections::BTreeSet;

use crate::cheese::{beta, Ball};
use crate::error::{Error, Result};
use crate::field::{sample_with_residue, FieldDescriptor, ResidueTarget, Scalar};
use crate::rng::derive;

/// A coordinate of the table: a residue, or the marker for points outside
/// the ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Outside,
    Res(u64),
}

/// The chosen pair `(x_B, y_B)` for one ball, with `val(y_B − x_B)` equal to
/// the radius of `B`. `generic` is false when the residue field was too
/// small to keep both points away from the classes occupied by `S`.
#[derive(Debug, Clone, PartialEq)]
pub struct BallPair {
    pub ball: Ball,
    pub x: Scalar,
    pub y: Scalar,
    pub generic: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSetInjection {
    pub pairs: Vec<BallPair>,
    /// Rows in the order of the input, one tag per ball.
    pub table: Vec<(Scalar, Vec<Tag>)>,
}

impl FiniteSetInjection {
    /// The point whose row equals `tags`, if any.
    pub fn decode(&self, tags: &[Tag]) -> Option<&Scalar> {
        self.table.iter().find(|(_, t)| t == tags).map(|(z, _)| z)
    }
}

pub fn finite_set_injection(
    field: &FieldDescriptor,
    s: &[Scalar],
    seed: u64,
    depth: usize,
) -> Result<FiniteSetInjection> {
    if s.len() < 2 {
        return Err(Error::InvalidArgument("need at least two points".into()));
    }
    if s.iter().any(|x| x.field() != field) {
        return Err(Error::MixedFields);
    }
    let mut balls = BTreeSet::new();
    for (i, x) in s.iter().enumerate() {
        for y in &s[i + 1..] {
            balls.insert(beta(x, y).map_err(|_| Error::InvalidArgument("repeated point".into()))?);
        }
    }
    let mut pairs = Vec::with_capacity(balls.len());
    for (bi, ball) in balls.into_iter().enumerate() {
        let c = ball.center().expect("closed ball").clone();
        let r = ball.radius().expect("closed ball").to_integer();
        let scale = Scalar::uniformizer_pow(field, r);
        let residue_of = |z: &Scalar| (&(z - &c) / &scale).residue().map(|e| e.value());
        let occupied: Vec<u64> = s.iter().filter(|z| ball.contains_point(z)).map(&residue_of).collect::<Result<_>>()?;
        let sx = derive(seed, 2 * bi as u64);
        let sy = derive(seed, 2 * bi as u64 + 1);
        let (ux, gx) = match sample_with_residue(field, &ResidueTarget::Avoid(occupied.clone()), 0, sx, depth) {
            Ok(u) => (u, true),
            Err(Error::ResidueFieldExhausted(_)) => {
                (sample_with_residue(field, &ResidueTarget::Avoid(vec![]), 0, sx, depth)?, false)
            }
            Err(e) => return Err(e),
        };
        let rx = ux.residue()?.value();
        let mut avoid = occupied;
        avoid.push(rx);
        let (uy, gy) = match sample_with_residue(field, &ResidueTarget::Avoid(avoid), 0, sy, depth) {
            Ok(u) => (u, true),
            Err(Error::ResidueFieldExhausted(_)) => {
                (sample_with_residue(field, &ResidueTarget::Avoid(vec![rx]), 0, sy, depth)?, false)
            }
            Err(e) => return Err(e),
        };
        pairs.push(BallPair { x: &c + &(&scale * &ux), y: &c + &(&scale * &uy), ball, generic: gx && gy });
    }
    let table = s
        .iter()
        .map(|z| {
            let tags = pairs
                .iter()
                .map(|bp| {
                    if !bp.ball.contains_point(z) {
                        return Ok(Tag::Outside);
                    }
                    Ok(Tag::Res((&(z - &bp.x) / &(&bp.y - &bp.x)).residue()?.value()))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((z.clone(), tags))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FiniteSetInjection { pairs, table })
}
