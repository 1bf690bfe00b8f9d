//! One-variable sets as disjoint unions of swiss cheeses.
//!
//! Sets are read in ACVF semantics: the value group is divisible and the
//! residue field infinite, so a ball is never a finite union of proper
//! subballs. Any finite family of balls is a tree under inclusion (two
//! balls are nested or disjoint) and a boolean combination of the family is
//! a union of the tree's regions `b ∖ ⋃ children(b)`. The canonical form
//! keeps exactly the nodes whose membership differs from their parent's.

use std::cmp::Ordering;

use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar, Val};
use crate::rng::seeded;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BallKind {
    Full,
    Closed,
    Open,
    Point,
}

/// A point, an open or closed ball, or the whole line. The center is
/// stored in canonical form: the truncated expansion below the radius.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ball {
    kind: BallKind,
    center: Option<Scalar>,
    radius: Option<Rational64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Equal,
    /// The first ball is strictly inside the second.
    Inside,
    /// The second ball is strictly inside the first.
    Contains,
    Disjoint,
}

impl Ball {
    pub fn full() -> Self {
        Ball { kind: BallKind::Full, center: None, radius: None }
    }

    pub fn point(c: Scalar) -> Self {
        Ball { kind: BallKind::Point, center: Some(c), radius: None }
    }

    /// `{x : val(x − c) ≥ r}`.
    pub fn closed(c: &Scalar, r: Rational64) -> Self {
        let center = c.expansion_below(r.ceil().to_integer());
        Ball { kind: BallKind::Closed, center: Some(center), radius: Some(r) }
    }

    /// `{x : val(x − c) > r}`.
    pub fn open(c: &Scalar, r: Rational64) -> Self {
        let center = c.expansion_below(r.floor().to_integer() + 1);
        Ball { kind: BallKind::Open, center: Some(center), radius: Some(r) }
    }

    pub fn kind(&self) -> BallKind {
        self.kind
    }

    pub fn center(&self) -> Option<&Scalar> {
        self.center.as_ref()
    }

    pub fn radius(&self) -> Option<Rational64> {
        self.radius
    }

    pub fn contains_point(&self, x: &Scalar) -> bool {
        match self.kind {
            BallKind::Full => true,
            BallKind::Point => self.center.as_ref() == Some(x),
            BallKind::Closed => (x - self.center.as_ref().unwrap()).val() >= Val::Finite(self.radius.unwrap()),
            BallKind::Open => (x - self.center.as_ref().unwrap()).val() > Val::Finite(self.radius.unwrap()),
        }
    }

    /// `self ⊆ o` in ACVF semantics.
    pub fn subset_of(&self, o: &Ball) -> bool {
        use BallKind::*;
        match (self.kind, o.kind) {
            (_, Full) => true,
            (Full, _) => false,
            (Point, _) => o.contains_point(self.center.as_ref().unwrap()),
            (_, Point) => false,
            (k1, k2) => {
                if !o.contains_point(self.center.as_ref().unwrap()) {
                    return false;
                }
                let (r1, r2) = (self.radius.unwrap(), o.radius.unwrap());
                match (k1, k2) {
                    (Closed, Open) => r1 > r2,
                    _ => r1 >= r2,
                }
            }
        }
    }

    pub fn relate(&self, o: &Ball) -> Relation {
        match (self.subset_of(o), o.subset_of(self)) {
            (true, true) => Relation::Equal,
            (true, false) => Relation::Inside,
            (false, true) => Relation::Contains,
            (false, false) => Relation::Disjoint,
        }
    }

    fn sort_key(&self) -> (u8, Option<Rational64>, BallKind) {
        let tier = match self.kind {
            BallKind::Full => 0,
            BallKind::Closed | BallKind::Open => 1,
            BallKind::Point => 2,
        };
        (tier, self.radius, self.kind)
    }
}

impl PartialOrd for Ball {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Full line first, then balls by radius (closed before open at equal
/// radius), then points; ties broken by the canonical center.
impl Ord for Ball {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key()).then_with(|| self.center.cmp(&other.center))
    }
}

/// The smallest closed ball containing `x` and `y`.
pub fn beta(x: &Scalar, y: &Scalar) -> Result<Ball> {
    let v = (x - y).ord().ok_or(Error::EqualPoints)?;
    Ok(Ball::closed(x, Rational64::from_integer(v)))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SwissCheese {
    pub outer: Ball,
    pub holes: Vec<Ball>,
}

impl SwissCheese {
    pub fn new(outer: Ball, holes: Vec<Ball>) -> Self {
        SwissCheese { outer, holes }
    }

    pub fn contains_point(&self, x: &Scalar) -> bool {
        self.outer.contains_point(x) && !self.holes.iter().any(|h| h.contains_point(x))
    }

    /// Whether the region `b ∖ (proper subballs of b)` lies in the cheese,
    /// for `b` a node of a tree containing every ball of the cheese.
    fn covers_region(&self, b: &Ball) -> bool {
        b.subset_of(&self.outer) && !self.holes.iter().any(|h| b.subset_of(h))
    }
}

impl PartialOrd for SwissCheese {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SwissCheese {
    fn cmp(&self, other: &Self) -> Ordering {
        self.outer
            .cmp(&other.outer)
            .then_with(|| self.holes.len().cmp(&other.holes.len()))
            .then_with(|| self.holes.cmp(&other.holes))
    }
}

/// A finite union of swiss cheeses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OneVarSet {
    cheeses: Vec<SwissCheese>,
    canonical: bool,
}

/// The inclusion tree of a family of distinct balls, rooted at the full
/// line. `parent[i]` is the smallest ball strictly containing ball `i`.
struct BallTree {
    balls: Vec<Ball>,
    parent: Vec<Option<usize>>,
}

impl BallTree {
    fn new(mut balls: Vec<Ball>) -> Self {
        balls.push(Ball::full());
        balls.sort();
        balls.dedup();
        let parent = (0..balls.len())
            .map(|i| {
                (0..balls.len()).filter(|&j| j != i && balls[i].relate(&balls[j]) == Relation::Inside).min_by(
                    |&a, &b| match balls[a].relate(&balls[b]) {
                        Relation::Inside => Ordering::Less,
                        _ => Ordering::Greater,
                    },
                )
            })
            .collect();
        BallTree { balls, parent }
    }

    /// Build the canonical set whose region at node `i` is included iff
    /// `bits[i]`.
    fn canonical_set(&self, bits: &[bool]) -> OneVarSet {
        let n = self.balls.len();
        let parent_bit = |i: usize| self.parent[i].is_some_and(|p| bits[p]);
        let kept: Vec<bool> = (0..n).map(|i| bits[i] != parent_bit(i)).collect();
        let kept_parent = |mut i: usize| -> Option<usize> {
            while let Some(p) = self.parent[i] {
                if kept[p] {
                    return Some(p);
                }
                i = p;
            }
            None
        };
        let mut cheeses = Vec::new();
        for i in (0..n).filter(|&i| kept[i] && bits[i]) {
            let mut holes: Vec<Ball> =
                (0..n).filter(|&j| kept[j] && kept_parent(j) == Some(i)).map(|j| self.balls[j].clone()).collect();
            holes.sort();
            cheeses.push(SwissCheese { outer: self.balls[i].clone(), holes });
        }
        cheeses.sort();
        OneVarSet { cheeses, canonical: true }
    }
}

impl OneVarSet {
    pub fn empty() -> Self {
        OneVarSet { cheeses: Vec::new(), canonical: true }
    }

    pub fn full() -> Self {
        OneVarSet { cheeses: vec![SwissCheese::new(Ball::full(), Vec::new())], canonical: true }
    }

    pub fn ball(b: Ball) -> Self {
        OneVarSet { cheeses: vec![SwissCheese::new(b, Vec::new())], canonical: true }
    }

    /// An arbitrary union of cheeses, not yet canonical.
    pub fn new(cheeses: Vec<SwissCheese>) -> Self {
        OneVarSet { cheeses, canonical: false }
    }

    pub fn cheeses(&self) -> &[SwissCheese] {
        &self.cheeses
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn is_empty(&self) -> bool {
        self.canonicalize().cheeses.is_empty()
    }

    pub fn contains_point(&self, x: &Scalar) -> bool {
        self.cheeses.iter().any(|c| c.contains_point(x))
    }

    fn balls(&self) -> Vec<Ball> {
        self.cheeses.iter().flat_map(|c| std::iter::once(c.outer.clone()).chain(c.holes.iter().cloned())).collect()
    }

    fn covers_region(&self, b: &Ball) -> bool {
        self.cheeses.iter().any(|c| c.covers_region(b))
    }

    fn combine(sets: &[&OneVarSet], f: impl Fn(&[bool]) -> bool) -> OneVarSet {
        let tree = BallTree::new(sets.iter().flat_map(|s| s.balls()).collect());
        let bits: Vec<bool> = tree
            .balls
            .iter()
            .map(|b| {
                let m: Vec<bool> = sets.iter().map(|s| s.covers_region(b)).collect();
                f(&m)
            })
            .collect();
        tree.canonical_set(&bits)
    }

    pub fn canonicalize(&self) -> OneVarSet {
        if self.canonical {
            return self.clone();
        }
        Self::combine(&[self], |m| m[0])
    }

    pub fn union(&self, o: &OneVarSet) -> OneVarSet {
        Self::combine(&[self, o], |m| m[0] || m[1])
    }

    pub fn intersect(&self, o: &OneVarSet) -> OneVarSet {
        Self::combine(&[self, o], |m| m[0] && m[1])
    }

    pub fn complement(&self) -> OneVarSet {
        Self::combine(&[self], |m| !m[0])
    }

    pub fn difference(&self, o: &OneVarSet) -> OneVarSet {
        Self::combine(&[self, o], |m| m[0] && !m[1])
    }

    pub fn set_eq(&self, o: &OneVarSet) -> bool {
        self.canonicalize() == o.canonicalize()
    }

    /// The first cheese of the canonical form: a ball together with the
    /// finitely many subballs a generic point of it must avoid.
    pub fn ei_witness(&self) -> Result<(Ball, Vec<Ball>)> {
        let c = self.canonicalize();
        let first = c.cheeses.first().ok_or(Error::EmptySet)?;
        Ok((first.outer.clone(), first.holes.clone()))
    }

    /// A point of the set avoiding every hole, searched digit by digit in a
    /// seeded order; `depth` further random digits follow once all holes
    /// are separated from the current residue class.
    pub fn generic_sample(&self, field: &FieldDescriptor, seed: u64, depth: usize) -> Result<Scalar> {
        let c = self.canonicalize();
        if c.cheeses.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut rng = seeded(seed);
        let start = rng.gen_range(0..c.cheeses.len());
        for t in 0..c.cheeses.len() {
            let cheese = &c.cheeses[(start + t) % c.cheeses.len()];
            if let Some(x) = sample_cheese(field, cheese, &mut rng, depth) {
                return Ok(x);
            }
        }
        Err(Error::NoConcreteWitness)
    }
}

fn sample_cheese<R: Rng>(field: &FieldDescriptor, cheese: &SwissCheese, rng: &mut R, depth: usize) -> Option<Scalar> {
    let outer = &cheese.outer;
    let (base, start) = match outer.kind {
        BallKind::Point => {
            let x = outer.center.clone().unwrap();
            return cheese.contains_point(&x).then_some(x);
        }
        BallKind::Full => {
            let lowest = cheese.holes.iter().filter_map(|h| h.radius).min();
            let a = lowest.map_or(0, |r| r.floor().to_integer() - 1);
            (Scalar::zero(field), a)
        }
        BallKind::Closed => (outer.center.clone().unwrap(), outer.radius.unwrap().ceil().to_integer()),
        BallKind::Open => (outer.center.clone().unwrap(), outer.radius.unwrap().floor().to_integer() + 1),
    };
    let top = cheese
        .holes
        .iter()
        .map(|h| match (h.kind, h.radius) {
            (BallKind::Point, _) => h.center.as_ref().unwrap().ord().unwrap_or(0).max(start) + 1,
            (_, Some(r)) => r.floor().to_integer() + 1,
            _ => start,
        })
        .max()
        .unwrap_or(start)
        .max(start)
        + 2;
    let holes: Vec<&Ball> = cheese.holes.iter().collect();
    descend(&base, start, top, &holes, rng, depth)
}

/// Choose the digit at `level` of `x`; `x` already fixes all lower digits.
fn descend<R: Rng>(x: &Scalar, level: i64, top: i64, holes: &[&Ball], rng: &mut R, depth: usize) -> Option<Scalar> {
    let field = x.field().clone();
    let class = Ball::closed(x, Rational64::from_integer(level));
    let live: Vec<&Ball> = holes.iter().copied().filter(|h| class.relate(h) != Relation::Disjoint).collect();
    if live.iter().any(|h| class.subset_of(h)) {
        return None;
    }
    if live.is_empty() {
        let q = field.residue_order();
        let digits: Vec<u64> = (0..depth).map(|_| rng.gen_range(0..q)).collect();
        let tail = Scalar::from_digits(&field, level, &digits);
        let y = x + &tail;
        return holes.iter().all(|h| !h.contains_point(&y)).then_some(y);
    }
    if level > top {
        return None;
    }
    let mut digits: Vec<u64> = field.residue_field().elements().collect();
    digits.shuffle(rng);
    for d in digits {
        let y = x + &Scalar::from_digits(&field, level, &[d]);
        if let Some(z) = descend(&y, level + 1, top, &live, rng, depth) {
            return Some(z);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    #[test]
    fn ball_relations() {
        let k = FieldDescriptor::padic(3).unwrap();
        let s = |n| Scalar::from_int(&k, n);
        assert!(Ball::closed(&s(1), r(1)).contains_point(&s(4)));
        assert_eq!(Ball::open(&s(0), r(1)).relate(&Ball::closed(&s(0), r(1))), Relation::Inside);
        assert_eq!(Ball::closed(&s(0), r(2)).relate(&Ball::closed(&s(1), r(2))), Relation::Disjoint);
        assert_eq!(Ball::closed(&s(0), r(1)), Ball::closed(&s(6), r(1)));
        assert_eq!(Ball::open(&s(0), r(0)).relate(&Ball::closed(&s(3), r(1))), Relation::Contains);
    }

    #[test]
    fn boolean_examples() {
        let k = FieldDescriptor::padic(3).unwrap();
        let s = |n| Scalar::from_int(&k, n);
        let pt = OneVarSet::ball(Ball::point(s(0)));
        let c = pt.complement();
        assert_eq!(c.cheeses(), &[SwissCheese::new(Ball::full(), vec![Ball::point(s(0))])]);
        let b = Ball::closed(&s(0), r(0));
        let h = Ball::closed(&s(0), r(1));
        let bh = OneVarSet::new(vec![SwissCheese::new(b.clone(), vec![h.clone()])]);
        assert_eq!(bh.union(&OneVarSet::ball(h.clone())), OneVarSet::ball(b.clone()));
        let d1 = OneVarSet::ball(Ball::closed(&s(0), r(1)));
        let d2 = OneVarSet::ball(Ball::closed(&s(1), r(1)));
        assert_eq!(d1.intersect(&d2), OneVarSet::empty());
        let twice = OneVarSet::new(vec![SwissCheese::new(b.clone(), vec![]), SwissCheese::new(b.clone(), vec![])]);
        assert_eq!(twice.canonicalize().cheeses().len(), 1);
    }

    #[test]
    fn telescoping_cheeses() {
        let k = FieldDescriptor::padic(3).unwrap();
        let z = Scalar::zero(&k);
        let b = Ball::closed(&z, r(0));
        let h1 = Ball::closed(&z, r(1));
        let h2 = Ball::closed(&z, r(2));
        let s =
            OneVarSet::new(vec![SwissCheese::new(b.clone(), vec![h1.clone()]), SwissCheese::new(h1, vec![h2.clone()])]);
        let expected = OneVarSet::new(vec![SwissCheese::new(b, vec![h2])]).canonicalize();
        assert_eq!(s.canonicalize(), expected);
        assert_eq!(expected.canonicalize(), expected);
    }

    #[test]
    fn beta_examples() {
        let k = FieldDescriptor::padic(5).unwrap();
        let s = |n| Scalar::from_int(&k, n);
        assert_eq!(beta(&s(0), &s(5)).unwrap(), Ball::closed(&s(0), r(1)));
        assert_eq!(beta(&s(0), &s(1)).unwrap(), Ball::closed(&s(0), r(0)));
        assert_eq!(beta(&s(2), &s(2)), Err(Error::EqualPoints));
        assert_eq!(beta(&s(3), &s(8)).unwrap(), beta(&s(8), &s(3)).unwrap());
    }

    #[test]
    fn sampling() {
        let k2 = FieldDescriptor::padic(2).unwrap();
        let z = Scalar::zero(&k2);
        let one = Scalar::one(&k2);
        let s = OneVarSet::new(vec![SwissCheese::new(
            Ball::closed(&z, r(0)),
            vec![Ball::closed(&z, r(1)), Ball::closed(&one, r(1))],
        )]);
        assert_eq!(s.generic_sample(&k2, 1, 3), Err(Error::NoConcreteWitness));

        let k5 = FieldDescriptor::padic(5).unwrap();
        let z = Scalar::zero(&k5);
        let s = OneVarSet::new(vec![SwissCheese::new(Ball::closed(&z, r(0)), vec![Ball::closed(&z, r(1))])]);
        let x = s.generic_sample(&k5, 9, 3).unwrap();
        assert!(s.contains_point(&x));
        assert_eq!(x.ord(), Some(0));
        assert_eq!(x, s.generic_sample(&k5, 9, 3).unwrap());
        let full = OneVarSet::full().difference(&OneVarSet::ball(Ball::point(z.clone())));
        assert!(full.contains_point(&full.generic_sample(&k5, 2, 2).unwrap()));
    }

    #[test]
    fn witnesses() {
        let k = FieldDescriptor::padic(3).unwrap();
        let s = |n| Scalar::from_int(&k, n);
        let b = Ball::closed(&s(0), r(0));
        assert_eq!(OneVarSet::ball(b.clone()).ei_witness().unwrap(), (b.clone(), vec![]));
        let d = OneVarSet::ball(Ball::closed(&s(1), r(1))).union(&OneVarSet::ball(Ball::closed(&s(0), r(2))));
        assert_eq!(d.ei_witness().unwrap().0, Ball::closed(&s(1), r(1)));
        assert_eq!(OneVarSet::empty().ei_witness(), Err(Error::EmptySet));
    }
}
