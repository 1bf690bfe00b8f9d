//! Coding maps into the geometric sorts: tuples from `K`, lattices, and
//! elements of `R_{n,ℓ}` and `T_n`.

mod deftype;
mod finite_set;
mod reductions;
mod subspace;
mod sym;

pub use deftype::{lattice_generic_type, monomials_up_to, substitution_matrix, type_code, DefTypePresentation};
pub use finite_set::{finite_set_injection, BallPair, FiniteSetInjection, Tag};
pub use reductions::{plucker_to_rnl, rn1_to_st, rnl_to_plucker, st_to_rn1, PluckerCode, StCode, StPath};
pub use subspace::{reduce, subspace_code, SubspaceCode};
pub use sym::{monomials_of_degree, sym_code, sym_decode, SymCode};

use crate::field::{ResidueElem, Scalar};
use crate::lattice::Lattice;
use crate::submodule::{RnlElement, TnElement};

/// One entry of a geometric code.
#[derive(Debug, Clone, PartialEq)]
pub enum CodeEntry {
    KTuple(Vec<Scalar>),
    ResTuple(Vec<ResidueElem>),
    LatticeEntry(Lattice),
    RnlEntry(RnlElement),
    TnEntry(TnElement),
}

/// A tuple of canonical entries from the geometric sorts; two codes are
/// equal iff they agree entrywise.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GeomCode(pub Vec<CodeEntry>);

impl GeomCode {
    pub fn entries(&self) -> &[CodeEntry] {
        &self.0
    }

    pub fn extend(&mut self, other: GeomCode) {
        self.0.extend(other.0);
    }
}
