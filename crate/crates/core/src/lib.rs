//! Arithmetic of k-free integers in quadratic number fields.
//!
//! Elements of the ring of integers `O_K` of `K = Q(√d)` are written in the
//! integral basis `{1, δ}` and identified with points of `Z²`. The set `V'_k`
//! of nonzero k-free integers then becomes a subset of the plane, and this
//! crate computes with it:
//!
//! - [`ring`]: field parameters, multiplication, norms, units.
//! - [`ideals`]: prime ideals, splitting, valuations, k-freeness.
//! - [`kfree`]: sieving `V'_k` on boxes, densities, norm level sets.
//! - [`lfunctions`]: Dedekind zeta values, Bernoulli numbers, L-values.
//! - [`shiftspace`]: ideal lattices, admissible patterns, entropy.
//! - [`symmetries`]: linear maps preserving `V'_k`.

pub mod arith;
pub mod error;
pub mod ideals;
pub mod kfree;
pub mod lattice;
pub mod lfunctions;
pub mod pointset;
pub mod ring;
pub mod shiftspace;
pub mod symmetries;

pub use error::{Error, Result};
pub use ideals::{PrimeIdealRef, Selector, SplitKind, SplittingType};
pub use kfree::{count_kfree, enumerate_kfree, KFreeMask};
pub use lattice::Sublattice;
pub use pointset::{LatticeBox, Point, PointSet};
pub use ring::{AlgInt, BasisKind, FieldParams, UnitGroupDescription};
pub use symmetries::{Counterexample, GLMatrix, SymmetryElement};
