//! Exact arithmetic for codimension-2 lattice ideals.
//!
//! A rank-2 sublattice `L` of `Z^n` with no nonzero nonnegative vectors defines
//! a binomial ideal `I_L` in `k[x_1..x_n]`.  This crate enumerates the fibers
//! (multidegree classes) of such an ideal, finds its minimal generators and the
//! "syzygy quadrangle" fibers that govern its first and second syzygies, splits
//! each quadrangle into the eight exponent vectors that drive an explicit
//! length-3 free resolution, and uses the graded shifts of that resolution to
//! compute degrees and check the bound `deg <= M1 * M2 / 2`, where `M1` and
//! `M2` are the maximal shifts in homological degrees 1 and 2.
//!
//! Everything is exact: exponents are machine integers, while degrees, counts,
//! and polynomial coefficients use arbitrary-precision integers.

pub mod algebra;
pub mod bound;
pub mod fibers;
pub mod hilbert;
pub mod lattice;
pub mod quadrangle;
pub mod symbolic;

pub use algebra::{Binomial, ExponentVector};
pub use bound::{BoundReport, FullIdealReport, GapCase, M1Choice, M2Choice};
pub use fibers::{FiberPolytope, FiberSurvey, PolytopeClass, QuadrangleFiber};
pub use hilbert::{DegreeProfile, HilbertNumerator};
pub use lattice::{HypothesisCertificate, LatticeBasis};
pub use quadrangle::{QuadrangleSplit, ResolutionData};
pub use symbolic::SymPoly;
