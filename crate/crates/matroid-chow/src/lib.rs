//! Exact-arithmetic Chow rings of matroids in the simplicial presentation.
//!
//! The crate builds the Chow ring and the augmented Chow ring of a matroid
//! from its lattice of flats, rewrites arbitrary ring elements onto the
//! standard monomial basis with a straightening procedure, evaluates the
//! Hall-Rado and dragon-Hall-Rado degree maps, and machine-checks the
//! structural facts that make all of this work: the standard monomial
//! basis, the degree formulas, Poincare duality of the degree pairing, the
//! flat-indexed direct-sum decomposition, the graded Mobius algebra
//! embedding, and the straightening-law axioms for the analogous algebra
//! over an arbitrary finite meet-semilattice.
//!
//! Everything is exact: coefficients are arbitrary-precision integers and
//! every verdict (basis counts, triangularity, unimodularity, torsion
//! freeness) is decided by integer linear algebra, never floating point.
//!
//! ```
//! use matroid_chow::matroid::MatroidLattice;
//! use matroid_chow::ring::{hilbert_series, RingContext};
//!
//! let m = MatroidLattice::boolean(3).unwrap();
//! let augmented = RingContext::augmented(m.clone());
//! assert_eq!(hilbert_series(&augmented).unwrap(), vec![1, 7, 7, 1]);
//! let reduced = RingContext::reduced(m);
//! assert_eq!(hilbert_series(&reduced).unwrap(), vec![1, 4, 1]);
//! ```
//!
//! The `examples/` directory walks one capability at a time: lattice
//! construction, straightening, degree maps, pairing matrices, the flat
//! grading, the semilattice algebra, and a rank-6 worked computation. The
//! `matroid-chow` binary exposes the same operations as subcommands
//! (`describe`, `hilbert`, `straighten`, `degree`, `pairing`, `verify`,
//! `asl-check`).

pub mod asl;
pub mod cli;
pub mod decomposition;
pub mod io;
pub mod linalg;
pub mod matroid;
pub mod oracle;
pub mod pairing;
pub mod poset;
pub mod report;
pub mod ring;
pub mod rng;
pub mod text;

pub use matroid::{FlatId, MatroidLattice};
pub use ring::{Monomial, Polynomial, RingContext, RingMode};
