//! Exact-arithmetic calculator for the symplectic module `H` of a genus-`g`
//! surface and the graded Lie theory built on it: virtual characters of
//! `Sp(2g)`, free Lie algebras with the surface relation, Johnson-type
//! derivations, the two-step nilpotent algebras `d_{g,n}`, and the
//! obstruction classes that classify invariant sections.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point anywhere in the crate.

pub mod character;
pub mod dgn;
pub mod freelie;
pub mod johnson;
pub mod lattice;
pub mod matrix;
pub mod obstruction;
pub mod partition;
pub mod poly;
pub mod scalar;
pub mod sp_group;
pub mod symplectic;
pub mod tensor;
pub mod word;

pub use character::VirtualCharacter;
pub use dgn::{DgnAlgebra, SectionCandidate};
pub use freelie::LieElement;
pub use johnson::{Calibration, Derivation};
pub use lattice::{CoefficientRing, Lattice};
pub use obstruction::{GaloisProfile, H2Presentation, ObstructionClass};
pub use partition::Partition;
pub use scalar::{Int, Rat};
pub use symplectic::SymplecticSpace;
pub use tensor::{Symmetry, TensorElement};
