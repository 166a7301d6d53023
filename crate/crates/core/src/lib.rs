//! Exact arithmetic for finite group actions on abelian surfaces and a
//! smoothness decision procedure for their quotients.

pub mod cyclotomic;
pub mod error;
pub mod groups;
pub mod linalg;
pub mod smoothness;
pub mod torus;

pub use cyclotomic::{CycMat2, CyclotomicInteger};
pub use error::{Error, Result};
pub use groups::{
    build_gmp, build_sum_zero, enumerate_invariant_deltas, AffineElement, AffineGroup, DeltaGroup,
    FiniteMatrixGroup, GroupElement,
};
pub use linalg::{IntMatrix, Sublattice, TorsionVector};
pub use smoothness::{
    check_smooth, cst_check, CandidatePoint, SmoothnessVerdict, StabilizerReport,
};
pub use torus::{RealizedSurface, SurfaceModel};
