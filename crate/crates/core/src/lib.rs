//! Computation with q-matroids over finite fields and their projectivization
//! matroids: characteristic polynomials by three independent methods, minors
//! and flat lattices, maps between q-matroids, and the rank-metric code
//! invariants they determine.

pub mod axioms;
pub mod codes;
pub mod corpus;
pub mod flats;
pub mod gf;
pub mod io;
pub mod lattice;
pub mod limits;
pub mod matroid;
pub mod poly;
pub mod projectivize;
pub mod qmaps;
pub mod qmatroid;
pub mod report;

pub use axioms::{Axiom, AxiomReport, CharPolyMethod, CheckMode, Violation};
pub use codes::{CodeError, LinearCode, Metric, WeightDistribution};
pub use flats::FlatLattice;
pub use gf::{gamma_expand, Elem, ExtField, Field, FieldError, FiniteField, Matrix};
pub use lattice::{Ambient, LatticeError, ProjPoint, QuotientSpace, Subspace, Vector};
pub use matroid::{Mask, Matroid, MatroidError};
pub use poly::Polynomial;
pub use projectivize::{projectivize, Projectivization, ProjectivizeError};
pub use qmaps::{ExtendedProjMap, LMap, MapError};
pub use qmatroid::{QMatroid, QMatroidError, RecursionTrace};
pub use report::{Report, Status};
