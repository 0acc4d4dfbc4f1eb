//! Exact-integer synthesis and verification of plumbing certificates for
//! simply-connected spin 6-manifolds with torsion-free homology.
//!
//! The library takes a Wall invariant system (rank, symmetric trilinear cup
//! form, first Pontryagin numbers, half third Betti number), synthesizes an
//! explicit plumbing construction over 4-manifold building blocks realizing
//! it, and independently re-derives every invariant from the certificate.
//! All arithmetic is exact; overflow is a hard error, never wraparound.

pub mod forms;
pub mod wall;

pub use forms::{ClassVector, DiagonalForm, DirectSum, FormsError};
pub use wall::{AdmissibilityReport, TrilinearForm, WallSystem};
