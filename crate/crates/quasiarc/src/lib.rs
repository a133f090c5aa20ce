//! Quasi-arc complexes of the polygon, the cylinder and the Möbius strip.
//!
//! The crate enumerates the quasi-arc complex of each surface two
//! independent ways, computes flips and flip graphs, builds explicit
//! shelling orders block by block, verifies the shelling property in both
//! its topological and mutation forms, and combines the results into
//! PL-sphere certificates (shellable pseudo-manifolds without boundary are
//! PL-spheres).
//!
//! Entry points:
//!
//! * [`Surface`], [`QuasiArc`], [`compatible`] — the ground model.
//! * [`Complex`] — facet enumeration, f-vectors, purity, pseudo-manifold
//!   and sphere certificates.
//! * [`flip`], [`FlipGraph`] — the unique quasi-mutation and its graph.
//! * [`shelling`] — verifiers, order combinators, brute-force search.
//! * [`construct`] — the explicit block-structured shelling orders, up to
//!   [`construct::shell_mobius`].
//! * [`dyck`] — the correspondence between one-diagonal crossing blocks
//!   and Dyck paths.
//!
//! The `quasiarc` binary exposes the same pipelines on the command line;
//! see the book under `book/` for a guided tour.

pub mod complex;
pub mod construct;
pub mod dyck;
mod error;
pub mod flip;
pub mod io;
pub mod oracle;
pub mod shelling;
pub mod surface;

pub use complex::{Complex, FVector, SphereCertificate};
pub use error::{Error, Result};
pub use flip::{b_arcs, flip, FlipGraph};
pub use oracle::{oracle_compatible, OracleOutcome};
pub use shelling::ShellingOrder;
pub use surface::{
    compatible, is_c_arc, is_d_triangle, is_diagonal, ArcSet, Census, QuasiArc, Surface,
    SurfaceKind,
};

/// Crate version, embedded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
