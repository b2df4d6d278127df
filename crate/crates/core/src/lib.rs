//! Exact representation-theoretic machinery for deciding the stability of
//! compact totally geodesic submanifolds of compact symmetric spaces.
//!
//! Everything here is pure arithmetic over exact rationals and needs only
//! `alloc`. File formats, catalogs and the command line live in the
//! `geodstab` companion crate.
//!
//! Layering, bottom-up:
//!
//! * [`rootsys`]: Cartan data, weight-lattice form, Weyl chamber reduction.
//! * [`reps`]: Weyl dimension, Casimir eigenvalues, Freudenthal weight
//!   systems, bounded dominant-weight enumeration.
//! * [`branching`]: restriction along a reductive subalgebra given by a
//!   projection matrix, and highest-weight peeling into irreducibles.
//! * [`stability`]: the Casimir-comparison verdict engine, the two shortcut
//!   rules, and index / nullity / Killing nullity.
//! * [`lagrangian`]: curvature rules for minimal totally real submanifolds.
#![no_std]

extern crate alloc;

pub mod branching;
pub mod error;
pub mod lagrangian;
pub mod rational;
pub mod reps;
pub mod rootsys;
pub mod stability;

pub use branching::{EmbeddingData, ReductiveDatum, ReductiveWeight, ReductiveWeightSystem};
pub use error::{Error, Result};
pub use rational::Q;
pub use reps::{CasimirValue, WeightSystem};
pub use rootsys::{Family, RootDatum, Weight};
pub use stability::{NormalBlock, StabilityReport, SubmanifoldSpec, Verdict};
