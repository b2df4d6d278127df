//! Catalog files, report formatting and the command line for the
//! `geodstab-core` stability engine.

pub mod catalog;
pub mod cli;
pub mod output;
pub mod rational;

pub use catalog::{validate, Catalog, CatalogEntry, CatalogError, ValidationReport};
pub use output::Output;
pub use rational::Rational;
