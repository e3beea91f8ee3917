//! Command-line toolkit around `treecsp-core`: enumeration of core trees,
//! polymorphism-condition tests, and parallel classification campaigns with
//! resumable CSV output.

pub mod formats;
pub mod pipeline;
