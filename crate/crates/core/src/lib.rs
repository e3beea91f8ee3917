//! Finite digraphs, arc consistency, core trees, and polymorphism conditions.
//!
//! This crate carries the algorithmic core of `treecsp`:
//!
//! - [`digraph`]: the digraph data model with levels, categorical powers,
//!   reversal, tree predicates, and canonical string encodings for trees;
//! - [`consistency`]: AC-3 arc consistency and homomorphism search with
//!   maintained arc consistency (MAC) and min-domain variable ordering;
//! - [`cores`]: polynomial-time core and rooted-core tests for trees;
//! - [`generation`]: exactly-once enumeration of unlabeled core trees,
//!   rooted-core catalogs, and core triads;
//! - [`conditions`]: linear/height-one condition families (KMM, WNU, NU,
//!   Jónsson, Hagemann-Mitschke, Kearnes-Kiss, Hobby-McKenzie, Noname,
//!   total symmetry);
//! - [`indicator`]: the indicator-digraph construction and the polymorphism
//!   decision procedure with witness extraction and verification.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats, and the CLI live
//! in the companion `treecsp` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod conditions;
pub mod consistency;
pub mod cores;
pub mod digraph;
pub mod generation;
pub mod indicator;
