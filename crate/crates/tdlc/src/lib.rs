//! Toolkit for building and certifying highly symmetric flag complexes.
//!
//! The crate grew out of one concrete computation — constructing a finite
//! simplicial complex from three subgroups of a finite group, then certifying
//! combinatorial curvature and homology conditions strong enough to feed
//! classical finiteness-property machinery — and keeps each ingredient usable
//! on its own:
//!
//! * [`perm`] — permutations, permutation groups (deterministic stabilizer
//!   chains), orbits, coset spaces, cores, normal closures, subgroup search.
//! * [`graph`] — small undirected graphs: BFS, girth, induced subgraphs.
//! * [`complex`] — 2-dimensional simplicial complexes, coset complexes, group
//!   actions on them, flagness and edge-transitivity checks.
//! * [`homology`] — exact integer simplicial homology via Smith normal form,
//!   with a sparse elimination front end for large boundary matrices.
//! * [`certify`] — vertex links, link girth, and the curvature/homology
//!   certificate assembled from the checks above.
//! * [`raag`] — right-angled Artin groups: canonical word normal forms, the
//!   level homomorphism and its kernel, rewriting kernel elements over edge
//!   generators, and semidirect-product bookkeeping.
//! * [`amalgam`] — normal forms in amalgamated free products of finite
//!   permutation groups.
//! * [`tree`] — truncated biregular tree balls, legal edge labelings, local
//!   actions, and enumeration of ball maps with prescribed local groups.
//! * [`config`] / [`cli`] — the job-file format and the thin command line
//!   driver built from it.
//!
//! # Examples
//!
//! The `examples/` directory is the front door; each file is runnable with
//! `cargo run -p tdlc --example <name>`:
//!
//! * `octahedron_certificate` — build the octahedron, act by its full
//!   symmetry group, and read the resulting certificate.
//! * `coset_complex_small` — the coset complex of Sym(4) on three dihedral
//!   subgroups, with orbit and flagness checks.
//! * `homology_zoo` — exact homology of a sphere, a projective plane, and
//!   the 16-cell boundary.
//! * `smith_normal_form` — invariant factors and transform matrices for a
//!   small integer matrix.
//! * `subgroup_search` — conjugacy classes of order-39 nonabelian subgroups
//!   of a product group.
//! * `raag_rewriting` — normal forms, level-kernel membership, and rewriting
//!   over edge generators for the octahedron graph group.
//! * `amalgam_normal_form` — syllable decompositions in Sym(3) amalgamated
//!   over its rotation subgroup.
//! * `tree_local_actions` — enumerating ball maps of a (2,3)-biregular tree
//!   ball with prescribed local groups.
//! * `certified_triple_pipeline` — the full search-build-certify pipeline on
//!   a 9828-element product group (several minutes of CPU time).

pub mod amalgam;
pub mod certify;
pub mod cli;
pub mod complex;
pub mod config;
pub mod error;
pub mod graph;
pub mod homology;
pub mod perm;
pub mod pipeline;
pub mod raag;
pub mod tree;

pub use error::{Error, Result};
