//! Unfoldings of convex polyhedra and continuous blooming motions.
//!
//! The crate builds convex polyhedra, cuts them open (either along a
//! user-supplied cut tree or along the cut locus of a source point), refines
//! unfoldings into serpentine ones, generates one-hinge-at-a-time opening
//! schedules (Path-Unroll, Path-TwoStep, Path-Waltz, Tree-Unroll), and
//! numerically verifies that the resulting motions are crossing-free.
//!
//! Entry points, roughly in pipeline order:
//!
//! * [`geom::build_convex_polyhedron`] — hull construction with facet merging.
//! * [`geodesics::shortest_path`], [`geodesics::cut_locus`],
//!   [`geodesics::source_unfolding`] — surface geodesics and the source
//!   unfolding.
//! * [`unfolding::faces_from_cuts`], [`unfolding::develop`],
//!   [`unfolding::refine_to_serpentine`] — cut sets, developments, and the
//!   serpentine refinement.
//! * [`blooming`] — hinge structures, the four schedulers, pose evaluation.
//! * [`verify`] — per-pose contact classification, whole-schedule
//!   verification with conservative gap certificates, and the randomized
//!   lemma suites.
//! * [`io`] — mesh / unfolding / schedule / report file formats used by the
//!   `bloomkit` binary.
//!
//! See `examples/` for one runnable program per capability.

pub mod blooming;
pub mod geodesics;
pub mod geom;
pub mod io;
pub mod unfolding;
pub mod verify;
