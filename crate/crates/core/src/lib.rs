//! Finite augmented simplicial sets and the join induced by the ordinal sum.
//!
//! - [`ordinal`]: the augmented simplex category and the ordinal sum.
//! - [`sset`]: finite presentations in Eilenberg–Zilber form, standard
//!   objects, augmentations, décalage, maps and isomorphisms, SSF files.
//! - [`join`]: the join `X ⊙ Y`, its unit and re-association, spheres.
//! - [`homology`]: normalized chains and Smith normal form.
//! - [`geom`]: barycentric coordinates on joins of simplices.
//! - [`acceptance`]: the end-to-end checks run by the test suite and CLI.

pub mod acceptance;
pub mod geom;
pub mod homology;
pub mod join;
pub mod ordinal;
pub mod sset;
