//! First twisted cohomology of the mapping class group of a once-punctured
//! surface, acting on the first homology of the surface.
//!
//! The pipeline: generate the Wajnryb presentation of the mapping class
//! group on the Humphries twist generators, represent each generator by its
//! symplectic transvection on H_1, turn the cocycle condition into an
//! integer linear system, and read off H^1 = Z^1 / B^1 from Smith normal
//! forms. For genus >= 3 the result is infinite cyclic; an explicit
//! generating cocycle (supported on the twist about the second handle's
//! collar curve) is built and verified directly.

pub mod cocycle;
pub mod intlinalg;
pub mod presentation;
pub mod symplectic;
pub mod wajnryb;

pub mod jsonnum;
