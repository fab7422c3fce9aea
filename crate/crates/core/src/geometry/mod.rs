//! Rational functions on the projective line and the plane, their closed
//! points and flags, and local expansions there.

mod flag;
mod place;
mod poly;
mod rational;

pub use flag::{check_flag_cover, detect_line_flags, flag_expand, SurfaceFlag};
pub use place::{joint_support, local_expand, local_ring, support_places, Place, PlaceKind};
pub use poly::MPoly;
pub use rational::RationalFunction;
