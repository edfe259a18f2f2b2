//! Ways of building quadratical quasigroups: completing a skeleton by
//! propagation, expanding a translatable first row, and affine maps on
//! abelian groups.

pub mod partial;
pub mod completion;
pub mod translatable;
pub mod affine;
