//! Combinatorial toolkit for compact 3-manifolds presented by ideal
//! triangulations and ideal cubulations, the duality between cubulations and
//! filling Dehn surfaces, surface-complexity bookkeeping, and the
//! two-dimensional (Dehn loop) analogue.

pub mod bounds;
pub mod census;
pub mod convert;
pub mod cubulation;
pub mod dual;
pub mod fixtures;
pub mod io;
pub mod perm;
pub mod qfs;
pub mod report;
pub mod signature;
pub mod surface;
pub mod surface2d;
pub mod triangulation;
pub mod uf;

pub use cubulation::IdealCubulation;
pub use surface::SurfaceDescriptor;
pub use triangulation::IdealTriangulation;
