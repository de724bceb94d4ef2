//! Exact computations for Cox rings of surfaces: rational polyhedral cones,
//! intersection lattices, multigraded polynomial rings and toric quotients,
//! together with the fixture-driven verification pipeline for the E6 and D4
//! cubic surfaces.

pub mod cone;
pub mod linalg;
pub mod pipeline;
pub mod ring;
pub mod surface;
pub mod toric;
