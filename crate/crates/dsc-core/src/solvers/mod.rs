//! Reference solvers built on the collocation matrices: waveguide
//! eigenmodes, electrostatic potentials, and wave propagation.

pub mod electrostatics;
pub mod wave;
pub mod waveguide;
