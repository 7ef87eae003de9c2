//! Crossing limit cycles of planar piecewise Hamiltonian systems whose zones
//! are separated by vertical switching lines.

pub mod algebra;
pub mod systems;
pub mod matcher;
pub mod dynamics;
pub mod solver;
pub mod cli;
