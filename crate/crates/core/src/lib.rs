//! Rigorous numerics and combinatorial search for low-volume cusped
//! hyperbolic 3-manifolds: interval arithmetic, horoball diagrams, Mom-n
//! detection, polyhedral gluing census and Dehn-filling bounds.

pub mod census;
pub mod cli;
pub mod fillings;
pub mod geometry;
pub mod io;
pub mod momdetect;
pub mod rigor;

mod util;
