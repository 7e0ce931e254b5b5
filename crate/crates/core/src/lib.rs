pub mod error;
pub mod halfspace;
pub mod harness;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod measure;
pub mod polytope;
pub mod shapes;
