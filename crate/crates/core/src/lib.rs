pub mod graph;
pub mod repulsion;
pub mod enumeration;
pub mod capacity;
pub mod temperedness;
pub mod applications;
pub mod harness;
