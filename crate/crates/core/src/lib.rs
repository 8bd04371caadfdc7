pub mod arith;
pub mod cli;
pub mod groups;
pub mod harmonics;
pub mod lattice;
pub mod pictures;
pub mod rational;
pub mod structures;
pub mod words;
