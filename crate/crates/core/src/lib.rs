pub mod cli;
pub mod diffalg;
pub mod diffmod;
pub mod field;
pub mod gen;
pub mod hopf;
pub mod matrix;
pub mod reconstruct;
pub mod report;
pub mod structmaps;
