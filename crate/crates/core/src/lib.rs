pub mod chess;
pub mod eval;
pub mod genome;
pub mod arena;
pub mod mentor;
pub mod ga;
pub mod training;
pub mod cli;
