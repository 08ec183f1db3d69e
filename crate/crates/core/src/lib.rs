pub mod cli;
pub mod coherence;
pub mod connectivity;
pub mod decomposition;
pub mod engine;
pub mod error;
pub mod gate;
pub mod graph;
pub mod oracle;
pub mod rotation;
pub mod splice;
mod tree;
