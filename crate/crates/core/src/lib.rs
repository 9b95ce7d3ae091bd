pub mod cli;
pub mod codec;
pub mod families;
pub mod hintikka;
pub mod logic;
pub mod major;
pub mod sampler;
pub mod sexp;
pub mod structures;
