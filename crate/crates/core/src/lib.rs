//! Balanced, primer and DNA-computing codes built on cyclic codes over GF(2)
//! and GF(4), with brute-force verification oracles.

pub mod balance;
pub mod codebook;
pub mod cyclic;
pub mod dnacomp;
pub mod error;
pub mod ext;
pub mod gf;
pub mod oracle;
pub mod poly;
pub mod primer;
pub mod rll;
pub mod word;

pub use error::{Error, Result};
pub use ext::{ext_field_build, find_primitive_avoiding, ExtElem, ExtField};
pub use gf::{BaseField, DnaWord, OMEGA, OMEGA_PLUS_ONE};
pub use poly::Poly;
pub use word::Word;
