//! Exact symbolic toolkit for twisted Jacquet modules of principal series
//! representations of `GL_2n` over a p-adic field.

pub mod arith;
pub mod cli;
pub mod doublecosets;
pub mod error;
pub mod ff_oracle;
pub mod jacquet;
pub mod lfun;
pub mod parse;
pub mod reps;
pub mod segments;
pub mod zelevinsky;

pub use arith::{CharLabel, FormalCharacter, HalfInt};
pub use error::{Error, Result};
pub use reps::ReprExpr;
pub use segments::{Multisegment, Segment};
