//! Text formats: the formula syntax and the model file format.

mod document;
mod parser;
mod printer;

pub use document::{load_model, serialize_model, LoadError, ModelDocument};
pub use parser::{parse_formula, FormulaSyntaxError, ParseError};
pub use printer::{print_formula, write_formula};
