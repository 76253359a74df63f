//! Model checking for a multi-agent epistemic logic with happiness and
//! sadness modalities.

pub mod axioms;
pub mod cli;
pub mod fixtures;
pub mod formula;
pub mod model;
mod name;
pub mod par;
pub mod search;
pub mod semantics;
pub mod syntax;

pub use formula::{Formula, Fragment};
pub use model::{AnyModel, EpistemicModel, GoodnessModel, UtilityModel};
pub use name::Name;
