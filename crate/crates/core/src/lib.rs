pub mod error;
pub mod evometrics;
pub mod experiment;
pub mod io;
pub mod metrics;
pub mod model;
pub mod registry;
pub mod structure;
pub mod style;
pub mod synth;
pub mod vm;

pub use error::{Degeneracy, Error, Result};
pub use model::{
    normalize_unbounded, p_norm, Alphabet, Code, FunctionClassSpec, NormSpec, Profile,
    DEFAULT_STEP_CAP,
};
