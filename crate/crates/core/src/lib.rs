//! Localisation of finite categories at uni-fractionable denominators.

pub mod calculus;
pub mod category;
pub mod denominators;
pub mod error;
pub mod fraction;
pub mod instances;
pub mod io;
pub mod three_arrow;
pub mod transport;
pub mod union_find;

pub use category::{CategoryBuilder, FinCategory, FunctorTable, Mor, Obj};
pub use denominators::{DenominatorData, UniFractionable, Which};
pub use error::{Error, Result};
