//! Exact `Z/p^N` computation of syntomic cohomology for logarithmic
//! truncated-polynomial models, with the Witt vector, toric and log `TC`
//! companions used to cross-check it.

pub mod error;
pub mod logtc;
pub mod padic;
pub mod prismatic;
pub mod report;
pub mod syntomic;
pub mod toric;
pub mod witt;

pub use error::{Error, Result};
pub use padic::{FinPModule, PMatrix, PadicScalar, ResidueRing};
pub use prismatic::{ModelParams, Period, WeightedComplex};
pub use report::Check;
pub use syntomic::{ClosedForm, Status, Summand, SyntomicResult};
pub use toric::{Cone2, Fan2};
pub use witt::{BigWittShape, PTypicalWitt};
