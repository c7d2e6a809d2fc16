//! Truncated skew power series over unramified coefficient rings, with a
//! randomised check suite for the ring laws.

mod ring;
mod series;
mod suite;

pub use ring::{Coeff, CoeffRing};
pub use series::{SkewRing, SkewSeries};
pub use suite::{skew_suite, SkewRun, DEFAULT_RESIDUE_DEGREES, DEFAULT_SAMPLES};
