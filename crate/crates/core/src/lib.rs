//! Validated numerics for the Muskat stability-shifting integrals.
//!
//! The crate is layered: [`interval`] arithmetic, Taylor [`taylor`] jets,
//! expression graphs in [`expr`], validated cubature in [`quad`], and the
//! Muskat integrands and campaigns in [`muskat`] and [`campaign`].

pub mod campaign;
pub mod expr;
pub mod interval;
pub mod muskat;
pub mod quad;
pub mod reference;
pub mod report;
pub mod taylor;

pub use interval::{Interval, IntervalError, RoundingMode, SplitStrategy, ROUNDING_MODE};
pub use quad::{Cell, Method, Orders, QuadResult, QuadStats, Region, Tolerances};
pub use taylor::{Jet1, Jet2, TaylorModel1, TaylorModel2};
