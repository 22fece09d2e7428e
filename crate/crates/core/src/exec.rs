//! Batch evaluation over independent inputs.
//!
//! With the `parallel` feature the work is spread over the rayon pool;
//! without it, or with [`Exec::Sequential`], items run in order on the
//! calling thread. Results always come back in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::Result;
use crate::filtration::{verify_filtration_axioms, weight_filtration_with, FiltrationReport};
use crate::hodge::{check_all, ConjectureReport};
use crate::matrix::RationalMatrix;
use crate::nilpotent::ChainOrder;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[cfg(feature = "parallel")]
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        #[cfg(feature = "parallel")]
        {
            Exec::Parallel
        }
        #[cfg(not(feature = "parallel"))]
        {
            Exec::Sequential
        }
    }
}

impl Exec {
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
        }
    }
}

/// `check_all` for each `d`, in input order.
pub fn check_range(ds: &[usize], exec: Exec) -> Vec<Result<ConjectureReport>> {
    exec.map(ds, |&d| check_all(d))
}

/// Builds the weight filtration of each `(N, center)` in both chain orders
/// and verifies it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiltrationSweepItem {
    pub report: FiltrationReport,
    pub symmetric: bool,
    pub orders_agree: bool,
}

pub fn sweep_filtrations(
    cases: &[(RationalMatrix, usize)],
    exec: Exec,
) -> Vec<Result<FiltrationSweepItem>> {
    exec.map(cases, |(n, center)| {
        let w = weight_filtration_with(n, *center, ChainOrder::Canonical)?;
        let other = weight_filtration_with(n, *center, ChainOrder::Reversed)?;
        let report = verify_filtration_axioms(n, &w)?;
        let symmetric = (0..=*center).all(|l| w.graded_dim(center + l) == w.graded_dim(center - l));
        Ok(FiltrationSweepItem {
            report,
            symmetric,
            orders_agree: w.subspaces() == other.subspaces(),
        })
    })
}
