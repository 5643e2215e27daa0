//! Order-preserving batch drivers. With the `parallel` feature (default) jobs
//! are spread over the rayon pool; without it they run sequentially. Each job
//! is itself single-threaded.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::Result;
use crate::monodromy::{check_wmc, monodromy_filtration, Filtration, FrobeniusData, NilpotentOperator, WmcReport};
use crate::rational::Rational;

/// Maps `f` over `items`, keeping input order.
#[cfg(feature = "parallel")]
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    seq_map(items, f)
}

/// Sequential reference path, available regardless of features.
pub fn seq_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

pub fn monodromy_filtrations(ops: &[NilpotentOperator]) -> Vec<Filtration> {
    par_map(ops, monodromy_filtration)
}

pub fn wmc_checks(jobs: &[(NilpotentOperator, FrobeniusData, i64)], tol: &Rational) -> Vec<Result<WmcReport>> {
    par_map(jobs, |(n, f, i)| check_wmc(n, f, *i, tol))
}
