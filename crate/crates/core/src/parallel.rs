//! Data-parallel map with a sequential fallback. With the `parallel`
//! feature the work is spread over the rayon pool; the caller's deadline is
//! carried into every task.

use crate::deadline;

/// How independent work items are scheduled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    /// Rayon pool; `0` workers means the global pool.
    Parallel { workers: usize },
}

impl Parallelism {
    pub fn from_jobs(jobs: usize) -> Self {
        if jobs == 1 || !cfg!(feature = "parallel") {
            Parallelism::Sequential
        } else {
            Parallelism::Parallel { workers: jobs }
        }
    }
}

impl Default for Parallelism {
    fn default() -> Self {
        Parallelism::from_jobs(0)
    }
}

/// Maps `f` over `items`, preserving input order in the output.
pub fn map<T, U, F>(items: Vec<T>, mode: Parallelism, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Send + Sync,
{
    match mode {
        Parallelism::Sequential => items.into_iter().map(f).collect(),
        Parallelism::Parallel { workers } => parallel_map(items, workers, f),
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, U, F>(items: Vec<T>, workers: usize, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Send + Sync,
{
    use rayon::prelude::*;
    let limit = deadline::current();
    let run = || {
        items
            .into_par_iter()
            .map(|item| {
                let _g = deadline::install(limit);
                f(item)
            })
            .collect()
    };
    if workers == 0 {
        run()
    } else {
        match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, U, F>(items: Vec<T>, _workers: usize, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Send + Sync,
{
    let _ = deadline::current();
    items.into_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved_in_both_modes() {
        let items: Vec<u64> = (0..200).collect();
        let seq = map(items.clone(), Parallelism::Sequential, |x| x * x);
        let par = map(items, Parallelism::Parallel { workers: 4 }, |x| x * x);
        assert_eq!(seq, par);
    }
}
