//! Conditional data parallelism.
//!
//! Every data-parallel loop in the crate goes through these helpers. With the
//! `parallel` feature they dispatch to rayon when the caller asks for it;
//! without the feature, or with `parallel = false`, they run sequentially.
//! Output order always matches input order, so results are identical either
//! way.

/// Maps `f` over `items`, preserving order.
#[allow(unused_variables)]
pub fn map<T, U, F>(items: &[T], parallel: bool, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        if parallel && items.len() > 1 {
            return items.par_iter().map(f).collect();
        }
    }
    items.iter().map(f).collect()
}

/// Maps `f` over `0..len`, preserving order.
#[allow(unused_variables)]
pub fn map_range<U, F>(len: usize, parallel: bool, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        if parallel && len > 1 {
            return (0..len).into_par_iter().map(f).collect();
        }
    }
    (0..len).map(f).collect()
}

/// Runs two closures, concurrently when parallelism is available.
#[allow(unused_variables)]
pub fn join<A, B, RA, RB>(parallel: bool, a: A, b: B) -> (RA, RB)
where
    A: FnOnce() -> RA + Send,
    B: FnOnce() -> RB + Send,
    RA: Send,
    RB: Send,
{
    #[cfg(feature = "parallel")]
    {
        if parallel {
            return rayon::join(a, b);
        }
    }
    (a(), b())
}

/// Caps the global thread pool. Returns false when the pool was already
/// initialised or parallelism is compiled out.
#[allow(unused_variables)]
pub fn set_thread_cap(threads: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        return rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global()
            .is_ok();
    }
    #[allow(unreachable_code)]
    false
}
