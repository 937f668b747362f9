//! Data-parallel evaluation of independent check cases.
//!
//! With the `parallel` feature (default) cases are evaluated on the rayon
//! pool; without it they run sequentially. Output order always matches input
//! order, so reports are identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Runs `f` with case evaluation confined to the calling thread.
#[cfg(feature = "parallel")]
pub fn sequential<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("single-thread pool")
        .install(f)
}

#[cfg(not(feature = "parallel"))]
pub fn sequential<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    f()
}

/// Whether case evaluation is data-parallel in this build.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
