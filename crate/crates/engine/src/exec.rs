//! Data-parallel dispatch.
//!
//! Hot loops (blockwise kernels, per-degree ranks, per-generator lifts) go
//! through `map_collect` so the whole engine can run on rayon or strictly
//! sequentially. The `parallel` feature selects whether rayon is compiled
//! in at all; when it is, `set_sequential(true)` still forces sequential
//! execution at runtime, which is what the comparison benches use.

use std::sync::atomic::{AtomicBool, Ordering};

static FORCE_SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Force sequential execution even when the `parallel` feature is enabled.
pub fn set_sequential(force: bool) {
    FORCE_SEQUENTIAL.store(force, Ordering::SeqCst);
}

pub fn is_sequential() -> bool {
    if cfg!(not(feature = "parallel")) {
        return true;
    }
    FORCE_SEQUENTIAL.load(Ordering::SeqCst)
}

/// Map a function over items, collecting results in input order.
#[cfg(feature = "parallel")]
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    if is_sequential() {
        items.into_iter().map(f).collect()
    } else {
        use rayon::prelude::*;
        items.into_par_iter().map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    items.into_iter().map(f).collect()
}
