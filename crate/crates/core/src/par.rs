//! Data-parallel sweeps with a sequential fallback.
//!
//! Corpus batteries, order enumeration, and sample verification are
//! embarrassingly parallel, so the hot sweeps go through [`map_vec`]. With
//! the `parallel` feature (default) it fans out on rayon; without it the
//! crate has no rayon dependency and everything runs sequentially. The
//! runtime override [`with_sequential`] forces the sequential path even in
//! parallel builds, which the benchmarks use to compare both. Order of
//! results is the input order in every mode, so outputs stay deterministic.

use std::cell::Cell;

thread_local! {
    static FORCE_SEQUENTIAL: Cell<bool> = const { Cell::new(false) };
}

/// Run `f` with the sequential path forced on the current thread.
pub fn with_sequential<R>(f: impl FnOnce() -> R) -> R {
    FORCE_SEQUENTIAL.with(|flag| {
        let prev = flag.replace(true);
        let out = f();
        flag.set(prev);
        out
    })
}

fn sequential_forced() -> bool {
    FORCE_SEQUENTIAL.with(Cell::get)
}

/// True when this call would fan out on rayon.
pub fn parallelism_enabled() -> bool {
    cfg!(feature = "parallel") && !sequential_forced()
}

#[cfg(feature = "parallel")]
pub fn map_vec<T, U, G>(items: Vec<T>, f: G) -> Vec<U>
where
    T: Send,
    U: Send,
    G: Fn(T) -> U + Send + Sync,
{
    use rayon::prelude::*;
    if sequential_forced() {
        items.into_iter().map(f).collect()
    } else {
        items.into_par_iter().map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub fn map_vec<T, U, G>(items: Vec<T>, f: G) -> Vec<U>
where
    T: Send,
    U: Send,
    G: Fn(T) -> U + Send + Sync,
{
    items.into_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_order() {
        let out = map_vec((0..100).collect::<Vec<_>>(), |x| x * 2);
        assert_eq!(out, (0..100).map(|x| x * 2).collect::<Vec<_>>());
    }

    #[test]
    fn sequential_override() {
        let out = with_sequential(|| {
            assert!(!parallelism_enabled());
            map_vec(vec![1, 2, 3], |x| x + 1)
        });
        assert_eq!(out, vec![2, 3, 4]);
    }
}
