//! Execution strategy for the data-parallel kernels.
//!
//! With the `parallel` feature (default) the exhaustive axiom scans and the
//! row-reduction inner loops run on rayon.  Without it, or inside
//! [`run_sequential`], everything runs on the calling thread.  Results are
//! identical in both modes: rational arithmetic is exact, so reduction order
//! does not matter, and witness selection always takes the smallest index.

use std::cell::Cell;

thread_local! {
    static FORCE_SEQUENTIAL: Cell<bool> = const { Cell::new(false) };
}

/// Runs `f` with parallel dispatch disabled, then restores the previous mode.
///
/// Only affects kernels entered from the calling thread; used by the bench
/// suite to compare both modes in one build.
pub fn run_sequential<R>(f: impl FnOnce() -> R) -> R {
    FORCE_SEQUENTIAL.with(|flag| {
        let prev = flag.replace(true);
        let out = f();
        flag.set(prev);
        out
    })
}

pub(crate) fn sequential_forced() -> bool {
    FORCE_SEQUENTIAL.with(Cell::get)
}

/// Maps `f` over `0..n`, preserving index order in the output.
pub(crate) fn map_indices<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        if !sequential_forced() {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
    }
    (0..n).map(f).collect()
}

/// First `Some` produced over `0..n`, by smallest index.
pub(crate) fn find_first_index<T: Send>(
    n: usize,
    f: impl Fn(usize) -> Option<T> + Sync + Send,
) -> Option<T> {
    #[cfg(feature = "parallel")]
    {
        if !sequential_forced() {
            use rayon::prelude::*;
            return (0..n).into_par_iter().find_map_first(f);
        }
    }
    (0..n).find_map(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_preserves_order() {
        assert_eq!(map_indices(5, |i| 2 * i), vec![0, 2, 4, 6, 8]);
        assert_eq!(run_sequential(|| map_indices(5, |i| 2 * i)), vec![0, 2, 4, 6, 8]);
    }

    #[test]
    fn find_first_takes_smallest_index() {
        let hit = find_first_index(1000, |i| if i % 7 == 3 { Some(i) } else { None });
        assert_eq!(hit, Some(3));
        assert_eq!(run_sequential(|| find_first_index(10, |_| None::<usize>)), None);
    }

    #[test]
    fn sequential_flag_restored_after_panic_free_run() {
        assert!(!sequential_forced());
        run_sequential(|| assert!(sequential_forced()));
        assert!(!sequential_forced());
    }
}
