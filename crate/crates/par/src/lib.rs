//! Data-parallel map and reduce helpers.
//!
//! With the `parallel` feature (on by default) work is spread over the rayon
//! pool; without it every call runs sequentially. A runtime [`Mode`] lets one
//! binary compare both paths.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    #[default]
    Parallel,
    Sequential,
}

impl Mode {
    /// The mode actually used, taking the compile-time feature into account.
    pub fn effective(self) -> Mode {
        if cfg!(feature = "parallel") {
            self
        } else {
            Mode::Sequential
        }
    }
}

pub fn parallel_available() -> bool {
    cfg!(feature = "parallel")
}

/// Order-preserving map over a slice.
pub fn map<T, R, F>(mode: Mode, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match mode.effective() {
        #[cfg(feature = "parallel")]
        Mode::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Order-preserving map over `0..n`.
pub fn map_range<R, F>(mode: Mode, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    match mode.effective() {
        #[cfg(feature = "parallel")]
        Mode::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(f).collect()
        }
        _ => (0..n).map(f).collect(),
    }
}

/// Map then fold with an associative combiner. The combination order is fixed
/// (left to right over the collected results) so floating-point output does
/// not depend on scheduling.
pub fn map_reduce<T, R, F, G>(mode: Mode, items: &[T], f: F, init: R, combine: G) -> R
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
    G: Fn(R, R) -> R,
{
    map(mode, items, f).into_iter().fold(init, combine)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let a = map(Mode::Parallel, &xs, |x| x * x);
        let b = map(Mode::Sequential, &xs, |x| x * x);
        assert_eq!(a, b);
        let s = map_reduce(Mode::Parallel, &xs, |x| *x, 0, |a, b| a + b);
        assert_eq!(s, 999 * 1000 / 2);
        assert_eq!(map_range(Mode::Sequential, 4, |i| i + 1), vec![1, 2, 3, 4]);
    }
}
