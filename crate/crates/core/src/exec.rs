//! Execution policy: every data-parallel loop in the crate goes through
//! [`Exec`], which dispatches to rayon when the `parallel` feature is enabled
//! and the policy asks for it, and to a plain iterator otherwise.

/// How bulk loops are executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    /// Use the global rayon pool, or a dedicated pool with this many threads.
    #[default]
    Parallel,
    Threads(usize),
}

impl Exec {
    pub fn from_threads(threads: Option<usize>) -> Self {
        match threads {
            None | Some(0) => Exec::Parallel,
            Some(1) => Exec::Sequential,
            Some(k) => Exec::Threads(k),
        }
    }

    pub fn is_parallel(&self) -> bool {
        cfg!(feature = "parallel") && !matches!(self, Exec::Sequential)
    }

    /// Run `f` inside the pool this policy designates.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        #[cfg(feature = "parallel")]
        if let Exec::Threads(k) = *self {
            if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(k).build() {
                return pool.install(f);
            }
        }
        f()
    }

    /// Order-preserving map.
    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return self.install(|| items.par_iter().map(f).collect());
        }
        items.iter().map(f).collect()
    }

    /// Order-preserving flat map.
    pub fn flat_map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Vec<R> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return self.install(|| items.par_iter().flat_map_iter(f).collect());
        }
        items.iter().flat_map(f).collect()
    }

    /// Order-preserving fallible map; the first error in input order wins.
    pub fn try_map<T, R, E, F>(&self, items: &[T], f: F) -> Result<Vec<R>, E>
    where
        T: Sync,
        R: Send,
        E: Send,
        F: Fn(&T) -> Result<R, E> + Sync + Send,
    {
        self.map(items, f).into_iter().collect()
    }
}
