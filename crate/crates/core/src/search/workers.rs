/// Chunked map over a frontier, optionally on a thread pool. Results are
/// concatenated in chunk order, so output never depends on the pool size.
pub(crate) struct Workers {
    #[cfg(feature = "parallel")]
    pool: Option<rayon::ThreadPool>,
}

impl Workers {
    /// `threads == 1` runs inline; `0` means one worker per core.
    #[allow(unused_variables)]
    pub(crate) fn new(threads: usize) -> Self {
        #[cfg(feature = "parallel")]
        {
            let pool =
                if threads == 1 { None } else { rayon::ThreadPoolBuilder::new().num_threads(threads).build().ok() };
            Workers { pool }
        }
        #[cfg(not(feature = "parallel"))]
        Workers {}
    }

    pub(crate) fn flat_map<T, R, F>(&self, items: &[T], f: F) -> alloc::vec::Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&[T]) -> alloc::vec::Vec<R> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            use rayon::prelude::*;
            let chunk = (items.len() / (pool.current_num_threads() * 4)).max(512);
            let parts: alloc::vec::Vec<alloc::vec::Vec<R>> = pool.install(|| items.par_chunks(chunk).map(&f).collect());
            return parts.into_iter().flatten().collect();
        }
        f(items)
    }
}
