//! Replicate fan-out. With the `parallel` feature replicates run on the
//! rayon pool; without it they run in order. Results are identical either
//! way because every replicate derives its own random streams.

/// Evaluates `f` on replicates `0..n`, collecting results in replicate order.
pub fn map_replicates<T, F>(n: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_replicates_sequential(n, f)
    }
}

pub fn map_replicates_sequential<T, F>(n: u64, f: F) -> Vec<T>
where
    F: Fn(u64) -> T,
{
    (0..n).map(f).collect()
}

/// Runs `op` with `threads` workers (`None` keeps the global default).
pub fn with_threads<R: Send>(threads: Option<usize>, op: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    if let Some(n) = threads {
        match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => return pool.install(op),
            Err(e) => eprintln!("warning: could not build a {n}-thread pool: {e}"),
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    op()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let v = with_threads(Some(3), || map_replicates(100, |r| r * r));
        assert_eq!(v, map_replicates_sequential(100, |r| r * r));
    }
}
