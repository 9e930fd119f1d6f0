//! Campaign drivers, reproducible instance generation and report
//! serialization behind the `biased-cube` binary.

pub mod campaign;
pub mod report;
pub mod rng;

/// Worker cap from `BIASED_CUBE_THREADS`; 0 or unset means automatic.
pub fn configured_threads() -> Option<usize> {
    match std::env::var("BIASED_CUBE_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(0) | Err(_) => None,
            Ok(k) => Some(k),
        },
        Err(_) => None,
    }
}

/// Applies the thread cap to the global rayon pool; harmless if the pool
/// already exists.
pub fn init_thread_pool() {
    if let Some(k) = configured_threads() {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global();
    }
}
