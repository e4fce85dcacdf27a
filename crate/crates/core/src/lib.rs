pub mod error;
pub mod fit;
pub mod generators;
pub mod growth;
mod graph;
pub mod lattice;
pub mod matrix;
pub mod serde_util;
pub mod spectral;
pub mod structure;
pub mod theorems;
pub mod tol;

/// Applies the `PERRON_THREADS` environment variable to the dense kernel
/// backend: unset, 0, or 1 select sequential evaluation (the deterministic
/// default); larger values cap the worker pool.
pub fn configure_parallelism_from_env() {
    let par = match std::env::var("PERRON_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        None | Some(0) | Some(1) => faer::Par::Seq,
        Some(k) => faer::Par::rayon(k),
    };
    faer::set_global_parallelism(par);
}
