//! Multi-threaded enumeration.
//!
//! Each dimension is split on the multiplicity of the first allowed
//! character; slices run on a rayon pool and are merged in slice order.

use anyhow::{Context, Result};
use isoflat_core::search::{enumerate_slice, Accumulator};
use isoflat_core::{Family, SearchConfig};
use rayon::prelude::*;

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "ISOFLAT_WORKERS";

pub fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

pub fn enumerate(cfg: &SearchConfig) -> Result<Vec<(u32, Vec<Family>)>> {
    cfg.validate()?;
    for n in cfg.dims() {
        cfg.check_budget(n)?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .context("cannot start worker pool")?;
    pool.install(|| {
        cfg.dims()
            .map(|n| {
                let slices = (0..=n)
                    .into_par_iter()
                    .map(|v| enumerate_slice(cfg, n, Some(v)))
                    .collect::<Result<Vec<_>, _>>()?;
                let mut acc = Accumulator::new();
                for s in slices {
                    acc.merge(s);
                }
                Ok((n, acc.finalize(cfg.min_family_size)?))
            })
            .collect()
    })
}
