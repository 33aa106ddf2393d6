//! Text formats, the on-disk configuration database and run settings.

pub mod db;
pub mod records;

pub use db::{cached_layer, extend_layer_resumable, ConfigurationDatabase, Manifest};
pub use records::{parse_records, write_records, ParsedRecords, RecordMeta};

use std::path::PathBuf;

/// Settings shared by the command-line tools.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// Worker threads; `None` leaves the choice to rayon.
    pub threads: Option<usize>,
    pub cache_dir: PathBuf,
    pub max_iterations: usize,
    pub max_pool: usize,
    pub long: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        let r = crate::realize::RealizeOptions::default();
        RunConfig {
            threads: None,
            cache_dir: PathBuf::from(".voro-cache"),
            max_iterations: r.max_iterations,
            max_pool: r.max_pool,
            long: false,
        }
    }
}

impl RunConfig {
    /// Reads `VORO_THREADS` and `VORO_CACHE_DIR`.
    pub fn from_env() -> crate::Result<Self> {
        let mut c = RunConfig::default();
        if let Ok(t) = std::env::var("VORO_THREADS") {
            let n: usize = t.trim().parse().map_err(|_| crate::Error::Invalid(format!("VORO_THREADS={t}")))?;
            if n == 0 {
                return Err(crate::Error::Invalid("VORO_THREADS must be positive".into()));
            }
            c.threads = Some(n);
        }
        if let Ok(d) = std::env::var("VORO_CACHE_DIR") {
            c.cache_dir = PathBuf::from(d);
        }
        Ok(c)
    }

    pub fn realize_options(&self) -> crate::realize::RealizeOptions {
        crate::realize::RealizeOptions {
            max_iterations: self.max_iterations,
            max_pool: self.max_pool,
            ..Default::default()
        }
    }
}
