//! Process-wide access to Macdonald bases with a degree budget, an
//! in-memory table and an optional on-disk cache.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use super::{cache, compute_basis, MacdonaldBasis};
use crate::{Error, Result};

static BUDGET: AtomicU32 = AtomicU32::new(8);

type Slot = Arc<Mutex<Option<Arc<MacdonaldBasis>>>>;

fn slots() -> &'static Mutex<HashMap<u32, Slot>> {
    static SLOTS: OnceLock<Mutex<HashMap<u32, Slot>>> = OnceLock::new();
    SLOTS.get_or_init(|| Mutex::new(HashMap::new()))
}

fn dir_cell() -> &'static RwLock<Option<PathBuf>> {
    static DIR: OnceLock<RwLock<Option<PathBuf>>> = OnceLock::new();
    DIR.get_or_init(|| RwLock::new(None))
}

/// Largest degree for which bases may be computed.
pub fn budget() -> u32 {
    BUDGET.load(Ordering::Relaxed)
}

pub fn set_budget(n: u32) {
    BUDGET.store(n, Ordering::Relaxed);
}

/// Directory for persisted bases; `None` keeps everything in memory.
pub fn set_cache_dir(dir: Option<PathBuf>) {
    *dir_cell().write().expect("poisoned") = dir;
}

pub fn cache_dir() -> Option<PathBuf> {
    dir_cell().read().expect("poisoned").clone()
}

/// The Macdonald basis of degree `n`, computed at most once per process.
pub fn basis(n: u32) -> Result<Arc<MacdonaldBasis>> {
    let budget = budget();
    if n > budget {
        return Err(Error::DegreeBudget { degree: n, budget });
    }
    let slot = slots().lock().expect("poisoned").entry(n).or_default().clone();
    let mut guard = slot.lock().expect("poisoned");
    if let Some(b) = guard.as_ref() {
        return Ok(b.clone());
    }
    let dir = cache_dir();
    if let Some(b) = dir.as_ref().and_then(|d| cache::cache_load(d, n)) {
        let b = Arc::new(b);
        *guard = Some(b.clone());
        return Ok(b);
    }
    let b = Arc::new(compute_basis(n)?);
    if let Some(d) = dir {
        if let Err(e) = cache::cache_store(&d, &b) {
            log::warn!("could not persist Macdonald basis of degree {n}: {e}");
        }
    }
    *guard = Some(b.clone());
    Ok(b)
}
