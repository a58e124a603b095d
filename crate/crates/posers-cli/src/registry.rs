//! The batch registry: a single versioned JSON file tracking which products
//! carry which design, plus one digest file per recorded sequencing run.
//! Mutations take an exclusive advisory lock on a sidecar lock file and are
//! written temp-then-rename so a crash never leaves a half-updated registry.

use std::fs::{self, File};
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use posers::ingest::{read_digest, write_digest, RunDigest};

pub const REGISTRY_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunRecord {
    pub product_id: String,
    pub run_id: String,
    /// Digest file path, relative to the registry's digest directory.
    pub digest: String,
    /// Seconds since the Unix epoch at recording time.
    pub timestamp: u64,
}

/// One tagged batch: a design reference and the products carrying it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegistryEntry {
    pub batch_id: String,
    pub design_ref: String,
    pub products: Vec<String>,
    pub runs: Vec<RunRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Registry {
    pub version: u32,
    pub batches: Vec<RegistryEntry>,
}

impl Default for Registry {
    fn default() -> Self {
        Registry { version: REGISTRY_VERSION, batches: Vec::new() }
    }
}

impl Registry {
    pub fn batch(&self, batch_id: &str) -> Option<&RegistryEntry> {
        self.batches.iter().find(|b| b.batch_id == batch_id)
    }

    pub fn batch_mut(&mut self, batch_id: &str) -> Option<&mut RegistryEntry> {
        self.batches.iter_mut().find(|b| b.batch_id == batch_id)
    }
}

/// Where run digests live: `<registry>.digests/` next to the registry file.
pub fn digest_dir(registry_path: &Path) -> PathBuf {
    let mut name = registry_path.file_name().unwrap_or_default().to_os_string();
    name.push(".digests");
    registry_path.with_file_name(name)
}

fn lock_path(registry_path: &Path) -> PathBuf {
    let mut name = registry_path.file_name().unwrap_or_default().to_os_string();
    name.push(".lock");
    registry_path.with_file_name(name)
}

/// An exclusive advisory lock held for the duration of a registry mutation.
pub struct RegistryLock {
    file: File,
}

impl RegistryLock {
    pub fn acquire(registry_path: &Path, timeout: Duration) -> Result<Self> {
        let path = lock_path(registry_path);
        let file = File::create(&path)
            .with_context(|| format!("creating lock file {}", path.display()))?;
        let deadline = SystemTime::now() + timeout;
        loop {
            match file.try_lock() {
                Ok(()) => return Ok(RegistryLock { file }),
                Err(std::fs::TryLockError::WouldBlock) => {
                    if SystemTime::now() >= deadline {
                        bail!("timed out waiting for registry lock {}", path.display());
                    }
                    std::thread::sleep(Duration::from_millis(50));
                }
                Err(std::fs::TryLockError::Error(e)) => {
                    return Err(anyhow!("locking {}: {e}", path.display()))
                }
            }
        }
    }
}

impl Drop for RegistryLock {
    fn drop(&mut self) {
        let _ = self.file.unlock();
    }
}

pub fn load(path: &Path) -> Result<Registry> {
    if !path.exists() {
        return Ok(Registry::default());
    }
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let registry: Registry = serde_json::from_slice(&bytes)
        .with_context(|| format!("parsing registry {}", path.display()))?;
    if registry.version != REGISTRY_VERSION {
        bail!("registry {} has version {}, expected {REGISTRY_VERSION}", path.display(), registry.version);
    }
    Ok(registry)
}

/// Atomic write: serialize to a temp file in the same directory, then rename.
pub fn save(path: &Path, registry: &Registry) -> Result<()> {
    let tmp = path.with_extension("tmp");
    let mut bytes = serde_json::to_vec_pretty(registry)?;
    bytes.push(b'\n');
    fs::write(&tmp, bytes).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming {} into place", tmp.display()))?;
    Ok(())
}

pub fn now_epoch_seconds() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

/// Adds a batch. Fails if the batch already exists or product ids repeat.
pub fn add_batch(
    path: &Path,
    batch_id: &str,
    design_ref: &str,
    products: &[String],
) -> Result<()> {
    let _lock = RegistryLock::acquire(path, Duration::from_secs(10))?;
    let mut registry = load(path)?;
    if registry.batch(batch_id).is_some() {
        bail!("batch {batch_id:?} already exists");
    }
    let mut seen = std::collections::HashSet::new();
    for p in products {
        if !seen.insert(p) {
            bail!("duplicate product id {p:?}");
        }
    }
    registry.batches.push(RegistryEntry {
        batch_id: batch_id.to_string(),
        design_ref: design_ref.to_string(),
        products: products.to_vec(),
        runs: Vec::new(),
    });
    save(path, &registry)
}

/// Stores a run digest and records it under the product. The cross-run
/// check against other products happens before recording, in the caller.
pub fn record_run(
    path: &Path,
    batch_id: &str,
    product_id: &str,
    run_id: &str,
    digest: &RunDigest,
) -> Result<()> {
    let _lock = RegistryLock::acquire(path, Duration::from_secs(10))?;
    let mut registry = load(path)?;
    let batch = registry
        .batch_mut(batch_id)
        .ok_or_else(|| anyhow!("unknown batch {batch_id:?}"))?;
    if !batch.products.iter().any(|p| p == product_id) {
        bail!("unknown product {product_id:?} in batch {batch_id:?}");
    }
    if batch.runs.iter().any(|r| r.product_id == product_id && r.run_id == run_id) {
        bail!("run {run_id:?} already recorded for product {product_id:?}");
    }

    let dir = digest_dir(path);
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let digest_name = format!("{batch_id}_{product_id}_{run_id}.digest");
    let digest_path = dir.join(&digest_name);
    let mut file = File::create(&digest_path)
        .with_context(|| format!("creating {}", digest_path.display()))?;
    write_digest(&mut file, digest)?;

    batch.runs.push(RunRecord {
        product_id: product_id.to_string(),
        run_id: run_id.to_string(),
        digest: digest_name,
        timestamp: now_epoch_seconds(),
    });
    save(path, &registry)
}

/// Loads the digests of every recorded run of OTHER products in the batch,
/// the comparison set for cross-run duplicate detection.
pub fn other_product_digests(
    path: &Path,
    batch_id: &str,
    product_id: &str,
) -> Result<Vec<(RunRecord, RunDigest)>> {
    let registry = load(path)?;
    let Some(batch) = registry.batch(batch_id) else {
        bail!("unknown batch {batch_id:?}");
    };
    let dir = digest_dir(path);
    let mut out = Vec::new();
    for run in &batch.runs {
        if run.product_id == product_id {
            continue;
        }
        let digest_path = dir.join(&run.digest);
        let file = File::open(&digest_path)
            .with_context(|| format!("opening digest {}", digest_path.display()))?;
        let digest = read_digest(BufReader::new(file))?;
        out.push((run.clone(), digest));
    }
    Ok(out)
}
