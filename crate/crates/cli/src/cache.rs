//! On-disk generator cache.
//!
//! Each generator is stored as the field labels of its reduced echelon
//! basis, `(n+1)·(2n+2)` little-endian `u16` values per record. A JSON
//! sidecar carries the header and record count; a cache whose sidecar does
//! not match the requested space or this build is ignored and rewritten.
//! Both files are written to a temporary name and renamed into place.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use hermicode_core::gf::FieldCtx;
use hermicode_core::hermitian::{HermitianSpace, Limits};
use hermicode_core::projspace::Subspace;
use hermicode_core::CODE_VERSION;
use log::{info, warn};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const CACHE_ENV: &str = "HERMICODE_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sidecar {
    pub p: u32,
    pub h: u32,
    pub n: usize,
    pub polynomial_id: String,
    pub code_version: String,
    pub count: u64,
    /// `u16` values per record.
    pub record_width: usize,
}

impl Sidecar {
    fn expected(field: &FieldCtx, n: usize, count: u64) -> Self {
        Sidecar {
            p: field.p(),
            h: field.h(),
            n,
            polynomial_id: field.polynomial_id(),
            code_version: CODE_VERSION.to_string(),
            count,
            record_width: (n + 1) * (2 * n + 2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheStatus {
    Disabled,
    Hit,
    Miss,
    /// A cache existed but was stale or unreadable; the reason is kept.
    Invalidated(String),
}

impl CacheStatus {
    pub fn label(&self) -> &'static str {
        match self {
            CacheStatus::Disabled => "disabled",
            CacheStatus::Hit => "hit",
            CacheStatus::Miss => "miss",
            CacheStatus::Invalidated(_) => "invalidated",
        }
    }
}

#[derive(Debug, Clone)]
pub struct GeneratorCache {
    dir: PathBuf,
}

impl GeneratorCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        GeneratorCache { dir: dir.into() }
    }

    /// `HERMICODE_CACHE_DIR` wins over the flag; neither means no cache.
    pub fn resolve(flag: Option<&Path>) -> Option<Self> {
        match std::env::var_os(CACHE_ENV) {
            Some(v) if !v.is_empty() => Some(GeneratorCache::new(PathBuf::from(v))),
            _ => flag.map(GeneratorCache::new),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn paths(&self, field: &FieldCtx, n: usize) -> (PathBuf, PathBuf) {
        let stem = format!("generators-p{}-h{}-n{}", field.p(), field.h(), n);
        (self.dir.join(format!("{stem}.bin")), self.dir.join(format!("{stem}.json")))
    }

    /// The cached generator bases, `None` when nothing is cached, or the
    /// reason a cache that exists cannot be used.
    pub fn load(&self, space: &HermitianSpace) -> std::result::Result<Option<Vec<Subspace>>, String> {
        let (bin, side) = self.paths(space.field(), space.n());
        if !side.exists() {
            return Ok(None);
        }
        let text = fs::read_to_string(&side).map_err(|e| format!("sidecar: {e}"))?;
        let found: Sidecar = serde_json::from_str(&text).map_err(|e| format!("sidecar: {e}"))?;
        let want = Sidecar::expected(space.field(), space.n(), found.count);
        if found != want {
            return Err(format!("sidecar {found:?} does not match {want:?}"));
        }
        let bytes = fs::read(&bin).map_err(|e| format!("records: {e}"))?;
        let width = want.record_width;
        if bytes.len() as u64 != found.count * width as u64 * 2 {
            return Err(format!("records: {} bytes for {} records", bytes.len(), found.count));
        }
        let labels: Vec<u16> = bytes.chunks_exact(2).map(|b| u16::from_le_bytes([b[0], b[1]])).collect();
        labels
            .chunks_exact(width)
            .map(|rec| space.pg().subspace_from_labels(rec).map_err(|e| format!("records: {e}")))
            .collect::<std::result::Result<_, _>>()
            .map(Some)
    }

    pub fn store(&self, space: &HermitianSpace) -> Result<()> {
        fs::create_dir_all(&self.dir).map_err(|e| Error::io(&self.dir, e))?;
        let (bin, side) = self.paths(space.field(), space.n());
        let mut bytes = Vec::new();
        for g in space.generators() {
            for l in g.space.labels() {
                bytes.extend_from_slice(&l.to_le_bytes());
            }
        }
        let sidecar = Sidecar::expected(space.field(), space.n(), space.generators().len() as u64);
        // records first, so a sidecar never points at a partial file
        write_atomic(&bin, &bytes)?;
        write_atomic(&side, serde_json::to_string_pretty(&sidecar)?.as_bytes())
    }
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, bytes).map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

/// Builds `H(2n+1, q²)` with its generators, going through the cache when
/// one is configured.
pub fn open_space(field: Arc<FieldCtx>, n: usize, cache: Option<&GeneratorCache>) -> Result<(HermitianSpace, CacheStatus)> {
    let limits = Limits::default();
    let mut space = HermitianSpace::points_only(field, n, limits)?;
    let Some(cache) = cache else {
        let gens = space.enumerate_generator_spaces(limits)?;
        space.install_generators(gens)?;
        return Ok((space, CacheStatus::Disabled));
    };
    let status = match cache.load(&space) {
        Ok(None) => CacheStatus::Miss,
        Ok(Some(gens)) => match space.install_generators(gens) {
            Ok(()) => {
                info!("generator cache hit in {}", cache.dir().display());
                return Ok((space, CacheStatus::Hit));
            }
            Err(e) => CacheStatus::Invalidated(e.to_string()),
        },
        Err(reason) => CacheStatus::Invalidated(reason),
    };
    if let CacheStatus::Invalidated(reason) = &status {
        warn!("discarding generator cache: {reason}");
    } else {
        info!("generator cache miss in {}", cache.dir().display());
    }
    let gens = space.enumerate_generator_spaces(limits)?;
    space.install_generators(gens)?;
    cache.store(&space)?;
    Ok((space, status))
}
