//! On-disk cache of `Γ_C` and the mutation graph, keyed by type and orientation.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::category::ClusterCategory;
use crate::error::{Error, Result};

pub const CACHE_ENV: &str = "TROPFRIEZE_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".tropfrieze-cache";

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache I/O on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cache file {path} is not valid JSON: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Core(#[from] Error),
}

/// `$TROPFRIEZE_CACHE_DIR`, falling back to `.tropfrieze-cache`.
pub fn default_cache_dir() -> PathBuf {
    std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
}

/// File stem for a category, e.g. `A3__1-2_2-3`.
pub fn cache_key(cat: &ClusterCategory) -> String {
    let orientation: String = cat
        .ar()
        .orientation()
        .chars()
        .map(|c| match c {
            '>' => '-',
            ',' => '_',
            c if c.is_ascii_alphanumeric() => c,
            _ => '_',
        })
        .collect();
    format!("{}__{}", cat.ar().dynkin(), orientation)
}

/// The JSON documents stored for a category: `(suffix, document)`.
pub fn documents(cat: &ClusterCategory) -> Result<Vec<(&'static str, Value)>> {
    Ok(vec![("gamma", cat.ar().to_json()), ("graph", cat.graph()?.to_json(cat))])
}

fn path_for(dir: &Path, cat: &ClusterCategory, suffix: &str) -> PathBuf {
    dir.join(format!("{}.{suffix}.json", cache_key(cat)))
}

/// Writes both documents; returns the files written.
pub fn build_cache(dir: &Path, cat: &ClusterCategory) -> std::result::Result<Vec<PathBuf>, CacheError> {
    cat.ar().check_structure()?;
    fs::create_dir_all(dir).map_err(|source| CacheError::Io { path: dir.into(), source })?;
    let mut written = Vec::new();
    for (suffix, doc) in documents(cat)? {
        let path = path_for(dir, cat, suffix);
        let text = serde_json::to_string_pretty(&doc).expect("serializable");
        fs::write(&path, text + "\n").map_err(|source| CacheError::Io { path: path.clone(), source })?;
        written.push(path);
    }
    Ok(written)
}

/// Reads one cached document, or `None` if it is absent.
pub fn load(dir: &Path, cat: &ClusterCategory, suffix: &str) -> std::result::Result<Option<Value>, CacheError> {
    let path = path_for(dir, cat, suffix);
    match fs::read_to_string(&path) {
        Ok(text) => serde_json::from_str(&text).map(Some).map_err(|source| CacheError::Json { path, source }),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(source) => Err(CacheError::Io { path, source }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheStatus {
    Fresh,
    Missing,
    Stale,
}

/// Compares each cached document with a fresh build.
pub fn check_cache(
    dir: &Path,
    cat: &ClusterCategory,
) -> std::result::Result<Vec<(PathBuf, CacheStatus)>, CacheError> {
    let mut out = Vec::new();
    for (suffix, fresh) in documents(cat)? {
        let status = match load(dir, cat, suffix)? {
            None => CacheStatus::Missing,
            Some(cached) if cached == fresh => CacheStatus::Fresh,
            Some(_) => CacheStatus::Stale,
        };
        out.push((path_for(dir, cat, suffix), status));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::DynkinType;

    #[test]
    fn keys_are_filesystem_safe() {
        let cat = ClusterCategory::new(DynkinType::a(3), &"1>2,3>2".parse().unwrap()).unwrap();
        assert_eq!(cache_key(&cat), "A3__1-2_3-2");
    }
}
