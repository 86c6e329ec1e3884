//! On-disk cache of generated documents, one JSON file per (kind, delta).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;

/// Bumped whenever a cached document changes shape.
pub const FORMAT_VERSION: u32 = 1;

pub const ENV_VAR: &str = "FLOORPOLY_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Templates,
    ExtTemplates,
    NodePoly,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Templates => "templates",
            Kind::ExtTemplates => "ext-templates",
            Kind::NodePoly => "nodepoly",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Cache {
    root: Option<PathBuf>,
}

impl Cache {
    pub fn disabled() -> Self {
        Cache { root: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache { root: Some(dir.into()) }
    }

    /// Explicit directory, then $FLOORPOLY_CACHE_DIR, then `.floorpoly` under
    /// $XDG_CACHE_HOME or ~/.cache. Disabled if none of these resolve.
    pub fn resolve(explicit: Option<&Path>) -> Self {
        if let Some(p) = explicit {
            return Self::at(p);
        }
        if let Some(p) = std::env::var_os(ENV_VAR).filter(|v| !v.is_empty()) {
            return Self::at(PathBuf::from(p));
        }
        let base = std::env::var_os("XDG_CACHE_HOME")
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")));
        match base {
            Some(b) => Self::at(b.join(".floorpoly")),
            None => Self::disabled(),
        }
    }

    pub fn path(&self, kind: Kind, delta: usize) -> Option<PathBuf> {
        self.root
            .as_ref()
            .map(|r| r.join(format!("v{FORMAT_VERSION}")).join(format!("{}-{delta}.json", kind.name())))
    }

    /// The cached document, or `compute()` stored for next time. Unreadable
    /// entries are recomputed; write failures are ignored.
    pub fn get_or_compute<T, E>(&self, kind: Kind, delta: usize, compute: impl FnOnce() -> Result<T, E>) -> Result<T, E>
    where
        T: Serialize + DeserializeOwned,
    {
        let path = self.path(kind, delta);
        if let Some(p) = &path {
            if let Some(v) = fs::read(p).ok().and_then(|b| serde_json::from_slice(&b).ok()) {
                return Ok(v);
            }
        }
        let value = compute()?;
        if let Some(p) = &path {
            let _ = store(p, &value);
        }
        Ok(value)
    }
}

fn store<T: Serialize>(path: &Path, value: &T) -> std::io::Result<()> {
    let dir = path.parent().expect("cache paths have a parent");
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(".{}.{}", path.file_name().unwrap().to_string_lossy(), std::process::id()));
    let mut f = fs::File::create(&tmp)?;
    f.write_all(&serde_json::to_vec(value)?)?;
    f.sync_all()?;
    fs::rename(&tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stores_reuses_and_recovers() {
        let dir = std::env::temp_dir().join(format!("floorpoly-cache-test-{}", std::process::id()));
        let cache = Cache::at(&dir);
        let mut calls = 0;
        let mut get = |cache: &Cache| {
            cache
                .get_or_compute(Kind::Templates, 9, || -> Result<Vec<u32>, ()> {
                    calls += 1;
                    Ok(vec![1, 2, 3])
                })
                .unwrap()
        };
        assert_eq!(get(&cache), vec![1, 2, 3]);
        assert_eq!(get(&cache), vec![1, 2, 3]);
        let path = cache.path(Kind::Templates, 9).unwrap();
        assert!(path.ends_with("v1/templates-9.json"));
        fs::write(&path, b"not json").unwrap();
        assert_eq!(get(&cache), vec![1, 2, 3]);
        assert_eq!(calls, 2);
        fs::remove_dir_all(&dir).unwrap();
    }
}
