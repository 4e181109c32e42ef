//! Versioned on-disk cache of enumerated groups.
//!
//! ```json
//! {"format":"sylow2-group-v1","degree":8,"label":"G_3","order":64,"elements":["0001020304050607", ...]}
//! ```
//!
//! Each element is its 0-based image sequence, hex encoded: two hex digits
//! per point when the degree is at most 256, four otherwise. Loading
//! re-verifies closure unless the caller trusts the file.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::EnumeratedGroup;
use crate::perm::LeafPermutation;

pub const FORMAT: &str = "sylow2-group-v1";
pub const CACHE_DIR_ENV: &str = "SYLOW2_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupCacheFile {
    pub format: String,
    pub degree: usize,
    pub label: String,
    pub order: usize,
    pub elements: Vec<String>,
}

impl GroupCacheFile {
    pub fn from_group(group: &EnumeratedGroup) -> Self {
        GroupCacheFile {
            format: FORMAT.to_string(),
            degree: group.degree(),
            label: group.label().to_string(),
            order: group.order(),
            elements: group
                .iter()
                .map(|x| hex::encode(x.to_packed_bytes()))
                .collect(),
        }
    }

    /// Decodes the element list; with `trust == false` also checks that the
    /// elements form a group.
    pub fn into_group(self, trust: bool) -> Result<EnumeratedGroup> {
        if self.format != FORMAT {
            return Err(Error::Cache(format!("unsupported format {:?}", self.format)));
        }
        if self.degree == 0 {
            return Err(Error::Cache("degree must be positive".into()));
        }
        if self.elements.len() != self.order {
            return Err(Error::Cache(format!(
                "order {} but {} elements",
                self.order,
                self.elements.len()
            )));
        }
        let mut seen = HashSet::with_capacity(self.order);
        let mut elements = Vec::with_capacity(self.order);
        for text in &self.elements {
            let bytes = hex::decode(text).map_err(|e| Error::Cache(e.to_string()))?;
            let x = LeafPermutation::from_packed_bytes(self.degree, &bytes)
                .map_err(|e| Error::Cache(e.to_string()))?;
            if !seen.insert(x.clone()) {
                return Err(Error::Cache(format!("duplicate element {text}")));
            }
            elements.push(x);
        }
        if !seen.contains(&LeafPermutation::identity(self.degree)) {
            return Err(Error::Cache("identity missing".into()));
        }
        if trust {
            return Ok(EnumeratedGroup::from_trusted(&self.label, self.degree, elements));
        }
        let closed = match EnumeratedGroup::generated_by(&self.label, self.degree, elements, self.order) {
            Ok(g) => g,
            Err(Error::CapExceeded { .. }) => {
                return Err(Error::Cache("element set is not closed".into()))
            }
            Err(e) => return Err(e),
        };
        if closed.order() != self.order {
            return Err(Error::Cache("element set is not closed".into()));
        }
        Ok(closed)
    }
}

pub fn to_json(group: &EnumeratedGroup) -> String {
    serde_json::to_string(&GroupCacheFile::from_group(group)).expect("cache file serializes")
}

pub fn from_json(text: &str, trust: bool) -> Result<EnumeratedGroup> {
    let file: GroupCacheFile =
        serde_json::from_str(text).map_err(|e| Error::Cache(e.to_string()))?;
    file.into_group(trust)
}

pub fn save(group: &EnumeratedGroup, path: &Path) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| Error::Cache(e.to_string()))?;
    }
    fs::write(path, to_json(group)).map_err(|e| Error::Cache(e.to_string()))
}

pub fn load(path: &Path, trust: bool) -> Result<EnumeratedGroup> {
    let text = fs::read_to_string(path).map_err(|e| Error::Cache(e.to_string()))?;
    from_json(&text, trust)
}

/// Cache directory: the explicit path if given, else `$SYLOW2_CACHE_DIR`.
/// `None` disables caching.
pub fn resolve_dir(explicit: Option<&Path>) -> Option<PathBuf> {
    explicit
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from))
}

/// File name for a label, keeping only `[A-Za-z0-9_-]`.
pub fn file_name(label: &str) -> String {
    let clean: String = label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect();
    format!("{clean}.json")
}

/// Loads `label` from `dir` if present and valid, else builds it and
/// writes it back.
pub fn load_or_build<F>(dir: &Path, label: &str, trust: bool, build: F) -> Result<EnumeratedGroup>
where
    F: FnOnce() -> Result<EnumeratedGroup>,
{
    let path = dir.join(file_name(label));
    if path.exists() {
        if let Ok(g) = load(&path, trust) {
            return Ok(g);
        }
    }
    let g = build()?;
    save(&g, &path)?;
    Ok(g)
}
