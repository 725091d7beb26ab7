//! Auxiliary-function files.
//!
//! ```toml
//! default = "zero"
//! entries = [
//!   [0, 0, 0, 1],
//!   [-1, 0, 1, 0],
//! ]
//! ```
//!
//! `default` names an [`HDefault`] rule; each entry is `[x, y, z, value]`.

use std::collections::BTreeMap;
use std::path::Path;

use recurselab_core::takeuchi3::Triple;
use recurselab_core::{HDefault, HSpec};
use serde::Deserialize;
use thiserror::Error;
use toml::Spanned;

#[derive(Debug, Error)]
pub enum HSpecFileError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    default: Spanned<String>,
    #[serde(default)]
    entries: Vec<Spanned<Vec<i64>>>,
}

fn line_of(src: &str, offset: usize) -> usize {
    src[..offset.min(src.len())].matches('\n').count() + 1
}

pub fn parse_hspec(src: &str) -> Result<HSpec, HSpecFileError> {
    let raw: RawFile = toml::from_str(src).map_err(|e| HSpecFileError::Malformed {
        line: e.span().map_or(1, |s| line_of(src, s.start)),
        message: e.message().trim().to_string(),
    })?;
    let malformed = |span: std::ops::Range<usize>, message: String| HSpecFileError::Malformed {
        line: line_of(src, span.start),
        message,
    };
    let default: HDefault = raw
        .default
        .get_ref()
        .parse()
        .map_err(|e: recurselab_core::variants::UnknownRule| malformed(raw.default.span(), e.to_string()))?;
    let mut seen: BTreeMap<Triple, i64> = BTreeMap::new();
    let mut h = HSpec::new(default);
    for entry in &raw.entries {
        let &[x, y, z, v] = entry.get_ref().as_slice() else {
            return Err(malformed(
                entry.span(),
                format!(
                    "entry must have 4 integers [x, y, z, value], found {}",
                    entry.get_ref().len()
                ),
            ));
        };
        let t = Triple::new(x, y, z);
        if let Some(prev) = seen.insert(t, v) {
            if prev != v {
                return Err(malformed(
                    entry.span(),
                    format!("conflicting values {prev} and {v} for {t}"),
                ));
            }
        }
        h.insert(t, v);
    }
    Ok(h)
}

pub fn load_hspec(path: &Path) -> Result<HSpec, HSpecFileError> {
    let src = std::fs::read_to_string(path).map_err(|source| HSpecFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_hspec(&src)
}
