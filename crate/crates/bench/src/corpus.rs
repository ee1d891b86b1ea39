use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use bjson_core::json::{parse_json_bytes, JsonValue};
use bjson_core::schema::validate;
use bjson_core::{canonicalize, Schema};

use crate::BenchError;

/// One benchmark document with its schemas and metadata.
#[derive(Debug, Clone)]
pub struct Case {
    pub name: String,
    pub taxonomy: String,
    pub document: JsonValue,
    pub strict: Schema,
    pub loose: Schema,
    /// Published sizes of other formats, keyed by format name.
    pub references: BTreeMap<String, u64>,
}

/// Loads every case directory under `dir`, sorted by name.
pub fn load_corpus(dir: &Path) -> Result<Vec<Case>, BenchError> {
    let entries = fs::read_dir(dir).map_err(|e| BenchError::io(dir, e))?;
    let mut dirs = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| BenchError::io(dir, e))?;
        let path = entry.path();
        if path.is_dir() && path.join("document.json").is_file() {
            dirs.push(path);
        }
    }
    if dirs.is_empty() {
        return Err(BenchError::EmptyCorpus(dir.to_path_buf()));
    }
    dirs.sort();
    dirs.iter().map(|d| load_case(d)).collect()
}

pub fn load_case(dir: &Path) -> Result<Case, BenchError> {
    let name = dir
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let document = read_json(&dir.join("document.json"))?;
    let strict = read_schema(&dir.join("schema-strict.json"))?;
    let loose = read_schema(&dir.join("schema-loose.json"))?;
    let (taxonomy, references) = read_meta(&dir.join("meta.json"))?;

    if !validate(&strict, &document) {
        return Err(BenchError::StrictMismatch { case: name });
    }
    if !loose.is_any() {
        return Err(BenchError::LooseNotAny { case: name });
    }
    Ok(Case {
        name,
        taxonomy,
        document,
        strict,
        loose,
        references,
    })
}

fn read_json(path: &Path) -> Result<JsonValue, BenchError> {
    let bytes = fs::read(path).map_err(|e| BenchError::io(path, e))?;
    parse_json_bytes(&bytes).map_err(|source| BenchError::Json {
        path: path.to_path_buf(),
        source,
    })
}

fn read_schema(path: &Path) -> Result<Schema, BenchError> {
    canonicalize(&read_json(path)?).map_err(|source| BenchError::Schema {
        path: path.to_path_buf(),
        source,
    })
}

fn read_meta(path: &Path) -> Result<(String, BTreeMap<String, u64>), BenchError> {
    if !path.exists() {
        return Ok((String::new(), BTreeMap::new()));
    }
    let meta = read_json(path)?;
    let bad = |reason: &str| BenchError::Meta {
        path: PathBuf::from(path),
        reason: reason.to_owned(),
    };
    let map = meta.as_object().ok_or_else(|| bad("expected an object"))?;
    let taxonomy = match map.get("taxonomy") {
        None => String::new(),
        Some(t) => t.as_str().ok_or_else(|| bad("taxonomy must be a string"))?.to_owned(),
    };
    let mut references = BTreeMap::new();
    if let Some(refs) = map.get("references") {
        let refs = refs.as_object().ok_or_else(|| bad("references must be an object"))?;
        for (format, size) in refs {
            let size = size
                .as_i64()
                .and_then(|n| u64::try_from(n).ok())
                .ok_or_else(|| bad("reference sizes must be non-negative integers"))?;
            references.insert(format.clone(), size);
        }
    }
    Ok((taxonomy, references))
}
