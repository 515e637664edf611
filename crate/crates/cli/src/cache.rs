//! Content-addressed report cache: one JSON file per key.

use serde_json::Value;
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

pub fn key(material: &Value) -> String {
    hex::encode(Sha256::digest(material.to_string().as_bytes()))
}

fn path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

/// A cached report, or `None` when absent or unreadable.
pub fn load(dir: &Path, key: &str) -> Option<Value> {
    let text = std::fs::read_to_string(path(dir, key)).ok()?;
    serde_json::from_str(&text).ok()
}

/// Best effort: failures to write the cache never fail the job.
pub fn store(dir: &Path, key: &str, v: &Value) {
    if std::fs::create_dir_all(dir).is_ok() {
        let tmp = dir.join(format!("{key}.tmp"));
        if std::fs::write(&tmp, v.to_string()).is_ok() {
            let _ = std::fs::rename(tmp, path(dir, key));
        }
    }
}

/// Cached value for `material`, computing and storing it on a miss or a
/// corrupted entry.
pub fn get_or_compute(
    dir: Option<&Path>,
    material: &Value,
    compute: impl FnOnce() -> anyhow::Result<Value>,
) -> anyhow::Result<Value> {
    let Some(dir) = dir else { return compute() };
    let k = key(material);
    if let Some(v) = load(dir, &k) {
        return Ok(v);
    }
    let v = compute()?;
    store(dir, &k, &v);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn hit_miss_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let m = json!({"k": 1});
        let mut calls = 0;
        let run = |calls: &mut i32| {
            get_or_compute(Some(dir.path()), &m, || {
                *calls += 1;
                Ok(json!({"v": 2}))
            })
            .unwrap()
        };
        assert_eq!(run(&mut calls), json!({"v": 2}));
        assert_eq!(run(&mut calls), json!({"v": 2}));
        assert_eq!(calls, 1);
        std::fs::write(path(dir.path(), &key(&m)), "{not json").unwrap();
        assert_eq!(run(&mut calls), json!({"v": 2}));
        assert_eq!(calls, 2);
    }
}
