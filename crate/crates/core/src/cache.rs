//! On-disk result cache: one JSON file per multidegree codimension, named
//! by its content hash.

use std::fs;
use std::path::{Path, PathBuf};

use crate::codim::{CodimCache, CodimResult};
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct FileCache {
    dir: PathBuf,
}

impl FileCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(FileCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }
}

impl CodimCache for FileCache {
    fn get(&self, key: &str) -> Option<CodimResult> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    fn put(&self, key: &str, value: &CodimResult) -> Result<()> {
        let tmp = self.dir.join(format!("{key}.json.tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_string_pretty(value)?)?;
        fs::rename(tmp, self.path(key))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::Builtin;
    use crate::codim::{codim_multidegree, Caps};
    use crate::free::MultiDegree;

    #[test]
    fn cached_value_equals_recomputation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = FileCache::new(dir.path()).unwrap();
        let def = Builtin::D.definition();
        let md = MultiDegree::new(vec![2, 1]);
        let caps = Caps::default();
        let first = codim_multidegree(&def.algebra, &def.action, &md, &caps, Some(&cache)).unwrap();
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
        let cached = codim_multidegree(&def.algebra, &def.action, &md, &caps, Some(&cache)).unwrap();
        let fresh = codim_multidegree(&def.algebra, &def.action, &md, &caps, None).unwrap();
        assert_eq!(first, cached);
        assert_eq!(cached, fresh);
    }
}
