use std::collections::HashMap;

/// Strings shorter than this (in bytes) are never pooled.
pub const MIN_POOLED_LEN: usize = 2;

/// Append-only table of strings already emitted in a stream. Encoder and
/// decoder grow their pools through the same sequence of inserts, so a back
/// reference index means the same string on both sides.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct StringPool {
    strings: Vec<String>,
    index: HashMap<String, u32>,
}

impl StringPool {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    pub fn get(&self, index: u64) -> Option<&str> {
        usize::try_from(index)
            .ok()
            .and_then(|i| self.strings.get(i))
            .map(String::as_str)
    }

    pub fn lookup(&self, s: &str) -> Option<u32> {
        self.index.get(s).copied()
    }

    /// Records `s` after it has been written out literally. Returns whether
    /// the pool grew.
    pub fn insert(&mut self, s: &str) -> bool {
        if s.len() < MIN_POOLED_LEN || self.index.contains_key(s) {
            return false;
        }
        let id = u32::try_from(self.strings.len()).expect("pool exceeds u32 entries");
        self.strings.push(s.to_owned());
        self.index.insert(s.to_owned(), id);
        true
    }

    pub fn strings(&self) -> &[String] {
        &self.strings
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn append_only_and_unique() {
        let mut pool = StringPool::new();
        assert!(!pool.insert("a"));
        assert!(pool.insert("ab"));
        assert!(!pool.insert("ab"));
        assert!(pool.insert("héllo"));
        assert_eq!(pool.lookup("ab"), Some(0));
        assert_eq!(pool.lookup("héllo"), Some(1));
        assert_eq!(pool.get(1), Some("héllo"));
        assert_eq!(pool.get(2), None);
        assert_eq!(pool.get(u64::MAX), None);
        assert_eq!(pool.len(), 2);
    }
}
