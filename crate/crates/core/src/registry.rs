//! Name-keyed registries of interchangeable algorithm variants.

use crate::{Error, Result};

pub trait Named {
    fn name(&self) -> &'static str;
}

/// Variants behind a common trait object, looked up by name at runtime.
/// Registration order is also the order tried by automatic selection.
pub struct Registry<T: ?Sized + Named> {
    kind: &'static str,
    entries: Vec<Box<T>>,
}

impl<T: ?Sized + Named> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Registry { kind, entries: Vec::new() }
    }

    pub fn register(&mut self, entry: Box<T>) {
        assert!(self.entries.iter().all(|e| e.name() != entry.name()), "duplicate {} {}", self.kind, entry.name());
        self.entries.push(entry);
    }

    pub fn get(&self, name: &str) -> Result<&T> {
        self.entries.iter().find(|e| e.name() == name).map(|e| &**e).ok_or_else(|| {
            Error::InvalidParameter(format!("unknown {} `{name}` (known: {})", self.kind, self.names().join(", ")))
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.entries.iter().map(|e| &**e)
    }
}
