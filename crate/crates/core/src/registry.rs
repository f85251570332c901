//! Name-keyed registries of interchangeable strategies.
//!
//! Counting routes for `n(L)` and the individual theorem checks are both
//! trait objects registered under a stable name, so callers (and the CLI)
//! can pick a subset at runtime.

use thiserror::Error;

pub trait Named {
    fn name(&self) -> &'static str;
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown {kind} `{name}` (known: {known})")]
pub struct UnknownStrategy {
    pub kind: &'static str,
    pub name: String,
    pub known: String,
}

pub struct Registry<T: ?Sized> {
    kind: &'static str,
    entries: Vec<Box<T>>,
}

impl<T: ?Sized + Named> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Self {
            kind,
            entries: Vec::new(),
        }
    }

    /// Adds a strategy; a later registration under the same name replaces
    /// the earlier one in place.
    pub fn register(&mut self, entry: Box<T>) -> &mut Self {
        match self.entries.iter().position(|e| e.name() == entry.name()) {
            Some(i) => self.entries[i] = entry,
            None => self.entries.push(entry),
        }
        self
    }

    pub fn get(&self, name: &str) -> Result<&T, UnknownStrategy> {
        self.entries
            .iter()
            .find(|e| e.name() == name)
            .map(|b| b.as_ref())
            .ok_or_else(|| UnknownStrategy {
                kind: self.kind,
                name: name.to_string(),
                known: self.names().join(", "),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.entries.iter().map(|b| b.as_ref())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Keeps only the named strategies, in registration order.
    pub fn retain_names<S: AsRef<str>>(&mut self, names: &[S]) -> Result<(), UnknownStrategy> {
        for n in names {
            self.get(n.as_ref())?;
        }
        self.entries
            .retain(|e| names.iter().any(|n| n.as_ref() == e.name()));
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    trait Greeter: Named {
        fn greet(&self) -> String;
    }

    struct Hello(&'static str);
    impl Named for Hello {
        fn name(&self) -> &'static str {
            self.0
        }
    }
    impl Greeter for Hello {
        fn greet(&self) -> String {
            format!("hello from {}", self.0)
        }
    }

    #[test]
    fn register_lookup_retain() {
        let mut r: Registry<dyn Greeter> = Registry::new("greeter");
        r.register(Box::new(Hello("a")))
            .register(Box::new(Hello("b")))
            .register(Box::new(Hello("a")));
        assert_eq!(r.names(), ["a", "b"]);
        assert_eq!(r.get("b").unwrap().greet(), "hello from b");
        let err = r.get("zz").err().unwrap();
        assert_eq!(err.known, "a, b");
        r.retain_names(&["b"]).unwrap();
        assert_eq!(r.names(), ["b"]);
        assert!(r.retain_names(&["nope"]).is_err());
    }
}
