//! Name-keyed registries of interchangeable strategies.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown {family} `{name}`; available: {available}")]
pub struct UnknownStrategy {
    pub family: &'static str,
    pub name: String,
    pub available: String,
}

/// Strategies of one family, kept in registration order.
pub struct Registry<T: ?Sized> {
    family: &'static str,
    entries: Vec<(&'static str, Box<T>)>,
}

impl<T: ?Sized> Registry<T> {
    pub fn new(family: &'static str) -> Self {
        Registry {
            family,
            entries: Vec::new(),
        }
    }

    /// Adds or replaces the strategy registered under `name`.
    pub fn register(&mut self, name: &'static str, strategy: Box<T>) {
        match self.entries.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = strategy,
            None => self.entries.push((name, strategy)),
        }
    }

    pub fn get(&self, name: &str) -> Result<&T, UnknownStrategy> {
        self.entries
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, s)| s.as_ref())
            .ok_or_else(|| UnknownStrategy {
                family: self.family,
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|(n, _)| *n).collect()
    }

    pub fn family(&self) -> &'static str {
        self.family
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    trait Greet {
        fn hello(&self) -> String;
    }

    struct Plain(&'static str);

    impl Greet for Plain {
        fn hello(&self) -> String {
            self.0.to_string()
        }
    }

    #[test]
    fn register_replace_and_lookup() {
        let mut r: Registry<dyn Greet> = Registry::new("greeter");
        r.register("a", Box::new(Plain("one")));
        r.register("b", Box::new(Plain("two")));
        r.register("a", Box::new(Plain("three")));
        assert_eq!(r.names(), vec!["a", "b"]);
        assert_eq!(r.get("a").unwrap().hello(), "three");
        let err = r.get("c").err().unwrap();
        assert_eq!(err.available, "a, b");
        assert!(err.to_string().contains("unknown greeter `c`"));
    }
}
