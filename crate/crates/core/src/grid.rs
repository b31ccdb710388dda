//! Named parameter ranges such as `k=2..8,n=1..20`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed range {0:?} (expected name=a..b or name=a, comma separated)")]
pub struct GridError(pub String);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Grid(BTreeMap<String, (u64, u64)>);

impl Grid {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, range: RangeInclusive<u64>) -> Self {
        self.0.insert(name.to_string(), (*range.start(), *range.end()));
        self
    }

    pub fn get(&self, name: &str) -> Option<RangeInclusive<u64>> {
        self.0.get(name).map(|&(a, b)| a..=b)
    }

    pub fn range_or(&self, name: &str, default: RangeInclusive<u64>) -> RangeInclusive<u64> {
        self.get(name).unwrap_or(default)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }

    /// Copy of `self` with `defaults` filled in for missing names.
    pub fn or_defaults(&self, defaults: &[(&str, RangeInclusive<u64>)]) -> Grid {
        let mut g = self.clone();
        for (name, r) in defaults {
            g.0.entry(name.to_string())
                .or_insert((*r.start(), *r.end()));
        }
        g
    }
}

impl FromStr for Grid {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut g = Grid::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let bad = || GridError(part.to_string());
            let (name, range) = part.split_once('=').ok_or_else(bad)?;
            let name = name.trim();
            if name.is_empty() {
                return Err(bad());
            }
            let (a, b) = match range.split_once("..") {
                Some((a, b)) => {
                    let b = b.strip_prefix('=').unwrap_or(b);
                    (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)
                }
                None => {
                    let v: u64 = range.trim().parse().map_err(|_| bad())?;
                    (v, v)
                }
            };
            if a > b {
                return Err(bad());
            }
            g.0.insert(name.to_string(), (a, b));
        }
        Ok(g)
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, (a, b)) in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            if a == b {
                write!(f, "{name}={a}")?;
            } else {
                write!(f, "{name}={a}..{b}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let g: Grid = "k=2..8, n=1..20".parse().unwrap();
        assert_eq!(g.get("k"), Some(2..=8));
        assert_eq!(g.get("n"), Some(1..=20));
        assert_eq!(g.to_string(), "k=2..8,n=1..20");
        let g: Grid = "n=5,a=1..=3".parse().unwrap();
        assert_eq!(g.get("n"), Some(5..=5));
        assert_eq!(g.get("a"), Some(1..=3));
        assert_eq!("".parse::<Grid>().unwrap(), Grid::new());
    }

    #[test]
    fn rejects_garbage() {
        for s in ["k", "k=", "=1..2", "k=3..1", "k=a..b", "k=-1..2"] {
            assert!(s.parse::<Grid>().is_err(), "{s}");
        }
    }

    #[test]
    fn defaults() {
        let g: Grid = "n=1..3".parse().unwrap();
        let d = g.or_defaults(&[("n", 0..=9), ("k", 2..=4)]);
        assert_eq!(d.get("n"), Some(1..=3));
        assert_eq!(d.get("k"), Some(2..=4));
    }
}
