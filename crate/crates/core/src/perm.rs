//! Permutations of `{0, …, m-1}`, printed 1-based in cycle notation.

use std::fmt;

use crate::error::{Error, Result};

/// Permutation stored in one-line form: `self[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Self((0..m).collect())
    }

    /// Validates a 0-based image list.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &j in &images {
            if j >= m || std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
        }
        Ok(Self(images))
    }

    /// Parses 1-based one-line notation, e.g. `[2,1,4,3]`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation("indices are 1-based".into()));
        }
        Self::from_images(images.iter().map(|&j| j - 1).collect())
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&j| j + 1).collect()
    }

    /// Parses cycle notation such as `(1 2)(3 4)(5 6)` on `m` letters;
    /// `()` or the empty string is the identity.
    pub fn parse_cycles(s: &str, m: usize) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidPermutation(format!("`{s}`: {msg}"));
        let mut images: Vec<usize> = (0..m).collect();
        let mut touched = vec![false; m];
        let mut rest = s.trim();
        while !rest.is_empty() {
            let inner_start = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
            let close = inner_start.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let cycle: Vec<usize> = inner_start[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| bad("non-integer entry")))
                .collect::<Result<_>>()?;
            for &i in &cycle {
                if i == 0 || i > m {
                    return Err(bad("index out of range"));
                }
                if std::mem::replace(&mut touched[i - 1], true) {
                    return Err(bad("index repeated"));
                }
            }
            for (pos, &i) in cycle.iter().enumerate() {
                images[i - 1] = cycle[(pos + 1) % cycle.len()] - 1;
            }
            rest = inner_start[close + 1..].trim_start();
        }
        Ok(Self(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Self(other.0.iter().map(|&j| self.0[j]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Self(inv)
    }

    /// Disjoint cycles (0-based), fixed points included, each starting at
    /// its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.0[start];
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.0[j];
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_cycle_notation() {
        let p = Permutation::parse_cycles("(1 2)(3 4)(5 6)", 6).unwrap();
        assert_eq!(p.to_one_based(), vec![2, 1, 4, 3, 6, 5]);
        assert_eq!(p.to_string(), "(1 2)(3 4)(5 6)");
        assert_eq!(p.order(), 2);
        assert!(Permutation::parse_cycles("()", 4).unwrap().is_identity());
        assert!(Permutation::parse_cycles("", 4).unwrap().is_identity());
        let c = Permutation::parse_cycles("(1 3 5)", 5).unwrap();
        assert_eq!(c.to_one_based(), vec![3, 2, 5, 4, 1]);
        assert_eq!(c.order(), 3);
    }

    #[test]
    fn rejects_bad_cycles() {
        for s in ["(1 2", "(1 1)", "(0 1)", "(1 7)", "1 2", "(1 2)(2 3)", "(a b)"] {
            assert!(Permutation::parse_cycles(s, 6).is_err(), "{s}");
        }
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
    }

    fn perm_strategy() -> impl Strategy<Value = Permutation> {
        (1usize..9)
            .prop_flat_map(|m| Just((0..m).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn cycle_notation_roundtrip(p in perm_strategy()) {
            let q = Permutation::parse_cycles(&p.to_string(), p.len()).unwrap();
            prop_assert_eq!(&q, &p);
            prop_assert!(p.compose(&p.inverse()).is_identity());
        }
    }
}
