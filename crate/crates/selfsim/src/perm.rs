use crate::error::{Error, Result};
use std::fmt;

/// A permutation of the letters `1..=d`, stored 0-based.
///
/// The right-action convention is used throughout: `x^(s*t) = (x^s)^t`,
/// so composition applies the left factor first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(d: u8) -> Self {
        Perm { images: (0..d).collect() }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &y in &images {
            if (y as usize) >= d || seen[y as usize] {
                return Err(Error::NotBijective {
                    d: d as u8,
                    msg: format!("image {} repeated or out of range", y as usize + 1),
                });
            }
            seen[y as usize] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation of `1..=d` from disjoint cycles given 1-based.
    pub fn from_cycles(d: u8, cycles: &[Vec<u8>]) -> Result<Self> {
        let mut images: Vec<u8> = (0..d).collect();
        let mut touched = vec![false; d as usize];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                if a == 0 || a > d {
                    return Err(Error::LetterOutOfRange { letter: a as usize, d });
                }
                if touched[(a - 1) as usize] {
                    return Err(Error::NotBijective {
                        d,
                        msg: format!("letter {a} appears in two cycles"),
                    });
                }
                touched[(a - 1) as usize] = true;
                let b = cycle[(i + 1) % cycle.len()];
                if b == 0 || b > d {
                    return Err(Error::LetterOutOfRange { letter: b as usize, d });
                }
                images[(a - 1) as usize] = b - 1;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> u8 {
        self.images.len() as u8
    }

    #[inline]
    pub fn apply(&self, x: u8) -> u8 {
        self.images[x as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| i == y as usize)
    }

    /// `self * other` under the right-action convention (`self` acts first).
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.images.len(), other.images.len());
        Perm {
            images: self.images.iter().map(|&y| other.images[y as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u8; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y as usize] = x as u8;
        }
        Perm { images }
    }

    /// Smallest letter (0-based) moved by the permutation, if any.
    pub fn first_moved(&self) -> Option<u8> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &y)| *i != y as usize)
            .map(|(i, _)| i as u8)
    }

    /// Order of the permutation (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.images.len()];
        let mut ord = 1u64;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }

    /// Disjoint cycles with 1-based letters, fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u8 + 1);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Parses disjoint-cycle notation like `(1 3)(2 5)(4 6)`; `()` or an
    /// empty string denotes the identity.
    pub fn parse_cycles(d: u8, text: &str) -> Result<Self> {
        let mut cycles: Vec<Vec<u8>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(Error::Invalid(format!("expected `(` in cycle notation: `{text}`")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| Error::Invalid(format!("unclosed cycle in `{text}`")))?;
            let inner = &rest[1..close];
            let letters: Vec<u8> = inner
                .split([' ', ','])
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<u8>()
                        .map_err(|_| Error::Invalid(format!("bad letter `{s}` in cycle")))
                })
                .collect::<Result<_>>()?;
            if !letters.is_empty() {
                cycles.push(letters);
            }
            rest = rest[close + 1..].trim_start();
        }
        Perm::from_cycles(d, &cycles)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, a) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_roundtrip() {
        let p = Perm::parse_cycles(6, "(1 3)(2 5)(4 6)").unwrap();
        assert_eq!(p.to_string(), "(1 3)(2 5)(4 6)");
        assert_eq!(p.apply(0), 2);
        assert!(p.compose(&p).is_identity());
        assert_eq!(p.order(), 2);
    }

    #[test]
    fn compose_applies_left_factor_first() {
        let s = Perm::parse_cycles(3, "(1 2)").unwrap();
        let t = Perm::parse_cycles(3, "(2 3)").unwrap();
        // 1 ^ (s*t) = (1^s)^t = 2^t = 3
        assert_eq!(s.compose(&t).apply(0), 2);
    }

    #[test]
    fn rejects_repeated_letter() {
        assert!(Perm::parse_cycles(3, "(1 2)(2 3)").is_err());
    }

    #[test]
    fn identity_displays_as_empty_parens() {
        assert_eq!(Perm::identity(4).to_string(), "()");
        assert!(Perm::parse_cycles(4, "()").unwrap().is_identity());
        assert!(Perm::parse_cycles(4, "").unwrap().is_identity());
    }
}
