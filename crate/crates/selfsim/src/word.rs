use crate::error::{Error, Result};
use std::fmt;

/// Alphabet `{1, ..., d}` of a regular rooted tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Alphabet {
    d: u8,
}

impl Alphabet {
    pub fn new(d: u8) -> Result<Self> {
        if d < 2 {
            return Err(Error::AlphabetTooSmall(d));
        }
        Ok(Alphabet { d })
    }

    pub fn size(&self) -> u8 {
        self.d
    }
}

/// A vertex of the tree of words: a finite sequence of letters, stored
/// 0-based. The empty word is the root (level 0).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TreeWord {
    letters: Vec<u8>,
}

impl TreeWord {
    pub fn empty() -> Self {
        TreeWord { letters: Vec::new() }
    }

    /// Builds from 1-based letters, validating against the alphabet.
    pub fn from_letters(alphabet: Alphabet, letters: &[usize]) -> Result<Self> {
        let mut out = Vec::with_capacity(letters.len());
        for &a in letters {
            if a == 0 || a > alphabet.size() as usize {
                return Err(Error::LetterOutOfRange { letter: a, d: alphabet.size() });
            }
            out.push((a - 1) as u8);
        }
        Ok(TreeWord { letters: out })
    }

    pub(crate) fn from_raw(letters: Vec<u8>) -> Self {
        TreeWord { letters }
    }

    pub fn level(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// 0-based letters.
    pub fn raw(&self) -> &[u8] {
        &self.letters
    }

    pub fn child(&self, letter0: u8) -> TreeWord {
        let mut letters = self.letters.clone();
        letters.push(letter0);
        TreeWord { letters }
    }

    pub fn prefix(&self, len: usize) -> TreeWord {
        TreeWord { letters: self.letters[..len].to_vec() }
    }

    /// Index of this word among the level-n words, letters
    /// most-significant-first in lexicographic order. This bijection is
    /// frozen; golden files depend on it.
    pub fn index(&self, d: u8) -> usize {
        let mut idx = 0usize;
        for &x in &self.letters {
            idx = idx * d as usize + x as usize;
        }
        idx
    }

    pub fn from_index(mut idx: usize, level: usize, d: u8) -> TreeWord {
        let mut letters = vec![0u8; level];
        for slot in letters.iter_mut().rev() {
            *slot = (idx % d as usize) as u8;
            idx /= d as usize;
        }
        TreeWord { letters }
    }

    /// Parses `134` (single digits, d <= 9) or dot-separated `1.10.3`.
    pub fn parse(alphabet: Alphabet, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(TreeWord::empty());
        }
        let letters: Vec<usize> = if text.contains('.') {
            text.split('.')
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::Invalid(format!("bad tree-word letter `{s}`")))
                })
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|v| v as usize)
                        .ok_or_else(|| Error::Invalid(format!("bad tree-word character `{c}`")))
                })
                .collect::<Result<_>>()?
        };
        TreeWord::from_letters(alphabet, &letters)
    }
}

impl fmt::Display for TreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.iter().all(|&x| x < 9) {
            for &x in &self.letters {
                write!(f, "{}", x + 1)?;
            }
        } else {
            for (i, &x) in self.letters.iter().enumerate() {
                if i > 0 {
                    write!(f, ".")?;
                }
                write!(f, "{}", x + 1)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_bijection_is_lexicographic_msb_first() {
        let a = Alphabet::new(6).unwrap();
        let w = TreeWord::parse(a, "213").unwrap();
        // (2-1)*36 + (1-1)*6 + (3-1) = 38
        assert_eq!(w.index(6), 38);
        assert_eq!(TreeWord::from_index(38, 3, 6), w);
        // lexicographic order matches index order
        let u = TreeWord::parse(a, "126").unwrap();
        assert!(u < w);
        assert!(u.index(6) < w.index(6));
    }

    #[test]
    fn empty_word_is_level_zero() {
        let a = Alphabet::new(2).unwrap();
        let w = TreeWord::parse(a, "").unwrap();
        assert_eq!(w.level(), 0);
        assert_eq!(w.index(2), 0);
    }

    #[test]
    fn rejects_out_of_range_letter() {
        let a = Alphabet::new(6).unwrap();
        assert!(TreeWord::parse(a, "17").is_err());
        assert!(TreeWord::parse(a, "10").is_err());
    }
}
