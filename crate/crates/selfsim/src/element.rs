use crate::error::{Error, Result};
use std::fmt;

/// One letter of a group word: a generator or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Lit {
    pub gen: u16,
    pub inv: bool,
}

impl Lit {
    pub fn inverse(self) -> Lit {
        Lit { gen: self.gen, inv: !self.inv }
    }
}

/// A freely reduced word over the generators of a presentation. The empty
/// word is the identity. No group relations are applied during reduction;
/// relations must be discovered by the triviality decision procedure.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupElement {
    lits: Vec<Lit>,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement { lits: Vec::new() }
    }

    pub fn generator(gen: u16) -> Self {
        GroupElement { lits: vec![Lit { gen, inv: false }] }
    }

    /// Builds from literals, cancelling adjacent `g g^-1` pairs.
    pub fn from_lits<I: IntoIterator<Item = Lit>>(lits: I) -> Self {
        let mut out: Vec<Lit> = Vec::new();
        for lit in lits {
            match out.last() {
                Some(&top) if top.gen == lit.gen && top.inv != lit.inv => {
                    out.pop();
                }
                _ => out.push(lit),
            }
        }
        GroupElement { lits: out }
    }

    pub fn is_identity_word(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        GroupElement::from_lits(self.lits.iter().chain(other.lits.iter()).copied())
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement { lits: self.lits.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn pow(&self, e: i64) -> GroupElement {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = GroupElement::identity();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `self^h = h^-1 * self * h` (conjugation, right-action convention).
    pub fn conjugate(&self, h: &GroupElement) -> GroupElement {
        h.inverse().mul(self).mul(h)
    }

    /// `[g, h] = g^-1 h^-1 g h`.
    pub fn commutator(g: &GroupElement, h: &GroupElement) -> GroupElement {
        g.inverse().mul(&h.inverse()).mul(g).mul(h)
    }

    /// Renders the word using the given generator names, e.g. `a*b^4`.
    pub fn display(&self, names: &[String]) -> String {
        if self.lits.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.lits.len() {
            let lit = self.lits[i];
            let mut run = 1usize;
            while i + run < self.lits.len() && self.lits[i + run] == lit {
                run += 1;
            }
            let name = &names[lit.gen as usize];
            let part = match (lit.inv, run) {
                (false, 1) => name.clone(),
                (false, k) => format!("{name}^{k}"),
                (true, 1) => format!("{name}^-1"),
                (true, k) => format!("{name}^-{k}"),
            };
            parts.push(part);
            i += run;
        }
        parts.join("*")
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lits.is_empty() {
            return write!(f, "1");
        }
        for lit in &self.lits {
            write!(f, "g{}{}", lit.gen, if lit.inv { "'" } else { "" })?;
        }
        Ok(())
    }
}

/// Parses an element over named generators.
///
/// Accepted syntax, with `*` and whitespace as optional separators:
/// `a*b^4`, `ab4`, `ab^4`, `b'` (inverse), `b^-1`, `1` (identity).
/// Generator names are single characters; a trailing integer is an
/// exponent, an apostrophe inverts.
pub fn parse_element(names: &[String], text: &str) -> Result<GroupElement> {
    let lookup = |c: char| -> Result<u16> {
        names
            .iter()
            .position(|n| n.len() == 1 && n.chars().next() == Some(c))
            .map(|i| i as u16)
            .ok_or_else(|| Error::UnknownName(c.to_string()))
    };
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0usize;
    let mut lits: Vec<Lit> = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == '*' {
            i += 1;
            continue;
        }
        if c == '1' {
            i += 1;
            continue;
        }
        if !c.is_ascii_alphabetic() {
            return Err(Error::Invalid(format!("unexpected character `{c}` in element `{text}`")));
        }
        let gen = lookup(c)?;
        i += 1;
        let mut inv = false;
        let mut exp: i64 = 1;
        if i < chars.len() && chars[i] == '\'' {
            inv = true;
            i += 1;
        }
        if i < chars.len() && (chars[i] == '^' || chars[i].is_ascii_digit()) {
            let mut j = i;
            if chars[j] == '^' {
                j += 1;
            }
            let neg = j < chars.len() && chars[j] == '-';
            if neg {
                j += 1;
            }
            let start = j;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            if start == j {
                return Err(Error::Invalid(format!("missing exponent in element `{text}`")));
            }
            let mag: i64 = chars[start..j]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| Error::Invalid(format!("exponent overflow in `{text}`")))?;
            exp = if neg { -mag } else { mag };
            i = j;
        }
        if inv {
            exp = -exp;
        }
        let lit = Lit { gen, inv: exp < 0 };
        for _ in 0..exp.unsigned_abs() {
            lits.push(lit);
        }
    }
    Ok(GroupElement::from_lits(lits))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["a".into(), "b".into(), "c".into()]
    }

    #[test]
    fn inverse_cancellation() {
        let a = GroupElement::generator(0);
        assert!(a.mul(&a.inverse()).is_identity_word());
    }

    #[test]
    fn no_reduction_across_distinct_generators() {
        let ab = parse_element(&names(), "ab").unwrap();
        assert_eq!(ab.len(), 2);
    }

    #[test]
    fn full_reduction_of_word_and_inverse() {
        let ab = parse_element(&names(), "a*b").unwrap();
        let inv = parse_element(&names(), "b'a'").unwrap();
        assert!(ab.mul(&inv).is_identity_word());
    }

    #[test]
    fn parse_compact_and_caret_forms_agree() {
        let n = names();
        for text in ["a*b^4", "ab4", "ab^4", "a b4"] {
            assert_eq!(parse_element(&n, text).unwrap(), parse_element(&n, "ab^4").unwrap());
        }
        assert_eq!(parse_element(&n, "b'").unwrap(), parse_element(&n, "b^-1").unwrap());
        assert!(parse_element(&n, "1").unwrap().is_identity_word());
        assert!(parse_element(&n, "q").is_err());
    }

    #[test]
    fn display_groups_runs() {
        let n = names();
        let e = parse_element(&n, "ab^4b^-1").unwrap();
        assert_eq!(e.display(&n), "a*b^3");
        assert_eq!(GroupElement::identity().display(&n), "1");
    }

    #[test]
    fn commutator_convention() {
        // [g,h] = g^-1 h^-1 g h
        let n = names();
        let g = parse_element(&n, "a").unwrap();
        let h = parse_element(&n, "b").unwrap();
        assert_eq!(GroupElement::commutator(&g, &h), parse_element(&n, "a'b'ab").unwrap());
        assert_eq!(g.conjugate(&h), parse_element(&n, "b'ab").unwrap());
    }
}
