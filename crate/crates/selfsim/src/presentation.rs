use crate::element::{parse_element, GroupElement};
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::word::Alphabet;

/// A self-similar group presentation: one wreath recursion per generator,
/// i.e. a root permutation together with `d` section words.
#[derive(Clone, Debug)]
pub struct WreathPresentation {
    alphabet: Alphabet,
    names: Vec<String>,
    roots: Vec<Perm>,
    /// `sections[g][x]` is the section of generator `g` at letter `x` (0-based).
    sections: Vec<Vec<GroupElement>>,
}

impl WreathPresentation {
    pub fn new(
        alphabet: Alphabet,
        generators: Vec<(String, Perm, Vec<GroupElement>)>,
    ) -> Result<Self> {
        let d = alphabet.size();
        let names: Vec<String> = generators.iter().map(|(n, _, _)| n.clone()).collect();
        for (name, root, sections) in &generators {
            if root.degree() != d {
                return Err(Error::Invalid(format!(
                    "generator `{name}`: permutation degree {} does not match alphabet size {d}",
                    root.degree()
                )));
            }
            if sections.len() != d as usize {
                return Err(Error::Invalid(format!(
                    "generator `{name}`: {} sections given, alphabet size is {d}",
                    sections.len()
                )));
            }
            for s in sections {
                for lit in s.lits() {
                    if lit.gen as usize >= names.len() {
                        return Err(Error::UnknownName(format!("generator id {}", lit.gen)));
                    }
                }
            }
        }
        let roots = generators.iter().map(|(_, p, _)| p.clone()).collect();
        let sections = generators.into_iter().map(|(_, _, s)| s).collect();
        Ok(WreathPresentation { alphabet, names, roots, sections })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn degree(&self) -> u8 {
        self.alphabet.size()
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_id(&self, name: &str) -> Result<u16> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| i as u16)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn generator(&self, name: &str) -> Result<GroupElement> {
        Ok(GroupElement::generator(self.generator_id(name)?))
    }

    pub fn generator_root(&self, gen: u16) -> &Perm {
        &self.roots[gen as usize]
    }

    pub fn generator_section(&self, gen: u16, x: u8) -> &GroupElement {
        &self.sections[gen as usize][x as usize]
    }

    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        parse_element(&self.names, text)
    }

    pub fn display(&self, g: &GroupElement) -> String {
        g.display(&self.names)
    }

    /// All generators as elements, in declaration order.
    pub fn generator_elements(&self) -> Vec<(String, GroupElement)> {
        self.names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), GroupElement::generator(i as u16)))
            .collect()
    }
}

/// Parses recursion source text, one generator per line:
///
/// ```text
/// # comment
/// d = 6            (optional; inferred from the first generator otherwise)
/// a = <b', 1, b, c', 1, c> (1 3)(2 5)(4 6)
/// b = <b, b', 1, c, c', 1> (2 3 5 6)
/// c = <1,1,1,1,1,1> (1 2 3)(4 5 6)
/// ```
///
/// A section list `<>` abbreviates all-identity sections; a missing
/// permutation part is the identity permutation.
pub fn parse_presentation(text: &str) -> Result<WreathPresentation> {
    struct RawGen {
        name: String,
        sections_src: String,
        perm_src: String,
        line: usize,
    }

    let mut declared_d: Option<u8> = None;
    let mut raws: Vec<RawGen> = Vec::new();

    for (lineno, raw_line) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = match raw_line.find('#') {
            Some(i) => &raw_line[..i],
            None => raw_line,
        };
        if content.trim().is_empty() {
            continue;
        }
        let eq = content.find('=').ok_or(Error::Parse {
            line,
            col: 1,
            msg: "expected `name = <sections> (perm)`".into(),
        })?;
        let name = content[..eq].trim().to_string();
        let rhs = content[eq + 1..].trim();
        if name == "d" {
            let d: u8 = rhs.parse().map_err(|_| Error::Parse {
                line,
                col: eq + 2,
                msg: format!("bad alphabet size `{rhs}`"),
            })?;
            declared_d = Some(d);
            continue;
        }
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphabetic()) {
            return Err(Error::Parse {
                line,
                col: 1,
                msg: format!("bad generator name `{name}` (names are ASCII letters)"),
            });
        }
        let open = rhs.find('<').ok_or(Error::Parse {
            line,
            col: eq + 2,
            msg: "expected `<` opening the section list".into(),
        })?;
        let close = rhs.find('>').ok_or(Error::Parse {
            line,
            col: eq + 2 + open,
            msg: "unclosed section list".into(),
        })?;
        if close < open {
            return Err(Error::Parse { line, col: eq + 2, msg: "malformed section list".into() });
        }
        raws.push(RawGen {
            name,
            sections_src: rhs[open + 1..close].to_string(),
            perm_src: rhs[close + 1..].trim().to_string(),
            line,
        });
    }

    if raws.is_empty() {
        return Err(Error::Parse { line: 1, col: 1, msg: "no generators declared".into() });
    }

    // First pass: collect names so sections may reference later generators.
    let names: Vec<String> = raws.iter().map(|r| r.name.clone()).collect();
    for (i, r) in raws.iter().enumerate() {
        if names[..i].contains(&r.name) {
            return Err(Error::Parse {
                line: r.line,
                col: 1,
                msg: format!("generator `{}` declared twice", r.name),
            });
        }
    }

    // Alphabet size: declared, else inferred from the first nonempty list.
    let inferred = raws
        .iter()
        .map(|r| split_sections(&r.sections_src).len() as u8)
        .find(|&k| k > 0);
    let d = declared_d.or(inferred).ok_or(Error::Parse {
        line: raws[0].line,
        col: 1,
        msg: "alphabet size unknown: declare `d = <n>` or give explicit sections".into(),
    })?;
    let alphabet = Alphabet::new(d)?;

    let mut generators = Vec::with_capacity(raws.len());
    for r in &raws {
        let parts = split_sections(&r.sections_src);
        let sections: Vec<GroupElement> = if parts.is_empty() {
            vec![GroupElement::identity(); d as usize]
        } else {
            if parts.len() != d as usize {
                return Err(Error::Parse {
                    line: r.line,
                    col: 1,
                    msg: format!(
                        "generator `{}`: {} sections given, alphabet size is {d}",
                        r.name,
                        parts.len()
                    ),
                });
            }
            parts
                .iter()
                .map(|p| {
                    parse_element(&names, p).map_err(|e| match e {
                        Error::UnknownName(n) => Error::UndeclaredGenerator {
                            name: n,
                            line: r.line,
                            col: 1,
                        },
                        other => Error::Parse {
                            line: r.line,
                            col: 1,
                            msg: other.to_string(),
                        },
                    })
                })
                .collect::<Result<_>>()?
        };
        let perm = if r.perm_src.is_empty() {
            Perm::identity(d)
        } else {
            Perm::parse_cycles(d, &r.perm_src).map_err(|e| Error::Parse {
                line: r.line,
                col: 1,
                msg: e.to_string(),
            })?
        };
        generators.push((r.name.clone(), perm, sections));
    }

    WreathPresentation::new(alphabet, generators)
}

fn split_sections(src: &str) -> Vec<String> {
    let trimmed = src.trim();
    if trimmed.is_empty() {
        return Vec::new();
    }
    trimmed.split(',').map(|s| s.trim().to_string()).collect()
}

/// The recursion source for the degree-6 catalog map, exactly the data the
/// engine is validated against.
pub const F1_SOURCE: &str = "\
a = <b', 1, b, c', 1, c> (1 3)(2 5)(4 6)
b = <b, b', 1, c, c', 1> (2 3 5 6)
c = <1,1,1,1,1,1> (1 2 3)(4 5 6)
";

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_f1_source() {
        let p = parse_presentation(F1_SOURCE).unwrap();
        assert_eq!(p.degree(), 6);
        assert_eq!(p.names(), &["a", "b", "c"]);
        assert_eq!(p.generator_root(0).to_string(), "(1 3)(2 5)(4 6)");
        assert_eq!(p.generator_root(1).to_string(), "(2 3 5 6)");
        assert_eq!(p.generator_root(2).to_string(), "(1 2 3)(4 5 6)");
        // a = <b^-1, 1, b, c^-1, 1, c>
        let b = p.generator("b").unwrap();
        assert_eq!(p.generator_section(0, 0), &b.inverse());
        assert_eq!(p.generator_section(0, 2), &b);
        assert!(p.generator_section(0, 1).is_identity_word());
    }

    #[test]
    fn identity_only_presentation_with_declared_d() {
        let p = parse_presentation("d = 2\ne = <>()").unwrap();
        assert_eq!(p.degree(), 2);
        assert!(p.generator_root(0).is_identity());
        assert!(p.generator_section(0, 0).is_identity_word());
        assert!(p.generator_section(0, 1).is_identity_word());
    }

    #[test]
    fn undeclared_section_name_is_an_error() {
        let err = parse_presentation("a = <q, 1> (1 2)").unwrap_err();
        match err {
            Error::UndeclaredGenerator { name, .. } => assert_eq!(name, "q"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn non_bijective_permutation_is_an_error() {
        assert!(parse_presentation("a = <1, 1> (1 2)(2 1)").is_err());
    }

    #[test]
    fn missing_perm_means_identity() {
        let p = parse_presentation("a = <a, 1>").unwrap();
        assert!(p.generator_root(0).is_identity());
    }
}
