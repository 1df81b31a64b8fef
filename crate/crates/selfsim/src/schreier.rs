use crate::action::{LevelBudget, LevelMaps};
use crate::decide::{Equality, Limits};
use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::presentation::WreathPresentation;
use crate::word::TreeWord;
use std::collections::VecDeque;
use std::fmt::Write as _;

/// Labeled Schreier graph of a generator list acting on one tree level.
/// Vertices are all level-n words (indexed by the frozen lexicographic
/// bijection); there is exactly one labeled edge per (vertex, generator).
#[derive(Clone, Debug)]
pub struct SchreierGraph {
    pub level: usize,
    pub degree: u8,
    pub labels: Vec<String>,
    /// `images[k][i]` is the endpoint of the edge labeled `labels[k]` at
    /// vertex `i`.
    pub images: Vec<Vec<u32>>,
}

impl SchreierGraph {
    pub fn vertex_count(&self) -> usize {
        (self.degree as usize).pow(self.level as u32)
    }

    pub fn vertex_name(&self, i: usize) -> String {
        TreeWord::from_index(i, self.level, self.degree).to_string()
    }

    /// Edge triples `(v, label, v^g)` in deterministic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, &str, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |i| {
            self.labels
                .iter()
                .enumerate()
                .map(move |(k, l)| (i, l.as_str(), self.images[k][i] as usize))
        })
    }

    /// Whether the graph is connected (generators taken undirected).
    pub fn connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut back: Vec<Vec<u32>> = self
            .images
            .iter()
            .map(|arr| {
                let mut inv = vec![0u32; arr.len()];
                for (i, &y) in arr.iter().enumerate() {
                    inv[y as usize] = i as u32;
                }
                inv
            })
            .collect();
        back.extend(self.images.iter().cloned());
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1usize;
        while let Some(v) = queue.pop_front() {
            for arr in &back {
                let w = arr[v] as usize;
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }

    /// DOT export: deterministic lexicographic vertex ordering, one edge
    /// statement per (vertex, generator), generator name as edge label.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph schreier {{");
        for i in 0..self.vertex_count() {
            let _ = writeln!(out, "  \"{}\";", self.vertex_name(i));
        }
        for (v, label, w) in self.edges() {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                self.vertex_name(v),
                self.vertex_name(w),
                label
            );
        }
        out.push_str("}\n");
        out
    }
}

/// Builds the level-n Schreier graph of labeled generators.
pub fn schreier_graph(
    pres: &WreathPresentation,
    gens: &[(String, GroupElement)],
    n: usize,
    budget: &LevelBudget,
) -> Result<SchreierGraph> {
    let maps = LevelMaps::build(pres, n, budget)?;
    let labels = gens.iter().map(|(l, _)| l.clone()).collect();
    let images = gens.iter().map(|(_, g)| maps.action_of(g).images).collect();
    Ok(SchreierGraph { level: n, degree: pres.degree(), labels, images })
}

/// True iff the generator list acts transitively on level n.
pub fn level_transitive(
    pres: &WreathPresentation,
    gens: &[(String, GroupElement)],
    n: usize,
    budget: &LevelBudget,
) -> Result<bool> {
    Ok(schreier_graph(pres, gens, n, budget)?.connected())
}

/// Report of a recurrence (self-replication) check at one letter: sections
/// of stabilizing witnesses, and whether bounded products of those sections
/// recover every generator of the presentation.
#[derive(Clone, Debug)]
pub struct RecurrenceReport {
    pub letter: usize,
    pub sections: Vec<GroupElement>,
    pub generates: bool,
    /// For each presentation generator recovered, a product over the
    /// sections (by index, negative = inverse) witnessing it.
    pub products: Vec<(String, Option<Vec<i32>>)>,
    pub search_length: usize,
}

/// Checks that each witness fixes the given 1-based letter, computes its
/// section there, and searches products of the sections (up to a bounded
/// length) for every presentation generator.
pub fn recurrence_witness(
    pres: &WreathPresentation,
    letter: usize,
    witnesses: &[GroupElement],
    limits: &Limits,
) -> Result<RecurrenceReport> {
    let d = pres.degree() as usize;
    if letter == 0 || letter > d {
        return Err(Error::LetterOutOfRange { letter, d: pres.degree() });
    }
    let x0 = (letter - 1) as u8;
    let mut sections = Vec::new();
    for w in witnesses {
        if pres.root_perm(w).apply(x0) != x0 {
            return Err(Error::WitnessMovesLetter {
                element: pres.display(w),
                letter,
            });
        }
        sections.push(pres.section0(w, x0));
    }

    // Breadth-first products of sections and inverses, identified against
    // each presentation generator by the exact equality decision.
    const SEARCH_LENGTH: usize = 4;
    let targets = pres.generator_elements();
    let mut found: Vec<Option<Vec<i32>>> = vec![None; targets.len()];

    let mut layer: Vec<(GroupElement, Vec<i32>)> = vec![(GroupElement::identity(), Vec::new())];
    let mut all: Vec<(GroupElement, Vec<i32>)> = Vec::new();
    for _ in 0..SEARCH_LENGTH {
        let mut next = Vec::new();
        for (prod, path) in &layer {
            for (i, s) in sections.iter().enumerate() {
                for (inv, step) in [(false, i as i32 + 1), (true, -(i as i32 + 1))] {
                    let factor = if inv { s.inverse() } else { s.clone() };
                    let candidate = prod.mul(&factor);
                    let mut path2 = path.clone();
                    path2.push(step);
                    next.push((candidate, path2));
                }
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    for (k, (_, target)) in targets.iter().enumerate() {
        for (candidate, path) in &all {
            if candidate.len() > target.len() + 6 {
                continue;
            }
            if pres.equal(candidate, target, limits) == Equality::Equal {
                found[k] = Some(path.clone());
                break;
            }
        }
    }

    let generates = found.iter().all(|f| f.is_some());
    Ok(RecurrenceReport {
        letter,
        sections,
        generates,
        products: targets
            .into_iter()
            .map(|(name, _)| name)
            .zip(found)
            .collect(),
        search_length: SEARCH_LENGTH,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{parse_presentation, F1_SOURCE};

    fn f1() -> WreathPresentation {
        parse_presentation(F1_SOURCE).unwrap()
    }

    fn f1_gens(p: &WreathPresentation) -> Vec<(String, GroupElement)> {
        p.generator_elements()
    }

    #[test]
    fn level_one_graph_matches_recursions() {
        let p = f1();
        let g = schreier_graph(&p, &f1_gens(&p), 1, &LevelBudget::default()).unwrap();
        assert_eq!(g.vertex_count(), 6);
        // a-edges (1 3)(2 5)(4 6)
        assert_eq!(g.images[0], vec![2, 4, 0, 5, 1, 3]);
        // b-edges (2 3 5 6), fixing 1 and 4
        assert_eq!(g.images[1], vec![0, 2, 4, 3, 5, 1]);
        // c-edges (1 2 3)(4 5 6)
        assert_eq!(g.images[2], vec![1, 2, 0, 4, 5, 3]);
    }

    #[test]
    fn identity_generator_gives_self_loops() {
        let p = f1();
        let gens = vec![("e".to_string(), GroupElement::identity())];
        let g = schreier_graph(&p, &gens, 2, &LevelBudget::default()).unwrap();
        assert!(g.edges().all(|(v, _, w)| v == w));
    }

    #[test]
    fn transitivity_at_small_levels() {
        let p = f1();
        let gens = f1_gens(&p);
        for n in 1..=5 {
            assert!(level_transitive(&p, &gens, n, &LevelBudget::default()).unwrap());
        }
        // c alone has orbits {1,2,3} and {4,5,6}
        let only_c = vec![("c".to_string(), p.generator("c").unwrap())];
        assert!(!level_transitive(&p, &only_c, 1, &LevelBudget::default()).unwrap());
    }

    #[test]
    fn dot_export_level_one() {
        let p = f1();
        let g = schreier_graph(&p, &f1_gens(&p), 1, &LevelBudget::default()).unwrap();
        let dot = g.to_dot();
        assert_eq!(dot.matches("->").count(), 18);
        assert!(dot.contains("\"1\" -> \"3\" [label=\"a\"];"));
        // determinism
        assert_eq!(dot, g.to_dot());
    }

    #[test]
    fn recurrence_witnesses_at_letter_one() {
        let p = f1();
        let lim = Limits::default();
        let b = p.generator("b").unwrap();
        let c = p.generator("c").unwrap();
        let w2 = b.pow(4).conjugate(&c);
        let report = recurrence_witness(&p, 1, &[b.clone(), w2], &lim).unwrap();
        assert_eq!(report.sections[0], b);
        // section of (b^4)^c at 1 is c^-1 b^-1
        assert_eq!(report.sections[1], c.inverse().mul(&b.inverse()));
        assert!(report.generates);

        // the identity section generates nothing
        let trivial = recurrence_witness(&p, 1, &[GroupElement::identity()], &lim).unwrap();
        assert!(!trivial.generates);

        // a moves letter 1
        let a = p.generator("a").unwrap();
        assert!(matches!(
            recurrence_witness(&p, 1, &[a], &lim),
            Err(Error::WitnessMovesLetter { .. })
        ));
    }
}
