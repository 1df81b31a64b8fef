use crate::action::{LevelBudget, LevelMaps};
use crate::census::{fingerprint, fingerprint_hex};
use crate::decide::{Equality, Limits, Triviality};
use crate::element::GroupElement;
use crate::presentation::WreathPresentation;

/// Level policy for free-semigroup certification. The default starting
/// level is the smallest n with `2^(n-3) > max_len`.
#[derive(Clone, Debug)]
pub struct SemigroupPolicy {
    pub n_start: Option<usize>,
    pub n_max: usize,
    pub level_budget: LevelBudget,
    pub limits: Limits,
}

impl Default for SemigroupPolicy {
    fn default() -> Self {
        SemigroupPolicy {
            n_start: None,
            n_max: 10,
            level_budget: LevelBudget::default(),
            limits: Limits::default(),
        }
    }
}

pub fn default_start_level(max_len: usize) -> usize {
    let mut n = 1usize;
    while 1u128 << (n.saturating_sub(3)) <= max_len as u128 {
        n += 1;
    }
    n
}

/// Proof that all nonempty words of length <= `max_len` over the given
/// elements are pairwise distinct and nontrivial: every word carries a
/// level-n action fingerprint, and for every pair an explicitly stored
/// level-n tree word separates the two actions.
#[derive(Clone, Debug)]
pub struct FreeSemigroupCertificate {
    pub generators: Vec<String>,
    pub max_len: usize,
    pub level: usize,
    /// Semigroup words as index sequences into `generators`.
    pub words: Vec<Vec<usize>>,
    pub fingerprints: Vec<String>,
    /// Indices (into the level-n word set) probed for every word.
    pub probe_indices: Vec<usize>,
    /// `probe_images[w][j]` is the image of probe j under word w.
    pub probe_images: Vec<Vec<u32>>,
    /// Extra separators for pairs the probes do not distinguish:
    /// `(word1, word2, level-n index, image1, image2)`.
    pub extra_separators: Vec<(usize, usize, usize, u32, u32)>,
}

impl FreeSemigroupCertificate {
    /// Re-checks pairwise separation from the stored data alone.
    pub fn separation_is_complete(&self) -> bool {
        let w = self.words.len();
        for i in 0..w {
            'pair: for j in i + 1..w {
                for (k, _) in self.probe_indices.iter().enumerate() {
                    if self.probe_images[i][k] != self.probe_images[j][k] {
                        continue 'pair;
                    }
                }
                if !self
                    .extra_separators
                    .iter()
                    .any(|&(a, b, _, x, y)| a == i && b == j && x != y)
                {
                    return false;
                }
            }
        }
        true
    }
}

/// Two semigroup words proved equal as group elements (the right-hand side
/// may be empty, standing for the identity).
#[derive(Clone, Debug)]
pub struct CounterexamplePair {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum SemigroupOutcome {
    Certified(FreeSemigroupCertificate),
    Counterexample(CounterexamplePair),
    Inconclusive { reason: String },
}

/// Certifies that the given elements generate a free semigroup up to words
/// of length `max_len`: enumerates all nonempty words over the set (no
/// inverses), fingerprints their level-n actions, and raises n until all are
/// pairwise distinct and non-identity or `n_max` is reached. A
/// counterexample is reported only after an exact equality proof.
pub fn certify_free_semigroup(
    pres: &WreathPresentation,
    gens: &[(String, GroupElement)],
    max_len: usize,
    policy: &SemigroupPolicy,
) -> SemigroupOutcome {
    assert!(!gens.is_empty() && max_len >= 1);
    let words = enumerate_words(gens.len(), max_len);
    let elements: Vec<GroupElement> = words
        .iter()
        .map(|w| {
            w.iter().fold(GroupElement::identity(), |acc, &i| acc.mul(&gens[i].1))
        })
        .collect();

    let mut n = policy.n_start.unwrap_or_else(|| default_start_level(max_len));
    loop {
        if n > policy.n_max {
            return SemigroupOutcome::Inconclusive {
                reason: format!("level cap {} reached without full separation", policy.n_max),
            };
        }
        let maps = match LevelMaps::build(pres, n, &policy.level_budget) {
            Ok(m) => m,
            Err(e) => return SemigroupOutcome::Inconclusive { reason: e.to_string() },
        };
        match try_level(pres, gens, &words, &elements, &maps, max_len, policy) {
            LevelVerdict::Certified(cert) => return SemigroupOutcome::Certified(cert),
            LevelVerdict::Counterexample(pair) => {
                return SemigroupOutcome::Counterexample(pair)
            }
            LevelVerdict::RaiseTo(m) => n = m.max(n + 1),
            LevelVerdict::Inconclusive(reason) => {
                return SemigroupOutcome::Inconclusive { reason }
            }
        }
    }
}

enum LevelVerdict {
    Certified(FreeSemigroupCertificate),
    Counterexample(CounterexamplePair),
    RaiseTo(usize),
    Inconclusive(String),
}

fn try_level(
    pres: &WreathPresentation,
    gens: &[(String, GroupElement)],
    words: &[Vec<usize>],
    elements: &[GroupElement],
    maps: &LevelMaps<'_>,
    max_len: usize,
    policy: &SemigroupPolicy,
) -> LevelVerdict {
    let points = maps.points;
    let probes = probe_indices(points);
    let gen_arrays: Vec<Vec<u32>> = gens.iter().map(|(_, g)| maps.action_of(g).images).collect();

    // Walk the prefix tree of semigroup words, composing one generator
    // action per node.
    struct Acc {
        fps: Vec<[u8; 16]>,
        probe_images: Vec<Vec<u32>>,
        moved: Vec<bool>,
    }
    let mut acc = Acc { fps: Vec::new(), probe_images: Vec::new(), moved: Vec::new() };

    fn visit(
        prefix_arr: &[u32],
        depth: usize,
        max_len: usize,
        gen_arrays: &[Vec<u32>],
        probes: &[usize],
        acc: &mut Acc,
    ) {
        for ga in gen_arrays.iter() {
            let mut arr = vec![0u32; prefix_arr.len()];
            for (i, &v) in prefix_arr.iter().enumerate() {
                arr[i] = ga[v as usize];
            }
            acc.fps.push(fingerprint(&arr));
            acc.probe_images.push(probes.iter().map(|&i| arr[i]).collect());
            acc.moved.push(arr.iter().enumerate().any(|(i, &v)| i != v as usize));
            if depth + 1 < max_len {
                visit(&arr, depth + 1, max_len, gen_arrays, probes, acc);
            }
        }
    }
    let identity: Vec<u32> = (0..points as u32).collect();
    visit(&identity, 0, max_len, &gen_arrays, &probes, &mut acc);

    // The DFS enumerates words in prefix order; reorder to `words` order
    // (by length, then lexicographic).
    let dfs_words = enumerate_words_prefix_order(gens.len(), max_len);
    let mut order = vec![0usize; words.len()];
    for (dfs_i, w) in dfs_words.iter().enumerate() {
        let idx = words.binary_search_by(|probe| cmp_words(probe, w)).unwrap();
        order[idx] = dfs_i;
    }
    let fp_of = |i: usize| acc.fps[order[i]];
    let probes_of = |i: usize| &acc.probe_images[order[i]];
    let moved_of = |i: usize| acc.moved[order[i]];

    // Nontriviality: a word with the identity action is either a genuine
    // relation (proved by the exact decision) or needs a deeper level.
    for i in 0..words.len() {
        if !moved_of(i) {
            match pres.is_trivial(&elements[i], &policy.limits) {
                Triviality::Trivial => {
                    return LevelVerdict::Counterexample(CounterexamplePair {
                        left: words[i].clone(),
                        right: Vec::new(),
                    })
                }
                Triviality::Nontrivial { witness } => {
                    return LevelVerdict::RaiseTo(witness.level());
                }
                Triviality::Inconclusive { .. } => {
                    return LevelVerdict::Inconclusive(format!(
                        "triviality of word {:?} undecided within budget",
                        words[i]
                    ))
                }
            }
        }
    }

    // Pairwise distinctness, fingerprint-first. Colliding fingerprints are
    // resolved on the full arrays, then by the exact equality decision.
    use std::collections::HashMap;
    let mut groups: HashMap<[u8; 16], Vec<usize>> = HashMap::new();
    for i in 0..words.len() {
        groups.entry(fp_of(i)).or_default().push(i);
    }
    for group in groups.values() {
        if group.len() < 2 {
            continue;
        }
        for (a_pos, &i) in group.iter().enumerate() {
            for &j in &group[a_pos + 1..] {
                let arr_i = replay_word(&identity, &gen_arrays, &words[i]);
                let arr_j = replay_word(&identity, &gen_arrays, &words[j]);
                if arr_i == arr_j {
                    match pres.equal(&elements[i], &elements[j], &policy.limits) {
                        Equality::Equal => {
                            return LevelVerdict::Counterexample(CounterexamplePair {
                                left: words[i].clone(),
                                right: words[j].clone(),
                            })
                        }
                        Equality::Distinct { witness } => {
                            return LevelVerdict::RaiseTo(witness.level())
                        }
                        Equality::Inconclusive { .. } => {
                            return LevelVerdict::Inconclusive(format!(
                                "equality of words {:?} and {:?} undecided within budget",
                                words[i], words[j]
                            ))
                        }
                    }
                }
            }
        }
    }

    // All actions pairwise distinct; store explicit separators for pairs
    // the probes do not already distinguish.
    let mut extra: Vec<(usize, usize, usize, u32, u32)> = Vec::new();
    let mut by_probe: HashMap<&[u32], Vec<usize>> = HashMap::new();
    for i in 0..words.len() {
        by_probe.entry(probes_of(i).as_slice()).or_default().push(i);
    }
    let mut blocks: Vec<&Vec<usize>> = by_probe.values().collect();
    blocks.sort();
    for block in blocks {
        if block.len() < 2 {
            continue;
        }
        let arrays: Vec<Vec<u32>> = block
            .iter()
            .map(|&i| replay_word(&identity, &gen_arrays, &words[i]))
            .collect();
        for a in 0..block.len() {
            for b in a + 1..block.len() {
                let sep = arrays[a]
                    .iter()
                    .zip(&arrays[b])
                    .position(|(x, y)| x != y)
                    .expect("distinct actions must differ somewhere");
                extra.push((block[a], block[b], sep, arrays[a][sep], arrays[b][sep]));
            }
        }
    }

    let cert = FreeSemigroupCertificate {
        generators: gens.iter().map(|(n, _)| n.clone()).collect(),
        max_len,
        level: maps.level,
        words: words.to_vec(),
        fingerprints: (0..words.len()).map(|i| fingerprint_hex(&fp_of(i))).collect(),
        probe_indices: probes,
        probe_images: (0..words.len()).map(|i| probes_of(i).clone()).collect(),
        extra_separators: extra,
    };
    debug_assert!(cert.separation_is_complete());
    LevelVerdict::Certified(cert)
}

fn replay_word(identity: &[u32], gen_arrays: &[Vec<u32>], word: &[usize]) -> Vec<u32> {
    let mut arr = identity.to_vec();
    for &g in word {
        let ga = &gen_arrays[g];
        for slot in arr.iter_mut() {
            *slot = ga[*slot as usize];
        }
    }
    arr
}

fn probe_indices(points: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (0..points.min(32)).collect();
    if points > 32 {
        let step = points / 32;
        for j in 0..32 {
            out.push(j * step + step / 2);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn cmp_words(a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// All nonempty words of length <= max_len, ordered by length then
/// lexicographically.
fn enumerate_words(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..k {
                let mut w2 = w.clone();
                w2.push(g);
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Same words in DFS prefix order (the order `try_level` visits them).
fn enumerate_words_prefix_order(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(prefix: &mut Vec<usize>, k: usize, max_len: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == max_len {
            return;
        }
        for g in 0..k {
            prefix.push(g);
            out.push(prefix.clone());
            rec(prefix, k, max_len, out);
            prefix.pop();
        }
    }
    rec(&mut Vec::new(), k, max_len, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{parse_presentation, F1_SOURCE};

    fn f1() -> WreathPresentation {
        parse_presentation(F1_SOURCE).unwrap()
    }

    fn shift_gens(p: &WreathPresentation) -> Vec<(String, GroupElement)> {
        ["ab4", "ab12", "ab20"]
            .iter()
            .map(|t| (t.to_string(), p.parse_element(t).unwrap()))
            .collect()
    }

    #[test]
    fn start_level_policy() {
        // smallest n with 2^(n-3) > N
        assert_eq!(default_start_level(3), 5);
        assert_eq!(default_start_level(5), 6);
        assert_eq!(default_start_level(1), 4);
    }

    #[test]
    fn certifies_39_words_at_len_three() {
        let p = f1();
        let outcome =
            certify_free_semigroup(&p, &shift_gens(&p), 3, &SemigroupPolicy::default());
        match outcome {
            SemigroupOutcome::Certified(cert) => {
                assert_eq!(cert.words.len(), 39);
                assert!(cert.separation_is_complete());
                assert!(cert.level >= 5);
            }
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    #[test]
    fn c_alone_has_a_counterexample() {
        let p = f1();
        let gens = vec![("c".to_string(), p.generator("c").unwrap())];
        match certify_free_semigroup(&p, &gens, 3, &SemigroupPolicy::default()) {
            SemigroupOutcome::Counterexample(pair) => {
                // c^3 = 1
                assert_eq!(pair.left, vec![0, 0, 0]);
                assert!(pair.right.is_empty());
            }
            other => panic!("expected counterexample, got {other:?}"),
        }
    }

    #[test]
    fn single_nontrivial_word_certifies() {
        let p = f1();
        let gens = vec![("a".to_string(), p.generator("a").unwrap())];
        match certify_free_semigroup(&p, &gens, 1, &SemigroupPolicy::default()) {
            SemigroupOutcome::Certified(cert) => assert_eq!(cert.words.len(), 1),
            other => panic!("expected certificate, got {other:?}"),
        }
    }
}
