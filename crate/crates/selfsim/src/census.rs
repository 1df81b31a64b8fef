use crate::action::{LevelBudget, LevelMaps};
use crate::element::GroupElement;
use crate::error::Result;
use crate::presentation::WreathPresentation;
use sha2::{Digest, Sha256};
use std::collections::HashMap;

/// Fixed 128-bit fingerprint of a level-n index array: SHA-256 over the
/// little-endian `u32` images, truncated to the first 16 bytes.
pub fn fingerprint(images: &[u32]) -> [u8; 16] {
    let mut hasher = Sha256::new();
    for &v in images {
        hasher.update(v.to_le_bytes());
    }
    let digest = hasher.finalize();
    let mut out = [0u8; 16];
    out.copy_from_slice(&digest[..16]);
    out
}

pub fn fingerprint_hex(fp: &[u8; 16]) -> String {
    fp.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Copy, Debug)]
pub struct CensusBudget {
    /// Cap on freely reduced words enumerated.
    pub max_words: usize,
    pub level: LevelBudget,
}

impl Default for CensusBudget {
    fn default() -> Self {
        CensusBudget { max_words: 200_000, level: LevelBudget::default() }
    }
}

/// Ball census of a generator set measured on one tree level: for each
/// radius `r <= radius`, the number of distinct level-n actions among
/// freely reduced words of length at most `r` over the symmetrized set.
/// Counts are exact for the level-n quotient and lower bounds for the group.
#[derive(Clone, Debug)]
pub struct BallCensusReport {
    pub generators: Vec<String>,
    pub level: usize,
    pub radius: usize,
    pub counts: Vec<u64>,
    /// False when the word budget ran out; `counts` then stops at the last
    /// completed radius.
    pub complete: bool,
}

/// Enumerates freely reduced words over the symmetrized generator list by
/// breadth-first search, merging words with identical level-n actions.
/// Fingerprints that collide are re-checked on the full index arrays.
pub fn ball_census(
    pres: &WreathPresentation,
    gens: &[(String, GroupElement)],
    level: usize,
    radius: usize,
    budget: &CensusBudget,
) -> Result<BallCensusReport> {
    let maps = LevelMaps::build(pres, level, &budget.level)?;

    // Symmetrized letters: each generator and its inverse.
    let letters: Vec<GroupElement> = gens
        .iter()
        .flat_map(|(_, g)| [g.clone(), g.inverse()])
        .collect();

    let identity: Vec<u32> = (0..maps.points as u32).collect();
    let mut seen: HashMap<[u8; 16], Vec<usize>> = HashMap::new();
    seen.insert(fingerprint(&identity), Vec::new());

    // Frontier of reduced words: (letter sequence, action array).
    let mut frontier: Vec<(Vec<usize>, Vec<u32>)> = vec![(Vec::new(), identity)];
    let mut counts: Vec<u64> = vec![1];
    let mut words_enumerated = 1usize;
    let mut complete = true;

    'layers: for _r in 1..=radius {
        let mut next: Vec<(Vec<usize>, Vec<u32>)> = Vec::new();
        for (word, arr) in &frontier {
            for (li, letter) in letters.iter().enumerate() {
                // free reduction at the letter level: skip s * s^-1
                if let Some(&last) = word.last() {
                    if last ^ 1 == li {
                        continue;
                    }
                }
                if words_enumerated >= budget.max_words {
                    complete = false;
                    break 'layers;
                }
                words_enumerated += 1;
                let img = maps.compose_with(arr, letter);
                let fp = fingerprint(&img);
                let mut word2 = word.clone();
                word2.push(li);
                match seen.get(&fp) {
                    Some(rep) => {
                        // Hash collisions are ruled out by comparing the
                        // full arrays of the colliding pair.
                        let rep_arr = replay(&maps, &letters, rep);
                        if rep_arr != img {
                            // Genuine collision: keep both, distinguished by
                            // a secondary probe of the raw array.
                            let mut salted = fp;
                            salted[0] ^= 0x5a;
                            seen.insert(salted, word2.clone());
                            next.push((word2, img));
                        }
                    }
                    None => {
                        seen.insert(fp, word2.clone());
                        next.push((word2, img));
                    }
                }
            }
        }
        counts.push(seen.len() as u64);
        frontier = next;
    }

    Ok(BallCensusReport {
        generators: gens.iter().map(|(n, _)| n.clone()).collect(),
        level,
        radius: counts.len() - 1,
        counts,
        complete,
    })
}

fn replay(maps: &LevelMaps<'_>, letters: &[GroupElement], word: &[usize]) -> Vec<u32> {
    let mut arr: Vec<u32> = (0..maps.points as u32).collect();
    for &li in word {
        arr = maps.compose_with(&arr, &letters[li]);
    }
    arr
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{parse_presentation, F1_SOURCE};

    fn f1() -> WreathPresentation {
        parse_presentation(F1_SOURCE).unwrap()
    }

    #[test]
    fn level_one_radius_one_count_is_six() {
        // Oracle: distinct level-1 permutations among {1, a, b, b', c, c'};
        // a is an involution at level 1, so a and a' merge: six in all.
        let p = f1();
        let report =
            ball_census(&p, &p.generator_elements(), 1, 1, &CensusBudget::default()).unwrap();
        assert_eq!(report.counts, vec![1, 6]);
        assert!(report.complete);
    }

    #[test]
    fn identity_generator_census_is_constant_one() {
        let p = f1();
        let gens = vec![("e".to_string(), GroupElement::identity())];
        let report = ball_census(&p, &gens, 2, 3, &CensusBudget::default()).unwrap();
        assert_eq!(report.counts, vec![1, 1, 1, 1]);
    }

    #[test]
    fn counts_are_monotone_in_radius_and_level() {
        let p = f1();
        let gens = p.generator_elements();
        let r3 = ball_census(&p, &gens, 3, 3, &CensusBudget::default()).unwrap();
        for w in r3.counts.windows(2) {
            assert!(w[0] <= w[1]);
        }
        let r2 = ball_census(&p, &gens, 2, 3, &CensusBudget::default()).unwrap();
        for (lo, hi) in r2.counts.iter().zip(&r3.counts) {
            assert!(lo <= hi);
        }
    }

    #[test]
    fn budget_yields_partial_report() {
        let p = f1();
        let gens = p.generator_elements();
        let tight = CensusBudget { max_words: 5, level: LevelBudget::default() };
        let report = ball_census(&p, &gens, 1, 3, &tight).unwrap();
        assert!(!report.complete);
        assert!(report.radius < 3);
    }
}
