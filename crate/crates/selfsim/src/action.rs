use crate::element::{GroupElement, Lit};
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::presentation::WreathPresentation;
use crate::word::TreeWord;

/// The action of one element on a whole tree level, stored as an index map
/// under the frozen lexicographic word-index bijection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelAction {
    pub level: usize,
    pub degree: u8,
    /// `images[i]` is the index of the image of the level-n word with index `i`.
    pub images: Vec<u32>,
}

impl LevelAction {
    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| i == y as usize)
    }

    /// Order of the permutation (lcm of cycle lengths); `None` on overflow.
    pub fn order(&self) -> Option<u64> {
        let mut seen = vec![false; self.images.len()];
        let mut ord: u64 = 1;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len: u64 = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            ord = lcm_checked(ord, len)?;
        }
        Some(ord)
    }

    /// Restriction to level `n-1` via the prefix map.
    pub fn restrict_to_parent(&self) -> LevelAction {
        let d = self.degree as usize;
        let count = self.images.len() / d;
        let images = (0..count).map(|i| self.images[i * d] / d as u32).collect();
        LevelAction { level: self.level - 1, degree: self.degree, images }
    }
}

fn lcm_checked(a: u64, b: u64) -> Option<u64> {
    let g = gcd(a, b);
    (a / g).checked_mul(b)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

impl WreathPresentation {
    /// Root permutation of an element: the product of its letters' root
    /// permutations in word order (right-action convention).
    pub fn root_perm(&self, g: &GroupElement) -> Perm {
        let mut p = Perm::identity(self.degree());
        for lit in g.lits() {
            let q = self.generator_root(lit.gen);
            p = if lit.inv { p.compose(&q.inverse()) } else { p.compose(q) };
        }
        p
    }

    /// Section (restriction) of a single literal at letter `x` (0-based):
    /// returns the section word and the image letter `x^sigma`.
    fn lit_section(&self, lit: Lit, x: u8) -> (GroupElement, u8) {
        let root = self.generator_root(lit.gen);
        if !lit.inv {
            (self.generator_section(lit.gen, x).clone(), root.apply(x))
        } else {
            let y = root.inverse().apply(x);
            (self.generator_section(lit.gen, y).inverse(), y)
        }
    }

    /// Section `g|_x` at a first-level letter (0-based), freely reduced.
    /// Satisfies the cocycle rule `(gh)|_x = g|_x * h|_(x^sigma_g)`.
    pub fn section0(&self, g: &GroupElement, x: u8) -> GroupElement {
        let mut acc = GroupElement::identity();
        let mut pos = x;
        for &lit in g.lits() {
            let (s, next) = self.lit_section(lit, pos);
            acc = acc.mul(&s);
            pos = next;
        }
        acc
    }

    /// Section at a 1-based letter, with range check.
    pub fn section(&self, g: &GroupElement, letter: usize) -> Result<GroupElement> {
        if letter == 0 || letter > self.degree() as usize {
            return Err(Error::LetterOutOfRange { letter, d: self.degree() });
        }
        Ok(self.section0(g, (letter - 1) as u8))
    }

    /// Iterated section along a tree word; `section_at(g, empty) = g`.
    pub fn section_at(&self, g: &GroupElement, v: &TreeWord) -> GroupElement {
        let mut cur = g.clone();
        for &x in v.raw() {
            cur = self.section0(&cur, x);
        }
        cur
    }

    /// Image of a tree word under the element: `(xv)^g = x^sigma_g v^(g|_x)`.
    pub fn act(&self, g: &GroupElement, v: &TreeWord) -> TreeWord {
        let mut out = Vec::with_capacity(v.level());
        let mut cur = g.clone();
        for &x in v.raw() {
            out.push(self.root_perm(&cur).apply(x));
            cur = self.section0(&cur, x);
        }
        TreeWord::from_raw(out)
    }

    /// Whether `g` fixes the tree word `v`.
    pub fn fixes(&self, g: &GroupElement, v: &TreeWord) -> bool {
        self.act(g, v) == *v
    }

    /// The permutation induced by `g` on all `d^n` level-n words.
    pub fn level_action(&self, g: &GroupElement, n: usize, budget: &LevelBudget) -> Result<LevelAction> {
        let maps = LevelMaps::build(self, n, budget)?;
        Ok(maps.action_of(g))
    }
}

/// Memory budget for whole-level permutation arrays.
#[derive(Clone, Copy, Debug)]
pub struct LevelBudget {
    pub max_points: usize,
}

impl Default for LevelBudget {
    fn default() -> Self {
        LevelBudget { max_points: 2_000_000 }
    }
}

/// Precomputed level-n index permutations for every generator and inverse.
/// Element actions are composed from these by index gathering, so results
/// are identical however the composition is scheduled.
pub struct LevelMaps<'a> {
    pres: &'a WreathPresentation,
    pub level: usize,
    pub points: usize,
    /// `by_lit[2*g]` is generator `g`, `by_lit[2*g+1]` its inverse.
    by_lit: Vec<Vec<u32>>,
}

impl<'a> LevelMaps<'a> {
    pub fn build(pres: &'a WreathPresentation, n: usize, budget: &LevelBudget) -> Result<Self> {
        let d = pres.degree() as usize;
        let points = d
            .checked_pow(n as u32)
            .filter(|&p| p <= budget.max_points)
            .ok_or_else(|| {
                Error::Budget(format!("level {n} needs {d}^{n} points, budget is {}", budget.max_points))
            })?;
        let k = pres.generator_count();

        // Level 0: everything acts trivially on the single empty word.
        let mut prev: Vec<Vec<u32>> = vec![vec![0u32]; 2 * k];
        let mut prev_points = 1usize;

        for level in 1..=n {
            let cur_points = prev_points * d;
            let mut cur: Vec<Vec<u32>> = Vec::with_capacity(2 * k);
            for gi in 0..k {
                for inv in [false, true] {
                    let lit = Lit { gen: gi as u16, inv };
                    let mut arr = vec![0u32; cur_points];
                    for x in 0..d {
                        let (sec, image_letter) = pres.lit_section(lit, x as u8);
                        let block = apply_word_prev(&prev, &sec, prev_points);
                        let src = x * prev_points;
                        let dst = image_letter as usize * prev_points;
                        match block {
                            Some(map) => {
                                for j in 0..prev_points {
                                    arr[src + j] = dst as u32 + map[j];
                                }
                            }
                            None => {
                                // identity section
                                for j in 0..prev_points {
                                    arr[src + j] = (dst + j) as u32;
                                }
                            }
                        }
                    }
                    cur.push(arr);
                }
            }
            prev = cur;
            prev_points = cur_points;
            let _ = level;
        }

        Ok(LevelMaps { pres, level: n, points, by_lit: prev })
    }

    fn lit_map(&self, lit: Lit) -> &[u32] {
        &self.by_lit[2 * lit.gen as usize + lit.inv as usize]
    }

    /// Index permutation of an arbitrary element at this level.
    pub fn action_of(&self, g: &GroupElement) -> LevelAction {
        let mut images: Vec<u32> = (0..self.points as u32).collect();
        for &lit in g.lits() {
            let map = self.lit_map(lit);
            for slot in images.iter_mut() {
                *slot = map[*slot as usize];
            }
        }
        LevelAction { level: self.level, degree: self.pres.degree(), images }
    }

    /// In-place composition: replaces `images` with `images * lit`.
    pub fn compose_lit(&self, images: &mut [u32], lit: Lit) {
        let map = self.lit_map(lit);
        for slot in images.iter_mut() {
            *slot = map[*slot as usize];
        }
    }

    /// `out[i] = right[left[i]]`, the action of `left * right`.
    pub fn compose_with(&self, left: &[u32], right_word: &GroupElement) -> Vec<u32> {
        let mut out = left.to_vec();
        for &lit in right_word.lits() {
            self.compose_lit(&mut out, lit);
        }
        out
    }

    pub fn presentation(&self) -> &WreathPresentation {
        self.pres
    }
}

/// Applies a short section word to level-(n-1) maps; `None` stands for the
/// identity map (common case: trivial section).
fn apply_word_prev(prev: &[Vec<u32>], word: &GroupElement, points: usize) -> Option<Vec<u32>> {
    if word.is_identity_word() {
        return None;
    }
    let mut map: Vec<u32> = (0..points as u32).collect();
    for &lit in word.lits() {
        let lm = &prev[2 * lit.gen as usize + lit.inv as usize];
        for slot in map.iter_mut() {
            *slot = lm[*slot as usize];
        }
    }
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{parse_presentation, F1_SOURCE};
    use crate::word::TreeWord;

    fn f1() -> WreathPresentation {
        parse_presentation(F1_SOURCE).unwrap()
    }

    #[test]
    fn roots_of_f1_generators() {
        let p = f1();
        let a = p.generator("a").unwrap();
        let c = p.generator("c").unwrap();
        assert_eq!(p.root_perm(&a).to_string(), "(1 3)(2 5)(4 6)");
        assert_eq!(p.root_perm(&c).to_string(), "(1 2 3)(4 5 6)");
        assert!(p.root_perm(&GroupElement::identity()).is_identity());
    }

    #[test]
    fn sections_of_f1_generators() {
        let p = f1();
        let a = p.generator("a").unwrap();
        let b = p.generator("b").unwrap();
        let c = p.generator("c").unwrap();
        assert_eq!(p.section(&a, 1).unwrap(), b.inverse());
        assert_eq!(p.section(&b, 4).unwrap(), c);
        for x in 1..=6 {
            assert!(p.section(&GroupElement::identity(), x).unwrap().is_identity_word());
        }
        assert!(p.section(&a, 7).is_err());
        assert!(p.section(&a, 0).is_err());
    }

    #[test]
    fn act_on_words() {
        let p = f1();
        let a = p.generator("a").unwrap();
        let b = p.generator("b").unwrap();
        let c = p.generator("c").unwrap();
        let al = p.alphabet();
        assert_eq!(p.act(&a, &TreeWord::parse(al, "1").unwrap()).to_string(), "3");
        assert_eq!(p.act(&c, &TreeWord::parse(al, "4").unwrap()).to_string(), "5");
        // b fixes 1 and b|_1 = b, so "11" is fixed.
        assert_eq!(p.act(&b, &TreeWord::parse(al, "11").unwrap()).to_string(), "11");
        // empty word fixed by everything
        assert_eq!(p.act(&b, &TreeWord::empty()), TreeWord::empty());
    }

    #[test]
    fn section_at_iterates() {
        let p = f1();
        let g = p.parse_element("ab4").unwrap();
        assert_eq!(p.section_at(&g, &TreeWord::empty()), g);
        let v = TreeWord::parse(p.alphabet(), "1").unwrap();
        assert_eq!(p.section_at(&g, &v), p.section(&g, 1).unwrap());
    }

    #[test]
    fn level_action_matches_act_wordwise() {
        let p = f1();
        let g = p.parse_element("ab'c").unwrap();
        let n = 3;
        let act = p.level_action(&g, n, &LevelBudget::default()).unwrap();
        let d = p.degree();
        for i in 0..act.images.len() {
            let w = TreeWord::from_index(i, n, d);
            let img = p.act(&g, &w);
            assert_eq!(act.images[i] as usize, img.index(d));
        }
    }

    #[test]
    fn level_action_of_a_at_level_one() {
        let p = f1();
        let a = p.generator("a").unwrap();
        let act = p.level_action(&a, 1, &LevelBudget::default()).unwrap();
        assert_eq!(act.images, vec![2, 4, 0, 5, 1, 3]);
    }

    #[test]
    fn budget_is_enforced() {
        let p = f1();
        let a = p.generator("a").unwrap();
        let tight = LevelBudget { max_points: 10 };
        assert!(matches!(p.level_action(&a, 2, &tight), Err(Error::Budget(_))));
    }
}
