use crate::action::{LevelBudget, LevelMaps};
use crate::element::GroupElement;
use crate::presentation::WreathPresentation;
use crate::word::TreeWord;
use std::collections::{HashSet, VecDeque};

/// Budget for section-closure searches. `Inconclusive` results are values,
/// not errors; no operation silently falls back to level-bounded checking.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Cap on distinct elements visited by one closure.
    pub max_states: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_states: 1_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Triviality {
    Trivial,
    Nontrivial { witness: TreeWord },
    Inconclusive { visited: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equality {
    Equal,
    Distinct { witness: TreeWord },
    Inconclusive { visited: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderResult {
    Finite(u64),
    InfiniteCertified(InfiniteOrderCertificate),
    Unknown,
}

/// Witness that `g` has infinite order. With `h` the section of `g` at the
/// (g-fixed) `prefix`: `h^e` fixes `v`, the section of `h^e` at `v` equals
/// `h` again, `h` is nontrivial, and `h` moves `v`. The plain self-fixpoint
/// pattern is the case of an empty prefix.
///
/// Soundness: suppose ord(h) = m were finite. The stabilizer of `v` in
/// <h> is generated by h^j with j > 1 (h moves v), and j divides both e
/// and m, so gcd(e, m) > 1. But ord(h^e) = m/gcd(e,m) < m, while the
/// section relation forces ord(h) to divide ord(h^e) - contradiction. So
/// ord(h) is infinite, and ord(h) divides ord(g) because g fixes `prefix`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfiniteOrderCertificate {
    pub element: GroupElement,
    pub prefix: TreeWord,
    pub exponent: u64,
    pub word: TreeWord,
}

impl WreathPresentation {
    /// Decides triviality by closing `{g}` under sections at all letters,
    /// with free reduction and memoization. `Trivial` iff every reachable
    /// element has the identity root permutation. `Nontrivial` returns a
    /// moved word of minimal discovered level.
    pub fn is_trivial(&self, g: &GroupElement, limits: &Limits) -> Triviality {
        let d = self.degree();
        let mut visited: HashSet<GroupElement> = HashSet::new();
        let mut queue: VecDeque<(GroupElement, TreeWord)> = VecDeque::new();
        visited.insert(g.clone());
        queue.push_back((g.clone(), TreeWord::empty()));

        while let Some((h, path)) = queue.pop_front() {
            let root = self.root_perm(&h);
            if let Some(x) = root.first_moved() {
                // Every element discovered at a shorter path had identity
                // root, so g fixes `path` letterwise and moves `path x`.
                return Triviality::Nontrivial { witness: path.child(x) };
            }
            for x in 0..d {
                let s = self.section0(&h, x);
                if visited.contains(&s) {
                    continue;
                }
                if visited.len() >= limits.max_states {
                    return Triviality::Inconclusive { visited: visited.len() };
                }
                visited.insert(s.clone());
                queue.push_back((s, path.child(x)));
            }
        }
        Triviality::Trivial
    }

    /// Decides `g = h` via triviality of `g * h^-1`.
    pub fn equal(&self, g: &GroupElement, h: &GroupElement, limits: &Limits) -> Equality {
        match self.is_trivial(&g.mul(&h.inverse()), limits) {
            Triviality::Trivial => Equality::Equal,
            Triviality::Nontrivial { witness } => Equality::Distinct { witness },
            Triviality::Inconclusive { visited } => Equality::Inconclusive { visited },
        }
    }

    /// Order of an element: the least `k <= k_max` with `g^k` trivial, else
    /// an infinite-order certificate, else `Unknown`.
    ///
    /// Any finite order is a multiple of the order of the induced action on
    /// a small level, so only those multiples are tested.
    pub fn order(&self, g: &GroupElement, k_max: u64, limits: &Limits) -> OrderResult {
        if g.is_identity_word() {
            return OrderResult::Finite(1);
        }
        // Order of the level-3 action divides ord(g); use it as a stride.
        let probe_level = 3usize.min(6);
        let stride = self
            .level_action(g, probe_level, &LevelBudget::default())
            .ok()
            .and_then(|act| act.order())
            .unwrap_or(1);

        let mut saw_inconclusive = false;
        if stride <= k_max {
            let mut k = stride;
            while k <= k_max {
                match self.is_trivial(&g.pow(k as i64), limits) {
                    Triviality::Trivial => {
                        if saw_inconclusive {
                            // A smaller candidate was undecided; least-ness
                            // cannot be claimed.
                            return OrderResult::Unknown;
                        }
                        return OrderResult::Finite(k);
                    }
                    Triviality::Nontrivial { .. } => {}
                    Triviality::Inconclusive { .. } => saw_inconclusive = true,
                }
                k += stride;
            }
        }
        match self.infinite_order_certificate(g, 6, 4, limits) {
            Some(cert) => OrderResult::InfiniteCertified(cert),
            None => OrderResult::Unknown,
        }
    }

    /// Searches for an infinite-order certificate: over prefixes `u` fixed
    /// by `g` (breadth-first, level <= depth_max), exponents `2..=e_max`,
    /// and `h^e`-fixed words `v` of level <= depth_max, looking for the
    /// section-fixpoint pattern `h^e|_v = h` where `h = g|_u`. The first
    /// certificate found (shallowest prefix, then smallest exponent, then
    /// lexicographically first word) is returned.
    pub fn infinite_order_certificate(
        &self,
        g: &GroupElement,
        e_max: u64,
        depth_max: usize,
        limits: &Limits,
    ) -> Option<InfiniteOrderCertificate> {
        match self.is_trivial(g, limits) {
            Triviality::Nontrivial { .. } => {}
            _ => return None,
        }
        let d = self.degree();
        // Small-level actions filter candidates before the exact equality
        // decision runs.
        let maps = LevelMaps::build(self, 3, &LevelBudget::default()).ok()?;

        let mut seen: HashSet<GroupElement> = HashSet::new();
        let mut frontier: Vec<(TreeWord, GroupElement)> = vec![(TreeWord::empty(), g.clone())];
        for _prefix_level in 0..=depth_max {
            for (u, h) in &frontier {
                if let Some((e, v)) = self.fixpoint_search(h, e_max, depth_max, &maps, limits) {
                    return Some(InfiniteOrderCertificate {
                        element: g.clone(),
                        prefix: u.clone(),
                        exponent: e,
                        word: v,
                    });
                }
            }
            let mut next = Vec::new();
            for (u, h) in &frontier {
                let root = self.root_perm(h);
                for x in 0..d {
                    if root.apply(x) != x {
                        continue;
                    }
                    let s = self.section0(h, x);
                    if seen.insert(s.clone()) {
                        next.push((u.child(x), s));
                    }
                }
            }
            frontier = next;
            if frontier.is_empty() {
                break;
            }
        }
        None
    }

    /// Looks for `(e, v)` with `h^e` fixing `v`, `h` moving `v`, and
    /// `h^e|_v = h`.
    fn fixpoint_search(
        &self,
        h: &GroupElement,
        e_max: u64,
        depth_max: usize,
        maps: &LevelMaps<'_>,
        limits: &Limits,
    ) -> Option<(u64, TreeWord)> {
        if h.is_identity_word() {
            return None;
        }
        let d = self.degree();
        let h_root = self.root_perm(h);
        let h_small = maps.action_of(h);
        for e in 2..=e_max {
            let he = h.pow(e as i64);
            let mut frontier: Vec<(TreeWord, GroupElement)> =
                vec![(TreeWord::empty(), he.clone())];
            for _ in 0..depth_max {
                let mut next = Vec::new();
                for (v, sv) in &frontier {
                    let root = self.root_perm(sv);
                    for x in 0..d {
                        if root.apply(x) != x {
                            continue;
                        }
                        let v2 = v.child(x);
                        let s = self.section0(sv, x);
                        if !self.fixes(h, &v2)
                            && self.root_perm(&s) == h_root
                            && maps.action_of(&s) == h_small
                            && self.equal(&s, h, limits) == Equality::Equal
                        {
                            return Some((e, v2));
                        }
                        next.push((v2, s));
                    }
                }
                frontier = next;
                if frontier.is_empty() {
                    break;
                }
            }
        }
        None
    }

    /// Re-checks a certificate independently of the search that produced it.
    pub fn check_certificate(&self, cert: &InfiniteOrderCertificate, limits: &Limits) -> bool {
        if !self.fixes(&cert.element, &cert.prefix) {
            return false;
        }
        let h = self.section_at(&cert.element, &cert.prefix);
        let he = h.pow(cert.exponent as i64);
        self.fixes(&he, &cert.word)
            && !self.fixes(&h, &cert.word)
            && self.equal(&self.section_at(&he, &cert.word), &h, limits) == Equality::Equal
            && matches!(self.is_trivial(&h, limits), Triviality::Nontrivial { .. })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{parse_presentation, F1_SOURCE};

    fn f1() -> WreathPresentation {
        parse_presentation(F1_SOURCE).unwrap()
    }

    #[test]
    fn acb_is_trivial() {
        let p = f1();
        let acb = p.parse_element("acb").unwrap();
        assert_eq!(p.is_trivial(&acb, &Limits::default()), Triviality::Trivial);
    }

    #[test]
    fn b24_trivial_b12_not() {
        let p = f1();
        let b = p.generator("b").unwrap();
        assert_eq!(p.is_trivial(&b.pow(24), &Limits::default()), Triviality::Trivial);
        match p.is_trivial(&b.pow(12), &Limits::default()) {
            Triviality::Nontrivial { witness } => {
                // soundness: the witness really moves
                assert_ne!(p.act(&b.pow(12), &witness), witness);
            }
            other => panic!("expected nontrivial, got {other:?}"),
        }
    }

    #[test]
    fn generator_orders() {
        let p = f1();
        let lim = Limits::default();
        assert_eq!(p.order(&p.parse_element("a").unwrap(), 64, &lim), OrderResult::Finite(2));
        assert_eq!(p.order(&p.parse_element("b").unwrap(), 64, &lim), OrderResult::Finite(24));
        assert_eq!(p.order(&p.parse_element("c").unwrap(), 64, &lim), OrderResult::Finite(3));
        assert_eq!(p.order(&GroupElement::identity(), 64, &lim), OrderResult::Finite(1));
    }

    #[test]
    fn equality_examples() {
        let p = f1();
        let lim = Limits::default();
        let c = p.generator("c").unwrap();
        assert_eq!(p.equal(&c.pow(2), &c.inverse(), &lim), Equality::Equal);
        let a = p.generator("a").unwrap();
        let b = p.generator("b").unwrap();
        assert!(matches!(p.equal(&a, &b, &lim), Equality::Distinct { .. }));
        assert_eq!(p.equal(&a, &a, &lim), Equality::Equal);
    }

    #[test]
    fn ab4_certificate_at_level_one() {
        let p = f1();
        let lim = Limits::default();
        let x = p.parse_element("ab4").unwrap();
        let cert = p.infinite_order_certificate(&x, 6, 3, &lim).unwrap();
        assert_eq!(cert.exponent, 2);
        assert!(cert.prefix.is_empty());
        assert_eq!(cert.word.to_string(), "1");
        assert!(p.check_certificate(&cert, &lim));
    }

    #[test]
    fn c_has_no_certificate() {
        let p = f1();
        let c = p.generator("c").unwrap();
        assert!(p.infinite_order_certificate(&c, 4, 3, &Limits::default()).is_none());
    }

    #[test]
    fn order_certifies_ab4_infinite() {
        let p = f1();
        match p.order(&p.parse_element("ab4").unwrap(), 48, &Limits::default()) {
            OrderResult::InfiniteCertified(cert) => {
                assert_eq!(cert.exponent, 2);
                assert!(cert.word.level() <= 2);
            }
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    #[test]
    fn tight_budget_is_inconclusive() {
        let p = f1();
        let b = p.generator("b").unwrap();
        let tight = Limits { max_states: 2 };
        assert!(matches!(
            p.is_trivial(&b.pow(24), &tight),
            Triviality::Inconclusive { .. }
        ));
    }
}
