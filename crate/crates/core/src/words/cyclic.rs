//! Cyclic reduction and conjugacy-class canonical forms.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use super::normal::{canonicalize, first_available, last_available, push_letter};
use super::{shortlex, GroupElement, Raag, Word, WordError};

/// Default cap on the number of words visited while closing a conjugacy orbit.
pub const DEFAULT_ORBIT_BUDGET: usize = 200_000;

/// `g = conjugator · core · conjugator⁻¹` with `core` cyclically reduced and
/// `|g| = |core| + 2|conjugator|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicReduction {
    pub conjugator: GroupElement,
    pub core: GroupElement,
}

impl CyclicReduction {
    /// Cyclically reduced length ‖g‖.
    pub fn cyclic_len(&self) -> usize {
        self.core.len()
    }
}

/// Strips conjugating letters until the word is cyclically reduced.
///
/// At each step the least letter `x` that can be moved to the front while
/// `x⁻¹` can be moved to the end is removed from both ends.
pub fn cyclic_reduction(g: &GroupElement) -> CyclicReduction {
    let raag = g.raag();
    let mut word: Word = g.word().clone();
    let mut conjugator = Word::new();
    loop {
        let tails = last_available(raag, &word);
        let mut best: Option<(usize, usize)> = None;
        for i in first_available(raag, &word) {
            let wanted = word[i].inverse();
            if let Some(&k) = tails.iter().find(|&&k| word[k] == wanted) {
                if best.is_none_or(|(b, _)| word[i] < word[b]) {
                    best = Some((i, k));
                }
            }
        }
        let Some((i, k)) = best else { break };
        conjugator.push(word[i]);
        word.remove(k);
        word.remove(i);
    }
    canonicalize(raag, &mut word);
    canonicalize(raag, &mut conjugator);
    let result = CyclicReduction {
        conjugator: GroupElement::from_reduced(raag, conjugator),
        core: GroupElement::from_canonical(raag, word),
    };
    debug_assert_eq!(
        g.len(),
        result.core.len() + 2 * result.conjugator.len(),
        "cyclic reduction length identity"
    );
    result
}

pub fn is_cyclically_reduced(g: &GroupElement) -> bool {
    cyclic_reduction(g).conjugator.is_identity()
}

/// Canonical identifier of a conjugacy class: the shortlex-least cyclically
/// reduced word in the class.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ConjClassId {
    representative: GroupElement,
}

impl ConjClassId {
    pub fn representative(&self) -> &GroupElement {
        &self.representative
    }

    /// Cyclically reduced length shared by every element of the class.
    pub fn cyclic_len(&self) -> usize {
        self.representative.len()
    }
}

impl Ord for ConjClassId {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        shortlex(self.representative.word(), other.representative.word())
    }
}

impl PartialOrd for ConjClassId {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ConjClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.representative)
    }
}

impl fmt::Debug for ConjClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConjClassId({self})")
    }
}

pub fn conjugacy_canonical(g: &GroupElement) -> Result<ConjClassId, WordError> {
    conjugacy_canonical_with_budget(g, DEFAULT_ORBIT_BUDGET)
}

/// Closes the core of `g` under cyclic permutation (moving a letter that can
/// reach one end to the other end) and returns the least word of the orbit.
pub fn conjugacy_canonical_with_budget(
    g: &GroupElement,
    budget: usize,
) -> Result<ConjClassId, WordError> {
    let raag = g.raag();
    let core = cyclic_reduction(g).core;
    let orbit = cyclic_orbit_words(raag, core.word(), budget)?;
    let least = orbit
        .into_iter()
        .min_by(|a, b| shortlex(a, b))
        .expect("orbit contains the core");
    Ok(ConjClassId {
        representative: GroupElement::from_canonical(raag, least),
    })
}

/// All cyclically reduced conjugates of a cyclically reduced word.
pub(crate) fn cyclic_orbit_words(
    raag: &Arc<Raag>,
    core: &[super::Letter],
    budget: usize,
) -> Result<BTreeSet<Word>, WordError> {
    let start: Word = core.iter().copied().collect();
    let mut seen: HashSet<Word> = HashSet::from([start.clone()]);
    let mut stack = vec![start];
    while let Some(word) = stack.pop() {
        let mut next_words = Vec::new();
        for i in first_available(raag, &word) {
            let mut next = word.clone();
            let x = next.remove(i);
            push_letter(raag, &mut next, x);
            next_words.push(next);
        }
        for i in last_available(raag, &word) {
            let mut rest = word.clone();
            let x = rest.remove(i);
            let mut next = Word::new();
            next.push(x);
            for &y in &rest {
                push_letter(raag, &mut next, y);
            }
            next_words.push(next);
        }
        for mut next in next_words {
            canonicalize(raag, &mut next);
            if seen.insert(next.clone()) {
                if seen.len() > budget {
                    return Err(WordError::OrbitBudget { limit: budget });
                }
                stack.push(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn raag(text: &str) -> Arc<Raag> {
        Raag::new(parse_graph(text).unwrap())
    }

    #[test]
    fn worked_example() {
        let g = raag("vertices u v w\nedge u v");
        let x = GroupElement::parse(&g, "w v w'").unwrap();
        let r = cyclic_reduction(&x);
        assert_eq!(r.conjugator.to_string(), "w");
        assert_eq!(r.core.to_string(), "v");
        assert_eq!(r.cyclic_len(), 1);
        let y = GroupElement::parse(&g, "u v u'").unwrap();
        assert_eq!(cyclic_reduction(&y).cyclic_len(), 1);
        let v = GroupElement::parse(&g, "v").unwrap();
        let id = conjugacy_canonical(&v).unwrap();
        assert_eq!(conjugacy_canonical(&x).unwrap(), id);
        assert_eq!(conjugacy_canonical(&y).unwrap(), id);
    }

    #[test]
    fn fixed_point_on_cyclically_reduced() {
        let g = raag("vertices a b c\nedge a b\nedge b c");
        let x = GroupElement::parse(&g, "a c b").unwrap();
        let r = cyclic_reduction(&x);
        assert!(r.conjugator.is_identity());
        assert_eq!(r.core, x);
    }

    #[test]
    fn nested_conjugator() {
        let g = raag("vertices a b c\nedge a b\nedge b c");
        let x = GroupElement::parse(&g, "a a a c a' a'").unwrap();
        let r = cyclic_reduction(&x);
        assert_eq!(r.cyclic_len(), 2);
        assert_eq!(r.conjugator.len(), 2);
        let back = r.core.conjugate(&r.conjugator).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn cyclic_permutations_share_class() {
        let g = raag("vertices a b c\nedge a b\nedge b c");
        let ac = GroupElement::parse(&g, "a c").unwrap();
        let ca = GroupElement::parse(&g, "c a").unwrap();
        let aic = GroupElement::parse(&g, "a' c").unwrap();
        assert_eq!(conjugacy_canonical(&ac).unwrap(), conjugacy_canonical(&ca).unwrap());
        assert_ne!(conjugacy_canonical(&ac).unwrap(), conjugacy_canonical(&aic).unwrap());
    }

    #[test]
    fn orbit_budget() {
        let g = raag("vertices a b c\nedge a b\nedge b c");
        let x = GroupElement::parse(&g, "a c a c' a' c").unwrap();
        assert_eq!(
            conjugacy_canonical_with_budget(&x, 2),
            Err(WordError::OrbitBudget { limit: 2 })
        );
    }
}
