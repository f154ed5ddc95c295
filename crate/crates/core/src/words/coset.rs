//! Cosets and double cosets of parabolic (special) subgroups `A_T`.
//!
//! Every coset `g·A_T` has a unique shortest element, obtained by deleting
//! letters of `T` that can be moved to the end of the word until none remain.
//! The same holds on the left and, alternating both, for double cosets.

use std::collections::BTreeSet;

use super::normal::{canonicalize, first_available, last_available};
use super::{GroupElement, Word};

/// `g = min · tail` with `tail ∈ A_T` and `min` the shortest element of `g·A_T`.
pub fn right_coset_split(g: &GroupElement, t: &BTreeSet<usize>) -> (GroupElement, GroupElement) {
    let raag = g.raag();
    let mut word: Word = g.word().clone();
    let mut tail = Word::new();
    while let Some(i) = last_available(raag, &word)
        .into_iter()
        .find(|&i| t.contains(&word[i].generator()))
    {
        tail.insert(0, word.remove(i));
    }
    canonicalize(raag, &mut word);
    (
        GroupElement::from_canonical(raag, word),
        GroupElement::from_reduced(raag, tail),
    )
}

/// `g = head · min` with `head ∈ A_S` and `min` the shortest element of `A_S·g`.
pub fn left_coset_split(g: &GroupElement, s: &BTreeSet<usize>) -> (GroupElement, GroupElement) {
    let raag = g.raag();
    let mut word: Word = g.word().clone();
    let mut head = Word::new();
    while let Some(i) = first_available(raag, &word)
        .into_iter()
        .find(|&i| s.contains(&word[i].generator()))
    {
        head.push(word.remove(i));
    }
    canonicalize(raag, &mut word);
    (
        GroupElement::from_reduced(raag, head),
        GroupElement::from_canonical(raag, word),
    )
}

/// Shortest element of the right coset `g·A_T`.
pub fn right_coset_min(g: &GroupElement, t: &BTreeSet<usize>) -> GroupElement {
    right_coset_split(g, t).0
}

/// Shortest element of the left coset `A_S·g`.
pub fn left_coset_min(g: &GroupElement, s: &BTreeSet<usize>) -> GroupElement {
    left_coset_split(g, s).1
}

/// Decomposition `g = s · m · t` with `s ∈ A_S`, `t ∈ A_T`, and `m` the
/// shortest element of the double coset `A_S·g·A_T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCosetSplit {
    pub left: GroupElement,
    pub middle: GroupElement,
    pub right: GroupElement,
}

pub fn double_coset_split(
    g: &GroupElement,
    s: &BTreeSet<usize>,
    t: &BTreeSet<usize>,
) -> DoubleCosetSplit {
    let mut left = GroupElement::identity(g.raag());
    let mut right = GroupElement::identity(g.raag());
    let mut middle = g.clone();
    loop {
        let (m1, tail) = right_coset_split(&middle, t);
        let (head, m2) = left_coset_split(&m1, s);
        let changed = !tail.is_identity() || !head.is_identity();
        right = &tail * &right;
        left = &left * &head;
        middle = m2;
        if !changed {
            break;
        }
    }
    DoubleCosetSplit {
        left,
        middle,
        right,
    }
}

/// Whether `g ∈ A_T`.
pub fn in_parabolic(g: &GroupElement, t: &BTreeSet<usize>) -> bool {
    g.support().is_subset(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;
    use crate::words::{enumerate_ball, Raag};
    use std::sync::Arc;

    fn path() -> Arc<Raag> {
        Raag::new(parse_graph("vertices a b c\nedge a b\nedge b c").unwrap())
    }

    #[test]
    fn right_split_examples() {
        let g = path();
        let x = GroupElement::parse(&g, "c a b").unwrap();
        let (m, t) = right_coset_split(&x, &BTreeSet::from([0, 1]));
        assert_eq!(m.to_string(), "c");
        assert_eq!(&m * &t, x);
    }

    #[test]
    fn minimal_against_brute_force() {
        let g = path();
        let ball = enumerate_ball(&g, 4).unwrap();
        let small = enumerate_ball(&g, 3).unwrap();
        let sets = [BTreeSet::from([1]), BTreeSet::from([0, 2]), BTreeSet::from([0, 1])];
        for x in ball.iter().filter(|x| x.len() <= 3) {
            for t in &sets {
                let (m, tail) = right_coset_split(x, t);
                assert_eq!(&m * &tail, *x);
                assert!(in_parabolic(&tail, t));
                // every coset element within reach is at least as long as m,
                // and any element of the same length equals m
                for y in &small {
                    if in_parabolic(y, t) {
                        let z = x * y;
                        assert!(z.len() >= m.len());
                        if z.len() == m.len() {
                            assert_eq!(z, m);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn double_split_reassembles() {
        let g = path();
        let s = BTreeSet::from([0, 1]);
        let t = BTreeSet::from([1, 2]);
        for x in enumerate_ball(&g, 4).unwrap() {
            let d = double_coset_split(&x, &s, &t);
            assert_eq!(&(&d.left * &d.middle) * &d.right, x);
            assert!(in_parabolic(&d.left, &s));
            assert!(in_parabolic(&d.right, &t));
        }
    }
}
