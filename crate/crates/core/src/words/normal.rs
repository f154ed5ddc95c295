//! Reduction and canonical ordering of words.

use std::collections::HashSet;

use super::{Letter, Raag, Word};

/// Appends `x` to a reduced word, keeping it reduced.
///
/// Scans back over letters commuting with `x`; an `x⁻¹` found there cancels.
pub fn push_letter(raag: &Raag, word: &mut Word, x: Letter) {
    for i in (0..word.len()).rev() {
        let y = word[i];
        if y.generator() == x.generator() {
            if y == x.inverse() {
                word.remove(i);
                return;
            }
            break;
        }
        if !raag.commutes(x, y) {
            break;
        }
    }
    word.push(x);
}

/// Reduces an arbitrary letter sequence and puts it in canonical order.
pub fn normal_form(raag: &Raag, letters: impl IntoIterator<Item = Letter>) -> Word {
    let mut word = Word::new();
    for x in letters {
        push_letter(raag, &mut word, x);
    }
    canonicalize(raag, &mut word);
    word
}

/// Reorders a reduced word into its lexicographically least commutation class
/// representative by repeatedly taking the least letter with no unplaced
/// non-commuting predecessor.
pub fn canonicalize(raag: &Raag, word: &mut Word) {
    let n = word.len();
    if n < 2 {
        return;
    }
    let mut blockers = vec![0u32; n];
    for j in 1..n {
        for i in 0..j {
            if !raag.commutes(word[i], word[j]) {
                blockers[j] += 1;
            }
        }
    }
    let mut used = vec![false; n];
    let mut out = Word::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<usize> = None;
        for j in 0..n {
            if !used[j] && blockers[j] == 0 && best.is_none_or(|b| word[j] < word[b]) {
                best = Some(j);
            }
        }
        let b = best.expect("some letter is always available");
        used[b] = true;
        out.push(word[b]);
        for j in b + 1..n {
            if !used[j] && !raag.commutes(word[b], word[j]) {
                blockers[j] -= 1;
            }
        }
    }
    *word = out;
}

/// Whether no letter can be cancelled after commuting swaps.
pub fn is_reduced(raag: &Raag, word: &[Letter]) -> bool {
    for j in 0..word.len() {
        for i in (0..j).rev() {
            let y = word[i];
            if y.generator() == word[j].generator() {
                if y == word[j].inverse() {
                    return false;
                }
                break;
            }
            if !raag.commutes(y, word[j]) {
                break;
            }
        }
    }
    true
}

pub fn is_canonical(raag: &Raag, word: &[Letter]) -> bool {
    if !is_reduced(raag, word) {
        return false;
    }
    let mut copy: Word = word.iter().copied().collect();
    canonicalize(raag, &mut copy);
    copy.as_slice() == word
}

/// Positions of letters that can be moved to the front by commuting swaps.
pub fn first_available(raag: &Raag, word: &[Letter]) -> Vec<usize> {
    (0..word.len())
        .filter(|&i| word[..i].iter().all(|&y| raag.commutes(y, word[i])))
        .collect()
}

/// Positions of letters that can be moved to the end by commuting swaps.
pub fn last_available(raag: &Raag, word: &[Letter]) -> Vec<usize> {
    (0..word.len())
        .filter(|&i| word[i + 1..].iter().all(|&y| raag.commutes(y, word[i])))
        .collect()
}

/// All prefixes `p` of the element `w`, i.e. elements with `|p| + |p⁻¹w| = |w|`,
/// as canonical words. These are the vertices of the combinatorial interval
/// between the identity and `w`.
pub fn prefixes(raag: &Raag, word: &[Letter]) -> Vec<Word> {
    let mut seen: HashSet<Word> = HashSet::new();
    let mut frontier: Vec<(Word, Word)> = vec![(Word::new(), word.iter().copied().collect())];
    seen.insert(Word::new());
    let mut out = vec![Word::new()];
    while let Some((prefix, rest)) = frontier.pop() {
        for i in first_available(raag, &rest) {
            let mut next_prefix = prefix.clone();
            next_prefix.push(rest[i]);
            canonicalize(raag, &mut next_prefix);
            if seen.insert(next_prefix.clone()) {
                let mut next_rest = rest.clone();
                next_rest.remove(i);
                out.push(next_prefix.clone());
                frontier.push((next_prefix, next_rest));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;
    use crate::words::GroupElement;
    use std::sync::Arc;

    fn path() -> Arc<Raag> {
        Raag::new(parse_graph("vertices a b c\nedge a b\nedge b c").unwrap())
    }

    #[test]
    fn push_cancels_through_commuting_letters() {
        let g = path();
        let mut w = g.parse_letters("a b").unwrap();
        push_letter(&g, &mut w, Letter::neg(0));
        assert_eq!(g.format_word(&w), "b");
        let mut w = g.parse_letters("a c").unwrap();
        push_letter(&g, &mut w, Letter::neg(0));
        assert_eq!(w.len(), 3);
    }

    #[test]
    fn reduced_detection() {
        let g = path();
        assert!(is_reduced(&g, &g.parse_letters("a c a'").unwrap()));
        assert!(!is_reduced(&g, &g.parse_letters("a b a'").unwrap()));
        assert!(is_canonical(&g, &g.parse_letters("b c a").unwrap()));
        assert!(!is_canonical(&g, &g.parse_letters("c b a").unwrap()));
    }

    #[test]
    fn prefix_sets() {
        let g = path();
        // a and b commute: interval of ab is the unit square.
        let p = prefixes(&g, &g.parse_letters("a b").unwrap());
        assert_eq!(p.len(), 4);
        // a c does not commute: the interval is a path.
        let p = prefixes(&g, &g.parse_letters("a c").unwrap());
        assert_eq!(p.len(), 3);
        for w in prefixes(&g, &g.parse_letters("a b c a").unwrap()) {
            let x = GroupElement::from_letters(&g, w.iter().copied()).unwrap();
            let full = GroupElement::parse(&g, "a b c a").unwrap();
            let rest = x.inverse().multiply(&full).unwrap();
            assert_eq!(x.len() + rest.len(), full.len());
        }
    }
}
