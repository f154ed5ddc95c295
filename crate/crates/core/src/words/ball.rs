//! Enumeration of word-length balls.

use std::collections::HashSet;
use std::sync::Arc;

use super::normal::canonicalize;
use super::{shortlex, GroupElement, Raag, Word, WordError};

/// Default cap on the number of elements produced by a ball enumeration.
pub const DEFAULT_BALL_BUDGET: usize = 5_000_000;

/// Canonical words of all elements with `|g| ≤ radius`, in shortlex order.
///
/// Sphere `n + 1` is obtained from sphere `n` by appending letters that do not
/// cancel; each result is canonicalized and deduplicated.
pub fn enumerate_ball_words(
    raag: &Raag,
    radius: usize,
    budget: usize,
) -> Result<Vec<Word>, WordError> {
    let mut all: Vec<Word> = vec![Word::new()];
    let mut sphere: Vec<Word> = vec![Word::new()];
    for r in 1..=radius {
        let mut seen: HashSet<Word> = HashSet::with_capacity(sphere.len() * 4);
        let mut next: Vec<Word> = Vec::new();
        for word in &sphere {
            for x in raag.letters() {
                if cancels(raag, word, x) {
                    continue;
                }
                let mut w = word.clone();
                w.push(x);
                canonicalize(raag, &mut w);
                if seen.insert(w.clone()) {
                    next.push(w);
                    if all.len() + next.len() > budget {
                        return Err(WordError::BallBudget {
                            limit: budget,
                            reached: all.len() + next.len(),
                            radius: r,
                        });
                    }
                }
            }
        }
        next.sort_by(|a, b| shortlex(a, b));
        all.extend(next.iter().cloned());
        sphere = next;
    }
    Ok(all)
}

fn cancels(raag: &Raag, word: &[super::Letter], x: super::Letter) -> bool {
    for &y in word.iter().rev() {
        if y.generator() == x.generator() {
            return y == x.inverse();
        }
        if !raag.commutes(x, y) {
            return false;
        }
    }
    false
}

/// All elements with `|g| ≤ radius`, in shortlex order.
pub fn enumerate_ball(raag: &Arc<Raag>, radius: usize) -> Result<Vec<GroupElement>, WordError> {
    Ok(enumerate_ball_words(raag, radius, DEFAULT_BALL_BUDGET)?
        .into_iter()
        .map(|w| GroupElement::from_canonical(raag, w))
        .collect())
}
