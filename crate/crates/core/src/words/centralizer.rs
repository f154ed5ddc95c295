//! Centralizers of cyclically reduced elements.
//!
//! For cyclically reduced `h ≠ e` whose support splits as a maximal join
//! `Γ₁ * ... * Γ_k`, write `h = a₁^{m₁} ··· a_k^{m_k}` with `aᵢ` supported on
//! `Γᵢ` and not a proper power. The centralizer of `h` is generated by the
//! `aᵢ` together with the generators adjacent to every vertex of `supp(h)`.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use super::cyclic::is_cyclically_reduced;
use super::normal::{canonicalize, first_available};
use super::{GroupElement, Letter, Raag, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerData {
    /// `(aᵢ, mᵢ)` ordered by the least vertex of each join factor.
    pub pure_factors: Vec<(GroupElement, u32)>,
    /// Support of each `aᵢ`.
    pub factor_supports: Vec<BTreeSet<usize>>,
    pub link_part: BTreeSet<usize>,
}

impl CentralizerData {
    /// Generators of the centralizer: the roots followed by the link generators.
    pub fn generators(&self, raag: &Arc<Raag>) -> Vec<GroupElement> {
        let mut gens: Vec<GroupElement> = self.pure_factors.iter().map(|(a, _)| a.clone()).collect();
        gens.extend(self.link_part.iter().map(|&v| GroupElement::generator(raag, v)));
        gens
    }

    /// Membership of `k` in `⟨a₁, ..., a_k, lk(h)⟩`.
    ///
    /// The subgroup is the direct product of the cyclic groups `⟨aᵢ⟩` and the
    /// parabolic subgroup on the link, so `k` belongs to it iff its support lies
    /// in the factors and the link, and its projection to each factor is a
    /// power of the corresponding root.
    pub fn contains(&self, k: &GroupElement) -> bool {
        let raag = k.raag();
        let allowed = k
            .support()
            .iter()
            .all(|v| self.link_part.contains(v) || self.factor_supports.iter().any(|s| s.contains(v)));
        if !allowed {
            return false;
        }
        for ((root, _), support) in self.pure_factors.iter().zip(&self.factor_supports) {
            let projection: Word = k
                .letters()
                .iter()
                .copied()
                .filter(|x| support.contains(&x.generator()))
                .collect();
            let projection = GroupElement::from_reduced(raag, projection);
            if !projection.len().is_multiple_of(root.len()) {
                return false;
            }
            let n = (projection.len() / root.len()) as i64;
            if root.pow(n) != projection && root.pow(-n) != projection {
                return false;
            }
        }
        true
    }
}

pub fn centralizer_data(h: &GroupElement) -> Result<CentralizerData, WordError> {
    if h.is_identity() {
        return Err(WordError::Identity);
    }
    if !is_cyclically_reduced(h) {
        return Err(WordError::NotCyclicallyReduced(h.to_string()));
    }
    let raag = h.raag();
    let support = h.support();
    let decomposition = raag
        .graph()
        .max_join_decomposition(&support)
        .expect("support of a nontrivial element is nonempty");
    let mut pure_factors = Vec::new();
    for factor in &decomposition.factors {
        let part: Word = h
            .letters()
            .iter()
            .copied()
            .filter(|x| factor.contains(&x.generator()))
            .collect();
        let part = GroupElement::from_reduced(raag, part);
        pure_factors.push(maximal_root(&part));
    }
    Ok(CentralizerData {
        pure_factors,
        factor_supports: decomposition.factors,
        link_part: raag.graph().common_link(&support),
    })
}

/// Returns `(r, m)` with `r^m = w` and `m` maximal, for cyclically reduced `w`.
///
/// A root of a cyclically reduced element is cyclically reduced and its
/// reduced word is a prefix of the reduced word of `w`, so it suffices to test
/// the prefixes of length `|w| / m` for each divisor `m`, largest first.
pub fn maximal_root(w: &GroupElement) -> (GroupElement, u32) {
    let raag = w.raag();
    let n = w.len();
    for m in (2..=n).rev() {
        if !n.is_multiple_of(m) {
            continue;
        }
        for prefix in prefixes_of_length(raag, w.letters(), n / m) {
            let candidate = GroupElement::from_canonical(raag, prefix);
            if &candidate.pow(m as i64) == w {
                return (candidate, m as u32);
            }
        }
    }
    (w.clone(), 1)
}

fn prefixes_of_length(raag: &Raag, word: &[Letter], len: usize) -> Vec<Word> {
    let mut layer: Vec<(Word, Word)> = vec![(Word::new(), word.iter().copied().collect())];
    for _ in 0..len {
        let mut seen: HashSet<Word> = HashSet::new();
        let mut next_layer = Vec::new();
        for (prefix, rest) in &layer {
            for i in first_available(raag, rest) {
                let mut p = prefix.clone();
                p.push(rest[i]);
                canonicalize(raag, &mut p);
                if seen.insert(p.clone()) {
                    let mut r = rest.clone();
                    r.remove(i);
                    next_layer.push((p, r));
                }
            }
        }
        layer = next_layer;
    }
    layer.into_iter().map(|(p, _)| p).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    fn path() -> Arc<Raag> {
        Raag::new(parse_graph("vertices a b c\nedge a b\nedge b c").unwrap())
    }

    #[test]
    fn single_generator() {
        let g = path();
        let a = GroupElement::parse(&g, "a").unwrap();
        let data = centralizer_data(&a).unwrap();
        assert_eq!(data.pure_factors, vec![(a.clone(), 1)]);
        assert_eq!(data.link_part, BTreeSet::from([1]));
    }

    #[test]
    fn non_abelian_support() {
        let g = path();
        let ac = GroupElement::parse(&g, "a c").unwrap();
        let data = centralizer_data(&ac).unwrap();
        assert_eq!(data.pure_factors, vec![(ac.clone(), 1)]);
        assert_eq!(data.link_part, BTreeSet::from([1]));
    }

    #[test]
    fn powers_and_joins() {
        let g = path();
        let a2 = GroupElement::parse(&g, "a a").unwrap();
        let data = centralizer_data(&a2).unwrap();
        assert_eq!(data.pure_factors[0].1, 2);
        assert_eq!(data.pure_factors[0].0.to_string(), "a");

        let x = GroupElement::parse(&g, "a c a c").unwrap();
        let (root, m) = maximal_root(&x);
        assert_eq!((root.to_string().as_str(), m), ("a c", 2));

        let y = GroupElement::parse(&g, "a a b b b").unwrap();
        let data = centralizer_data(&y).unwrap();
        let summary: Vec<(String, u32)> =
            data.pure_factors.iter().map(|(r, m)| (r.to_string(), *m)).collect();
        assert_eq!(summary, vec![("a".into(), 2), ("b".into(), 3)]);
        assert!(data.link_part.is_empty());
    }

    #[test]
    fn rejects_bad_input() {
        let g = path();
        assert_eq!(
            centralizer_data(&GroupElement::identity(&g)),
            Err(WordError::Identity)
        );
        let x = GroupElement::parse(&g, "a c a'").unwrap();
        assert!(matches!(
            centralizer_data(&x),
            Err(WordError::NotCyclicallyReduced(_))
        ));
    }

    #[test]
    fn membership() {
        let g = path();
        let a = GroupElement::parse(&g, "a").unwrap();
        let data = centralizer_data(&a).unwrap();
        assert!(data.contains(&GroupElement::parse(&g, "a b' a").unwrap()));
        assert!(!data.contains(&GroupElement::parse(&g, "c").unwrap()));
        let ac = GroupElement::parse(&g, "a c").unwrap();
        let data = centralizer_data(&ac).unwrap();
        assert!(data.contains(&GroupElement::parse(&g, "c' a' b").unwrap()));
        assert!(!data.contains(&GroupElement::parse(&g, "a").unwrap()));
    }
}
