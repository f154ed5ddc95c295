//! Elements of the right-angled Artin group A_Γ.
//!
//! A [`GroupElement`] always stores its canonical word: a reduced word that is
//! lexicographically least among all reduced words for the element reachable
//! by swapping adjacent commuting letters. The letter order is generator
//! declaration order with `x` immediately before `x⁻¹`.

mod ball;
mod centralizer;
pub mod coset;
mod cyclic;
pub mod normal;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use smallvec::SmallVec;

use crate::graph::DefiningGraph;
use crate::Rational;

pub use ball::{enumerate_ball, enumerate_ball_words, DEFAULT_BALL_BUDGET};
pub use centralizer::{centralizer_data, maximal_root, CentralizerData};
pub use cyclic::{
    conjugacy_canonical, conjugacy_canonical_with_budget, cyclic_reduction, is_cyclically_reduced,
    ConjClassId,
    CyclicReduction, DEFAULT_ORBIT_BUDGET,
};

/// Errors raised by word arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("letter refers to generator index {0}, which is out of range")]
    InvalidLetter(usize),
    #[error("elements belong to different defining graphs")]
    GraphMismatch,
    #[error("element {0:?} is not cyclically reduced")]
    NotCyclicallyReduced(String),
    #[error("operation is undefined for the identity element")]
    Identity,
    #[error("conjugacy orbit exceeded the budget of {limit} words")]
    OrbitBudget { limit: usize },
    #[error("ball enumeration exceeded the budget of {limit} elements (reached {reached} at radius {radius})")]
    BallBudget {
        limit: usize,
        reached: usize,
        radius: usize,
    },
    #[error("malformed word literal {0:?}")]
    Malformed(String),
}

/// A generator or inverse generator, packed as `generator << 1 | inverse`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u16);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Letter {
        Letter(((generator as u16) << 1) | inverse as u16)
    }

    pub fn pos(generator: usize) -> Letter {
        Letter::new(generator, false)
    }

    pub fn neg(generator: usize) -> Letter {
        Letter::new(generator, true)
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    /// +1 for a generator, −1 for an inverse generator.
    pub fn sign(self) -> i8 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }
}

pub type Word = SmallVec<[Letter; 16]>;

/// The group presented by a defining graph, with a cached commutation table.
#[derive(Debug, PartialEq, Eq)]
pub struct Raag {
    graph: DefiningGraph,
    adjacent: Vec<bool>,
    n: usize,
}

impl Raag {
    pub fn new(graph: DefiningGraph) -> Arc<Raag> {
        let n = graph.vertex_count();
        let mut adjacent = vec![false; n * n];
        for (a, b) in graph.edges() {
            adjacent[a * n + b] = true;
            adjacent[b * n + a] = true;
        }
        Arc::new(Raag { graph, adjacent, n })
    }

    pub fn graph(&self) -> &DefiningGraph {
        &self.graph
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacent[a * self.n + b]
    }

    /// Whether two letters may be swapped: distinct, adjacent generators.
    pub fn commutes(&self, x: Letter, y: Letter) -> bool {
        self.adjacent(x.generator(), y.generator())
    }

    /// All letters in canonical order: `v0, v0⁻¹, v1, v1⁻¹, ...`.
    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.n).flat_map(|g| [Letter::pos(g), Letter::neg(g)])
    }

    pub fn letter_name(&self, x: Letter) -> String {
        let name = self.graph.name(x.generator());
        if x.is_inverse() {
            format!("{name}'")
        } else {
            name.to_string()
        }
    }

    /// Parses a whitespace-separated word literal such as `a b a' c`.
    pub fn parse_letters(&self, text: &str) -> Result<Word, WordError> {
        let mut word = Word::new();
        for token in text.split_whitespace() {
            let (name, inverse) = match token.strip_suffix('\'') {
                Some(stripped) => (stripped, true),
                None => (token, false),
            };
            if name.is_empty() || name.ends_with('\'') {
                return Err(WordError::Malformed(token.to_string()));
            }
            let generator = self
                .graph
                .vertex_index(name)
                .map_err(|_| WordError::UnknownGenerator(name.to_string()))?;
            word.push(Letter::new(generator, inverse));
        }
        Ok(word)
    }

    pub fn format_word(&self, word: &[Letter]) -> String {
        let parts: Vec<String> = word.iter().map(|&x| self.letter_name(x)).collect();
        parts.join(" ")
    }

    /// Weighted length of a word: sum of the widths of its generators.
    pub fn weighted_len(word: &[Letter], widths: &[Rational]) -> Rational {
        word.iter().map(|x| widths[x.generator()]).sum()
    }
}

/// An element of A_Γ in canonical normal form.
#[derive(Clone)]
pub struct GroupElement {
    raag: Arc<Raag>,
    word: Word,
}

impl GroupElement {
    pub fn identity(raag: &Arc<Raag>) -> GroupElement {
        GroupElement {
            raag: Arc::clone(raag),
            word: Word::new(),
        }
    }

    /// Normal form of an arbitrary sequence of letters.
    pub fn from_letters(
        raag: &Arc<Raag>,
        letters: impl IntoIterator<Item = Letter>,
    ) -> Result<GroupElement, WordError> {
        let mut word = Word::new();
        for x in letters {
            if x.generator() >= raag.rank() {
                return Err(WordError::InvalidLetter(x.generator()));
            }
            normal::push_letter(raag, &mut word, x);
        }
        normal::canonicalize(raag, &mut word);
        Ok(GroupElement {
            raag: Arc::clone(raag),
            word,
        })
    }

    /// Wraps a word that is already reduced and canonical.
    pub(crate) fn from_canonical(raag: &Arc<Raag>, word: Word) -> GroupElement {
        debug_assert!(normal::is_canonical(raag, &word));
        GroupElement {
            raag: Arc::clone(raag),
            word,
        }
    }

    /// Wraps a reduced word, putting it in canonical order.
    pub(crate) fn from_reduced(raag: &Arc<Raag>, mut word: Word) -> GroupElement {
        debug_assert!(normal::is_reduced(raag, &word));
        normal::canonicalize(raag, &mut word);
        GroupElement {
            raag: Arc::clone(raag),
            word,
        }
    }

    pub fn generator(raag: &Arc<Raag>, v: usize) -> GroupElement {
        GroupElement::from_letters(raag, [Letter::pos(v)]).expect("generator index in range")
    }

    pub fn parse(raag: &Arc<Raag>, text: &str) -> Result<GroupElement, WordError> {
        let letters = raag.parse_letters(text)?;
        GroupElement::from_letters(raag, letters)
    }

    pub fn raag(&self) -> &Arc<Raag> {
        &self.raag
    }

    pub fn letters(&self) -> &[Letter] {
        &self.word
    }

    pub(crate) fn word(&self) -> &Word {
        &self.word
    }

    /// Reduced word length |g|.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn same_group(&self, other: &GroupElement) -> bool {
        Arc::ptr_eq(&self.raag, &other.raag) || self.raag == other.raag
    }

    pub fn multiply(&self, other: &GroupElement) -> Result<GroupElement, WordError> {
        if !self.same_group(other) {
            return Err(WordError::GraphMismatch);
        }
        let mut word = self.word.clone();
        for &x in &other.word {
            normal::push_letter(&self.raag, &mut word, x);
        }
        normal::canonicalize(&self.raag, &mut word);
        Ok(GroupElement {
            raag: Arc::clone(&self.raag),
            word,
        })
    }

    pub fn inverse(&self) -> GroupElement {
        let word: Word = self.word.iter().rev().map(|x| x.inverse()).collect();
        GroupElement::from_reduced(&self.raag, word)
    }

    /// `self^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> GroupElement {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut word = Word::new();
        for _ in 0..n.unsigned_abs() {
            for &x in &base.word {
                normal::push_letter(&self.raag, &mut word, x);
            }
        }
        normal::canonicalize(&self.raag, &mut word);
        GroupElement {
            raag: Arc::clone(&self.raag),
            word,
        }
    }

    /// `x · self · x⁻¹`.
    pub fn conjugate(&self, x: &GroupElement) -> Result<GroupElement, WordError> {
        x.multiply(self)?.multiply(&x.inverse())
    }

    pub fn commutes_with(&self, other: &GroupElement) -> Result<bool, WordError> {
        Ok(self.multiply(other)? == other.multiply(self)?)
    }

    /// Generators occurring in the (any) reduced word.
    pub fn support(&self) -> BTreeSet<usize> {
        self.word.iter().map(|x| x.generator()).collect()
    }

    pub fn weighted_len(&self, widths: &[Rational]) -> Rational {
        Raag::weighted_len(&self.word, widths)
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.word == other.word && self.same_group(other)
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.word.hash(state);
    }
}

/// Shortlex order: shorter words first, then lexicographic on letters.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex(&self.word, &other.word)
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn shortlex(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.raag.format_word(&self.word))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            f.write_str("GroupElement(e)")
        } else {
            write!(f, "GroupElement({self})")
        }
    }
}

impl std::ops::Mul for &GroupElement {
    type Output = GroupElement;

    /// Panics if the operands belong to different groups; use
    /// [`GroupElement::multiply`] for a fallible version.
    fn mul(self, rhs: &GroupElement) -> GroupElement {
        self.multiply(rhs).expect("multiplying elements of different groups")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;

    pub(crate) fn raag(text: &str) -> Arc<Raag> {
        Raag::new(parse_graph(text).unwrap())
    }

    #[test]
    fn worked_example_lengths() {
        let g = raag("vertices u v w\nedge u v");
        let x = GroupElement::parse(&g, "u v u'").unwrap();
        assert_eq!(x.len(), 1);
        assert_eq!(x.to_string(), "v");
        let y = GroupElement::parse(&g, "w v w'").unwrap();
        assert_eq!(y.len(), 3);
        assert!(GroupElement::parse(&g, "").unwrap().is_identity());
    }

    #[test]
    fn inverse_and_product() {
        let g = raag("vertices u v\nedge u v");
        let uv = GroupElement::parse(&g, "u v").unwrap();
        assert_eq!(uv.inverse().to_string(), "u' v'");
        let a = GroupElement::parse(&g, "u").unwrap();
        assert!(a.multiply(&a.inverse()).unwrap().is_identity());
        assert_eq!(GroupElement::parse(&g, "v u").unwrap(), uv);
    }

    #[test]
    fn canonical_order_uses_declaration_order() {
        let g = raag("vertices a b c\nedge a b\nedge b c");
        let x = GroupElement::parse(&g, "c b a").unwrap();
        // b commutes with a and c, so it moves to the front; c and a do not commute.
        assert_eq!(x.to_string(), "b c a");
        let y = GroupElement::parse(&g, "b' a").unwrap();
        assert_eq!(y.to_string(), "a b'");
    }

    #[test]
    fn graph_mismatch() {
        let g1 = raag("vertices a b\nedge a b");
        let g2 = raag("vertices a b c\nedge a b\nedge b c");
        let x = GroupElement::parse(&g1, "a").unwrap();
        let y = GroupElement::parse(&g2, "a").unwrap();
        assert_eq!(x.multiply(&y), Err(WordError::GraphMismatch));
    }

    #[test]
    fn parse_errors() {
        let g = raag("vertices a b\nedge a b");
        assert_eq!(
            GroupElement::parse(&g, "a z"),
            Err(WordError::UnknownGenerator("z".into()))
        );
        assert!(matches!(GroupElement::parse(&g, "a''"), Err(WordError::Malformed(_))));
    }

    #[test]
    fn powers() {
        let g = raag("vertices a b c\nedge a b\nedge b c");
        let x = GroupElement::parse(&g, "a c").unwrap();
        assert_eq!(x.pow(3).len(), 6);
        assert_eq!(x.pow(-2), x.inverse().pow(2));
        assert!(x.pow(0).is_identity());
    }
}
