//! Automorphisms of A_Γ given by generator images together with an explicit
//! inverse, verified on construction.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::words::{normal, GroupElement, Letter, Raag, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AutoError {
    #[error("images of {0} and {1} do not commute, but {0} and {1} are adjacent")]
    RelationViolation(String, String),
    #[error("inverse images of {0} and {1} do not commute, but {0} and {1} are adjacent")]
    InverseRelationViolation(String, String),
    #[error("supplied inverse fails at generator {0}")]
    InverseFailure(String),
    #[error("expected {expected} generator images, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("{0} is not a permutation of the vertices")]
    NotPermutation(String),
    #[error("permutation does not preserve the edge {0} {1}")]
    NotGraphSymmetry(String, String),
    #[error("transvection needs two distinct generators")]
    DegenerateTransvection,
    #[error("unknown generator {0:?} in twist")]
    UnknownGenerator(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A verified automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    raag: Arc<Raag>,
    images: Vec<GroupElement>,
    inverse_images: Vec<GroupElement>,
}

/// JSON form: `{"images": {"a": "a b"}, "inverse_images": {"a": "a b'"}}`.
/// Generators that are omitted map to themselves.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistJson {
    #[serde(default)]
    pub images: BTreeMap<String, String>,
    #[serde(default)]
    pub inverse_images: BTreeMap<String, String>,
}

impl Automorphism {
    /// Verifies that both maps preserve all relations and are mutually inverse.
    pub fn new(
        raag: &Arc<Raag>,
        images: Vec<GroupElement>,
        inverse_images: Vec<GroupElement>,
    ) -> Result<Automorphism, AutoError> {
        let n = raag.rank();
        for list in [&images, &inverse_images] {
            if list.len() != n {
                return Err(AutoError::WrongArity {
                    expected: n,
                    got: list.len(),
                });
            }
            if list.iter().any(|x| !Arc::ptr_eq(x.raag(), raag) && **x.raag() != **raag) {
                return Err(WordError::GraphMismatch.into());
            }
        }
        let graph = raag.graph();
        for (u, v) in graph.edges() {
            if !images[u].commutes_with(&images[v])? {
                return Err(AutoError::RelationViolation(
                    graph.name(u).into(),
                    graph.name(v).into(),
                ));
            }
            if !inverse_images[u].commutes_with(&inverse_images[v])? {
                return Err(AutoError::InverseRelationViolation(
                    graph.name(u).into(),
                    graph.name(v).into(),
                ));
            }
        }
        let phi = Automorphism {
            raag: Arc::clone(raag),
            images,
            inverse_images,
        };
        for v in 0..n {
            let gen = GroupElement::generator(raag, v);
            let there_and_back = phi.apply(&phi.apply_inverse(&gen)?)?;
            let back_and_there = phi.apply_inverse(&phi.apply(&gen)?)?;
            if there_and_back != gen || back_and_there != gen {
                return Err(AutoError::InverseFailure(graph.name(v).into()));
            }
        }
        Ok(phi)
    }

    pub fn identity(raag: &Arc<Raag>) -> Automorphism {
        let gens: Vec<GroupElement> = (0..raag.rank())
            .map(|v| GroupElement::generator(raag, v))
            .collect();
        Automorphism {
            raag: Arc::clone(raag),
            images: gens.clone(),
            inverse_images: gens,
        }
    }

    /// `v ↦ v⁻¹`, other generators fixed.
    pub fn inversion(raag: &Arc<Raag>, v: usize) -> Result<Automorphism, AutoError> {
        if v >= raag.rank() {
            return Err(WordError::InvalidLetter(v).into());
        }
        let mut images: Vec<GroupElement> = (0..raag.rank())
            .map(|w| GroupElement::generator(raag, w))
            .collect();
        images[v] = images[v].inverse();
        Automorphism::new(raag, images.clone(), images)
    }

    /// Automorphism induced by a vertex permutation `v ↦ perm[v]`.
    pub fn graph_symmetry(raag: &Arc<Raag>, perm: &[usize]) -> Result<Automorphism, AutoError> {
        let n = raag.rank();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(AutoError::NotPermutation(format!("{perm:?}")));
        }
        let graph = raag.graph();
        for (u, v) in graph.edges() {
            if !graph.is_adjacent(perm[u], perm[v]) {
                return Err(AutoError::NotGraphSymmetry(
                    graph.name(u).into(),
                    graph.name(v).into(),
                ));
            }
        }
        let mut inverse = vec![0; n];
        for (v, &p) in perm.iter().enumerate() {
            inverse[p] = v;
        }
        let images = perm.iter().map(|&p| GroupElement::generator(raag, p)).collect();
        let inverse_images = inverse
            .iter()
            .map(|&p| GroupElement::generator(raag, p))
            .collect();
        Automorphism::new(raag, images, inverse_images)
    }

    /// Transvection `v ↦ v·u` with inverse `v ↦ v·u⁻¹`.
    ///
    /// This is an automorphism exactly when `lk(v) ⊆ st(u)`; otherwise the
    /// relation check reports an offending edge.
    pub fn transvection(raag: &Arc<Raag>, v: usize, u: usize) -> Result<Automorphism, AutoError> {
        if u == v {
            return Err(AutoError::DegenerateTransvection);
        }
        for w in [u, v] {
            if w >= raag.rank() {
                return Err(WordError::InvalidLetter(w).into());
            }
        }
        let gens: Vec<GroupElement> = (0..raag.rank())
            .map(|w| GroupElement::generator(raag, w))
            .collect();
        let mut images = gens.clone();
        let mut inverse_images = gens.clone();
        images[v] = &gens[v] * &gens[u];
        inverse_images[v] = &gens[v] * &gens[u].inverse();
        Automorphism::new(raag, images, inverse_images)
    }

    /// Inner automorphism `x ↦ g x g⁻¹`.
    pub fn conjugation(g: &GroupElement) -> Automorphism {
        let raag = g.raag();
        let ginv = g.inverse();
        let images = (0..raag.rank())
            .map(|v| GroupElement::generator(raag, v).conjugate(g).expect("same group"))
            .collect();
        let inverse_images = (0..raag.rank())
            .map(|v| GroupElement::generator(raag, v).conjugate(&ginv).expect("same group"))
            .collect();
        Automorphism {
            raag: Arc::clone(raag),
            images,
            inverse_images,
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism, AutoError> {
        let images = other
            .images
            .iter()
            .map(|x| self.apply(x))
            .collect::<Result<Vec<_>, _>>()?;
        let inverse_images = self
            .inverse_images
            .iter()
            .map(|x| other.apply_inverse(x))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Automorphism {
            raag: Arc::clone(&self.raag),
            images,
            inverse_images,
        })
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            raag: Arc::clone(&self.raag),
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
        }
    }

    pub fn raag(&self) -> &Arc<Raag> {
        &self.raag
    }

    pub fn image(&self, v: usize) -> &GroupElement {
        &self.images[v]
    }

    pub fn inverse_image(&self, v: usize) -> &GroupElement {
        &self.inverse_images[v]
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(v, x)| x.letters() == [Letter::pos(v)])
    }

    pub fn apply(&self, g: &GroupElement) -> Result<GroupElement, WordError> {
        substitute(&self.raag, &self.images, g)
    }

    pub fn apply_inverse(&self, g: &GroupElement) -> Result<GroupElement, WordError> {
        substitute(&self.raag, &self.inverse_images, g)
    }

    /// Builds an automorphism from its JSON form.
    pub fn from_json(raag: &Arc<Raag>, json: &TwistJson) -> Result<Automorphism, AutoError> {
        let read = |map: &BTreeMap<String, String>| -> Result<Vec<GroupElement>, AutoError> {
            let mut out: Vec<GroupElement> = (0..raag.rank())
                .map(|v| GroupElement::generator(raag, v))
                .collect();
            for (name, word) in map {
                let v = raag
                    .graph()
                    .vertex_index(name)
                    .map_err(|_| AutoError::UnknownGenerator(name.clone()))?;
                out[v] = GroupElement::parse(raag, word)?;
            }
            Ok(out)
        };
        Automorphism::new(raag, read(&json.images)?, read(&json.inverse_images)?)
    }

    /// JSON form listing only generators that move.
    pub fn to_json(&self) -> TwistJson {
        let mut json = TwistJson::default();
        let graph = self.raag.graph();
        for v in 0..self.raag.rank() {
            if self.images[v].letters() != [Letter::pos(v)] {
                json.images
                    .insert(graph.name(v).into(), self.images[v].to_string());
            }
            if self.inverse_images[v].letters() != [Letter::pos(v)] {
                json.inverse_images
                    .insert(graph.name(v).into(), self.inverse_images[v].to_string());
            }
        }
        json
    }
}

fn substitute(
    raag: &Arc<Raag>,
    table: &[GroupElement],
    g: &GroupElement,
) -> Result<GroupElement, WordError> {
    if !Arc::ptr_eq(g.raag(), raag) && **g.raag() != **raag {
        return Err(WordError::GraphMismatch);
    }
    let mut word = Word::new();
    for &x in g.letters() {
        let image = table[x.generator()].letters();
        if x.is_inverse() {
            for &y in image.iter().rev() {
                normal::push_letter(raag, &mut word, y.inverse());
            }
        } else {
            for &y in image {
                normal::push_letter(raag, &mut word, y);
            }
        }
    }
    GroupElement::from_letters(raag, word)
}
