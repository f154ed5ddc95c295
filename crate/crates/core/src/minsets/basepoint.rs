//! The basepoint `x₀ ∈ Min(v)`.
//!
//! `Min(v)` splits as a tree factor times a line factor and every bridge
//! `P^u` (for `u ≠ v`) splits as `T^u × U^u` accordingly. In each factor the
//! coordinate of `x₀` is a vertex of the common intersection of the factor
//! subtrees when that is nonempty; otherwise two disjoint subtrees exist and
//! the coordinate is taken on the geodesic joining them. Ties go to the
//! shortlex-least element.

use serde::Serialize;

use crate::complex::ActionSpec;
use crate::words::GroupElement;

use super::trees::{common_intersection, disjoint_pair, CosetSubtree};
use super::{bridge_between, minset_model, Bridge, MinsetError, MinsetModel};

/// How one coordinate of the basepoint was chosen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoordinateWitness {
    /// All factor subtrees share a vertex.
    CommonIntersection,
    /// The factor subtrees of the bridges towards these two generators are disjoint.
    DisjointPair { first: usize, second: usize },
    /// There are no other generators.
    NoConstraint,
}

#[derive(Debug, Clone)]
pub struct Basepoint {
    pub v: usize,
    pub vertex: GroupElement,
    pub tree_coord: GroupElement,
    pub line_coord: GroupElement,
    pub tree_witness: CoordinateWitness,
    pub line_witness: CoordinateWitness,
    pub model: MinsetModel,
    pub bridges: Vec<Bridge>,
}

pub fn choose_basepoint(v: usize, spec: &ActionSpec) -> Result<Basepoint, MinsetError> {
    let raag = spec.raag();
    if v >= raag.rank() {
        return Err(MinsetError::UnknownGenerator(v));
    }
    let model = minset_model(&GroupElement::generator(raag, v), spec)?;
    let mut bridges = Vec::new();
    for u in (0..raag.rank()).filter(|&u| u != v) {
        let mu = minset_model(&GroupElement::generator(raag, u), spec)?;
        bridges.push(bridge_between(&model, &mu, v, u, spec));
    }
    let tree_family: Vec<CosetSubtree> = bridges.iter().map(|b| b.tree_factor.clone()).collect();
    let line_family: Vec<CosetSubtree> = bridges.iter().map(|b| b.line_factor.clone()).collect();
    let (tree_coord, tree_witness) = choose_coordinate(&tree_family, &bridges, raag_identity(spec));
    let (line_coord, line_witness) = choose_coordinate(&line_family, &bridges, raag_identity(spec));
    let vertex = model.vertex(&tree_coord, &line_coord);
    Ok(Basepoint {
        v,
        vertex,
        tree_coord,
        line_coord,
        tree_witness,
        line_witness,
        model,
        bridges,
    })
}

fn raag_identity(spec: &ActionSpec) -> GroupElement {
    GroupElement::identity(spec.raag())
}

fn choose_coordinate(
    family: &[CosetSubtree],
    bridges: &[Bridge],
    identity: GroupElement,
) -> (GroupElement, CoordinateWitness) {
    if family.is_empty() {
        return (identity, CoordinateWitness::NoConstraint);
    }
    if let Some(meet) = common_intersection(family) {
        return (meet.anchor, CoordinateWitness::CommonIntersection);
    }
    let (i, j) = disjoint_pair(family).expect("empty intersection yields a disjoint pair");
    let coordinate = family[i]
        .geodesic_to(&family[j])
        .into_iter()
        .min()
        .expect("geodesics have endpoints");
    (
        coordinate,
        CoordinateWitness::DisjointPair {
            first: bridges[i].u,
            second: bridges[j].u,
        },
    )
}

impl Basepoint {
    /// Whether `x` would also be an admissible basepoint: its coordinates lie
    /// in the common intersection of each factor family when that is
    /// nonempty, and on the geodesic between the recorded disjoint pair
    /// otherwise.
    pub fn admits(&self, x: &GroupElement, spec: &ActionSpec) -> bool {
        let Some(coords) = self.model.coords(x, spec) else {
            return false;
        };
        let check = |coord: &GroupElement, witness: &CoordinateWitness, pick: fn(&Bridge) -> &CosetSubtree| {
            match witness {
                CoordinateWitness::NoConstraint => true,
                CoordinateWitness::CommonIntersection => {
                    self.bridges.iter().all(|b| pick(b).contains(coord))
                }
                CoordinateWitness::DisjointPair { first, second } => {
                    let find = |u: usize| {
                        pick(self.bridges.iter().find(|b| b.u == u).expect("bridge recorded"))
                    };
                    find(*first).geodesic_to(find(*second)).contains(coord)
                }
            }
        };
        check(&coords.tree, &self.tree_witness, |b| &b.tree_factor)
            && check(&coords.line, &self.line_witness, |b| &b.line_factor)
    }
}
