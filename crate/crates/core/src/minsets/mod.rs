//! Minsets in the d₁ metric, their tree × line structure, bridges between
//! minsets of generators, and the basepoint construction.
//!
//! For an action twisted by `φ`, the minset of `g` is the minset of `φ(g)`
//! for the standard action: the vertices `x` with `x⁻¹φ(g)x` cyclically
//! reduced. When the cyclically reduced core of `φ(g) = b·h·b⁻¹` is a power of
//! one generator `x` the minset is the coset `b·A_{st(x)}`; when it is
//! `x^m y^n` for adjacent `x, y` it is the flat `b·A_{x,y}`. These two shapes
//! cover every action built from graph symmetries, inversions, inner
//! automorphisms and adjacent transvections.

mod basepoint;
pub mod trees;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::complex::{ActionSpec, ComplexBall, ComplexError};
use crate::metric::{coset_distance, dijkstra, ConvexRegion, MetricError, ParabolicCoset};
use crate::words::{cyclic_reduction, GroupElement, WordError};
use crate::Rational;

pub use basepoint::{choose_basepoint, Basepoint, CoordinateWitness};
pub use trees::{
    common_intersection, disjoint_pair, tree_disjoint_pair, CosetSubtree, FiniteTree, Subtree,
    VertexSubtree,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MinsetError {
    #[error("ball radius {radius} is below the required {needed} for {element:?}")]
    Window {
        element: String,
        needed: usize,
        radius: usize,
    },
    #[error("axis certificate needs N >= 2, got {0}")]
    CertificateExponent(u32),
    #[error("generators {0} and {1} are not adjacent")]
    NonAdjacent(String, String),
    #[error("a bridge needs two distinct generators, got {0} twice")]
    SameGenerator(String),
    #[error("minset of {element} has unsupported shape: core {core} of its acting element is neither a generator power nor a product of powers of two adjacent generators")]
    UnsupportedShape { element: String, core: String },
    #[error("minset of the identity is the whole complex")]
    Identity,
    #[error("subtree {0} is empty, disconnected, or not in the tree")]
    DisconnectedSubtree(usize),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("unknown generator index {0}")]
    UnknownGenerator(usize),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Metric(#[from] MetricError),
}

/// Vertices of a ball realizing the least displacement of `element`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinsetSlice {
    pub element: GroupElement,
    pub vertices: Vec<GroupElement>,
    pub l1_value: Rational,
}

/// `d₁(x, g·x)` for the action: the weighted length of `x⁻¹φ(g)x`.
pub fn displacement(x: &GroupElement, g: &GroupElement, spec: &ActionSpec) -> Result<Rational, MinsetError> {
    let acting = spec.acting_element(g)?;
    let moved = &acting * x;
    Ok(spec.vertex_distance(x, &moved)?)
}

/// Radius of a ball about the identity guaranteed to meet the minset of `g`
/// and contain a whole period of an axis through that point.
pub fn min1_window(g: &GroupElement, spec: &ActionSpec) -> Result<usize, MinsetError> {
    let acting = spec.acting_element(g)?;
    Ok(acting.len() + cyclic_reduction(&acting).cyclic_len() + 2)
}

/// Scans every vertex of the ball for the least displacement of `g`.
pub fn min1_in_ball(g: &GroupElement, ball: &ComplexBall) -> Result<MinsetSlice, MinsetError> {
    let spec = ball.spec();
    let needed = min1_window(g, spec)?;
    if ball.radius() < needed {
        return Err(MinsetError::Window {
            element: g.to_string(),
            needed,
            radius: ball.radius(),
        });
    }
    let mut best: Option<Rational> = None;
    let mut members = Vec::new();
    for x in ball.vertices() {
        let d = displacement(x, g, spec)?;
        match best {
            Some(b) if d > b => {}
            Some(b) if d == b => members.push(x.clone()),
            _ => {
                best = Some(d);
                members = vec![x.clone()];
            }
        }
    }
    let l1_value = best.expect("balls are nonempty");
    for x in &members {
        debug_assert!(axis_certificate(g, x, spec, 2).unwrap_or(false));
    }
    Ok(MinsetSlice {
        element: g.clone(),
        vertices: members,
        l1_value,
    })
}

/// Whether `d₁(x, gᴺx) = N·d₁(x, gx)`, certifying that `x` lies on an axis.
pub fn axis_certificate(
    g: &GroupElement,
    x: &GroupElement,
    spec: &ActionSpec,
    n: u32,
) -> Result<bool, MinsetError> {
    if n < 2 {
        return Err(MinsetError::CertificateExponent(n));
    }
    let once = displacement(x, g, spec)?;
    let many = displacement(x, &g.pow(n as i64), spec)?;
    Ok(many == once * Rational::from_integer(n as i64))
}

/// Which of the two supported minset shapes applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MinsetShape {
    /// `b·A_{st(x)}`: tree `A_{lk(x)}` times the `x`-line.
    Star,
    /// `b·A_{x,y}`: the `x`-line times the `y`-line.
    Flat,
}

/// Minset of an element as a parabolic coset with a product splitting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinsetModel {
    pub element: GroupElement,
    pub acting: GroupElement,
    pub shape: MinsetShape,
    pub coset: ParabolicCoset,
    pub tree_gens: BTreeSet<usize>,
    pub line_gens: BTreeSet<usize>,
}

pub fn minset_model(g: &GroupElement, spec: &ActionSpec) -> Result<MinsetModel, MinsetError> {
    let acting = spec.acting_element(g)?;
    if acting.is_identity() {
        return Err(MinsetError::Identity);
    }
    let reduction = cyclic_reduction(&acting);
    let support: Vec<usize> = reduction.core.support().into_iter().collect();
    let graph = spec.raag().graph();
    let (shape, tree_gens, line_gens) = match support.as_slice() {
        [x] => (
            MinsetShape::Star,
            graph.link(*x).clone(),
            BTreeSet::from([*x]),
        ),
        [x, y] if graph.is_adjacent(*x, *y) => (
            MinsetShape::Flat,
            BTreeSet::from([*x]),
            BTreeSet::from([*y]),
        ),
        _ => {
            return Err(MinsetError::UnsupportedShape {
                element: g.to_string(),
                core: reduction.core.to_string(),
            })
        }
    };
    let gens: BTreeSet<usize> = tree_gens.union(&line_gens).copied().collect();
    Ok(MinsetModel {
        element: g.clone(),
        acting,
        shape,
        coset: ParabolicCoset::new(&reduction.conjugator, gens),
        tree_gens,
        line_gens,
    })
}

/// Coordinates of a minset vertex `base·z₁·z₂` with `z₁` in the tree factor
/// and `z₂` in the line factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductCoords {
    pub tree: GroupElement,
    pub line: GroupElement,
    /// Signed weighted position of `z₂` along the line factor.
    pub line_position: Rational,
}

impl MinsetModel {
    pub fn contains(&self, x: &GroupElement) -> bool {
        self.coset.contains(x)
    }

    pub fn coords(&self, x: &GroupElement, spec: &ActionSpec) -> Option<ProductCoords> {
        let z = &self.coset.base.inverse() * x;
        if !z.support().is_subset(&self.coset.gens) {
            return None;
        }
        let raag = x.raag();
        let pick = |gens: &BTreeSet<usize>| {
            GroupElement::from_letters(
                raag,
                z.letters().iter().copied().filter(|l| gens.contains(&l.generator())),
            )
            .expect("letters of a valid element")
        };
        let tree = pick(&self.tree_gens);
        let line = pick(&self.line_gens);
        let line_position = line
            .letters()
            .iter()
            .map(|l| spec.width(l.generator()) * Rational::from_integer(l.sign() as i64))
            .sum();
        Some(ProductCoords {
            tree,
            line,
            line_position,
        })
    }

    /// Vertex with the given factor coordinates.
    pub fn vertex(&self, tree: &GroupElement, line: &GroupElement) -> GroupElement {
        &(&self.coset.base * tree) * line
    }
}

/// Bridge `P^u ⊆ Min(v)`: the points of `Min(v)` closest to `Min(u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bridge {
    pub v: usize,
    pub u: usize,
    pub distance: Rational,
    pub coset: ParabolicCoset,
    pub tree_factor: CosetSubtree,
    pub line_factor: CosetSubtree,
}

/// Bridge from `Min(φ(v))` towards `Min(φ(u))`.
///
/// With `Min(v) = b·A_S`, `Min(u) = c·A_T` and `b⁻¹c = s·m·t` (`m` shortest
/// in `A_S·b⁻¹c·A_T`), the closest points form `b·s·A_R` where `R` is the set
/// of `r ∈ S ∩ T` adjacent to every generator in the support of `m`.
pub fn bridge(v: usize, u: usize, spec: &ActionSpec) -> Result<Bridge, MinsetError> {
    let raag = spec.raag();
    for w in [u, v] {
        if w >= raag.rank() {
            return Err(MinsetError::UnknownGenerator(w));
        }
    }
    if u == v {
        return Err(MinsetError::SameGenerator(raag.graph().name(v).into()));
    }
    let mv = minset_model(&GroupElement::generator(raag, v), spec)?;
    let mu = minset_model(&GroupElement::generator(raag, u), spec)?;
    Ok(bridge_between(&mv, &mu, v, u, spec))
}

pub fn bridge_between(
    mv: &MinsetModel,
    mu: &MinsetModel,
    v: usize,
    u: usize,
    spec: &ActionSpec,
) -> Bridge {
    let graph = spec.raag().graph();
    let (distance, split) = coset_distance(&mv.coset, &mu.coset, spec);
    let middle_support = split.middle.support();
    let r: BTreeSet<usize> = mv
        .coset
        .gens
        .intersection(&mu.coset.gens)
        .copied()
        .filter(|&g| middle_support.iter().all(|&m| graph.is_adjacent(g, m)))
        .collect();
    let corner = &mv.coset.base * &split.left;
    let coset = ParabolicCoset::new(&corner, r.clone());
    let s = &mv.coset.base.inverse() * &coset.base;
    let raag = spec.raag();
    let part = |gens: &BTreeSet<usize>| {
        GroupElement::from_letters(
            raag,
            s.letters().iter().copied().filter(|l| gens.contains(&l.generator())),
        )
        .expect("letters of a valid element")
    };
    let tree_factor = CosetSubtree::new(
        &part(&mv.tree_gens),
        r.intersection(&mv.tree_gens).copied().collect(),
    );
    let line_factor = CosetSubtree::new(
        &part(&mv.line_gens),
        r.intersection(&mv.line_gens).copied().collect(),
    );
    Bridge {
        v,
        u,
        distance,
        coset,
        tree_factor,
        line_factor,
    }
}

/// A bridge restricted to the vertices of a ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgeSlice {
    pub bridge: Bridge,
    pub vertices: Vec<GroupElement>,
}

pub fn bridge_pu(v: usize, u: usize, ball: &ComplexBall) -> Result<BridgeSlice, MinsetError> {
    let bridge = bridge(v, u, ball.spec())?;
    let vertices: Vec<GroupElement> = ball
        .vertices()
        .iter()
        .filter(|x| bridge.coset.contains(x))
        .cloned()
        .collect();
    if vertices.is_empty() {
        return Err(MinsetError::Window {
            element: format!("P^{} in Min({})", u, v),
            needed: bridge.coset.base.len() + 1,
            radius: ball.radius(),
        });
    }
    Ok(BridgeSlice { bridge, vertices })
}

/// Ball oracle for bridges: vertices of the `v`-minset slice at least
/// in-ball distance from the `u`-minset slice, together with that distance.
pub fn bridge_oracle(
    v: usize,
    u: usize,
    ball: &ComplexBall,
) -> Result<(Rational, Vec<GroupElement>), MinsetError> {
    let raag = ball.spec().raag();
    let slice_u = min1_in_ball(&GroupElement::generator(raag, u), ball)?;
    let slice_v = min1_in_ball(&GroupElement::generator(raag, v), ball)?;
    let sources: Vec<usize> = slice_u
        .vertices
        .iter()
        .map(|x| ball.require(x))
        .collect::<Result<_, _>>()?;
    let dist = dijkstra(ball, &sources);
    let mut best: Option<Rational> = None;
    let mut out = Vec::new();
    for x in &slice_v.vertices {
        let Some(d) = dist[ball.require(x)?] else { continue };
        match best {
            Some(b) if d > b => {}
            Some(b) if d == b => out.push(x.clone()),
            _ => {
                best = Some(d);
                out = vec![x.clone()];
            }
        }
    }
    let best = best.ok_or(MetricError::NoPath)?;
    Ok((best, out))
}

/// `d₁(Min(φ(u)), Min(φ(w)))` via the coset models.
pub fn minset_distance(u: usize, w: usize, spec: &ActionSpec) -> Result<Rational, MinsetError> {
    let raag = spec.raag();
    let mu = minset_model(&GroupElement::generator(raag, u), spec)?;
    let mw = minset_model(&GroupElement::generator(raag, w), spec)?;
    Ok(coset_distance(&mu.coset, &mw.coset, spec).0)
}

/// Upper bound for `d₁(Min(u), Min(w))` from the ball slices of both minsets.
/// Valid for any action, since slices are subsets of the minsets.
pub fn minset_distance_in_ball(u: usize, w: usize, ball: &ComplexBall) -> Result<Rational, MinsetError> {
    let raag = ball.spec().raag();
    let su = min1_in_ball(&GroupElement::generator(raag, u), ball)?;
    let sw = min1_in_ball(&GroupElement::generator(raag, w), ball)?;
    let sources: Vec<usize> = su
        .vertices
        .iter()
        .map(|x| ball.require(x))
        .collect::<Result<_, _>>()?;
    let dist = dijkstra(ball, &sources);
    let mut best: Option<Rational> = None;
    for x in &sw.vertices {
        if let Some(d) = dist[ball.require(x)?] {
            best = Some(best.map_or(d, |b: Rational| b.min(d)));
        }
    }
    Ok(best.ok_or(MetricError::NoPath)?)
}

/// Whether `φ(u)` translates along grid lines of the flat it preserves:
/// the core of `φ(u)` is supported on a single generator.
pub fn is_gridline(u: usize, spec: &ActionSpec) -> Result<bool, MinsetError> {
    let acting = spec.acting_element(&GroupElement::generator(spec.raag(), u))?;
    Ok(cyclic_reduction(&acting).core.support().len() == 1)
}

/// Element `u*` of length 1 or 2 whose minset is the flat preserved by
/// `⟨u, u′⟩`: `u` if it is not a gridline isometry, else `u′` if that is not,
/// else `u·u′`.
pub fn select_flat_representative(
    u: usize,
    u_prime: usize,
    spec: &ActionSpec,
) -> Result<GroupElement, MinsetError> {
    let raag = spec.raag();
    for w in [u, u_prime] {
        if w >= raag.rank() {
            return Err(MinsetError::UnknownGenerator(w));
        }
    }
    if !raag.graph().is_adjacent(u, u_prime) {
        return Err(MinsetError::NonAdjacent(
            raag.graph().name(u).into(),
            raag.graph().name(u_prime).into(),
        ));
    }
    let gu = GroupElement::generator(raag, u);
    let gp = GroupElement::generator(raag, u_prime);
    if !is_gridline(u, spec)? {
        Ok(gu)
    } else if !is_gridline(u_prime, spec)? {
        Ok(gp)
    } else {
        Ok(&gu * &gp)
    }
}
