//! Metrized, optionally twisted Salvetti actions and finite balls of the
//! universal cover.
//!
//! The universal cover has one vertex per group element, an edge `(g, g·v)`
//! for every generator `v`, and a rectangle for every commuting pair. The edge
//! `(g, g·v)` has length `widths[v]`. A twist `φ` makes `g` act by left
//! multiplication with `φ(g)`; it does not change the complex.
//!
//! The wall dual to the edge `(g, g·v)` is identified with the coset
//! `g·⟨lk(v)⟩`, represented by its shortest element.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::autos::{AutoError, Automorphism, TwistJson};
use crate::graph::{parse_graph, GraphError};
use crate::words::coset::{left_coset_split, right_coset_min};
use crate::words::normal::first_available;
use crate::words::{enumerate_ball_words, GroupElement, Letter, Raag, Word, WordError};
use crate::{fmt_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("graph is not homogeneous of dimension 2 (must be connected and triangle-free)")]
    NotHomogeneous,
    #[error("width of {0} must be a positive rational")]
    NonPositiveWidth(String),
    #[error("cannot parse width {value:?} for {generator}")]
    BadWidth { generator: String, value: String },
    #[error("unknown generator {0:?} in action spec")]
    UnknownGenerator(String),
    #[error("expected {expected} widths, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("action spec {path}: {message}")]
    Spec { path: String, message: String },
    #[error("graph file {path}: {source}")]
    GraphFile { path: String, source: GraphError },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("radius must be at least {min}, got {got}")]
    RadiusTooSmall { min: usize, got: usize },
    #[error("edge ({0}, {1}) is not in the ball")]
    UnknownEdge(String, String),
    #[error("wall {0} is not crossed by any edge of the ball")]
    UnknownWall(String),
    #[error("vertex {0:?} is not in the ball")]
    VertexNotInBall(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Auto(#[from] AutoError),
}

/// A metrized Salvetti action with an optional twist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionSpec {
    raag: Arc<Raag>,
    widths: Vec<Rational>,
    twist: Option<Automorphism>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum WidthValue {
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionSpecJson {
    graph: String,
    #[serde(default)]
    widths: BTreeMap<String, WidthValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    twist: Option<TwistJson>,
}

impl ActionSpec {
    pub fn new(
        raag: &Arc<Raag>,
        widths: Vec<Rational>,
        twist: Option<Automorphism>,
    ) -> Result<ActionSpec, ComplexError> {
        if raag.graph().homogeneity_dimension() != Some(2) {
            return Err(ComplexError::NotHomogeneous);
        }
        if widths.len() != raag.rank() {
            return Err(ComplexError::WrongArity {
                expected: raag.rank(),
                got: widths.len(),
            });
        }
        if let Some(v) = widths.iter().position(|w| *w <= Rational::from_integer(0)) {
            return Err(ComplexError::NonPositiveWidth(raag.graph().name(v).into()));
        }
        if let Some(phi) = &twist {
            if !Arc::ptr_eq(phi.raag(), raag) && **phi.raag() != **raag {
                return Err(WordError::GraphMismatch.into());
            }
        }
        let twist = twist.filter(|phi| !phi.is_identity());
        Ok(ActionSpec {
            raag: Arc::clone(raag),
            widths,
            twist,
        })
    }

    /// Unit widths, no twist.
    pub fn standard(raag: &Arc<Raag>) -> Result<ActionSpec, ComplexError> {
        ActionSpec::new(raag, vec![Rational::from_integer(1); raag.rank()], None)
    }

    /// Widths given by generator name; missing names default to 1.
    pub fn with_named_widths(
        raag: &Arc<Raag>,
        widths: &[(&str, Rational)],
        twist: Option<Automorphism>,
    ) -> Result<ActionSpec, ComplexError> {
        let mut all = vec![Rational::from_integer(1); raag.rank()];
        for (name, w) in widths {
            let v = raag
                .graph()
                .vertex_index(name)
                .map_err(|_| ComplexError::UnknownGenerator(name.to_string()))?;
            all[v] = *w;
        }
        ActionSpec::new(raag, all, twist)
    }

    /// Parses the JSON form. The `graph` path is resolved against `base_dir`.
    pub fn from_json(text: &str, base_dir: &Path, label: &str) -> Result<ActionSpec, ComplexError> {
        let json: ActionSpecJson = serde_json::from_str(text).map_err(|e| ComplexError::Spec {
            path: label.to_string(),
            message: e.to_string(),
        })?;
        let graph_path: PathBuf = base_dir.join(&json.graph);
        let graph_text = std::fs::read_to_string(&graph_path).map_err(|e| ComplexError::Io {
            path: graph_path.display().to_string(),
            message: e.to_string(),
        })?;
        let graph = parse_graph(&graph_text).map_err(|source| ComplexError::GraphFile {
            path: graph_path.display().to_string(),
            source,
        })?;
        let raag = Raag::new(graph);
        let mut widths = vec![Rational::from_integer(1); raag.rank()];
        for (name, value) in &json.widths {
            let v = raag
                .graph()
                .vertex_index(name)
                .map_err(|_| ComplexError::UnknownGenerator(name.clone()))?;
            widths[v] = match value {
                WidthValue::Int(i) => Rational::from_integer(*i),
                WidthValue::Text(t) => parse_rational(t).ok_or_else(|| ComplexError::BadWidth {
                    generator: name.clone(),
                    value: t.clone(),
                })?,
            };
        }
        let twist = match &json.twist {
            Some(t) => Some(Automorphism::from_json(&raag, t)?),
            None => None,
        };
        ActionSpec::new(&raag, widths, twist)
    }

    pub fn load(path: &Path) -> Result<ActionSpec, ComplexError> {
        let text = std::fs::read_to_string(path).map_err(|e| ComplexError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        ActionSpec::from_json(&text, base, &path.display().to_string())
    }

    /// JSON form, with `graph_path` written verbatim.
    pub fn to_json(&self, graph_path: &str) -> String {
        let widths = self
            .widths
            .iter()
            .enumerate()
            .map(|(v, w)| {
                (
                    self.raag.graph().name(v).to_string(),
                    WidthValue::Text(fmt_rational(w)),
                )
            })
            .collect();
        let json = ActionSpecJson {
            graph: graph_path.to_string(),
            widths,
            twist: self.twist.as_ref().map(Automorphism::to_json),
        };
        serde_json::to_string_pretty(&json).expect("action spec serializes")
    }

    pub fn raag(&self) -> &Arc<Raag> {
        &self.raag
    }

    pub fn widths(&self) -> &[Rational] {
        &self.widths
    }

    pub fn width(&self, v: usize) -> Rational {
        self.widths[v]
    }

    pub fn twist(&self) -> Option<&Automorphism> {
        self.twist.as_ref()
    }

    /// Same action with every width multiplied by `factor > 0`.
    pub fn scaled(&self, factor: Rational) -> Result<ActionSpec, ComplexError> {
        ActionSpec::new(
            &self.raag,
            self.widths.iter().map(|w| w * factor).collect(),
            self.twist.clone(),
        )
    }

    pub fn with_twist(&self, twist: Option<Automorphism>) -> Result<ActionSpec, ComplexError> {
        ActionSpec::new(&self.raag, self.widths.clone(), twist)
    }

    /// The deck transformation by which `g` acts: left multiplication by `φ(g)`.
    pub fn acting_element(&self, g: &GroupElement) -> Result<GroupElement, WordError> {
        match &self.twist {
            Some(phi) => phi.apply(g),
            None => {
                if !g.same_group(&GroupElement::identity(&self.raag)) {
                    return Err(WordError::GraphMismatch);
                }
                Ok(g.clone())
            }
        }
    }

    pub fn weighted_len(&self, g: &GroupElement) -> Rational {
        g.weighted_len(&self.widths)
    }

    /// d₁ distance between two vertices: weighted length of `x⁻¹y`.
    pub fn vertex_distance(&self, x: &GroupElement, y: &GroupElement) -> Result<Rational, WordError> {
        Ok(self.weighted_len(&x.inverse().multiply(y)?))
    }
}

/// A wall, identified by the generator labelling its dual edges and the
/// shortest element of the coset `g·⟨lk(v)⟩` of any dual edge `(g, g·v)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WallId {
    pub generator: usize,
    pub coset_rep: GroupElement,
}

impl Ord for WallId {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.generator
            .cmp(&other.generator)
            .then_with(|| self.coset_rep.cmp(&other.coset_rep))
    }
}

impl PartialOrd for WallId {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WallId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.coset_rep.raag().graph().name(self.generator).to_string();
        write!(f, "{name}@[{}]", self.coset_rep)
    }
}

impl fmt::Debug for WallId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WallId({self})")
    }
}

/// The two sides of a wall. The coset representative lies on `Minus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    Minus,
    Plus,
}

impl WallId {
    /// Wall dual to the edge from `g` to `g·v`.
    pub fn of_edge(g: &GroupElement, v: usize) -> WallId {
        let link = g.raag().graph().link(v).clone();
        WallId {
            generator: v,
            coset_rep: right_coset_min(g, &link),
        }
    }

    /// Wall crossed when stepping from `p` along the letter `x`.
    pub fn of_step(p: &GroupElement, x: Letter) -> WallId {
        if x.is_inverse() {
            let q = p * &GroupElement::from_letters(p.raag(), [x]).expect("valid letter");
            WallId::of_edge(&q, x.generator())
        } else {
            WallId::of_edge(p, x.generator())
        }
    }

    pub fn width(&self, spec: &ActionSpec) -> Rational {
        spec.width(self.generator)
    }

    /// Side of the wall containing the vertex `x`.
    ///
    /// With `y = c⁻¹x` written as `k·y′`, `k ∈ ⟨lk(v)⟩` and `y′` shortest in
    /// its coset, `x` lies on the far side exactly when `y′` can begin with `v`.
    pub fn side(&self, x: &GroupElement) -> Side {
        let raag = x.raag();
        let y = &self.coset_rep.inverse() * x;
        let (_, rest) = left_coset_split(&y, raag.graph().link(self.generator));
        let v = Letter::pos(self.generator);
        let starts_with_v = first_available(raag, rest.letters())
            .into_iter()
            .any(|i| rest.letters()[i] == v);
        if starts_with_v {
            Side::Plus
        } else {
            Side::Minus
        }
    }

    /// Whether the wall separates the vertices `x` and `y`.
    pub fn separates(&self, x: &GroupElement, y: &GroupElement) -> bool {
        self.side(x) != self.side(y)
    }
}

/// Walls crossed, in order, by the reduced-word edge path from `x` to `y`.
pub fn walls_along(x: &GroupElement, y: &GroupElement) -> Result<Vec<WallId>, WordError> {
    let w = x.inverse().multiply(y)?;
    let mut p = x.clone();
    let mut out = Vec::with_capacity(w.len());
    for &letter in w.letters() {
        out.push(WallId::of_step(&p, letter));
        p = &p * &GroupElement::from_letters(x.raag(), [letter])?;
    }
    Ok(out)
}

/// An edge of a ball: `from · v = to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BallEdge {
    pub from: usize,
    pub to: usize,
    pub generator: usize,
    pub wall: usize,
}

/// A rectangle with corners `g, g·u, g·v, g·u·v` (`u < v` adjacent).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BallSquare {
    pub corner: usize,
    pub u: usize,
    pub v: usize,
    /// Edge indices: `g→gu`, `gv→guv`, `g→gv`, `gu→guv`.
    pub edges: [usize; 4],
}

/// The full subcomplex of the universal cover spanned by the word-length ball.
#[derive(Debug, Clone)]
pub struct ComplexBall {
    spec: ActionSpec,
    radius: usize,
    vertices: Vec<GroupElement>,
    index: HashMap<Word, usize>,
    edges: Vec<BallEdge>,
    edge_index: HashMap<(usize, usize), usize>,
    squares: Vec<BallSquare>,
    walls: Vec<WallId>,
    wall_index: HashMap<WallId, usize>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl ComplexBall {
    pub fn build(spec: &ActionSpec, radius: usize) -> Result<ComplexBall, ComplexError> {
        ComplexBall::build_with_budget(spec, radius, crate::words::DEFAULT_BALL_BUDGET)
    }

    pub fn build_with_budget(
        spec: &ActionSpec,
        radius: usize,
        budget: usize,
    ) -> Result<ComplexBall, ComplexError> {
        if radius < 1 {
            return Err(ComplexError::RadiusTooSmall { min: 1, got: radius });
        }
        let raag = spec.raag();
        let words = enumerate_ball_words(raag, radius, budget)?;
        let index: HashMap<Word, usize> =
            words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let vertices: Vec<GroupElement> = words
            .into_iter()
            .map(|w| GroupElement::from_canonical(raag, w))
            .collect();
        let n = raag.rank();
        let gens: Vec<GroupElement> = (0..n).map(|v| GroupElement::generator(raag, v)).collect();

        let mut edges = Vec::new();
        let mut edge_index = HashMap::new();
        let mut walls: Vec<WallId> = Vec::new();
        let mut wall_index: HashMap<WallId, usize> = HashMap::new();
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for (i, g) in vertices.iter().enumerate() {
            for (v, gen) in gens.iter().enumerate() {
                let h = g * gen;
                if let Some(&j) = index.get(h.word()) {
                    let wall = WallId::of_edge(g, v);
                    let next = wall_index.len();
                    let w = *wall_index.entry(wall.clone()).or_insert_with(|| {
                        walls.push(wall);
                        next
                    });
                    let e = edges.len();
                    edges.push(BallEdge {
                        from: i,
                        to: j,
                        generator: v,
                        wall: w,
                    });
                    edge_index.insert((i, v), e);
                    adjacency[i].push((j, e));
                    adjacency[j].push((i, e));
                }
            }
        }

        let mut squares = Vec::new();
        for (i, g) in vertices.iter().enumerate() {
            for (u, v) in raag.graph().edges() {
                let (Some(&e1), Some(&e3)) = (edge_index.get(&(i, u)), edge_index.get(&(i, v)))
                else {
                    continue;
                };
                let gu = edges[e1].to;
                let gv = edges[e3].to;
                let (Some(&e2), Some(&e4)) = (edge_index.get(&(gv, u)), edge_index.get(&(gu, v)))
                else {
                    continue;
                };
                debug_assert_eq!(edges[e2].to, edges[e4].to, "square closes up at {g}");
                squares.push(BallSquare {
                    corner: i,
                    u,
                    v,
                    edges: [e1, e2, e3, e4],
                });
            }
        }

        Ok(ComplexBall {
            spec: spec.clone(),
            radius,
            vertices,
            index,
            edges,
            edge_index,
            squares,
            walls,
            wall_index,
            adjacency,
        })
    }

    pub fn spec(&self) -> &ActionSpec {
        &self.spec
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn vertices(&self) -> &[GroupElement] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &GroupElement {
        &self.vertices[i]
    }

    pub fn edges(&self) -> &[BallEdge] {
        &self.edges
    }

    pub fn squares(&self) -> &[BallSquare] {
        &self.squares
    }

    pub fn walls(&self) -> &[WallId] {
        &self.walls
    }

    pub fn wall(&self, i: usize) -> &WallId {
        &self.walls[i]
    }

    pub fn wall_position(&self, w: &WallId) -> Option<usize> {
        self.wall_index.get(w).copied()
    }

    pub fn index_of(&self, x: &GroupElement) -> Option<usize> {
        self.index.get(x.word()).copied()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.index.contains_key(x.word())
    }

    pub fn require(&self, x: &GroupElement) -> Result<usize, ComplexError> {
        self.index_of(x)
            .ok_or_else(|| ComplexError::VertexNotInBall(x.to_string()))
    }

    /// `(neighbor, edge)` pairs of vertex `i`.
    pub fn neighbors(&self, i: usize) -> &[(usize, usize)] {
        &self.adjacency[i]
    }

    pub fn edge_between(&self, from: usize, generator: usize) -> Option<usize> {
        self.edge_index.get(&(from, generator)).copied()
    }

    pub fn edge_width(&self, e: usize) -> Rational {
        self.spec.width(self.edges[e].generator)
    }

    pub fn wall_of_edge(&self, g: &GroupElement, v: usize) -> Result<WallId, ComplexError> {
        let i = self.index_of(g);
        match i.and_then(|i| self.edge_between(i, v)) {
            Some(e) => Ok(self.walls[self.edges[e].wall].clone()),
            None => Err(ComplexError::UnknownEdge(
                g.to_string(),
                self.spec.raag().graph().name(v).into(),
            )),
        }
    }

    pub fn wall_side(&self, w: &WallId, x: &GroupElement) -> Result<Side, ComplexError> {
        if !self.wall_index.contains_key(w) {
            return Err(ComplexError::UnknownWall(w.to_string()));
        }
        self.require(x)?;
        Ok(w.side(x))
    }

    /// Walls of the ball, each with its dual edges.
    pub fn dual_edges(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.walls.len()];
        for (e, edge) in self.edges.iter().enumerate() {
            out[edge.wall].push(e);
        }
        out
    }

    pub fn summary(&self) -> BallSummary {
        let generators: BTreeSet<usize> = self.walls.iter().map(|w| w.generator).collect();
        BallSummary {
            radius: self.radius,
            vertices: self.vertices.len(),
            edges: self.edges.len(),
            squares: self.squares.len(),
            walls: self.walls.len(),
            wall_generators: generators.len(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BallSummary {
    pub radius: usize,
    pub vertices: usize,
    pub edges: usize,
    pub squares: usize,
    pub walls: usize,
    pub wall_generators: usize,
}
