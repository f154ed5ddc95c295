//! The d₁ metric: separating walls, distances between vertices and convex
//! subcomplexes, minimal edge paths, and a uniform-cost search oracle.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashSet};

use crate::complex::{ActionSpec, ComplexBall, ComplexError, Side, WallId};
use crate::words::coset::{double_coset_split, right_coset_min, DoubleCosetSplit};
use crate::words::normal::prefixes;
use crate::words::{GroupElement, Letter, Word, WordError};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricError {
    #[error("empty vertex set")]
    EmptyInput,
    #[error("vertex set is not convex: {missing} lies between {from} and {to}")]
    NotConvex {
        from: String,
        to: String,
        missing: String,
    },
    #[error("edge path leaves the ball at {0:?}")]
    LeavesBall(String),
    #[error("pair ({x}, {y}) needs radius {needed}, ball has radius {radius}")]
    Window {
        x: String,
        y: String,
        needed: usize,
        radius: usize,
    },
    #[error("no edge path inside the ball joins the inputs")]
    NoPath,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A set of walls together with the sum of their widths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallSet {
    pub walls: BTreeSet<WallId>,
    pub total_width: Rational,
}

impl WallSet {
    pub fn new(walls: BTreeSet<WallId>, spec: &ActionSpec) -> WallSet {
        let total_width = walls.iter().map(|w| w.width(spec)).sum();
        WallSet { walls, total_width }
    }

    pub fn len(&self) -> usize {
        self.walls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walls.is_empty()
    }
}

/// Walls separating the vertices `x` and `y`; `total_width` is `d₁(x, y)`.
pub fn separating_walls(
    x: &GroupElement,
    y: &GroupElement,
    spec: &ActionSpec,
) -> Result<WallSet, MetricError> {
    let walls = crate::complex::walls_along(x, y)?;
    let count = walls.len();
    let set: BTreeSet<WallId> = walls.into_iter().collect();
    debug_assert_eq!(set.len(), count, "reduced path crosses a wall twice");
    Ok(WallSet::new(set, spec))
}

/// `d₁(x, y)`.
pub fn d1(x: &GroupElement, y: &GroupElement, spec: &ActionSpec) -> Result<Rational, MetricError> {
    Ok(spec.vertex_distance(x, y)?)
}

/// A path in the 1-skeleton, given by its start vertex and letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePath {
    pub start: GroupElement,
    pub steps: Vec<Letter>,
}

impl EdgePath {
    pub fn new(start: GroupElement, steps: Vec<Letter>) -> EdgePath {
        EdgePath { start, steps }
    }

    /// The vertices visited, including both endpoints.
    pub fn vertices(&self) -> Vec<GroupElement> {
        let raag = self.start.raag();
        let mut out = vec![self.start.clone()];
        let mut p = self.start.clone();
        for &x in &self.steps {
            p = &p * &GroupElement::from_letters(raag, [x]).expect("valid letter");
            out.push(p.clone());
        }
        out
    }

    pub fn end(&self) -> GroupElement {
        self.vertices().pop().expect("path has a start")
    }

    /// Walls crossed by each step, in order, with multiplicity.
    pub fn crossed_walls(&self) -> Vec<WallId> {
        let vertices = self.vertices();
        self.steps
            .iter()
            .zip(&vertices)
            .map(|(&x, p)| WallId::of_step(p, x))
            .collect()
    }

    /// Sum of the widths of the crossed walls, counted with multiplicity.
    pub fn length(&self, spec: &ActionSpec) -> Rational {
        self.steps.iter().map(|x| spec.width(x.generator())).sum()
    }
}

/// A convex subcomplex, described by vertex membership and which walls it meets.
pub trait ConvexRegion {
    fn contains(&self, x: &GroupElement) -> bool;
    fn meets_wall(&self, w: &WallId) -> bool;
}

/// A finite convex set of vertices (with the full subcomplex it spans).
#[derive(Debug, Clone)]
pub struct VertexRegion {
    members: Vec<GroupElement>,
    lookup: HashSet<Word>,
}

impl VertexRegion {
    pub fn new(members: impl IntoIterator<Item = GroupElement>) -> Result<VertexRegion, MetricError> {
        let mut lookup = HashSet::new();
        let mut list = Vec::new();
        for x in members {
            if lookup.insert(x.word().clone()) {
                list.push(x);
            }
        }
        if list.is_empty() {
            return Err(MetricError::EmptyInput);
        }
        list.sort();
        Ok(VertexRegion {
            members: list,
            lookup,
        })
    }

    /// Like [`VertexRegion::new`] but also checks convexity.
    pub fn convex(members: impl IntoIterator<Item = GroupElement>) -> Result<VertexRegion, MetricError> {
        let region = VertexRegion::new(members)?;
        check_convex(&region.members)?;
        Ok(region)
    }

    pub fn members(&self) -> &[GroupElement] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl ConvexRegion for VertexRegion {
    fn contains(&self, x: &GroupElement) -> bool {
        self.lookup.contains(x.word())
    }

    fn meets_wall(&self, w: &WallId) -> bool {
        let first = w.side(&self.members[0]);
        self.members.iter().any(|x| w.side(x) != first)
    }
}

/// A coset `base·A_T` of a parabolic subgroup, with `base` shortest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParabolicCoset {
    pub base: GroupElement,
    pub gens: BTreeSet<usize>,
}

impl ParabolicCoset {
    pub fn new(g: &GroupElement, gens: BTreeSet<usize>) -> ParabolicCoset {
        ParabolicCoset {
            base: right_coset_min(g, &gens),
            gens,
        }
    }

    /// Translate by left multiplication.
    pub fn translate(&self, k: &GroupElement) -> ParabolicCoset {
        ParabolicCoset::new(&(k * &self.base), self.gens.clone())
    }
}

impl ConvexRegion for ParabolicCoset {
    fn contains(&self, x: &GroupElement) -> bool {
        (&self.base.inverse() * x).support().is_subset(&self.gens)
    }

    /// The coset meets the wall `(v, c)` iff `v ∈ T` and
    /// `base·A_T ∩ c·A_{lk v}` is nonempty.
    fn meets_wall(&self, w: &WallId) -> bool {
        if !self.gens.contains(&w.generator) {
            return false;
        }
        let link = w.coset_rep.raag().graph().link(w.generator).clone();
        let between = &self.base.inverse() * &w.coset_rep;
        double_coset_split(&between, &self.gens, &link)
            .middle
            .is_identity()
    }
}

/// d₁ distance between parabolic cosets `b·A_S` and `c·A_T`: the weighted
/// length of the shortest element of `A_S·b⁻¹c·A_T`.
pub fn coset_distance(
    p: &ParabolicCoset,
    q: &ParabolicCoset,
    spec: &ActionSpec,
) -> (Rational, DoubleCosetSplit) {
    let between = &p.base.inverse() * &q.base;
    let split = double_coset_split(&between, &p.gens, &q.gens);
    (spec.weighted_len(&split.middle), split)
}

/// Distance from a vertex to a parabolic coset.
pub fn point_coset_distance(x: &GroupElement, q: &ParabolicCoset, spec: &ActionSpec) -> Rational {
    let between = &x.inverse() * &q.base;
    spec.weighted_len(&right_coset_min(&between, &q.gens))
}

/// Outcome of [`is_minimal_edge_path`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathVerdict {
    Minimal,
    DoesNotStartInSource,
    DoesNotEndInTarget,
    RepeatedWall(WallId),
    MeetsSource(WallId),
    MeetsTarget(WallId),
}

impl PathVerdict {
    pub fn is_minimal(&self) -> bool {
        matches!(self, PathVerdict::Minimal)
    }
}

/// A path from `A` to `B` is minimal iff it crosses no wall twice and every
/// wall it crosses is disjoint from both `A` and `B`.
pub fn is_minimal_edge_path<A: ConvexRegion + ?Sized, B: ConvexRegion + ?Sized>(
    path: &EdgePath,
    a: &A,
    b: &B,
) -> PathVerdict {
    if !a.contains(&path.start) {
        return PathVerdict::DoesNotStartInSource;
    }
    if !b.contains(&path.end()) {
        return PathVerdict::DoesNotEndInTarget;
    }
    let mut seen = BTreeSet::new();
    for w in path.crossed_walls() {
        if !seen.insert(w.clone()) {
            return PathVerdict::RepeatedWall(w);
        }
        if a.meets_wall(&w) {
            return PathVerdict::MeetsSource(w);
        }
        if b.meets_wall(&w) {
            return PathVerdict::MeetsTarget(w);
        }
    }
    PathVerdict::Minimal
}

/// [`is_minimal_edge_path`] for a path required to stay inside `ball`.
pub fn is_minimal_edge_path_in_ball<A: ConvexRegion + ?Sized, B: ConvexRegion + ?Sized>(
    path: &EdgePath,
    a: &A,
    b: &B,
    ball: &ComplexBall,
) -> Result<PathVerdict, MetricError> {
    if let Some(outside) = path.vertices().into_iter().find(|x| !ball.contains(x)) {
        return Err(MetricError::LeavesBall(outside.to_string()));
    }
    Ok(is_minimal_edge_path(path, a, b))
}

/// Checks that every vertex between two members is a member.
pub fn check_convex(members: &[GroupElement]) -> Result<(), MetricError> {
    if members.is_empty() {
        return Err(MetricError::EmptyInput);
    }
    let raag = members[0].raag();
    let lookup: HashSet<&Word> = members.iter().map(|x| x.word()).collect();
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            let between = a.inverse().multiply(b)?;
            for p in prefixes(raag, between.letters()) {
                let z = a * &GroupElement::from_canonical(raag, p);
                if !lookup.contains(z.word()) {
                    return Err(MetricError::NotConvex {
                        from: a.to_string(),
                        to: b.to_string(),
                        missing: z.to_string(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Smallest convex vertex set containing `points`, by closing under intervals.
pub fn convex_hull(points: &[GroupElement]) -> Result<Vec<GroupElement>, MetricError> {
    if points.is_empty() {
        return Err(MetricError::EmptyInput);
    }
    let raag = points[0].raag();
    let mut members: Vec<GroupElement> = Vec::new();
    let mut lookup: HashSet<Word> = HashSet::new();
    for p in points {
        if lookup.insert(p.word().clone()) {
            members.push(p.clone());
        }
    }
    let mut checked = 0;
    while checked < members.len() {
        let a = members[checked].clone();
        let mut j = 0;
        while j < members.len() {
            let b = members[j].clone();
            let between = a.inverse().multiply(&b)?;
            for p in prefixes(raag, between.letters()) {
                let z = &a * &GroupElement::from_canonical(raag, p);
                if lookup.insert(z.word().clone()) {
                    members.push(z);
                }
            }
            j += 1;
        }
        checked += 1;
    }
    members.sort();
    Ok(members)
}

/// Walls separating the convex sets `A` and `B` and their total width.
pub fn d1_subcomplexes(
    a: &[GroupElement],
    b: &[GroupElement],
    spec: &ActionSpec,
) -> Result<(Rational, WallSet), MetricError> {
    if a.is_empty() || b.is_empty() {
        return Err(MetricError::EmptyInput);
    }
    check_convex(a)?;
    check_convex(b)?;
    let candidates = separating_walls(&a[0], &b[0], spec)?;
    let walls: BTreeSet<WallId> = candidates
        .walls
        .into_iter()
        .filter(|w| {
            let sa: Side = w.side(&a[0]);
            let sb: Side = w.side(&b[0]);
            a.iter().all(|x| w.side(x) == sa) && b.iter().all(|y| w.side(y) == sb)
        })
        .collect();
    let set = WallSet::new(walls, spec);
    Ok((set.total_width, set))
}

/// Radius needed so that every geodesic between `x` and `y` stays in the ball
/// about the identity: `(|x| + |y| + |x⁻¹y|) / 2`.
pub fn window_radius(x: &GroupElement, y: &GroupElement) -> usize {
    let between = (&x.inverse() * y).len();
    (x.len() + y.len() + between).div_ceil(2)
}

/// Uniform-cost search distances from `sources` inside the ball.
pub fn dijkstra(ball: &ComplexBall, sources: &[usize]) -> Vec<Option<Rational>> {
    let mut dist: Vec<Option<Rational>> = vec![None; ball.vertices().len()];
    let mut heap = BinaryHeap::new();
    for &s in sources {
        dist[s] = Some(Rational::from_integer(0));
        heap.push(Reverse((Rational::from_integer(0), s)));
    }
    while let Some(Reverse((d, i))) = heap.pop() {
        if dist[i].is_some_and(|best| best < d) {
            continue;
        }
        for &(j, e) in ball.neighbors(i) {
            let nd = d + ball.edge_width(e);
            if dist[j].is_none_or(|old| nd < old) {
                dist[j] = Some(nd);
                heap.push(Reverse((nd, j)));
            }
        }
    }
    dist
}

/// Weighted shortest-path distance inside the ball between two vertices.
pub fn bfs_d1_oracle(
    ball: &ComplexBall,
    x: &GroupElement,
    y: &GroupElement,
) -> Result<Rational, MetricError> {
    bfs_d1_sets(ball, std::slice::from_ref(x), std::slice::from_ref(y))
}

/// Weighted shortest-path distance inside the ball between two vertex sets.
/// Every pair must lie in the validity window of the ball.
pub fn bfs_d1_sets(
    ball: &ComplexBall,
    a: &[GroupElement],
    b: &[GroupElement],
) -> Result<Rational, MetricError> {
    if a.is_empty() || b.is_empty() {
        return Err(MetricError::EmptyInput);
    }
    for x in a {
        for y in b {
            let needed = window_radius(x, y);
            if needed > ball.radius() {
                return Err(MetricError::Window {
                    x: x.to_string(),
                    y: y.to_string(),
                    needed,
                    radius: ball.radius(),
                });
            }
        }
    }
    let sources: Vec<usize> = a.iter().map(|x| ball.require(x)).collect::<Result<_, _>>()?;
    let targets: Vec<usize> = b.iter().map(|y| ball.require(y)).collect::<Result<_, _>>()?;
    let dist = dijkstra(ball, &sources);
    targets
        .iter()
        .filter_map(|&t| dist[t])
        .min()
        .ok_or(MetricError::NoPath)
}

/// A shortest path inside the ball from `A` to `B`, choosing among tied
/// predecessors with `pick(n)`, which must return an index below `n`.
pub fn sample_minimal_path(
    ball: &ComplexBall,
    a: &[GroupElement],
    b: &[GroupElement],
    pick: &mut dyn FnMut(usize) -> usize,
) -> Result<EdgePath, MetricError> {
    let sources: Vec<usize> = a.iter().map(|x| ball.require(x)).collect::<Result<_, _>>()?;
    let dist = dijkstra(ball, &sources);
    let targets: Vec<usize> = b.iter().map(|y| ball.require(y)).collect::<Result<_, _>>()?;
    let best = targets
        .iter()
        .filter_map(|&t| dist[t])
        .min()
        .ok_or(MetricError::NoPath)?;
    let ends: Vec<usize> = targets.into_iter().filter(|&t| dist[t] == Some(best)).collect();
    let mut current = ends[pick(ends.len())];
    let source_set: HashSet<usize> = sources.iter().copied().collect();
    let mut reversed: Vec<Letter> = Vec::new();
    while !(source_set.contains(&current) && dist[current] == Some(Rational::from_integer(0))) {
        let here = dist[current].expect("reached vertices have distances");
        let preds: Vec<(usize, usize)> = ball
            .neighbors(current)
            .iter()
            .copied()
            .filter(|&(j, e)| dist[j].is_some_and(|d| d + ball.edge_width(e) == here))
            .collect();
        let (prev, e) = preds[pick(preds.len())];
        let edge = ball.edges()[e];
        let letter = if edge.from == prev {
            Letter::pos(edge.generator)
        } else {
            Letter::neg(edge.generator)
        };
        reversed.push(letter);
        current = prev;
    }
    reversed.reverse();
    Ok(EdgePath::new(ball.vertex(current).clone(), reversed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_graph;
    use crate::words::Raag;

    fn spec(text: &str, widths: &[(&str, Rational)]) -> ActionSpec {
        ActionSpec::with_named_widths(&Raag::new(parse_graph(text).unwrap()), widths, None).unwrap()
    }

    fn el(s: &ActionSpec, w: &str) -> GroupElement {
        GroupElement::parse(s.raag(), w).unwrap()
    }

    #[test]
    fn weighted_edge_example() {
        let s = spec("vertices a b\nedge a b", &[("b", Rational::from_integer(2))]);
        let e = el(&s, "");
        let ab = el(&s, "a b");
        let walls = separating_walls(&e, &ab, &s).unwrap();
        assert_eq!(walls.len(), 2);
        assert_eq!(walls.total_width, Rational::from_integer(3));
        let ball = ComplexBall::build(&s, 3).unwrap();
        assert_eq!(bfs_d1_oracle(&ball, &e, &ab).unwrap(), Rational::from_integer(3));
        assert!(separating_walls(&e, &e, &s).unwrap().is_empty());
    }

    #[test]
    fn path_conjugate_example() {
        let s = spec("vertices a b c\nedge a b\nedge b c", &[]);
        let e = el(&s, "");
        let y = el(&s, "a c a'");
        assert_eq!(separating_walls(&e, &y, &s).unwrap().len(), 3);
        let ball = ComplexBall::build(&s, 3).unwrap();
        assert_eq!(bfs_d1_oracle(&ball, &e, &y).unwrap(), Rational::from_integer(3));
    }

    #[test]
    fn window_violation() {
        let s = spec("vertices a b c\nedge a b\nedge b c", &[]);
        let ball = ComplexBall::build(&s, 2).unwrap();
        let x = el(&s, "a c");
        let y = el(&s, "c' a'");
        assert!(matches!(
            bfs_d1_oracle(&ball, &x, &y),
            Err(MetricError::Window { needed: 4, .. })
        ));
    }

    #[test]
    fn convexity() {
        let s = spec("vertices a b c\nedge a b\nedge b c", &[]);
        let square = vec![el(&s, ""), el(&s, "a"), el(&s, "b"), el(&s, "a b")];
        check_convex(&square).unwrap();
        let corners = vec![el(&s, ""), el(&s, "a b")];
        assert!(matches!(check_convex(&corners), Err(MetricError::NotConvex { .. })));
        assert_eq!(convex_hull(&corners).unwrap().len(), 4);
    }

    #[test]
    fn subcomplex_distance_and_paths() {
        let s = spec("vertices a b c\nedge a b\nedge b c", &[]);
        let a = vec![el(&s, ""), el(&s, "b")];
        let b = vec![el(&s, "c a"), el(&s, "c a b")];
        let (d, walls) = d1_subcomplexes(&a, &b, &s).unwrap();
        assert_eq!(d, Rational::from_integer(2));
        assert_eq!(walls.len(), 2);
        let ball = ComplexBall::build(&s, 4).unwrap();
        assert_eq!(bfs_d1_sets(&ball, &a, &b).unwrap(), d);

        let ra = VertexRegion::convex(a.clone()).unwrap();
        let rb = VertexRegion::convex(b.clone()).unwrap();
        let good = EdgePath::new(el(&s, "b"), vec![Letter::pos(2), Letter::pos(0)]);
        assert_eq!(is_minimal_edge_path(&good, &ra, &rb), PathVerdict::Minimal);
        let detour = EdgePath::new(el(&s, ""), vec![Letter::pos(1), Letter::pos(2), Letter::pos(0)]);
        assert!(matches!(
            is_minimal_edge_path(&detour, &ra, &rb),
            PathVerdict::MeetsSource(_)
        ));
        let back_and_forth = EdgePath::new(
            el(&s, ""),
            vec![Letter::pos(2), Letter::neg(2), Letter::pos(2), Letter::pos(0)],
        );
        assert!(matches!(
            is_minimal_edge_path(&back_and_forth, &ra, &rb),
            PathVerdict::RepeatedWall(_)
        ));
        let mut first = |_: usize| 0;
        let sampled = sample_minimal_path(&ball, &a, &b, &mut first).unwrap();
        assert_eq!(sampled.length(&s), d);
        assert!(is_minimal_edge_path(&sampled, &ra, &rb).is_minimal());
    }

    #[test]
    fn parabolic_regions() {
        let s = spec("vertices a b c\nedge a b\nedge b c", &[]);
        let star_a = ParabolicCoset::new(&el(&s, ""), BTreeSet::from([0, 1]));
        let star_c = ParabolicCoset::new(&el(&s, ""), BTreeSet::from([1, 2]));
        assert_eq!(coset_distance(&star_a, &star_c, &s).0, Rational::from_integer(0));
        let far = star_c.translate(&el(&s, "c a"));
        assert_eq!(far.base.to_string(), "c a");
        assert_eq!(coset_distance(&star_a, &far, &s).0, Rational::from_integer(2));
        let near = star_c.translate(&el(&s, "a c"));
        assert_eq!(near.base.to_string(), "a");
        assert_eq!(coset_distance(&star_a, &near, &s).0, Rational::from_integer(0));
        let wall = WallId::of_edge(&el(&s, ""), 0);
        assert!(star_a.meets_wall(&wall));
        assert!(!star_c.meets_wall(&wall));
        assert!(star_a.contains(&el(&s, "a b a")));
        assert_eq!(
            point_coset_distance(&el(&s, "c c"), &star_a, &s),
            Rational::from_integer(2)
        );
    }
}
