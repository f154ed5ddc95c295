//! Subtree families and the disjoint-pair lemma: if finitely many subtrees of
//! a tree have empty common intersection, two of them are already disjoint.

use std::collections::{BTreeSet, VecDeque};

use crate::words::coset::double_coset_split;
use crate::words::GroupElement;

use super::MinsetError;

/// A subtree of some ambient tree that can be intersected with another one.
pub trait Subtree: Clone {
    /// The intersection, or `None` when it is empty.
    fn intersect(&self, other: &Self) -> Option<Self>;
}

/// Finds two disjoint members when the whole family has empty intersection.
///
/// The running intersection of the first `k` members is maintained; when
/// adding member `k + 1` empties it, the first `k` members pairwise meet, so
/// some earlier member is disjoint from member `k + 1`.
pub fn disjoint_pair<T: Subtree>(family: &[T]) -> Option<(usize, usize)> {
    let mut running = family.first()?.clone();
    for k in 1..family.len() {
        match running.intersect(&family[k]) {
            Some(next) => running = next,
            None => {
                let j = (0..k)
                    .find(|&j| family[j].intersect(&family[k]).is_none())
                    .expect("pairwise-meeting subtrees have a common vertex");
                return Some((j, k));
            }
        }
    }
    None
}

/// Common intersection of a family, `None` when empty or when the family is empty.
pub fn common_intersection<T: Subtree>(family: &[T]) -> Option<T> {
    let mut running = family.first()?.clone();
    for t in &family[1..] {
        running = running.intersect(t)?;
    }
    Some(running)
}

/// A finite tree on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTree {
    adjacency: Vec<BTreeSet<usize>>,
}

impl FiniteTree {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<FiniteTree, MinsetError> {
        if n == 0 {
            return Err(MinsetError::NotATree("no vertices".into()));
        }
        let mut adjacency = vec![BTreeSet::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n || a == b || !adjacency[a].insert(b) {
                return Err(MinsetError::NotATree(format!("bad edge ({a}, {b})")));
            }
            adjacency[b].insert(a);
        }
        let tree = FiniteTree { adjacency };
        if edges.len() != n - 1 || !tree.is_connected_set(&(0..n).collect()) {
            return Err(MinsetError::NotATree("not connected or has a cycle".into()));
        }
        Ok(tree)
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adjacency[v]
    }

    pub fn is_connected_set(&self, set: &BTreeSet<usize>) -> bool {
        let Some(&start) = set.iter().next() else {
            return false;
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &u in &self.adjacency[v] {
                if set.contains(&u) && seen.insert(u) {
                    queue.push_back(u);
                }
            }
        }
        seen.len() == set.len()
    }

    /// The unique shortest path from the set `a` to the set `b`, as vertices.
    pub fn path_between(&self, a: &BTreeSet<usize>, b: &BTreeSet<usize>) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.len()];
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::new();
        for &s in a {
            seen[s] = true;
            queue.push_back(s);
        }
        while let Some(v) = queue.pop_front() {
            if b.contains(&v) {
                let mut path = vec![v];
                let mut cur = v;
                while !a.contains(&cur) {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return path;
            }
            for &u in &self.adjacency[v] {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = v;
                    queue.push_back(u);
                }
            }
        }
        Vec::new()
    }
}

/// A nonempty connected vertex set of a [`FiniteTree`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSubtree(pub BTreeSet<usize>);

impl Subtree for VertexSubtree {
    fn intersect(&self, other: &Self) -> Option<Self> {
        let both: BTreeSet<usize> = self.0.intersection(&other.0).copied().collect();
        (!both.is_empty()).then_some(VertexSubtree(both))
    }
}

/// Validated form of [`disjoint_pair`] for vertex subtrees of a finite tree.
pub fn tree_disjoint_pair(
    subtrees: &[BTreeSet<usize>],
    tree: &FiniteTree,
) -> Result<Option<(usize, usize)>, MinsetError> {
    for (i, s) in subtrees.iter().enumerate() {
        if s.iter().any(|&v| v >= tree.len()) || !tree.is_connected_set(s) {
            return Err(MinsetError::DisconnectedSubtree(i));
        }
    }
    let family: Vec<VertexSubtree> = subtrees.iter().cloned().map(VertexSubtree).collect();
    Ok(disjoint_pair(&family))
}

/// The subtree `anchor·A_R` of the Cayley tree of a free parabolic subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CosetSubtree {
    pub anchor: GroupElement,
    pub gens: BTreeSet<usize>,
}

impl CosetSubtree {
    pub fn new(g: &GroupElement, gens: BTreeSet<usize>) -> CosetSubtree {
        CosetSubtree {
            anchor: crate::words::coset::right_coset_min(g, &gens),
            gens,
        }
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        (&self.anchor.inverse() * x).support().is_subset(&self.gens)
    }

    pub fn is_single_vertex(&self) -> bool {
        self.gens.is_empty()
    }

    /// Vertices of the geodesic from this subtree to a disjoint one, in order.
    pub fn geodesic_to(&self, other: &CosetSubtree) -> Vec<GroupElement> {
        let between = &self.anchor.inverse() * &other.anchor;
        let split = double_coset_split(&between, &self.gens, &other.gens);
        let raag = self.anchor.raag();
        let mut p = &self.anchor * &split.left;
        let mut out = vec![p.clone()];
        for &x in split.middle.letters() {
            p = &p * &GroupElement::from_letters(raag, [x]).expect("valid letter");
            out.push(p.clone());
        }
        out
    }
}

impl Subtree for CosetSubtree {
    fn intersect(&self, other: &Self) -> Option<Self> {
        let between = &self.anchor.inverse() * &other.anchor;
        let split = double_coset_split(&between, &self.gens, &other.gens);
        if !split.middle.is_identity() {
            return None;
        }
        let meet: BTreeSet<usize> = self.gens.intersection(&other.gens).copied().collect();
        Some(CosetSubtree::new(&(&self.anchor * &split.left), meet))
    }
}
