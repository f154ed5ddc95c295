//! Defining graphs: parsing, links and stars, homogeneity, join decompositions.
//!
//! Vertices are addressed by a dense index assigned in declaration order. All
//! other modules refer to generators by that index.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Errors raised while parsing or querying a [`DefiningGraph`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("loop at vertex {0:?} (edge {0} {0})")]
    Loop(String),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(String, String),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("edge {0} {1} names an undeclared vertex")]
    UnknownEndpoint(String, String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("vertex index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("empty vertex set")]
    EmptyVertexSet,
    #[error("vertex name must be a nonempty token without whitespace or quotes: {0:?}")]
    BadName(String),
    #[error("line {line}, column {column}: {error}")]
    At {
        line: usize,
        column: usize,
        error: Box<GraphError>,
    },
}

impl GraphError {
    /// The underlying error with any position information removed.
    pub fn root(&self) -> &GraphError {
        match self {
            GraphError::At { error, .. } => error.root(),
            other => other,
        }
    }
}

/// A finite simplicial graph with named vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiningGraph {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    adjacency: Vec<BTreeSet<usize>>,
}

/// Maximal join decomposition of a full subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinDecomposition {
    pub factors: Vec<BTreeSet<usize>>,
    pub is_maximal: bool,
}

impl DefiningGraph {
    /// Builds a graph from vertex names and edges given as index pairs.
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut graph = DefiningGraph {
            names: Vec::new(),
            index: BTreeMap::new(),
            adjacency: Vec::new(),
        };
        for name in names {
            graph.add_vertex(name.into())?;
        }
        for (a, b) in edges {
            graph.add_edge(a, b)?;
        }
        Ok(graph)
    }

    /// Builds a graph from vertex names and edges given by name.
    pub fn from_named_edges(names: &[&str], edges: &[(&str, &str)]) -> Result<Self, GraphError> {
        let mut graph = DefiningGraph::new(names.iter().copied(), [])?;
        for (a, b) in edges {
            let ia = graph.vertex_index(a)?;
            let ib = graph.vertex_index(b)?;
            graph.add_edge(ia, ib)?;
        }
        Ok(graph)
    }

    fn add_vertex(&mut self, name: String) -> Result<usize, GraphError> {
        if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == '\'' || c == '"') {
            return Err(GraphError::BadName(name));
        }
        if self.index.contains_key(&name) {
            return Err(GraphError::DuplicateVertex(name));
        }
        let id = self.names.len();
        self.index.insert(name.clone(), id);
        self.names.push(name);
        self.adjacency.push(BTreeSet::new());
        Ok(id)
    }

    fn add_edge(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        let n = self.names.len();
        if a >= n {
            return Err(GraphError::IndexOutOfRange(a));
        }
        if b >= n {
            return Err(GraphError::IndexOutOfRange(b));
        }
        if a == b {
            return Err(GraphError::Loop(self.names[a].clone()));
        }
        if self.adjacency[a].contains(&b) {
            return Err(GraphError::DuplicateEdge(
                self.names[a].clone(),
                self.names[b].clone(),
            ));
        }
        self.adjacency[a].insert(b);
        self.adjacency[b].insert(a);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize, GraphError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(&b)
    }

    /// Edges as ordered index pairs `(a, b)` with `a < b`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, nbrs) in self.adjacency.iter().enumerate() {
            for &b in nbrs.range(a + 1..) {
                out.push((a, b));
            }
        }
        out
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adjacency[v]
    }

    /// Link and star of a vertex.
    pub fn link_star(&self, v: usize) -> Result<(BTreeSet<usize>, BTreeSet<usize>), GraphError> {
        if v >= self.vertex_count() {
            return Err(GraphError::IndexOutOfRange(v));
        }
        let link = self.adjacency[v].clone();
        let mut star = link.clone();
        star.insert(v);
        Ok((link, star))
    }

    pub fn link(&self, v: usize) -> &BTreeSet<usize> {
        &self.adjacency[v]
    }

    pub fn star(&self, v: usize) -> BTreeSet<usize> {
        let mut star = self.adjacency[v].clone();
        star.insert(v);
        star
    }

    /// Vertices adjacent to every member of `set`.
    pub fn common_link(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.vertex_count())
            .filter(|&u| set.iter().all(|&s| self.is_adjacent(u, s)))
            .collect()
    }

    /// Full subgraph on `set`, with vertices renumbered in increasing order.
    pub fn induced(&self, set: &BTreeSet<usize>) -> DefiningGraph {
        let order: Vec<usize> = set.iter().copied().collect();
        let position: BTreeMap<usize, usize> =
            order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::new();
        for &a in &order {
            for &b in self.adjacency[a].range(a + 1..) {
                if let Some(&pb) = position.get(&b) {
                    edges.push((position[&a], pb));
                }
            }
        }
        DefiningGraph::new(order.iter().map(|&v| self.names[v].clone()), edges)
            .expect("induced subgraph of a valid graph is valid")
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &u in &self.adjacency[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges()
            .into_iter()
            .all(|(a, b)| self.adjacency[a].is_disjoint(&self.adjacency[b]))
    }

    /// Dimension `n` for which the graph is homogeneous, if any.
    ///
    /// Dimension 1 means nonempty and discrete; dimension `n > 1` means
    /// connected with every link homogeneous of dimension `n - 1`.
    pub fn homogeneity_dimension(&self) -> Option<usize> {
        let n = self.vertex_count();
        if n == 0 {
            return None;
        }
        if self.edge_count() == 0 {
            return Some(1);
        }
        if !self.is_connected() {
            return None;
        }
        let mut dim = None;
        for v in 0..n {
            let link = self.induced(&self.adjacency[v]);
            let d = link.homogeneity_dimension()?;
            match dim {
                None => dim = Some(d),
                Some(prev) if prev != d => return None,
                Some(_) => {}
            }
        }
        dim.map(|d| d + 1)
    }

    /// The unique maximal join decomposition of the full subgraph on `set`.
    ///
    /// Factors are the connected components of the complement graph on `set`,
    /// ordered by their least vertex.
    pub fn max_join_decomposition(
        &self,
        set: &BTreeSet<usize>,
    ) -> Result<JoinDecomposition, GraphError> {
        if set.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        if let Some(&bad) = set.iter().find(|&&v| v >= self.vertex_count()) {
            return Err(GraphError::IndexOutOfRange(bad));
        }
        let mut unvisited = set.clone();
        let mut factors = Vec::new();
        while let Some(&start) = unvisited.iter().next() {
            unvisited.remove(&start);
            let mut component = BTreeSet::from([start]);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let next: Vec<usize> = unvisited
                    .iter()
                    .copied()
                    .filter(|&u| !self.is_adjacent(u, v))
                    .collect();
                for u in next {
                    unvisited.remove(&u);
                    component.insert(u);
                    stack.push(u);
                }
            }
            factors.push(component);
        }
        Ok(JoinDecomposition {
            factors,
            is_maximal: true,
        })
    }

    /// Set of names for a set of indices, for diagnostics.
    pub fn names_of<'a>(&'a self, set: impl IntoIterator<Item = &'a usize>) -> Vec<&'a str> {
        set.into_iter().map(|&v| self.name(v)).collect()
    }
}

impl fmt::Display for DefiningGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vertices")?;
        for name in &self.names {
            write!(f, " {name}")?;
        }
        writeln!(f)?;
        for (a, b) in self.edges() {
            writeln!(f, "edge {} {}", self.names[a], self.names[b])?;
        }
        Ok(())
    }
}

/// Parses the line-oriented graph format.
///
/// Statements are `vertices <name>...` and `edge <a> <b>`, separated by
/// newlines or `;`. Everything after `#` on a line is ignored. Edges may
/// precede the declaration of their endpoints.
pub fn parse_graph(text: &str) -> Result<DefiningGraph, GraphError> {
    struct Token<'a> {
        text: &'a str,
        line: usize,
        column: usize,
    }
    let mut vertex_tokens = Vec::new();
    let mut edge_tokens = Vec::new();

    for (line_no, raw_line) in text.lines().enumerate() {
        let line = raw_line.split('#').next().unwrap_or("");
        let mut offset = 0;
        for statement in line.split(';') {
            let mut tokens = Vec::new();
            let mut rest = statement;
            let mut col = offset;
            while !rest.is_empty() {
                let trimmed = rest.trim_start();
                col += rest.len() - trimmed.len();
                if trimmed.is_empty() {
                    break;
                }
                let end = trimmed
                    .find(char::is_whitespace)
                    .unwrap_or(trimmed.len());
                tokens.push(Token {
                    text: &trimmed[..end],
                    line: line_no + 1,
                    column: col + 1,
                });
                col += end;
                rest = &trimmed[end..];
            }
            offset += statement.len() + 1;
            let Some((head, args)) = tokens.split_first() else {
                continue;
            };
            match head.text {
                "vertices" | "vertex" => {
                    if args.is_empty() {
                        return Err(GraphError::Syntax {
                            line: head.line,
                            column: head.column,
                            message: "`vertices` needs at least one name".into(),
                        });
                    }
                    vertex_tokens.extend(args.iter().map(|t| (t.text, t.line, t.column)));
                }
                "edge" => {
                    if args.len() != 2 {
                        return Err(GraphError::Syntax {
                            line: head.line,
                            column: head.column,
                            message: format!("`edge` takes exactly 2 names, got {}", args.len()),
                        });
                    }
                    edge_tokens.push((args[0].text, args[1].text, head.line, head.column));
                }
                other => {
                    return Err(GraphError::Syntax {
                        line: head.line,
                        column: head.column,
                        message: format!("unknown statement {other:?}"),
                    });
                }
            }
        }
    }

    let mut graph = DefiningGraph::new(Vec::<String>::new(), [])?;
    for (name, line, column) in vertex_tokens {
        graph.add_vertex(name.to_string()).map_err(|e| match e {
            GraphError::BadName(message) | GraphError::DuplicateVertex(message) => {
                GraphError::Syntax {
                    line,
                    column,
                    message: format!("bad or duplicate vertex name {message:?}"),
                }
            }
            other => other,
        })?;
    }
    for (a, b, line, column) in edge_tokens {
        let at = |error| GraphError::At {
            line,
            column,
            error: Box::new(error),
        };
        let (Ok(ia), Ok(ib)) = (graph.vertex_index(a), graph.vertex_index(b)) else {
            return Err(at(GraphError::UnknownEndpoint(a.into(), b.into())));
        };
        graph.add_edge(ia, ib).map_err(at)?;
    }
    Ok(graph)
}
