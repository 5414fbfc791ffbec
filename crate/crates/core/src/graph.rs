//! Undirected simple graphs over dense vertex ids, with the breadth-first
//! machinery every construction builds on.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::tree::RootedTree;

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
}

/// A parse failure in a graph edge-list file. Line numbers are 1-based.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

/// Undirected simple graph. Neighbor lists are sorted and duplicate-free.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Graph on `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        g.finish();
        Ok(g)
    }

    fn insert_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::OutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        // Lists are sorted lazily in `finish`, so probe linearly here; the
        // parser keeps its own set for large inputs.
        if self.adjacency[u].contains(&v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adjacency[u].push(v);
        self.adjacency[v].push(u);
        self.edge_count += 1;
        Ok(())
    }

    fn finish(&mut self) {
        for list in &mut self.adjacency {
            list.sort_unstable();
        }
    }

    /// Parses the edge-list text format: one `u v` pair per line, `#` starts a
    /// comment, and an optional `# n=<k>` directive declares the vertex count.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut declared: Option<(usize, usize)> = None;
        let mut edges: Vec<(usize, Vertex, Vertex)> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let (data, comment) = match raw.find('#') {
                Some(pos) => (&raw[..pos], Some(&raw[pos + 1..])),
                None => (raw, None),
            };
            if let Some(comment) = comment {
                if let Some(k) = parse_directive(comment, line)? {
                    if declared.is_some() {
                        return Err(ParseError {
                            line,
                            message: "repeated n= directive".into(),
                        });
                    }
                    declared = Some((k, line));
                }
            }
            let mut fields = data.split_whitespace();
            let Some(first) = fields.next() else {
                continue;
            };
            let second = fields.next().ok_or_else(|| ParseError {
                line,
                message: "expected two vertex ids".into(),
            })?;
            if fields.next().is_some() {
                return Err(ParseError {
                    line,
                    message: "expected exactly two vertex ids".into(),
                });
            }
            let u = parse_id(first, line)?;
            let v = parse_id(second, line)?;
            edges.push((line, u, v));
        }

        let implied = edges
            .iter()
            .map(|&(_, u, v)| u.max(v) + 1)
            .max()
            .unwrap_or(0);
        let n = match declared {
            Some((k, line)) if k < implied => {
                return Err(ParseError {
                    line,
                    message: format!("n={k} is smaller than the largest vertex id + 1 ({implied})"),
                })
            }
            Some((k, _)) => k,
            None => implied,
        };

        let mut g = Graph::empty(n);
        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        for (line, u, v) in edges {
            if u == v {
                return Err(ParseError {
                    line,
                    message: format!("self-loop on vertex {u}"),
                });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(ParseError {
                    line,
                    message: format!("duplicate edge {}-{}", u.min(v), u.max(v)),
                });
            }
            g.adjacency[u].push(v);
            g.adjacency[v].push(u);
            g.edge_count += 1;
        }
        g.finish();
        Ok(g)
    }

    /// Serializes to the edge-list format. Emits an `n=` directive whenever
    /// the edges alone would not imply the vertex count.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let implied = self.edges().map(|(_, v)| v + 1).max().unwrap_or(0);
        if implied != self.n() {
            out.push_str(&format!("# n={}\n", self.n()));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, u: Vertex) -> &[Vertex] {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: Vertex) -> usize {
        self.adjacency[u].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn is_tree(&self) -> bool {
        self.n() > 0 && self.m() + 1 == self.n() && is_connected(self)
    }

    /// True when the graph is a simple path on at least one vertex.
    pub fn is_path(&self) -> bool {
        self.is_tree() && self.adjacency.iter().all(|l| l.len() <= 2)
    }
}

fn parse_id(token: &str, line: usize) -> Result<Vertex, ParseError> {
    token.parse::<Vertex>().map_err(|_| ParseError {
        line,
        message: format!("invalid vertex id {token:?}"),
    })
}

fn parse_directive(comment: &str, line: usize) -> Result<Option<usize>, ParseError> {
    let trimmed = comment.trim();
    let Some(rest) = trimmed.strip_prefix("n=") else {
        return Ok(None);
    };
    rest.trim()
        .parse::<usize>()
        .map(Some)
        .map_err(|_| ParseError {
            line,
            message: format!("invalid vertex count directive {trimmed:?}"),
        })
}

/// Unweighted hop counts from `s`; `None` for unreachable vertices.
pub fn bfs_distances(g: &Graph, s: Vertex) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    let mut queue = VecDeque::new();
    dist[s] = Some(0);
    queue.push_back(s);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &v in g.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Distances from `s` in a graph already known to be connected.
pub(crate) fn bfs_distances_connected(g: &Graph, s: Vertex) -> Vec<usize> {
    bfs_distances(g, s)
        .into_iter()
        .map(|d| d.expect("graph is connected"))
        .collect()
}

/// One BFS from vertex 0. Graphs on zero or one vertex are connected.
pub fn is_connected(g: &Graph) -> bool {
    if g.n() <= 1 {
        return true;
    }
    bfs_distances(g, 0).iter().all(Option::is_some)
}

/// All-pairs BFS, or a double sweep when `g` is a tree.
pub fn diameter(g: &Graph) -> Result<usize, GraphError> {
    if !is_connected(g) {
        return Err(GraphError::Disconnected);
    }
    if g.n() > 0 && g.is_tree() {
        return double_sweep(g).map(|s| s.length);
    }
    Ok((0..g.n())
        .map(|s| bfs_distances_connected(g, s).into_iter().max().unwrap_or(0))
        .max()
        .unwrap_or(0))
}

/// BFS tree rooted at `root`; neighbors are visited in ascending id order, so
/// every child list comes out ascending.
pub fn bfs_spanning_tree(g: &Graph, root: Vertex) -> Result<RootedTree, GraphError> {
    let n = g.n();
    if n == 0 {
        return Err(GraphError::Empty);
    }
    if root >= n {
        return Err(GraphError::OutOfRange { vertex: root, n });
    }
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    let mut children = vec![Vec::new(); n];
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    let mut reached = 1;
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some(u);
                children[u].push(v);
                queue.push_back(v);
                reached += 1;
            }
        }
    }
    if reached != n {
        return Err(GraphError::Disconnected);
    }
    Ok(RootedTree::from_children(root, children).expect("BFS parent pointers form a tree"))
}

/// Result of a two-pass BFS sweep: `a` is farthest from vertex 0, `b` farthest
/// from `a`, and `length` is `sp(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DoubleSweep {
    pub a: Vertex,
    pub b: Vertex,
    pub length: usize,
}

fn farthest(dist: &[usize]) -> Vertex {
    // max_by_key keeps the last maximum; we want the lowest id.
    let best = dist.iter().copied().max().unwrap_or(0);
    dist.iter().position(|&d| d == best).unwrap_or(0)
}

/// Double-sweep diameter lower bound. Exact on trees.
pub fn double_sweep(g: &Graph) -> Result<DoubleSweep, GraphError> {
    if g.n() == 0 {
        return Err(GraphError::Empty);
    }
    if !is_connected(g) {
        return Err(GraphError::Disconnected);
    }
    let from_zero = bfs_distances_connected(g, 0);
    let a = farthest(&from_zero);
    let from_a = bfs_distances_connected(g, a);
    let b = farthest(&from_a);
    Ok(DoubleSweep {
        a,
        b,
        length: from_a[b],
    })
}

/// Root for the BFS spanning tree: the midpoint of the double-sweep path.
///
/// Among vertices on some shortest `a`-`b` path at distance `ceil(len/2)` from
/// `a`, the lowest id wins.
pub fn choose_bfs_root(g: &Graph) -> Result<Vertex, GraphError> {
    let sweep = double_sweep(g)?;
    let from_a = bfs_distances_connected(g, sweep.a);
    let from_b = bfs_distances_connected(g, sweep.b);
    let half = sweep.length.div_ceil(2);
    let mid = (0..g.n())
        .find(|&v| from_a[v] == half && from_a[v] + from_b[v] == sweep.length)
        .expect("a shortest a-b path has a vertex at every distance");
    Ok(mid)
}
