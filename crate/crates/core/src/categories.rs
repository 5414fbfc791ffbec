//! Category systems: a set of vertex subsets plus the inverted index
//! `u -> categories containing u`.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub type CategoryId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error("category references vertex {vertex}, but the graph has {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryParseError {
    #[error("line {line}: invalid vertex id {token:?}")]
    Syntax { line: usize, token: String },
    #[error("line {line}: vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange {
        line: usize,
        vertex: Vertex,
        n: usize,
    },
}

/// A family of distinct, non-empty vertex sets over `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategorySystem {
    n: usize,
    categories: Vec<Vec<Vertex>>,
    member_index: Vec<Vec<CategoryId>>,
}

impl CategorySystem {
    /// Builds a system from raw sets. Each set is sorted and deduplicated,
    /// empty sets are dropped and repeated sets are merged, keeping the first
    /// occurrence's position.
    pub fn new<I, C>(n: usize, sets: I) -> Result<Self, CategoryError>
    where
        I: IntoIterator<Item = C>,
        C: IntoIterator<Item = Vertex>,
    {
        let mut raw: Vec<Vec<Vertex>> = Vec::new();
        for set in sets {
            let mut members: Vec<Vertex> = set.into_iter().collect();
            members.sort_unstable();
            members.dedup();
            if let Some(&vertex) = members.iter().find(|&&v| v >= n) {
                return Err(CategoryError::OutOfRange { vertex, n });
            }
            if !members.is_empty() {
                raw.push(members);
            }
        }
        // Sort positions by content; the first position of each run survives.
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by(|&a, &b| raw[a].cmp(&raw[b]).then(a.cmp(&b)));
        let mut keep = vec![false; raw.len()];
        for (k, &i) in order.iter().enumerate() {
            keep[i] = k == 0 || raw[order[k - 1]] != raw[i];
        }
        let categories = raw
            .into_iter()
            .zip(keep)
            .filter_map(|(c, k)| k.then_some(c))
            .collect();
        Ok(Self::from_distinct(n, categories))
    }

    fn from_distinct(n: usize, categories: Vec<Vec<Vertex>>) -> Self {
        let mut member_index = vec![Vec::new(); n];
        for (c, members) in categories.iter().enumerate() {
            for &v in members {
                member_index[v].push(c);
            }
        }
        CategorySystem {
            n,
            categories,
            member_index,
        }
    }

    /// System with no categories.
    pub fn empty(n: usize) -> Self {
        Self::from_distinct(n, Vec::new())
    }

    /// Parses the category text format: one whitespace-separated list of
    /// vertex ids per line, `#` comments.
    pub fn parse(text: &str, n: usize) -> Result<Self, CategoryParseError> {
        let mut sets = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let data = raw.split('#').next().unwrap_or("");
            let mut set = Vec::new();
            for token in data.split_whitespace() {
                let vertex: Vertex = token.parse().map_err(|_| CategoryParseError::Syntax {
                    line,
                    token: token.to_string(),
                })?;
                if vertex >= n {
                    return Err(CategoryParseError::OutOfRange { line, vertex, n });
                }
                set.push(vertex);
            }
            if set.is_empty() && !data.trim().is_empty() {
                log::warn!("line {line}: empty category dropped");
            }
            if !set.is_empty() {
                sets.push(set);
            }
        }
        let before = sets.len();
        let system = Self::new(n, sets).expect("ids validated above");
        if system.len() < before {
            log::warn!("merged {} duplicate categories", before - system.len());
        }
        Ok(system)
    }

    /// One category per line, ids ascending.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for members in &self.categories {
            let line: Vec<String> = members.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Size of the vertex universe.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of categories.
    pub fn len(&self) -> usize {
        self.categories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.categories.is_empty()
    }

    pub fn categories(&self) -> &[Vec<Vertex>] {
        &self.categories
    }

    pub fn category(&self, c: CategoryId) -> &[Vertex] {
        &self.categories[c]
    }

    /// `cat(u)`: ids of the categories containing `u`, ascending.
    pub fn categories_of(&self, u: Vertex) -> &[CategoryId] {
        &self.member_index[u]
    }

    /// Sum of category sizes.
    pub fn total_size(&self) -> usize {
        self.categories.iter().map(Vec::len).sum()
    }

    /// Membership dimension: the largest number of categories any vertex is in.
    pub fn memdim(&self) -> usize {
        self.member_index.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `d(u, t) = |cat(t) \ cat(u)|`. Not symmetric.
    pub fn cat_distance(&self, u: Vertex, t: Vertex) -> usize {
        let (cu, ct) = (&self.member_index[u], &self.member_index[t]);
        let (mut i, mut j, mut shared) = (0, 0, 0);
        while i < cu.len() && j < ct.len() {
            match cu[i].cmp(&ct[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    shared += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        ct.len() - shared
    }

    /// `d(v, t)` for every `v` at once.
    pub fn distances_to(&self, t: Vertex) -> Vec<usize> {
        let mut in_target = vec![false; self.categories.len()];
        for &c in &self.member_index[t] {
            in_target[c] = true;
        }
        let total = self.member_index[t].len();
        self.member_index
            .iter()
            .map(|cats| total - cats.iter().filter(|&&c| in_target[c]).count())
            .collect()
    }
}

/// Lowest-index category whose induced subgraph is disconnected.
pub fn find_disconnected_category(g: &Graph, s: &CategorySystem) -> Option<CategoryId> {
    assert_eq!(g.n(), s.n(), "graph and category system disagree on n");
    let mut mark = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::new();
    for (c, members) in s.categories().iter().enumerate() {
        for &v in members {
            mark[v] = c;
        }
        // Reuse `mark` as the visited flag by flipping entries to a second stamp.
        let visited = usize::MAX - 1 - c;
        queue.clear();
        queue.push_back(members[0]);
        mark[members[0]] = visited;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if mark[v] == c {
                    mark[v] = visited;
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        if reached != members.len() {
            return Some(c);
        }
    }
    None
}

pub fn is_internally_connected(g: &Graph, s: &CategorySystem) -> bool {
    find_disconnected_category(g, s).is_none()
}

/// Lexicographically smallest ordered pair `(s, t)` lacking a shattering
/// witness: a neighbor `u` of `s` and a category holding `u` and `t` but not `s`.
pub fn find_unshattered_pair(g: &Graph, system: &CategorySystem) -> Option<(Vertex, Vertex)> {
    assert_eq!(g.n(), system.n(), "graph and category system disagree on n");
    let n = g.n();
    // stamp[c] == s  =>  c contains a neighbor of s but not s.
    let mut stamp = vec![usize::MAX; system.len()];
    let mut excluded = vec![usize::MAX; system.len()];
    let mut covered = vec![usize::MAX; n];
    for s in 0..n {
        for &c in system.categories_of(s) {
            excluded[c] = s;
        }
        for &u in g.neighbors(s) {
            for &c in system.categories_of(u) {
                if excluded[c] != s && stamp[c] != s {
                    stamp[c] = s;
                    for &t in system.category(c) {
                        covered[t] = s;
                    }
                }
            }
        }
        if let Some(t) = (0..n).find(|&t| t != s && covered[t] != s) {
            return Some((s, t));
        }
    }
    None
}

pub fn is_shattered(g: &Graph, s: &CategorySystem) -> bool {
    find_unshattered_pair(g, s).is_none()
}
