//! Rooted trees with depth, height and subtree-size bookkeeping.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("tree has no vertices")]
    Empty,
    #[error("root {0} out of range")]
    RootOutOfRange(Vertex),
    #[error("child {child} of {parent} out of range")]
    ChildOutOfRange { parent: Vertex, child: Vertex },
    #[error("vertex {0} has more than one parent or is the root listed as a child")]
    MultipleParents(Vertex),
    #[error("vertex {0} is not reachable from the root")]
    Unreachable(Vertex),
}

/// A rooted tree over vertices `0..n`.
///
/// When every vertex has at most two children the tree doubles as a binary
/// tree: slot 0 of a child list is the left child, slot 1 the right one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    root: Vertex,
    parent: Vec<Option<Vertex>>,
    children: Vec<Vec<Vertex>>,
    depth: Vec<usize>,
    height: Vec<usize>,
    subtree_size: Vec<usize>,
    /// Vertices in BFS order from the root.
    order: Vec<Vertex>,
}

impl RootedTree {
    /// Checked constructor from ordered child lists.
    pub fn from_children(root: Vertex, children: Vec<Vec<Vertex>>) -> Result<Self, TreeError> {
        let n = children.len();
        if n == 0 {
            return Err(TreeError::Empty);
        }
        if root >= n {
            return Err(TreeError::RootOutOfRange(root));
        }
        let mut parent = vec![None; n];
        for (p, list) in children.iter().enumerate() {
            for &c in list {
                if c >= n {
                    return Err(TreeError::ChildOutOfRange {
                        parent: p,
                        child: c,
                    });
                }
                if c == root || parent[c].is_some() {
                    return Err(TreeError::MultipleParents(c));
                }
                parent[c] = Some(p);
            }
        }

        let mut depth = vec![0; n];
        let mut reached = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([root]);
        reached[root] = true;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &c in &children[u] {
                // Parent uniqueness already rules out revisits.
                reached[c] = true;
                depth[c] = depth[u] + 1;
                queue.push_back(c);
            }
        }
        if let Some(v) = reached.iter().position(|&r| !r) {
            return Err(TreeError::Unreachable(v));
        }

        let mut height = vec![0; n];
        let mut subtree_size = vec![1; n];
        for &u in order.iter().rev() {
            if let Some(p) = parent[u] {
                height[p] = height[p].max(height[u] + 1);
                subtree_size[p] += subtree_size[u];
            }
        }

        Ok(RootedTree {
            root,
            parent,
            children,
            depth,
            height,
            subtree_size,
            order,
        })
    }

    /// Checked constructor from parent pointers. Children are ordered by
    /// ascending id.
    pub fn from_parents(parent: &[Option<Vertex>]) -> Result<Self, TreeError> {
        let n = parent.len();
        let mut roots = parent.iter().enumerate().filter(|(_, p)| p.is_none());
        let root = roots.next().map(|(v, _)| v).ok_or(TreeError::Empty)?;
        if let Some((extra, _)) = roots.next() {
            return Err(TreeError::Unreachable(extra));
        }
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n {
                    return Err(TreeError::ChildOutOfRange {
                        parent: p,
                        child: v,
                    });
                }
                children[p].push(v);
            }
        }
        Self::from_children(root, children)
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v]
    }

    pub fn children(&self, v: Vertex) -> &[Vertex] {
        &self.children[v]
    }

    pub fn depth(&self, v: Vertex) -> usize {
        self.depth[v]
    }

    /// Length of the longest downward path from `v`; 0 at leaves.
    pub fn height(&self, v: Vertex) -> usize {
        self.height[v]
    }

    /// Height of the whole tree.
    pub fn tree_height(&self) -> usize {
        self.height[self.root]
    }

    /// Number of descendants of `v`, itself included.
    pub fn subtree_size(&self, v: Vertex) -> usize {
        self.subtree_size[v]
    }

    pub fn bfs_order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn is_binary(&self) -> bool {
        self.children.iter().all(|c| c.len() <= 2)
    }

    pub fn left(&self, v: Vertex) -> Option<Vertex> {
        self.children[v].first().copied()
    }

    pub fn right(&self, v: Vertex) -> Option<Vertex> {
        self.children[v].get(1).copied()
    }

    /// Reflexive: every vertex is its own ancestor.
    pub fn is_ancestor(&self, u: Vertex, v: Vertex) -> bool {
        let mut cur = v;
        while self.depth[cur] > self.depth[u] {
            cur = self.parent[cur].expect("non-root has a parent");
        }
        cur == u
    }

    pub fn lca(&self, u: Vertex, v: Vertex) -> Vertex {
        let (mut a, mut b) = (u, v);
        while self.depth[a] > self.depth[b] {
            a = self.parent[a].unwrap();
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b].unwrap();
        }
        while a != b {
            a = self.parent[a].unwrap();
            b = self.parent[b].unwrap();
        }
        a
    }

    /// Proper ancestors of `v`, nearest first.
    pub fn ancestors(&self, v: Vertex) -> Vec<Vertex> {
        std::iter::successors(self.parent[v], |&u| self.parent[u]).collect()
    }

    /// Descendants of `v` (itself included) in BFS order.
    pub fn subtree(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.subtree_size[v]);
        out.push(v);
        let mut i = 0;
        while i < out.len() {
            out.extend_from_slice(&self.children[out[i]]);
            i += 1;
        }
        out
    }

    /// Parent-child edges as `(parent, child)`.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (p, v)))
            .collect()
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(self.n(), self.edges()).expect("tree edges form a simple graph")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bookkeeping_on_small_tree() {
        // 0 -> {1, 2}, 1 -> {3}, 3 -> {4}
        let t = RootedTree::from_children(0, vec![vec![1, 2], vec![3], vec![], vec![4], vec![]])
            .unwrap();
        assert_eq!(t.depth(4), 3);
        assert_eq!(t.height(0), 3);
        assert_eq!(t.height(2), 0);
        assert_eq!(t.height(1), 2);
        assert_eq!(t.subtree_size(0), 5);
        assert_eq!(t.subtree_size(1), 3);
        assert_eq!(t.left(0), Some(1));
        assert_eq!(t.right(0), Some(2));
        assert_eq!(t.right(1), None);
        assert!(t.is_binary());
        assert_eq!(t.subtree(1), vec![1, 3, 4]);
    }

    #[test]
    fn lca_and_ancestry() {
        let t = RootedTree::from_children(0, vec![vec![1, 2], vec![], vec![]]).unwrap();
        assert_eq!(t.lca(1, 2), 0);
        assert!(t.is_ancestor(1, 1));
        assert!(t.is_ancestor(0, 2));
        assert!(!t.is_ancestor(1, 2));

        // chain r=0 -> x=1 -> y=2
        let chain = RootedTree::from_children(0, vec![vec![1], vec![2], vec![]]).unwrap();
        assert_eq!(chain.ancestors(2), vec![1, 0]);
        assert!(chain.ancestors(0).is_empty());
        assert_eq!(chain.lca(2, 1), 1);
    }

    #[test]
    fn checked_constructor_rejects_bad_input() {
        assert_eq!(
            RootedTree::from_children(0, vec![]).unwrap_err(),
            TreeError::Empty
        );
        assert_eq!(
            RootedTree::from_children(0, vec![vec![1], vec![0]]).unwrap_err(),
            TreeError::MultipleParents(0)
        );
        assert_eq!(
            RootedTree::from_children(0, vec![vec![1], vec![], vec![]]).unwrap_err(),
            TreeError::Unreachable(2)
        );
        assert_eq!(
            RootedTree::from_children(0, vec![vec![1, 1], vec![]]).unwrap_err(),
            TreeError::MultipleParents(1)
        );
        // A cycle detached from the root is unreachable.
        assert_eq!(
            RootedTree::from_children(0, vec![vec![], vec![2], vec![1]]).unwrap_err(),
            TreeError::Unreachable(1)
        );
    }

    #[test]
    fn from_parents_orders_children() {
        let t = RootedTree::from_parents(&[Some(2), Some(2), None, Some(0)]).unwrap();
        assert_eq!(t.root(), 2);
        assert_eq!(t.children(2), &[0, 1]);
        assert_eq!(t.depth(3), 2);
        assert!(RootedTree::from_parents(&[None, None]).is_err());
    }

    #[test]
    fn single_vertex() {
        let t = RootedTree::from_children(0, vec![vec![]]).unwrap();
        assert_eq!(t.tree_height(), 0);
        assert_eq!(t.to_graph().n(), 1);
    }
}
