//! Embedding a rooted tree into a binary tree while preserving ancestry.

use crate::graph::Vertex;
use crate::tree::RootedTree;

use super::balance::{build_weight_balanced, BalancedShape, ShapeNode};

/// A rooted tree `T` expanded into a binary host tree `B`.
///
/// Original vertex `v` becomes host vertex `forward(v)`; host vertices past
/// the originals are dummies created by weight balancing.
#[derive(Debug, Clone)]
pub struct Embedding {
    binary: RootedTree,
    forward_map: Vec<Vertex>,
    backward_map: Vec<Option<Vertex>>,
    /// For each host vertex, the host vertex of the original whose child list
    /// it expands (itself for real vertices).
    anchor: Vec<Vertex>,
}

impl Embedding {
    pub fn binary(&self) -> &RootedTree {
        &self.binary
    }

    pub fn forward(&self, v: Vertex) -> Vertex {
        self.forward_map[v]
    }

    pub fn forward_map(&self) -> &[Vertex] {
        &self.forward_map
    }

    /// The original vertex behind a host vertex, `None` for dummies.
    pub fn original(&self, host: Vertex) -> Option<Vertex> {
        self.backward_map[host]
    }

    pub fn is_real(&self, host: Vertex) -> bool {
        self.backward_map[host].is_some()
    }

    pub fn real_flags(&self) -> Vec<bool> {
        self.backward_map.iter().map(Option::is_some).collect()
    }

    pub fn dummy_count(&self) -> usize {
        self.backward_map.iter().filter(|m| m.is_none()).count()
    }

    /// Nearest real host ancestor of `host`, or `host` itself when real.
    pub fn anchor(&self, host: Vertex) -> Vertex {
        self.anchor[host]
    }

    /// Number of host edges between `host` and its anchor.
    pub fn level(&self, host: Vertex) -> usize {
        self.binary.depth(host) - self.binary.depth(self.anchor[host])
    }
}

/// Replaces every vertex with more than two children by itself atop a
/// weight-balanced shape over its children (weights = subtree sizes, children
/// in ascending id order). Vertices with at most two children keep their
/// child order; a lone child is the left child.
pub fn embed_into_binary_tree(t: &RootedTree) -> Embedding {
    let n = t.n();
    let mut children: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let mut anchor: Vec<Vertex> = (0..n).collect();

    for u in 0..n {
        let kids = t.children(u);
        if kids.len() <= 2 {
            children[u] = kids.to_vec();
            continue;
        }
        let mut kids = kids.to_vec();
        kids.sort_unstable();
        let weights: Vec<u64> = kids.iter().map(|&c| t.subtree_size(c) as u64).collect();
        let shape = build_weight_balanced(&weights).expect("subtree sizes are positive");
        attach_shape(
            &shape,
            shape.root(),
            u,
            u,
            &kids,
            &mut children,
            &mut anchor,
        );
    }

    let host_n = children.len();
    let mut backward_map = vec![None; host_n];
    for (v, slot) in backward_map.iter_mut().enumerate().take(n) {
        *slot = Some(v);
    }
    let binary =
        RootedTree::from_children(t.root(), children).expect("expansion preserves tree shape");
    Embedding {
        binary,
        forward_map: (0..n).collect(),
        backward_map,
        anchor,
    }
}

/// Hangs the children of shape node `idx` below host vertex `host`.
fn attach_shape(
    shape: &BalancedShape,
    idx: usize,
    host: Vertex,
    owner: Vertex,
    kids: &[Vertex],
    children: &mut Vec<Vec<Vertex>>,
    anchor: &mut Vec<Vertex>,
) {
    let ShapeNode::Internal(l, r) = shape.node(idx) else {
        unreachable!("shape roots with several leaves are internal");
    };
    for side in [l, r] {
        match shape.node(side) {
            ShapeNode::Leaf(item) => children[host].push(kids[item]),
            ShapeNode::Internal(..) => {
                let dummy = children.len();
                children.push(Vec::new());
                anchor.push(owner);
                children[host].push(dummy);
                attach_shape(shape, side, dummy, owner, kids, children, anchor);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(leaves: usize) -> RootedTree {
        let mut children = vec![(1..=leaves).collect::<Vec<_>>()];
        children.extend(std::iter::repeat_n(Vec::new(), leaves));
        RootedTree::from_children(0, children).unwrap()
    }

    #[test]
    fn star_of_four_gets_two_dummies() {
        let e = embed_into_binary_tree(&star(4));
        let b = e.binary();
        assert_eq!(e.dummy_count(), 2);
        assert_eq!(b.n(), 7);
        assert!(b.is_binary());
        assert_eq!(b.tree_height(), 2);
        for leaf in 1..=4 {
            assert_eq!(b.depth(e.forward(leaf)), 2);
            assert!(b.is_ancestor(e.forward(0), e.forward(leaf)));
        }
        assert_eq!(b.children(0), &[5, 6]);
        assert_eq!(b.children(5), &[1, 2]);
        assert_eq!(b.children(6), &[3, 4]);
        assert_eq!(e.anchor(5), 0);
        assert_eq!(e.level(6), 1);
        assert_eq!(e.original(5), None);
        assert_eq!(
            e.real_flags(),
            vec![true, true, true, true, true, false, false]
        );
    }

    #[test]
    fn binary_input_is_unchanged() {
        let t = RootedTree::from_children(0, vec![vec![2, 1], vec![3], vec![], vec![]]).unwrap();
        let e = embed_into_binary_tree(&t);
        assert_eq!(e.dummy_count(), 0);
        assert_eq!(e.binary(), &t);
    }

    #[test]
    fn caterpillar_preserves_ancestry() {
        // Spine 0-1-2-3 with three leaves hanging off each spine vertex.
        let mut parent = vec![None, Some(0), Some(1), Some(2)];
        for spine in 0..4 {
            for _ in 0..3 {
                parent.push(Some(spine));
            }
        }
        let t = RootedTree::from_parents(&parent).unwrap();
        assert_eq!(t.n(), 16);
        let e = embed_into_binary_tree(&t);
        let b = e.binary();
        assert!(b.is_binary());
        for u in 0..t.n() {
            for v in 0..t.n() {
                assert_eq!(
                    t.is_ancestor(u, v),
                    b.is_ancestor(e.forward(u), e.forward(v)),
                    "pair ({u}, {v})"
                );
            }
        }
    }
}
