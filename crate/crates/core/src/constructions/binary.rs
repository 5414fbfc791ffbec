//! Categories for binary trees: one subtree set per vertex plus two families
//! of depth-cut sets that steer messages across the vertex.

use crate::categories::CategorySystem;
use crate::graph::Vertex;
use crate::tree::RootedTree;

use super::ConstructionError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum FamilyKind {
    /// All descendants of the root vertex.
    Subtree,
    /// Root + left subtree down to absolute depth `i` + whole right subtree.
    LeftCut(usize),
    /// Root + right subtree down to absolute depth `i` + whole left subtree.
    RightCut(usize),
}

#[derive(Debug, Clone)]
pub(crate) struct Family {
    pub root: Vertex,
    pub kind: FamilyKind,
    pub members: Vec<Vertex>,
}

/// Every set of the binary construction, tagged with its root and kind.
/// Duplicates are not removed here.
pub(crate) fn binary_families(t: &RootedTree) -> Vec<Family> {
    debug_assert!(t.is_binary());
    let mut out = Vec::new();
    for v in 0..t.n() {
        out.push(Family {
            root: v,
            kind: FamilyKind::Subtree,
            members: t.subtree(v),
        });
        let left = t.left(v).map(|c| t.subtree(c)).unwrap_or_default();
        let right = t.right(v).map(|c| t.subtree(c)).unwrap_or_default();
        push_cuts(t, v, &left, &right, FamilyKind::LeftCut, &mut out);
        push_cuts(t, v, &right, &left, FamilyKind::RightCut, &mut out);
    }
    out
}

/// Sets `v + cut[.. depth <= i] + full` for `depth(v) <= i <= depth(v) + height(cut
/// root)`. `cut` is in BFS order, so its depth-bounded prefixes are prefixes.
/// An empty `cut` side has height -1 and contributes nothing.
fn push_cuts(
    t: &RootedTree,
    v: Vertex,
    cut: &[Vertex],
    full: &[Vertex],
    kind: fn(usize) -> FamilyKind,
    out: &mut Vec<Family>,
) {
    let Some(&cut_root) = cut.first() else {
        return;
    };
    let base = t.depth(v);
    let mut taken = 0;
    for i in base..=base + t.height(cut_root) {
        while taken < cut.len() && t.depth(cut[taken]) <= i {
            taken += 1;
        }
        let mut members = Vec::with_capacity(1 + taken + full.len());
        members.push(v);
        members.extend_from_slice(&cut[..taken]);
        members.extend_from_slice(full);
        out.push(Family {
            root: v,
            kind: kind(i),
            members,
        });
    }
}

/// Category system for a binary tree (at most two children per vertex, a lone
/// child counting as left). Shattered and internally connected on the tree,
/// with memdim at most `(h + 1)(2h + 3) <= 3 (h + 1)^2` for height `h`.
pub fn construct_binary_tree_categories(
    t: &RootedTree,
) -> Result<CategorySystem, ConstructionError> {
    if !t.is_binary() {
        let v = (0..t.n()).find(|&v| t.children(v).len() > 2).unwrap();
        return Err(ConstructionError::NotBinary(v));
    }
    let sets = binary_families(t).into_iter().map(|f| f.members);
    Ok(CategorySystem::new(t.n(), sets).expect("tree vertices are in range"))
}
