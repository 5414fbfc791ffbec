use std::collections::BTreeMap;

use crate::categories::CategorySystem;
use crate::graph::{bfs_spanning_tree, choose_bfs_root, is_connected, Graph, GraphError, Vertex};
use crate::tree::RootedTree;

use super::binary::{binary_families, FamilyKind};
use super::embed::{embed_into_binary_tree, Embedding};
use super::ConstructionError;

/// All intermediate products of the tree construction.
#[derive(Debug, Clone)]
pub struct TreeConstruction {
    pub embedding: Embedding,
    /// The binary construction on the host tree, dummies included.
    pub host_system: CategorySystem,
    /// Host sets carried over to the original vertices, before pruning.
    pub lifted_system: CategorySystem,
    /// The final system over the original vertices.
    pub system: CategorySystem,
}

/// Builds categories for an arbitrary rooted tree via its binary embedding.
///
/// Host sets rooted at a real vertex are restricted to real vertices. A host
/// set rooted at a dummy has no real top vertex, so deleting the dummy would
/// disconnect it in the original tree and siblings could no longer route
/// through their parent. Those sets are instead merged per (anchor, dummy
/// level, cut kind) and the anchor is added: dummies on one level have
/// disjoint subtrees, and each merged set stays connected through the anchor.
/// Host subtree sets of dummies are dropped.
///
/// The anchor now sits in more sets than it did in the host, so a final pass
/// removes every set whose separating work is already done by others.
pub fn tree_construction(t: &RootedTree) -> TreeConstruction {
    let embedding = embed_into_binary_tree(t);
    let host = embedding.binary();
    let families = binary_families(host);

    let host_system = CategorySystem::new(host.n(), families.iter().map(|f| f.members.clone()))
        .expect("host vertices are in range");

    let mut sets: Vec<Vec<Vertex>> = Vec::with_capacity(families.len());
    let mut lifted: BTreeMap<(Vertex, usize, FamilyKind), Vec<Vertex>> = BTreeMap::new();
    for family in &families {
        let real = family.members.iter().filter_map(|&h| embedding.original(h));
        if embedding.is_real(family.root) {
            sets.push(real.collect());
        } else if family.kind != FamilyKind::Subtree {
            let key = (
                embedding.anchor(family.root),
                embedding.level(family.root),
                family.kind,
            );
            lifted.entry(key).or_default().extend(real);
        }
    }
    for ((anchor, _, _), mut members) in lifted {
        members.push(embedding.original(anchor).expect("anchors are real"));
        sets.push(members);
    }

    let lifted_system = CategorySystem::new(t.n(), sets).expect("original vertices are in range");
    let system = prune_redundant(t, &lifted_system);
    TreeConstruction {
        embedding,
        host_system,
        lifted_system,
        system,
    }
}

/// Removes sets not needed for routing on the tree `t`.
///
/// With connected sets on a tree, greedy routing from `s` to `t` works iff
/// some set holds `t` and the next hop `u` but not `s`: any set holding `s`
/// and `t` also holds `u`. A set `C` provides exactly the triples with `u, t`
/// in `C` and `s` a neighbor of `u` outside `C`, and `(s, t)` fixes `u`. So we
/// count providers per ordered pair `(s, t)` and drop, in order, each set
/// whose pairs all have another provider. A single vertex keeps its set.
fn prune_redundant(t: &RootedTree, system: &CategorySystem) -> CategorySystem {
    let n = t.n();
    if n < 2 {
        return system.clone();
    }
    let neighbors = |u: Vertex| t.parent(u).into_iter().chain(t.children(u).iter().copied());
    let mut inside = vec![false; n];
    let mut provided = |set: &[Vertex], out: &mut Vec<usize>| {
        out.clear();
        for &v in set {
            inside[v] = true;
        }
        for &u in set {
            for s in neighbors(u).filter(|&s| !inside[s]) {
                out.extend(set.iter().map(|&x| s * n + x));
            }
        }
        for &v in set {
            inside[v] = false;
        }
    };

    let mut providers = vec![0u32; n * n];
    let mut pairs = Vec::new();
    for set in system.categories() {
        provided(set, &mut pairs);
        for &p in &pairs {
            providers[p] += 1;
        }
    }
    let mut kept = Vec::with_capacity(system.len());
    for set in system.categories() {
        provided(set, &mut pairs);
        if pairs.iter().all(|&p| providers[p] >= 2) {
            for &p in &pairs {
                providers[p] -= 1;
            }
        } else {
            kept.push(set.clone());
        }
    }
    CategorySystem::new(n, kept).expect("kept sets are in range")
}

pub fn construct_tree_categories(t: &RootedTree) -> CategorySystem {
    tree_construction(t).system
}

#[derive(Debug, Clone)]
pub struct GraphConstruction {
    pub root: Vertex,
    pub spanning_tree: RootedTree,
    pub system: CategorySystem,
}

/// Categories for any connected graph: build them on a BFS spanning tree
/// rooted at the double-sweep midpoint. Tree neighbors are graph neighbors,
/// so every strictly-closer tree neighbor survives in the graph.
pub fn construct_graph_categories(g: &Graph) -> Result<GraphConstruction, ConstructionError> {
    if g.n() == 0 {
        return Err(ConstructionError::Empty);
    }
    if !is_connected(g) {
        return Err(ConstructionError::Graph(GraphError::Disconnected));
    }
    let root = choose_bfs_root(g)?;
    let spanning_tree = bfs_spanning_tree(g, root)?;
    let system = construct_tree_categories(&spanning_tree);
    Ok(GraphConstruction {
        root,
        spanning_tree,
        system,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::categories::{is_internally_connected, is_shattered};
    use crate::constructions::construct_binary_tree_categories;
    use crate::routing::verify_all_pairs;

    fn star(leaves: usize) -> RootedTree {
        let mut children = vec![(1..=leaves).collect::<Vec<_>>()];
        children.extend(std::iter::repeat_n(Vec::new(), leaves));
        RootedTree::from_children(0, children).unwrap()
    }

    #[test]
    fn star_of_four() {
        let t = star(4);
        let built = tree_construction(&t);
        let g = t.to_graph();
        let s = &built.system;
        assert!(is_internally_connected(&g, s));
        assert!(is_shattered(&g, s));
        assert!(verify_all_pairs(&g, s).unwrap().works);
        assert!(s.memdim() <= built.host_system.memdim());
    }

    #[test]
    fn binary_trees_lift_to_the_binary_construction() {
        let t = RootedTree::from_children(0, vec![vec![1, 2], vec![3], vec![], vec![]]).unwrap();
        let built = tree_construction(&t);
        let mut a = built.lifted_system.categories().to_vec();
        let mut b = construct_binary_tree_categories(&t)
            .unwrap()
            .categories()
            .to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert!(built.system.categories().iter().all(|c| b.contains(c)));
    }

    #[test]
    fn pruning_keeps_routing_and_drops_the_full_set() {
        let t = star(5);
        let built = tree_construction(&t);
        let g = t.to_graph();
        assert!(built.system.len() < built.lifted_system.len());
        assert!(built.system.categories().iter().all(|c| c.len() < 6));
        assert!(is_shattered(&g, &built.system));
        assert!(verify_all_pairs(&g, &built.system).unwrap().works);
    }

    #[test]
    fn graph_pipeline_on_small_graphs() {
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        for (g, diam) in [(c4, 2), (k4, 1)] {
            let built = construct_graph_categories(&g).unwrap();
            assert!(verify_all_pairs(&g, &built.system).unwrap().works);
            assert!(built.system.memdim() >= diam);
        }
    }

    #[test]
    fn graph_pipeline_errors() {
        assert_eq!(
            construct_graph_categories(&Graph::empty(0)).unwrap_err(),
            ConstructionError::Empty
        );
        assert_eq!(
            construct_graph_categories(&Graph::empty(3)).unwrap_err(),
            ConstructionError::Graph(GraphError::Disconnected)
        );
    }

    #[test]
    fn single_vertex_graph() {
        let built = construct_graph_categories(&Graph::empty(1)).unwrap();
        assert_eq!(built.system.categories(), &[vec![0]]);
    }
}
