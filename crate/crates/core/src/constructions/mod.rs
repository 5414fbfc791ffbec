//! Category-system constructions for paths, binary trees, general trees and
//! connected graphs.

mod balance;
mod binary;
mod embed;
mod general;
mod path;

use thiserror::Error;

use crate::categories::CategorySystem;
use crate::graph::{bfs_spanning_tree, choose_bfs_root, Graph, GraphError, Vertex};

pub use balance::{
    build_weight_balanced, floor_log2_ratio, BalanceError, BalancedShape, ShapeNode,
};
pub use binary::construct_binary_tree_categories;
pub use embed::{embed_into_binary_tree, Embedding};
pub use general::{
    construct_graph_categories, construct_tree_categories, tree_construction, GraphConstruction,
    TreeConstruction,
};
pub use path::{construct_path_categories, path_order};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is not a path")]
    NotAPath,
    #[error("graph is not a tree")]
    NotATree,
    #[error("vertex {0} has more than two children")]
    NotBinary(Vertex),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Path construction for paths on two or more vertices, tree construction
    /// for other trees, spanning-tree construction otherwise.
    #[default]
    Auto,
    Path,
    Tree,
    Graph,
}

impl Method {
    /// Resolves `Auto` against the shape of `g`.
    pub fn resolve(self, g: &Graph) -> Method {
        match self {
            Method::Auto if g.n() >= 2 && g.is_path() => Method::Path,
            Method::Auto if g.is_tree() => Method::Tree,
            Method::Auto => Method::Graph,
            other => other,
        }
    }
}

/// Dispatches to the construction selected by `method`.
pub fn construct(g: &Graph, method: Method) -> Result<CategorySystem, ConstructionError> {
    match method.resolve(g) {
        Method::Path => construct_path_categories(g),
        Method::Tree => {
            if g.n() == 0 {
                return Err(ConstructionError::Empty);
            }
            if !g.is_tree() {
                return Err(ConstructionError::NotATree);
            }
            let tree = bfs_spanning_tree(g, choose_bfs_root(g)?)?;
            Ok(construct_tree_categories(&tree))
        }
        Method::Graph | Method::Auto => construct_graph_categories(g).map(|c| c.system),
    }
}
