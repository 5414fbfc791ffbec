use crate::categories::CategorySystem;
use crate::graph::{Graph, Vertex};

use super::ConstructionError;

/// Vertices of a path graph in walk order, starting at the endpoint with the
/// smaller id.
pub fn path_order(g: &Graph) -> Result<Vec<Vertex>, ConstructionError> {
    if g.n() == 0 {
        return Err(ConstructionError::Empty);
    }
    if !g.is_path() {
        return Err(ConstructionError::NotAPath);
    }
    let start = (0..g.n()).find(|&v| g.degree(v) <= 1).unwrap();
    let mut order = Vec::with_capacity(g.n());
    let mut prev = None;
    let mut cur = start;
    loop {
        order.push(cur);
        let next = g.neighbors(cur).iter().copied().find(|&v| Some(v) != prev);
        match next {
            Some(v) => {
                prev = Some(cur);
                cur = v;
            }
            None => break,
        }
    }
    Ok(order)
}

/// For each position `i`, the sets of everything before `i` and everything
/// after `i`. Every vertex lands in exactly `n - 1` sets, matching the
/// diameter.
pub fn construct_path_categories(g: &Graph) -> Result<CategorySystem, ConstructionError> {
    let order = path_order(g)?;
    let n = order.len();
    let sets = (0..n).flat_map(|i| [order[..i].to_vec(), order[i + 1..].to_vec()]);
    Ok(CategorySystem::new(n, sets).expect("path vertices are in range"))
}
