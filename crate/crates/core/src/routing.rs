//! Greedy category-based routing: forward to a neighbor sharing strictly
//! more of the target's categories.

use crate::categories::CategorySystem;
use crate::graph::{bfs_distances_connected, is_connected, Graph, GraphError, Vertex};

/// Which strictly-closer neighbor to forward to when several qualify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Smallest `d(v, t)`, then lowest id.
    #[default]
    Closest,
    /// Largest `d(v, t)` that still improves, then highest id.
    Adversarial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StuckReason {
    /// No neighbor has a strictly smaller distance to the target.
    NoCloserNeighbor,
    /// `d(u, t) = 0` while `u != t`: the vertex already holds every category
    /// of the target, so nothing can be closer.
    Indistinguishable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Delivered,
    Stuck { at: Vertex, reason: StuckReason },
}

/// Trace of one simulated message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RouteResult {
    pub source: Vertex,
    pub target: Vertex,
    pub path: Vec<Vertex>,
    /// `d(path[i], target)` for every hop.
    pub distances: Vec<usize>,
    pub outcome: Outcome,
}

impl RouteResult {
    pub fn delivered(&self) -> bool {
        self.outcome == Outcome::Delivered
    }

    /// Number of edges traversed.
    pub fn hops(&self) -> usize {
        self.path.len() - 1
    }
}

/// Outcome of checking every ordered pair.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    /// Every non-target vertex has a strictly closer neighbor, for every target.
    pub works: bool,
    /// Lexicographically smallest `(u, t)` where `u` has no strictly closer neighbor.
    pub first_failure: Option<(Vertex, Vertex)>,
    pub pairs_checked: usize,
    /// Ordered pairs `u != t` whose default-policy route was delivered.
    pub delivered: usize,
    pub max_route_len: usize,
    pub mean_route_len: f64,
    pub max_stretch: f64,
}

fn pick(g: &Graph, dist: &[usize], u: Vertex, policy: TieBreak) -> Option<Vertex> {
    let closer = g
        .neighbors(u)
        .iter()
        .copied()
        .filter(|&v| dist[v] < dist[u]);
    match policy {
        // Neighbor lists ascend, so min_by_key keeps the lowest id on ties
        // and max_by_key the highest.
        TieBreak::Closest => closer.min_by_key(|&v| dist[v]),
        TieBreak::Adversarial => closer.max_by_key(|&v| dist[v]),
    }
}

pub fn greedy_step(g: &Graph, s: &CategorySystem, u: Vertex, t: Vertex) -> Option<Vertex> {
    greedy_step_with(g, s, u, t, TieBreak::Closest)
}

pub fn greedy_step_with(
    g: &Graph,
    s: &CategorySystem,
    u: Vertex,
    t: Vertex,
    policy: TieBreak,
) -> Option<Vertex> {
    if u == t {
        return None;
    }
    let du = s.cat_distance(u, t);
    let closer = g
        .neighbors(u)
        .iter()
        .map(|&v| (v, s.cat_distance(v, t)))
        .filter(|&(_, dv)| dv < du);
    let chosen = match policy {
        TieBreak::Closest => closer.min_by_key(|&(_, dv)| dv),
        TieBreak::Adversarial => closer.max_by_key(|&(_, dv)| dv),
    };
    chosen.map(|(v, _)| v)
}

pub fn route(g: &Graph, s: &CategorySystem, src: Vertex, t: Vertex) -> RouteResult {
    route_with(g, s, src, t, TieBreak::Closest)
}

/// Simulates greedy forwarding from `src` until `t` is reached or no neighbor
/// is strictly closer. At most `d(src, t)` hops.
pub fn route_with(
    g: &Graph,
    s: &CategorySystem,
    src: Vertex,
    t: Vertex,
    policy: TieBreak,
) -> RouteResult {
    trace(g, &s.distances_to(t), src, t, policy)
}

/// Routes from every vertex to `t`, sharing one distance vector.
pub fn routes_to(g: &Graph, s: &CategorySystem, t: Vertex, policy: TieBreak) -> Vec<RouteResult> {
    let dist = s.distances_to(t);
    (0..g.n())
        .map(|src| trace(g, &dist, src, t, policy))
        .collect()
}

fn trace(g: &Graph, dist: &[usize], src: Vertex, t: Vertex, policy: TieBreak) -> RouteResult {
    let mut path = vec![src];
    let mut distances = vec![dist[src]];
    let mut u = src;
    let outcome = loop {
        if u == t {
            break Outcome::Delivered;
        }
        match pick(g, dist, u, policy) {
            Some(v) => {
                path.push(v);
                distances.push(dist[v]);
                u = v;
            }
            None => {
                let reason = if dist[u] == 0 {
                    StuckReason::Indistinguishable
                } else {
                    StuckReason::NoCloserNeighbor
                };
                break Outcome::Stuck { at: u, reason };
            }
        }
    };
    RouteResult {
        source: src,
        target: t,
        path,
        distances,
        outcome,
    }
}

/// Checks the no-dead-end condition for every ordered pair and gathers route
/// statistics under the default tie-break.
///
/// Because `d` is a non-negative integer that strictly drops on every hop,
/// `works` holds exactly when greedy delivery succeeds under every possible
/// choice of closer neighbor.
pub fn verify_all_pairs(g: &Graph, s: &CategorySystem) -> Result<VerificationReport, GraphError> {
    if !is_connected(g) {
        return Err(GraphError::Disconnected);
    }
    let n = g.n();
    let mut first_failure: Option<(Vertex, Vertex)> = None;
    let mut delivered = 0usize;
    let mut total_len = 0usize;
    let mut max_route_len = 0usize;
    let mut max_stretch = 0.0f64;

    let mut next = vec![None; n];
    let mut route_len: Vec<Option<usize>> = vec![None; n];
    let mut order: Vec<Vertex> = Vec::with_capacity(n);

    for t in 0..n {
        let dist = s.distances_to(t);
        for (u, hop) in next.iter_mut().enumerate() {
            *hop = if u == t {
                None
            } else {
                pick(g, &dist, u, TieBreak::Closest)
            };
            if u != t && hop.is_none() {
                let pair = (u, t);
                if first_failure.is_none_or(|f| pair < f) {
                    first_failure = Some(pair);
                }
            }
        }

        // Next hops strictly lower d, so resolving in ascending d order sees
        // every successor first.
        order.clear();
        order.extend(0..n);
        order.sort_by_key(|&v| dist[v]);
        route_len.fill(None);
        route_len[t] = Some(0);
        for &u in &order {
            if let Some(v) = next[u] {
                route_len[u] = route_len[v].map(|l| l + 1);
            }
        }

        let hops = bfs_distances_connected(g, t);
        for u in (0..n).filter(|&u| u != t) {
            if let Some(len) = route_len[u] {
                delivered += 1;
                total_len += len;
                max_route_len = max_route_len.max(len);
                max_stretch = max_stretch.max(len as f64 / hops[u] as f64);
            }
        }
    }

    Ok(VerificationReport {
        works: first_failure.is_none(),
        first_failure,
        pairs_checked: n * n.saturating_sub(1),
        delivered,
        max_route_len,
        mean_route_len: if delivered == 0 {
            0.0
        } else {
            total_len as f64 / delivered as f64
        },
        max_stretch,
    })
}
