//! Brute-force oracles over tiny graphs.
//!
//! Everything here works on vertex bitmasks with its own routing and
//! shattering checks, so it can serve as an independent reference for the
//! main implementation.

use rand::seq::IndexedRandom;
use rand::Rng;
use thiserror::Error;

use crate::categories::CategorySystem;
use crate::generators::rng_for;
use crate::graph::{Graph, Vertex};

/// Largest graph accepted by [`brute_force_min_memdim`].
pub const MAX_ORACLE_N: usize = 6;
/// Largest membership dimension [`brute_force_min_memdim`] will search.
pub const MAX_ORACLE_DIM: usize = 4;
/// Largest graph accepted by [`find_ic_shattered_failure`].
pub const MAX_SEARCH_N: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices; the oracle handles at most {max}")]
    TooLarge { n: usize, max: usize },
    #[error("membership dimension {dim} exceeds the oracle limit {max}")]
    DimTooLarge { dim: usize, max: usize },
}

/// Which vertex subsets the oracle may use as categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Candidates {
    /// Only subsets inducing a connected subgraph.
    #[default]
    Connected,
    /// Every non-empty subset.
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GraphClass {
    #[default]
    Any,
    Trees,
}

type Mask = u32;

/// Graph as neighbor bitmasks.
#[derive(Debug, Clone)]
struct MaskGraph {
    adj: Vec<Mask>,
}

impl MaskGraph {
    fn new(g: &Graph) -> Self {
        assert!(g.n() <= 31);
        let adj = (0..g.n())
            .map(|u| g.neighbors(u).iter().fold(0, |m, &v| m | (1 << v)))
            .collect();
        MaskGraph { adj }
    }

    fn n(&self) -> usize {
        self.adj.len()
    }

    fn full(&self) -> Mask {
        ((1u64 << self.n()) - 1) as Mask
    }

    fn is_connected_subset(&self, set: Mask) -> bool {
        if set == 0 {
            return false;
        }
        let mut reached = set & set.wrapping_neg();
        loop {
            let mut grown = reached;
            for v in bits(reached) {
                grown |= self.adj[v] & set;
            }
            if grown == reached {
                return reached == set;
            }
            reached = grown;
        }
    }

    /// Every non-target vertex has a neighbor missing strictly fewer of the
    /// target's sets.
    fn routes(&self, sets: &[Mask]) -> bool {
        let n = self.n();
        let mut d = vec![0u32; n];
        for t in 0..n {
            d.fill(0);
            for &c in sets.iter().filter(|&&c| c & (1 << t) != 0) {
                for (v, dv) in d.iter_mut().enumerate() {
                    if c & (1 << v) == 0 {
                        *dv += 1;
                    }
                }
            }
            for u in (0..n).filter(|&u| u != t) {
                if !bits(self.adj[u]).any(|v| d[v] < d[u]) {
                    return false;
                }
            }
        }
        true
    }

    fn shattered(&self, sets: &[Mask]) -> bool {
        let full = self.full();
        (0..self.n()).all(|s| {
            let bit = 1 << s;
            let reach = sets
                .iter()
                .filter(|&&c| c & bit == 0 && c & self.adj[s] != 0)
                .fold(0, |acc, &c| acc | c);
            reach | bit == full
        })
    }

    /// Bitmask over ordered pairs `s * n + t` that `set` shatters.
    fn pair_cover(&self, set: Mask) -> u64 {
        let n = self.n();
        let mut cover = 0u64;
        for s in 0..n {
            if set & (1 << s) != 0 || set & self.adj[s] == 0 {
                continue;
            }
            for t in bits(set) {
                cover |= 1 << (s * n + t);
            }
        }
        cover
    }

    fn all_pairs(&self) -> u64 {
        let n = self.n();
        let mut m = 0u64;
        for s in 0..n {
            for t in (0..n).filter(|&t| t != s) {
                m |= 1 << (s * n + t);
            }
        }
        m
    }
}

fn bits(mut m: Mask) -> impl Iterator<Item = Vertex> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as Vertex;
            m &= m - 1;
            Some(v)
        }
    })
}

fn to_system(n: usize, sets: &[Mask]) -> CategorySystem {
    CategorySystem::new(n, sets.iter().map(|&c| bits(c).collect::<Vec<_>>()))
        .expect("masks stay inside the vertex range")
}

fn candidate_sets(g: &MaskGraph, candidates: Candidates) -> Vec<Mask> {
    let mut sets: Vec<Mask> = (1..=g.full())
        .filter(|&c| candidates == Candidates::All || g.is_connected_subset(c))
        .collect();
    sets.sort_by_key(|&c| (c.count_ones(), c));
    sets
}

struct Search<'a> {
    graph: &'a MaskGraph,
    sets: Vec<Mask>,
    covers: Vec<u64>,
    /// suffix_cover[i] = OR of covers[i..].
    suffix_cover: Vec<u64>,
    all_pairs: u64,
    cap: u32,
    load: Vec<u32>,
    chosen: Vec<Mask>,
}

impl Search<'_> {
    fn run(&mut self, idx: usize, covered: u64) -> bool {
        if covered == self.all_pairs && self.graph.routes(&self.chosen) {
            return true;
        }
        if idx == self.sets.len() || covered | self.suffix_cover[idx] != self.all_pairs {
            return false;
        }
        let set = self.sets[idx];
        if bits(set).all(|v| self.load[v] < self.cap) {
            for v in bits(set) {
                self.load[v] += 1;
            }
            self.chosen.push(set);
            if self.run(idx + 1, covered | self.covers[idx]) {
                return true;
            }
            self.chosen.pop();
            for v in bits(set) {
                self.load[v] -= 1;
            }
        }
        self.run(idx + 1, covered)
    }
}

/// Smallest membership dimension `<= max_dim` of any category system under
/// which greedy routing works on `g`, with one optimal system.
///
/// Iterative deepening on the per-vertex membership cap. Branches that can no
/// longer become shattered (a necessary condition for routing) are pruned.
pub fn brute_force_min_memdim(
    g: &Graph,
    max_dim: usize,
    candidates: Candidates,
) -> Result<Option<(CategorySystem, usize)>, OracleError> {
    if g.n() > MAX_ORACLE_N {
        return Err(OracleError::TooLarge {
            n: g.n(),
            max: MAX_ORACLE_N,
        });
    }
    if max_dim > MAX_ORACLE_DIM {
        return Err(OracleError::DimTooLarge {
            dim: max_dim,
            max: MAX_ORACLE_DIM,
        });
    }
    let graph = MaskGraph::new(g);
    let sets = candidate_sets(&graph, candidates);
    let covers: Vec<u64> = sets.iter().map(|&c| graph.pair_cover(c)).collect();
    let mut suffix_cover = vec![0u64; sets.len() + 1];
    for i in (0..sets.len()).rev() {
        suffix_cover[i] = suffix_cover[i + 1] | covers[i];
    }
    let all_pairs = graph.all_pairs();

    for cap in 0..=max_dim {
        let mut search = Search {
            graph: &graph,
            sets: sets.clone(),
            covers: covers.clone(),
            suffix_cover: suffix_cover.clone(),
            all_pairs,
            cap: cap as u32,
            load: vec![0; g.n()],
            chosen: Vec::new(),
        };
        if search.run(0, 0) {
            let system = to_system(g.n(), &search.chosen);
            let dim = system.memdim();
            return Ok(Some((system, dim)));
        }
    }
    Ok(None)
}

/// All connected graphs on exactly `n` labelled vertices (no isomorphism
/// reduction). Practical for `n <= 5`.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    assert!(pairs.len() < 32, "too many vertex pairs to enumerate");
    (0u32..1 << pairs.len())
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e);
            Graph::from_edges(n, edges).expect("distinct pairs")
        })
        .filter(crate::graph::is_connected)
        .collect()
}

/// A graph with a category system that is internally connected and
/// shattered, yet under which greedy routing gets stuck.
#[derive(Debug, Clone)]
pub struct CounterExample {
    pub graph: Graph,
    pub system: CategorySystem,
    /// Number of candidate pairs examined before the hit.
    pub trials: u64,
}

/// Searches for an internally connected, shattered category system on which
/// greedy routing fails. Exhaustive over all families of connected subsets
/// for graphs on at most four vertices, then random for up to `max_n`
/// vertices. Every examined `(G, S)` counts against `trials`.
pub fn find_ic_shattered_failure(
    max_n: usize,
    trials: u64,
    seed: u64,
    class: GraphClass,
) -> Result<Option<CounterExample>, OracleError> {
    if max_n > MAX_SEARCH_N {
        return Err(OracleError::TooLarge {
            n: max_n,
            max: MAX_SEARCH_N,
        });
    }
    let mut used = 0u64;
    let is_hit = |graph: &MaskGraph, sets: &[Mask]| graph.shattered(sets) && !graph.routes(sets);
    let accept = |g: &Graph| class == GraphClass::Any || g.is_tree();

    for n in 3..=max_n.min(4) {
        for g in connected_graphs(n).into_iter().filter(|g| accept(g)) {
            let graph = MaskGraph::new(&g);
            let pool = candidate_sets(&graph, Candidates::Connected);
            for family in 0u64..1 << pool.len() {
                if used == trials {
                    return Ok(None);
                }
                used += 1;
                let sets: Vec<Mask> = bits(family as Mask).map(|i| pool[i]).collect();
                if is_hit(&graph, &sets) {
                    return Ok(Some(CounterExample {
                        system: to_system(n, &sets),
                        graph: g,
                        trials: used,
                    }));
                }
            }
        }
    }

    if max_n < 3 {
        return Ok(None);
    }
    let mut rng = rng_for(seed, 0);
    while used < trials {
        used += 1;
        let n = rng.random_range(3..=max_n);
        let g = random_small_graph(n, class, &mut rng);
        let graph = MaskGraph::new(&g);
        let sets = random_connected_family(&graph, &mut rng);
        if is_hit(&graph, &sets) {
            return Ok(Some(CounterExample {
                system: to_system(n, &sets),
                graph: g,
                trials: used,
            }));
        }
    }
    Ok(None)
}

fn random_small_graph(n: usize, class: GraphClass, rng: &mut impl Rng) -> Graph {
    // Random recursive tree, then extra chords for the general class.
    let mut edges: Vec<(Vertex, Vertex)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    if class == GraphClass::Any {
        let p = rng.random_range(0.1..0.6);
        for u in 0..n {
            for v in u + 1..n {
                if !edges.contains(&(u, v)) && rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
    }
    Graph::from_edges(n, edges).expect("distinct pairs")
}

fn random_connected_family(graph: &MaskGraph, rng: &mut impl Rng) -> Vec<Mask> {
    let n = graph.n();
    let mut sets: Vec<Mask> = Vec::new();
    let singleton_p = rng.random_range(0.0..1.0);
    for v in 0..n {
        if rng.random_bool(singleton_p) {
            sets.push(1 << v);
        }
    }
    let count = rng.random_range(1..=2 * n);
    for _ in 0..count {
        let size = rng.random_range(1..=n);
        let mut set: Mask = 1 << rng.random_range(0..n);
        while (set.count_ones() as usize) < size {
            let frontier: Vec<Vertex> = bits(set).flat_map(|v| bits(graph.adj[v] & !set)).collect();
            match frontier.choose(rng) {
                Some(&v) => set |= 1 << v,
                None => break,
            }
        }
        if !sets.contains(&set) {
            sets.push(set);
        }
    }
    sets
}
