//! Seeded random graph families and fixed fixtures.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)` and switched to stream `s` via `set_stream(s)`.
//! Retrying generators use stream `attempt` for each attempt, so the output
//! depends only on `(seed, parameters)`.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{is_connected, Graph, Vertex};

/// Attempts made by the `*_connected` generators before giving up.
pub const MAX_RETRIES: u64 = 1000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeneratorError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no connected sample after {0} attempts")]
    RetriesExhausted(u64),
}

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn graph(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Graph {
    Graph::from_edges(n, edges).expect("generator emits simple edges")
}

/// Uniform labelled tree on `n` vertices, decoded from a random Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph, GeneratorError> {
    if n == 0 {
        return Err(GeneratorError::InvalidParameter(
            "n must be at least 1".into(),
        ));
    }
    if n <= 2 {
        return Ok(path(n));
    }
    let mut rng = rng_for(seed, 0);
    let code: Vec<Vertex> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    Ok(graph(n, prufer_decode(n, &code)))
}

fn prufer_decode(n: usize, code: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    let mut degree = vec![1usize; n];
    for &v in code {
        degree[v] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<Vertex>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in code {
        let Reverse(leaf) = leaves.pop().expect("a Prüfer code always leaves a leaf");
        edges.push((leaf.min(v), leaf.max(v)));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    edges.push((a.min(b), a.max(b)));
    edges
}

fn check_probability(p: f64) -> Result<(), GeneratorError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(GeneratorError::InvalidParameter(format!(
            "probability {p} not in [0, 1]"
        )))
    }
}

fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    graph(n, edges)
}

/// G(n, p) sample; may be disconnected.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph, GeneratorError> {
    check_probability(p)?;
    Ok(gnp(n, p, &mut rng_for(seed, 0)))
}

/// G(n, p) conditioned on connectivity by rejection, at most [`MAX_RETRIES`] draws.
pub fn erdos_renyi_connected(n: usize, p: f64, seed: u64) -> Result<Graph, GeneratorError> {
    check_probability(p)?;
    if n == 0 {
        return Err(GeneratorError::InvalidParameter(
            "n must be at least 1".into(),
        ));
    }
    (0..MAX_RETRIES)
        .map(|attempt| gnp(n, p, &mut rng_for(seed, attempt)))
        .find(is_connected)
        .ok_or(GeneratorError::RetriesExhausted(MAX_RETRIES))
}

/// The default edge probability used for sweeps, `2 ln n / n`.
pub fn default_er_probability(n: usize) -> f64 {
    if n <= 1 {
        1.0
    } else {
        (2.0 * (n as f64).ln() / n as f64).min(1.0)
    }
}

fn small_world(n: usize, k: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut adj: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); n];
    for u in 0..n {
        for j in 1..=k / 2 {
            let v = (u + j) % n;
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    // Rewire lattice edge (u, u + j) to (u, w) with probability p.
    for j in 1..=k / 2 {
        for u in 0..n {
            let v = (u + j) % n;
            if !rng.random_bool(p) || !adj[u].contains(&v) || adj[u].len() >= n - 1 {
                continue;
            }
            let w = loop {
                let w = rng.random_range(0..n);
                if w != u && !adj[u].contains(&w) {
                    break w;
                }
            };
            adj[u].remove(&v);
            adj[v].remove(&u);
            adj[u].insert(w);
            adj[w].insert(u);
        }
    }
    let edges = adj
        .iter()
        .enumerate()
        .flat_map(|(u, set)| set.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
        .collect::<Vec<_>>();
    graph(n, edges)
}

fn check_small_world(n: usize, k: usize, p: f64) -> Result<(), GeneratorError> {
    check_probability(p)?;
    if k < 2 || !k.is_multiple_of(2) || k >= n {
        return Err(GeneratorError::InvalidParameter(format!(
            "Watts-Strogatz needs an even k with 2 <= k < n (got k={k}, n={n})"
        )));
    }
    Ok(())
}

/// Watts-Strogatz: ring lattice with `k/2` neighbors per side, each lattice
/// edge rewired with probability `p`.
pub fn watts_strogatz(n: usize, k: usize, p: f64, seed: u64) -> Result<Graph, GeneratorError> {
    check_small_world(n, k, p)?;
    Ok(small_world(n, k, p, &mut rng_for(seed, 0)))
}

/// Watts-Strogatz conditioned on connectivity by rejection.
pub fn watts_strogatz_connected(
    n: usize,
    k: usize,
    p: f64,
    seed: u64,
) -> Result<Graph, GeneratorError> {
    check_small_world(n, k, p)?;
    (0..MAX_RETRIES)
        .map(|attempt| small_world(n, k, p, &mut rng_for(seed, attempt)))
        .find(is_connected)
        .ok_or(GeneratorError::RetriesExhausted(MAX_RETRIES))
}

pub fn path(n: usize) -> Graph {
    graph(n, (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> Graph {
    if n < 3 {
        return path(n);
    }
    graph(n, (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))))
}

/// Center 0 with leaves `1..=leaves`.
pub fn star(leaves: usize) -> Graph {
    graph(leaves + 1, (1..=leaves).map(|l| (0, l)))
}

pub fn complete(n: usize) -> Graph {
    graph(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// Heap-ordered binary tree on `n` vertices: parent of `i` is `(i - 1) / 2`.
pub fn complete_binary_tree(n: usize) -> Graph {
    graph(n, (1..n).map(|i| ((i - 1) / 2, i)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::diameter;

    #[test]
    fn random_tree_is_deterministic_tree() {
        let a = random_tree(10, 1).unwrap();
        let b = random_tree(10, 1).unwrap();
        assert_eq!(a, b);
        assert!(a.is_tree());
        assert_ne!(random_tree(10, 2).unwrap(), a);
        assert_eq!(random_tree(1, 0).unwrap().n(), 1);
        assert!(random_tree(2, 0).unwrap().is_tree());
        assert!(random_tree(0, 0).is_err());
    }

    #[test]
    fn prufer_known_code() {
        // Code [3, 3, 3, 4] on 6 vertices: leaves 0,1,2 hang off 3, then 3-4, 4-5.
        let mut edges = prufer_decode(6, &[3, 3, 3, 4]);
        edges.sort();
        assert_eq!(edges, vec![(0, 3), (1, 3), (2, 3), (3, 4), (4, 5)]);
    }

    #[test]
    fn ring_lattice_diameter() {
        for seed in [0, 5, 99] {
            let g = watts_strogatz(16, 4, 0.0, seed).unwrap();
            assert_eq!(g.m(), 32);
            assert_eq!(diameter(&g), Ok(4));
        }
    }

    #[test]
    fn small_world_keeps_edge_count() {
        let g = watts_strogatz(64, 4, 0.1, 42).unwrap();
        assert_eq!(g.m(), 128);
        let c = watts_strogatz_connected(64, 4, 0.1, 42).unwrap();
        assert!(is_connected(&c));
    }

    #[test]
    fn small_world_parameter_checks() {
        assert!(watts_strogatz(10, 3, 0.1, 0).is_err());
        assert!(watts_strogatz(4, 4, 0.1, 0).is_err());
        assert!(watts_strogatz(10, 4, 1.5, 0).is_err());
    }

    #[test]
    fn er_connected() {
        let g = erdos_renyi_connected(32, default_er_probability(32), 3).unwrap();
        assert!(is_connected(&g));
        assert_eq!(
            g,
            erdos_renyi_connected(32, default_er_probability(32), 3).unwrap()
        );
        assert_eq!(
            erdos_renyi_connected(5, 0.0, 0).unwrap_err(),
            GeneratorError::RetriesExhausted(MAX_RETRIES)
        );
        assert!(erdos_renyi(5, -0.1, 0).is_err());
    }

    #[test]
    fn fixtures() {
        assert_eq!(diameter(&star(7)), Ok(2));
        assert_eq!(diameter(&path(6)), Ok(5));
        assert_eq!(diameter(&complete(5)), Ok(1));
        assert_eq!(diameter(&cycle(7)), Ok(3));
        assert_eq!(diameter(&complete_binary_tree(7)), Ok(4));
        assert!(complete_binary_tree(10).is_tree());
    }
}
