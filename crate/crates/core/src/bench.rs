//! Sweeps over graph families comparing constructed membership dimension
//! with diameter.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use thiserror::Error;

use crate::constructions::{construct_graph_categories, ConstructionError};
use crate::generators::{self, GeneratorError};
use crate::graph::{diameter, Graph};
use crate::memdim_bound;
use crate::routing::verify_all_pairs;

pub const CSV_HEADER: &str =
    "generator,seed,n,m,diam,memdim,bound,max_route,mean_route,max_stretch";

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("{generator} n={n} seed={seed}: {source}")]
    Generator {
        generator: String,
        n: usize,
        seed: u64,
        source: GeneratorError,
    },
    #[error("{generator} n={n} seed={seed}: {source}")]
    Construction {
        generator: String,
        n: usize,
        seed: u64,
        source: ConstructionError,
    },
    #[error("{generator} n={n} seed={seed}: routing fails at {pair:?}")]
    VerificationFailed {
        generator: String,
        n: usize,
        seed: u64,
        pair: Option<(usize, usize)>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphFamily {
    /// Uniform random labelled tree.
    Tree,
    /// Connected G(n, p); `None` means `2 ln n / n`.
    ErdosRenyi {
        p: Option<f64>,
    },
    /// Connected Watts-Strogatz.
    WattsStrogatz {
        k: usize,
        p: f64,
    },
    Path,
    Star,
    Complete,
    BinaryTree,
}

impl GraphFamily {
    pub fn name(&self) -> &'static str {
        match self {
            GraphFamily::Tree => "tree",
            GraphFamily::ErdosRenyi { .. } => "er",
            GraphFamily::WattsStrogatz { .. } => "ws",
            GraphFamily::Path => "path",
            GraphFamily::Star => "star",
            GraphFamily::Complete => "complete",
            GraphFamily::BinaryTree => "binary",
        }
    }

    pub fn generate(&self, n: usize, seed: u64) -> Result<Graph, GeneratorError> {
        if n == 0 {
            return Err(GeneratorError::InvalidParameter(
                "n must be at least 1".into(),
            ));
        }
        match *self {
            GraphFamily::Tree => generators::random_tree(n, seed),
            GraphFamily::ErdosRenyi { p } => generators::erdos_renyi_connected(
                n,
                p.unwrap_or_else(|| generators::default_er_probability(n)),
                seed,
            ),
            GraphFamily::WattsStrogatz { k, p } => {
                generators::watts_strogatz_connected(n, k, p, seed)
            }
            GraphFamily::Path => Ok(generators::path(n)),
            GraphFamily::Star => Ok(generators::star(n - 1)),
            GraphFamily::Complete => Ok(generators::complete(n)),
            GraphFamily::BinaryTree => Ok(generators::complete_binary_tree(n)),
        }
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphFamily {
    type Err = String;

    /// Accepts the family names emitted in the CSV; `er` and `ws` take their
    /// default parameters (`ws` uses k = 4, p = 0.1).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "tree" => GraphFamily::Tree,
            "er" => GraphFamily::ErdosRenyi { p: None },
            "ws" => GraphFamily::WattsStrogatz { k: 4, p: 0.1 },
            "path" => GraphFamily::Path,
            "star" => GraphFamily::Star,
            "complete" => GraphFamily::Complete,
            "binary" => GraphFamily::BinaryTree,
            other => return Err(format!("unknown generator {other:?}")),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub generator: String,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub diam: usize,
    pub memdim: usize,
    /// `(diam + ceil(log2 n))^2`.
    pub bound: usize,
    pub max_route: usize,
    pub mean_route: f64,
    pub max_stretch: f64,
}

impl BenchRecord {
    /// `memdim / bound`; zero when the bound is zero (single vertex).
    pub fn ratio(&self) -> f64 {
        if self.bound == 0 {
            0.0
        } else {
            self.memdim as f64 / self.bound as f64
        }
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{:.3},{:.3}",
            self.generator,
            self.seed,
            self.n,
            self.m,
            self.diam,
            self.memdim,
            self.bound,
            self.max_route,
            self.mean_route,
            self.max_stretch
        )
    }
}

#[derive(Debug, Clone)]
pub struct BenchSweep {
    pub families: Vec<GraphFamily>,
    pub sizes: Vec<usize>,
    pub seeds: Vec<u64>,
}

/// Generates, constructs and verifies a single instance. A verification
/// failure is reported as an error: it means the construction is broken.
pub fn bench_instance(family: GraphFamily, n: usize, seed: u64) -> Result<BenchRecord, BenchError> {
    let generator = family.name().to_string();
    let g = family
        .generate(n, seed)
        .map_err(|source| BenchError::Generator {
            generator: generator.clone(),
            n,
            seed,
            source,
        })?;
    let construction_err = |source| BenchError::Construction {
        generator: generator.clone(),
        n,
        seed,
        source,
    };
    let built = construct_graph_categories(&g).map_err(construction_err)?;
    let diam = diameter(&g).map_err(|e| construction_err(e.into()))?;
    let report = verify_all_pairs(&g, &built.system).map_err(|e| construction_err(e.into()))?;
    if !report.works {
        return Err(BenchError::VerificationFailed {
            generator,
            n,
            seed,
            pair: report.first_failure,
        });
    }
    Ok(BenchRecord {
        generator,
        seed,
        n,
        m: g.m(),
        diam,
        memdim: built.system.memdim(),
        bound: memdim_bound(diam, n),
        max_route: report.max_route_len,
        mean_route: report.mean_route_len,
        max_stretch: report.max_stretch,
    })
}

/// Runs every (family, size, seed) combination; records come back sorted by
/// (generator, n, seed).
pub fn run_bench(sweep: &BenchSweep) -> Result<Vec<BenchRecord>, BenchError> {
    let mut records = Vec::new();
    for &family in &sweep.families {
        for &n in &sweep.sizes {
            for &seed in &sweep.seeds {
                records.push(bench_instance(family, n, seed)?);
            }
        }
    }
    records.sort_by(|a, b| (&a.generator, a.n, a.seed).cmp(&(&b.generator, b.n, b.seed)));
    Ok(records)
}

pub fn write_csv<W: Write>(records: &[BenchRecord], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{}", r.csv_row())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_rows_have_matching_bound() {
        let r = bench_instance(GraphFamily::Path, 8, 0).unwrap();
        assert_eq!(r.diam, 7);
        assert_eq!(r.bound, (7 + 3) * (7 + 3));
        assert!(r.memdim >= r.diam);
        assert!(r.max_route <= r.memdim);
    }

    #[test]
    fn csv_layout() {
        let r = BenchRecord {
            generator: "tree".into(),
            seed: 3,
            n: 16,
            m: 15,
            diam: 6,
            memdim: 40,
            bound: 100,
            max_route: 6,
            mean_route: 2.0 / 3.0,
            max_stretch: 1.0,
        };
        let mut buf = Vec::new();
        write_csv(&[r], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            format!("{CSV_HEADER}\ntree,3,16,15,6,40,100,6,0.667,1.000\n")
        );
    }

    #[test]
    fn sweep_sorts_rows() {
        let sweep = BenchSweep {
            families: vec![GraphFamily::Tree, GraphFamily::Complete],
            sizes: vec![16, 8],
            seeds: vec![1, 0],
        };
        let rows = run_bench(&sweep).unwrap();
        assert_eq!(rows.len(), 8);
        let keys: Vec<_> = rows
            .iter()
            .map(|r| (r.generator.as_str(), r.n, r.seed))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn family_names_round_trip() {
        for name in ["tree", "er", "ws", "path", "star", "complete", "binary"] {
            assert_eq!(name.parse::<GraphFamily>().unwrap().name(), name);
        }
        assert!("bogus".parse::<GraphFamily>().is_err());
    }
}
