//! Realizing degree sequences as simple undirected graphs.
//!
//! Three wiring models share one degree sequence and differ only in who
//! may be paired with whom:
//!
//! - [`Model::A`] pairs stubs uniformly over the whole vertex set. Networks
//!   come out with almost every vertex in one giant component.
//! - [`Model::B`] pairs stubs only inside blocks of vertices with similar
//!   degree, so the result splits into many components with low global
//!   efficiency and low central point dominance.
//! - [`Model::Kalisky`] wires hubs first and attaches each later vertex to
//!   the open stubs of already-placed vertices, giving a hub-dominated core
//!   with high central point dominance.
//!
//! Stubs that cannot be paired without a self-loop or a duplicate edge are
//! dropped. [`drop_report`] recovers how many each vertex lost.

mod graph;
mod wiring;

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

pub use graph::Graph;

/// Default number of vertices per block in [`Model::B`].
pub const DEFAULT_BLOCK_SIZE: usize = 32;

/// Target degrees `k_i` for vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    pub fn new(degrees: Vec<usize>) -> Self {
        Self(degrees)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.0.iter().copied().max()
    }
}

impl Deref for DegreeSequence {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for DegreeSequence {
    fn from(degrees: Vec<usize>) -> Self {
        Self(degrees)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Model {
    A,
    B,
    #[serde(rename = "KALISKY")]
    Kalisky,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::A, Model::B, Model::Kalisky];
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::A => "A",
            Model::B => "B",
            Model::Kalisky => "KALISKY",
        })
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Model::A),
            "B" => Ok(Model::B),
            "KALISKY" | "K" => Ok(Model::Kalisky),
            other => Err(Error::InvalidSpec(format!("unknown model '{other}'"))),
        }
    }
}

/// Tuning knobs for [`generate_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorConfig {
    /// Minimum vertices per block for [`Model::B`].
    pub block_size: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            block_size: DEFAULT_BLOCK_SIZE,
        }
    }
}

/// Makes the degree sum even by raising one minimum-degree vertex, chosen
/// uniformly, by one.
pub fn make_graphical<R: Rng + ?Sized>(seq: &DegreeSequence, rng: &mut R) -> DegreeSequence {
    let mut degrees = seq.0.clone();
    if seq.total() % 2 == 1 {
        let min = seq.iter().copied().min().expect("odd sum implies nonempty");
        let candidates: Vec<usize> = (0..degrees.len()).filter(|&v| degrees[v] == min).collect();
        let v = candidates[rng.gen_range(0..candidates.len())];
        degrees[v] += 1;
    }
    DegreeSequence(degrees)
}

/// Rounds continuous draws half-up and repairs parity. The parity choice uses
/// its own stream of the generator seeded by `seed`, so it never overlaps a
/// sampler or wiring stream built from the same seed.
pub fn graphical_degrees(values: &[f64], seed: u64) -> DegreeSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    make_graphical(&crate::powerlaw::round_degrees(values), &mut rng)
}

/// Wires `seq` under `model` with the default configuration.
pub fn generate(seq: &DegreeSequence, model: Model, seed: u64) -> Result<Graph> {
    generate_with(seq, model, seed, GeneratorConfig::default())
}

/// Wires `seq` under `model`. The result is simple, every realized degree is
/// at most its target, and the edge set is a pure function of the inputs.
/// With an odd degree sum one stub is necessarily left unpaired.
pub fn generate_with(
    seq: &DegreeSequence,
    model: Model,
    seed: u64,
    config: GeneratorConfig,
) -> Result<Graph> {
    let n = seq.len();
    if let Some((vertex, &degree)) = seq.iter().enumerate().find(|(_, &d)| d >= n.max(1)) {
        return Err(Error::ImpossibleSequence { vertex, degree, n });
    }
    if config.block_size == 0 {
        return Err(Error::InvalidSpec("block size must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = match model {
        Model::A => wiring::wire_uniform(seq, &mut rng),
        Model::B => wiring::wire_blocks(seq, config.block_size, &mut rng),
        Model::Kalisky => wiring::wire_hub_layers(seq, &mut rng),
    };
    edges.sort_unstable();
    Ok(Graph::from_sorted_unique(n, edges))
}

/// Stubs each vertex lost between its target degree and the realized graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DropReport {
    pub per_vertex: Vec<usize>,
    pub total: usize,
}

pub fn drop_report(g: &Graph, seq: &DegreeSequence) -> Result<DropReport> {
    if g.n() != seq.len() {
        return Err(Error::InvalidGraph(format!(
            "graph has {} vertices but the sequence has {}",
            g.n(),
            seq.len()
        )));
    }
    let per_vertex = seq
        .iter()
        .enumerate()
        .map(|(v, &target)| {
            target.checked_sub(g.degree(v)).ok_or_else(|| {
                Error::InvalidGraph(format!(
                    "vertex {v} has degree {} above its target {target}",
                    g.degree(v)
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let total = per_vertex.iter().sum();
    Ok(DropReport { per_vertex, total })
}
