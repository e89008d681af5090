//! Empirical friendship-paradox statistics and structural graph metrics.

use std::collections::{BTreeMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::netgen::{DegreeSequence, Graph};

/// Degree moments of a network and the paradox gap `k_ff - mean_k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParadoxStats {
    pub n: usize,
    pub mean_k: f64,
    pub second_moment: f64,
    /// Population variance (divisor `n`).
    pub variance: f64,
    /// Mean degree of friends, `sum k^2 / sum k`.
    pub k_ff: f64,
    /// `k_ff - mean_k`, equal to `variance / mean_k`.
    pub gap: f64,
}

/// Moments are accumulated in integers, so `variance` and `gap` are free of
/// cancellation even when the degrees are nearly constant.
pub fn stats_from_degrees(seq: &[usize]) -> Result<ParadoxStats> {
    let n = seq.len() as u128;
    let s1: u128 = seq.iter().map(|&k| k as u128).sum();
    let s2: u128 = seq.iter().map(|&k| (k as u128) * (k as u128)).sum();
    if s1 == 0 {
        return Err(Error::AllIsolated);
    }
    // n * sum k^2 - (sum k)^2 >= 0 by Cauchy-Schwarz.
    let spread = (n * s2 - s1 * s1) as f64;
    let (nf, s1f, s2f) = (n as f64, s1 as f64, s2 as f64);
    Ok(ParadoxStats {
        n: seq.len(),
        mean_k: s1f / nf,
        second_moment: s2f / nf,
        variance: spread / (nf * nf),
        k_ff: s2f / s1f,
        gap: spread / (nf * s1f),
    })
}

/// Frequency of each degree value.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct DegreeHistogram(BTreeMap<usize, u64>);

impl DegreeHistogram {
    pub fn new(counts: BTreeMap<usize, u64>) -> Self {
        Self(counts)
    }

    pub fn from_degrees(seq: &[usize]) -> Self {
        let mut counts = BTreeMap::new();
        for &k in seq {
            *counts.entry(k).or_insert(0) += 1;
        }
        Self(counts)
    }

    pub fn counts(&self) -> &BTreeMap<usize, u64> {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    /// Fraction of vertices with degree at most `k`.
    pub fn cdf(&self, k: usize) -> f64 {
        let below: u64 = self.0.range(..=k).map(|(_, &c)| c).sum();
        below as f64 / self.total() as f64
    }
}

/// Mean degree of a friend from the degree distribution alone:
/// `sum k^2 P(k) / sum k P(k)`. The normalization of `P` cancels, so the
/// ratio is taken over raw counts.
pub fn kff_from_histogram(hist: &DegreeHistogram) -> Result<f64> {
    let (mut s1, mut s2) = (0u128, 0u128);
    for (&k, &count) in hist.counts() {
        let (k, c) = (k as u128, count as u128);
        s1 += k * c;
        s2 += k * k * c;
    }
    if s1 == 0 {
        return Err(Error::AllIsolated);
    }
    Ok(s2 as f64 / s1 as f64)
}

/// Total friends of friends, `sum_i sum_j a_ij k_j`, by the literal double
/// sum over adjacency.
pub fn ff_total_adjacency(g: &Graph) -> u64 {
    (0..g.n())
        .map(|i| {
            g.neighbors(i)
                .iter()
                .map(|&j| g.degree(j) as u64)
                .sum::<u64>()
        })
        .sum()
}

/// Disjoint-set forest with union by size.
struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

/// Connected component sizes, largest first. Isolated vertices count as
/// components of size one.
pub fn components(g: &Graph) -> Vec<usize> {
    let mut dsu = Dsu::new(g.n());
    for &(u, v) in g.edges() {
        dsu.union(u, v);
    }
    let roots: Vec<usize> = (0..g.n()).filter(|&v| dsu.find(v) == v).collect();
    let mut sizes: Vec<usize> = roots.into_iter().map(|v| dsu.size[v]).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// Share of vertices in the largest component.
pub fn giant_fraction(g: &Graph) -> f64 {
    match components(g).first() {
        Some(&largest) => largest as f64 / g.n() as f64,
        None => 0.0,
    }
}

fn bfs_distances(g: &Graph, source: usize, dist: &mut [usize], queue: &mut VecDeque<usize>) {
    dist.fill(usize::MAX);
    dist[source] = 0;
    queue.clear();
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
}

/// Mean of `1 / d_ij` over ordered pairs `i != j`; unreachable pairs count
/// as zero.
pub fn global_efficiency(g: &Graph) -> Result<f64> {
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidGraph(
            "efficiency needs at least 2 vertices".into(),
        ));
    }
    let per_source: Vec<f64> = (0..n)
        .into_par_iter()
        .map_init(
            || (vec![usize::MAX; n], VecDeque::new()),
            |(dist, queue), s| {
                bfs_distances(g, s, dist, queue);
                dist.iter()
                    .filter(|&&d| d != usize::MAX && d > 0)
                    .map(|&d| 1.0 / d as f64)
                    .sum::<f64>()
            },
        )
        .collect();
    // Summed in vertex order so the result does not depend on scheduling.
    let total: f64 = per_source.iter().sum();
    Ok(total / (n as f64 * (n - 1) as f64))
}

/// Fixed source partition for betweenness; keeps the floating-point
/// summation order independent of thread scheduling.
const BETWEENNESS_CHUNKS: usize = 64;

/// Betweenness centrality of every vertex, normalized by the number of
/// unordered pairs not involving it, `(n-1)(n-2)/2`. Brandes accumulation
/// from every source; exact.
pub fn betweenness(g: &Graph) -> Vec<f64> {
    let n = g.n();
    if n < 3 {
        return vec![0.0; n];
    }
    let chunk = n.div_ceil(BETWEENNESS_CHUNKS);
    let partials: Vec<Vec<f64>> = (0..n)
        .collect::<Vec<_>>()
        .par_chunks(chunk)
        .map(|sources| {
            let mut scratch = BrandesScratch::new(n);
            for &s in sources {
                scratch.accumulate(g, s);
            }
            scratch.centrality
        })
        .collect();
    let mut raw = vec![0.0; n];
    for partial in partials {
        raw.iter_mut().zip(partial).for_each(|(x, y)| *x += y);
    }
    // Every unordered pair is reached from both of its endpoints.
    let norm = ((n - 1) * (n - 2)) as f64;
    raw.into_iter().map(|b| b / norm).collect()
}

struct BrandesScratch {
    centrality: Vec<f64>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    dist: Vec<usize>,
    order: Vec<usize>,
    queue: VecDeque<usize>,
}

impl BrandesScratch {
    fn new(n: usize) -> Self {
        Self {
            centrality: vec![0.0; n],
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
            dist: vec![usize::MAX; n],
            order: Vec::with_capacity(n),
            queue: VecDeque::new(),
        }
    }

    fn accumulate(&mut self, g: &Graph, s: usize) {
        for &v in &self.order {
            self.sigma[v] = 0.0;
            self.delta[v] = 0.0;
            self.dist[v] = usize::MAX;
        }
        self.order.clear();
        self.sigma[s] = 1.0;
        self.dist[s] = 0;
        self.queue.push_back(s);
        while let Some(v) = self.queue.pop_front() {
            self.order.push(v);
            for &w in g.neighbors(v) {
                if self.dist[w] == usize::MAX {
                    self.dist[w] = self.dist[v] + 1;
                    self.queue.push_back(w);
                }
                if self.dist[w] == self.dist[v] + 1 {
                    self.sigma[w] += self.sigma[v];
                }
            }
        }
        // Predecessors of w are the neighbors one step closer to s.
        for &w in self.order.iter().rev() {
            for &v in g.neighbors(w) {
                if self.dist[v] != usize::MAX && self.dist[v] + 1 == self.dist[w] {
                    self.delta[v] += self.sigma[v] / self.sigma[w] * (1.0 + self.delta[w]);
                }
            }
            if w != s {
                self.centrality[w] += self.delta[w];
            }
        }
    }
}

/// Freeman's central point dominance, `sum_i (b_max - b_i) / (n - 1)` over
/// normalized betweenness. One for a star, zero for a complete graph.
pub fn central_point_dominance(g: &Graph) -> Result<f64> {
    let n = g.n();
    if n < 3 {
        return Err(Error::InvalidGraph(
            "central point dominance needs at least 3 vertices".into(),
        ));
    }
    Ok(dominance_from_betweenness(&betweenness(g)))
}

pub fn dominance_from_betweenness(b: &[f64]) -> f64 {
    let max = b.iter().copied().fold(0.0, f64::max);
    b.iter().map(|&x| max - x).sum::<f64>() / (b.len() - 1) as f64
}

/// Kolmogorov-Smirnov distance between two degree histograms.
pub fn histogram_ks_distance(a: &DegreeHistogram, b: &DegreeHistogram) -> f64 {
    a.counts()
        .keys()
        .chain(b.counts().keys())
        .map(|&k| (a.cdf(k) - b.cdf(k)).abs())
        .fold(0.0, f64::max)
}

/// Convenience wrapper for a realized graph.
pub fn stats_from_graph(g: &Graph) -> Result<ParadoxStats> {
    stats_from_degrees(&g.degrees())
}

impl From<&DegreeSequence> for DegreeHistogram {
    fn from(seq: &DegreeSequence) -> Self {
        Self::from_degrees(seq)
    }
}
