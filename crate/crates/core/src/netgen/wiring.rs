//! Stub pairing with simple-graph repair, and the three wiring models.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

/// Rounds of re-pairing the conflicting stubs among themselves before
/// falling back to edge swaps.
const RESHUFFLE_ROUNDS: usize = 64;
/// Swap attempts allowed per edge in the structure being repaired.
const SWAPS_PER_EDGE: usize = 10;
/// Upper bound on attempts spent on a single conflicting pair.
const SWAPS_PER_CONFLICT: usize = 1000;

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Growing simple edge set with O(1) membership and random edge access.
#[derive(Debug, Default)]
pub(crate) struct EdgeBuilder {
    set: HashSet<(usize, usize)>,
    list: Vec<(usize, usize)>,
}

impl EdgeBuilder {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn len(&self) -> usize {
        self.list.len()
    }

    pub(crate) fn try_add(&mut self, u: usize, v: usize) -> bool {
        if u == v || !self.set.insert(key(u, v)) {
            return false;
        }
        self.list.push(key(u, v));
        true
    }

    /// Replaces edge `i = (x, y)` with `(u, x)` and `(v, y)` if the result is
    /// still simple. Degrees of `x` and `y` are unchanged; `u` and `v` each
    /// gain one.
    fn try_swap(&mut self, i: usize, u: usize, v: usize, x: usize, y: usize) -> bool {
        let (a, b) = (key(u, x), key(v, y));
        if u == x || v == y || a == b {
            return false;
        }
        let old = self.list[i];
        self.set.remove(&old);
        if self.set.contains(&a) || self.set.contains(&b) {
            self.set.insert(old);
            return false;
        }
        self.set.insert(a);
        self.set.insert(b);
        self.list[i] = a;
        self.list.push(b);
        true
    }

    /// Pairs `stubs` uniformly at random into edges. Self-loops and
    /// duplicates are first re-paired among themselves, then repaired by
    /// edge swaps within this builder. Returns the number of stubs dropped.
    pub(crate) fn pair_stubs<R: Rng + ?Sized>(
        &mut self,
        mut stubs: Vec<usize>,
        rng: &mut R,
    ) -> usize {
        let mut dropped = 0;
        for _ in 0..RESHUFFLE_ROUNDS {
            if stubs.len() < 2 {
                break;
            }
            stubs.shuffle(rng);
            if stubs.len() % 2 == 1 {
                stubs.pop();
                dropped += 1;
            }
            let before = stubs.len();
            let mut conflicts = Vec::new();
            for pair in stubs.chunks_exact(2) {
                if !self.try_add(pair[0], pair[1]) {
                    conflicts.extend_from_slice(pair);
                }
            }
            stubs = conflicts;
            if stubs.len() == before {
                // Nothing pairs among the leftovers; a self-loop-only pool
                // stays stuck no matter how often it is shuffled.
                let distinct: HashSet<usize> = stubs.iter().copied().collect();
                if distinct.len() == 1 {
                    break;
                }
            }
        }
        if stubs.len() % 2 == 1 {
            stubs.pop();
            dropped += 1;
        }
        let conflicts: Vec<(usize, usize)> = stubs.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        dropped + 2 * self.repair(&conflicts, rng)
    }

    /// Resolves conflicting pairs by edge swaps; returns how many remain.
    fn repair<R: Rng + ?Sized>(&mut self, conflicts: &[(usize, usize)], rng: &mut R) -> usize {
        let mut budget = SWAPS_PER_EDGE * self.len().max(1);
        let mut unresolved = 0;
        for &(u, v) in conflicts {
            if self.try_add(u, v) {
                continue;
            }
            let mut fixed = false;
            let mut attempts = 0;
            while budget > 0 && attempts < SWAPS_PER_CONFLICT && !self.list.is_empty() {
                budget -= 1;
                attempts += 1;
                let i = rng.gen_range(0..self.list.len());
                let (mut x, mut y) = self.list[i];
                if rng.gen::<bool>() {
                    std::mem::swap(&mut x, &mut y);
                }
                if self.try_swap(i, u, v, x, y) {
                    fixed = true;
                    break;
                }
            }
            if !fixed {
                unresolved += 1;
            }
        }
        unresolved
    }

    pub(crate) fn into_edges(self) -> Vec<(usize, usize)> {
        self.list
    }
}

fn stubs_of(vertices: &[usize], degrees: &[usize]) -> Vec<usize> {
    vertices
        .iter()
        .flat_map(|&v| std::iter::repeat_n(v, degrees[v]))
        .collect()
}

/// Model A: configuration-model pairing over the whole vertex set.
pub(crate) fn wire_uniform<R: Rng + ?Sized>(degrees: &[usize], rng: &mut R) -> Vec<(usize, usize)> {
    let all: Vec<usize> = (0..degrees.len()).collect();
    let mut builder = EdgeBuilder::new();
    builder.pair_stubs(stubs_of(&all, degrees), rng);
    builder.into_edges()
}

/// Splits the vertices into blocks holding at least `block_size` vertices
/// and more than twice the largest degree they contain. Blocks are cut from
/// the vertex order sorted by descending degree, ties in random order, so
/// hubs share a block large enough to absorb their stubs.
pub(crate) fn partition_blocks<R: Rng + ?Sized>(
    degrees: &[usize],
    block_size: usize,
    rng: &mut R,
) -> Vec<Vec<usize>> {
    let fits = |block: &[usize]| {
        let max = block.iter().map(|&v| degrees[v]).max().unwrap_or(0);
        block.len() >= block_size && block.len() > 2 * max
    };
    let mut order: Vec<usize> = (0..degrees.len()).collect();
    order.shuffle(rng);
    order.sort_by(|&a, &b| degrees[b].cmp(&degrees[a]));

    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut current = Vec::new();
    for v in order {
        current.push(v);
        // The first vertex of a block carries its largest degree.
        if current.len() >= block_size && current.len() > 2 * degrees[current[0]] {
            blocks.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        blocks.push(current);
    }
    // An undersized tail is folded into its predecessors.
    while blocks.len() > 1 && !fits(blocks.last().unwrap()) {
        let tail = blocks.pop().unwrap();
        blocks.last_mut().unwrap().extend(tail);
    }
    blocks
}

/// Model B: stubs are paired only within their own block.
pub(crate) fn wire_blocks<R: Rng + ?Sized>(
    degrees: &[usize],
    block_size: usize,
    rng: &mut R,
) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for block in partition_blocks(degrees, block_size, rng) {
        let mut builder = EdgeBuilder::new();
        builder.pair_stubs(stubs_of(&block, degrees), rng);
        edges.extend(builder.into_edges());
    }
    edges
}

/// Kalisky-style wiring: vertices are placed in descending degree order.
/// Each new vertex attaches one stub to an open stub of the vertices already
/// placed, chosen proportionally to their open stub count, and leaves its
/// other stubs open for later layers. This grows a tree outward from the
/// hubs; the stubs still open at the end are paired among themselves.
pub(crate) fn wire_hub_layers<R: Rng + ?Sized>(
    degrees: &[usize],
    rng: &mut R,
) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..degrees.len()).filter(|&v| degrees[v] > 0).collect();
    order.shuffle(rng);
    order.sort_by(|&a, &b| degrees[b].cmp(&degrees[a]));

    let mut builder = EdgeBuilder::new();
    let mut pool: Vec<usize> = Vec::new();
    for v in order {
        let mut open = degrees[v];
        if !pool.is_empty() {
            // v is not in the pool yet and has no edges, so any stub works.
            let w = pool.swap_remove(rng.gen_range(0..pool.len()));
            builder.try_add(v, w);
            open -= 1;
        }
        pool.extend(std::iter::repeat_n(v, open));
    }
    builder.pair_stubs(pool, rng);
    builder.into_edges()
}
