//! Betweenness checked against brute-force enumeration of all simple paths.

use fparadox::metrics::{betweenness, central_point_dominance};
use fparadox::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every simple path from `s` to `t`, as vertex lists.
fn all_paths(g: &Graph, s: usize, t: usize) -> Vec<Vec<usize>> {
    fn walk(g: &Graph, t: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let v = *path.last().unwrap();
        if v == t {
            out.push(path.clone());
            return;
        }
        for &w in g.neighbors(v) {
            if !path.contains(&w) {
                path.push(w);
                walk(g, t, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(g, t, &mut vec![s], &mut out);
    out
}

fn brute_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.n();
    let mut b = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            let paths = all_paths(g, s, t);
            let Some(len) = paths.iter().map(Vec::len).min() else {
                continue;
            };
            let shortest: Vec<&Vec<usize>> = paths.iter().filter(|p| p.len() == len).collect();
            for p in &shortest {
                for &v in &p[1..len - 1] {
                    b[v] += 1.0 / shortest.len() as f64;
                }
            }
        }
    }
    let pairs = ((n - 1) * (n - 2)) as f64 / 2.0;
    b.into_iter().map(|x| x / pairs).collect()
}

fn assert_matches(g: &Graph) {
    let fast = betweenness(g);
    let slow = brute_betweenness(g);
    for (v, (a, b)) in fast.iter().zip(&slow).enumerate() {
        assert!((a - b).abs() < 1e-12, "vertex {v}: {a} vs {b}");
    }
}

#[test]
fn path_of_four() {
    let g = Graph::path(4);
    assert_matches(&g);
    let cpd = central_point_dominance(&g).unwrap();
    assert!((cpd - 4.0 / 9.0).abs() < 1e-12);
}

#[test]
fn cycle_and_diamond() {
    assert_matches(&Graph::from_edges(5, (0..5).map(|v| (v, (v + 1) % 5))).unwrap());
    assert_matches(&Graph::from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap());
}

#[test]
fn random_small_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..40 {
        let n = rng.gen_range(3..9);
        let p = rng.gen_range(0.2..0.7);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        assert_matches(&Graph::from_edges(n, edges).unwrap());
    }
}
