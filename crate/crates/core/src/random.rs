//! Seeded workload generators for tests and benchmarks.

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::hypergraph::{densify, Hypergraph, NodeId};

/// Edge ranks 1..=12 with weights giving a mean near 5.
const RANK_WEIGHTS: [u32; 12] = [2, 4, 6, 6, 5, 4, 3, 2, 2, 1, 1, 1];

fn draw_rank<R: Rng>(rng: &mut R, cap: usize) -> usize {
    let total: u32 = RANK_WEIGHTS.iter().sum();
    let mut x = rng.gen_range(0..total);
    for (i, &w) in RANK_WEIGHTS.iter().enumerate() {
        if x < w {
            return (i + 1).min(cap);
        }
        x -= w;
    }
    cap.min(RANK_WEIGHTS.len())
}

/// Small random hypergraph with duplicate edges, loops and duplicate loops.
/// Every node in `0..node_count` occurs in some edge.
pub fn small_hypergraph<R: Rng>(
    rng: &mut R,
    max_nodes: usize,
    max_edges: usize,
    max_rank: usize,
) -> Hypergraph {
    let n = rng.gen_range(1..=max_nodes.max(1)) as u64;
    let m = rng.gen_range(1..=max_edges.max(1));
    let mut raw: Vec<Vec<u64>> = Vec::with_capacity(m);
    for _ in 0..m {
        if !raw.is_empty() && rng.gen_bool(0.15) {
            let mut e = raw[rng.gen_range(0..raw.len())].clone();
            e.shuffle(rng);
            raw.push(e);
            continue;
        }
        let r = if rng.gen_bool(0.2) {
            1
        } else {
            rng.gen_range(1..=max_rank.max(1).min(n as usize))
        };
        raw.push(
            sample(rng, n as usize, r)
                .into_iter()
                .map(|v| v as u64)
                .collect(),
        );
    }
    densify(raw).expect("generated edges are valid").0
}

/// Community-structured hypergraph with exactly `node_count` nodes and
/// `incidences` total incidences. Nodes are grouped into blocks of 64; edges
/// stay inside one block and favour low-index members, so degrees are skewed.
pub fn community_hypergraph<R: Rng>(rng: &mut R, node_count: usize, incidences: usize) -> Hypergraph {
    assert!(node_count >= 1 && incidences >= node_count);
    const BLOCK: usize = 64;
    let blocks: Vec<(usize, usize)> = (0..node_count)
        .step_by(BLOCK)
        .map(|lo| (lo, (lo + BLOCK).min(node_count)))
        .collect();
    let mut edges: Vec<Vec<NodeId>> = Vec::new();
    let mut remaining = incidences;

    // cover every node once
    for &(lo, hi) in &blocks {
        let mut members: Vec<NodeId> = (lo as NodeId..hi as NodeId).collect();
        members.shuffle(rng);
        let mut rest = &members[..];
        while !rest.is_empty() {
            let r = draw_rank(rng, rest.len());
            edges.push(rest[..r].to_vec());
            rest = &rest[r..];
        }
    }
    remaining -= node_count;

    let fill_start = edges.len();
    while remaining > 0 {
        if edges.len() > fill_start && rng.gen_bool(0.05) {
            let e = edges[rng.gen_range(fill_start..edges.len())].clone();
            if e.len() <= remaining {
                remaining -= e.len();
                edges.push(e);
                continue;
            }
        }
        let (lo, hi) = blocks[rng.gen_range(0..blocks.len())];
        let size = hi - lo;
        let r = draw_rank(rng, size.min(remaining));
        let mut e: Vec<NodeId> = Vec::with_capacity(r);
        while e.len() < r {
            let u: f64 = rng.gen();
            let v = (lo + ((u * u * size as f64) as usize).min(size - 1)) as NodeId;
            if !e.contains(&v) {
                e.push(v);
            }
        }
        remaining -= r;
        edges.push(e);
    }
    edges.shuffle(rng);
    Hypergraph::new(node_count, edges).expect("generated edges are valid")
}

/// A query node set: usually a subset of a random edge, sometimes random nodes.
pub fn random_query<R: Rng>(rng: &mut R, g: &Hypergraph, max_len: usize) -> Vec<NodeId> {
    let n = g.node_count();
    if g.edge_count() == 0 || rng.gen_bool(0.25) {
        let k = rng.gen_range(1..=max_len.max(1).min(n));
        return sample(rng, n, k).into_iter().map(|v| v as NodeId).collect();
    }
    let e = &g.edges()[rng.gen_range(0..g.edge_count())];
    let k = rng.gen_range(1..=max_len.max(1).min(e.len()));
    sample(rng, e.len(), k).into_iter().map(|i| e[i]).collect()
}

/// An `exists` query: an exact edge, a perturbed edge, or random nodes.
pub fn random_edge_query<R: Rng>(rng: &mut R, g: &Hypergraph) -> Vec<NodeId> {
    let n = g.node_count();
    if g.edge_count() == 0 {
        return vec![rng.gen_range(0..n.max(1)) as NodeId];
    }
    let mut e = g.edges()[rng.gen_range(0..g.edge_count())].clone();
    match rng.gen_range(0..4) {
        0 | 1 => {}
        2 if e.len() > 1 => {
            let i = rng.gen_range(0..e.len());
            e.remove(i);
        }
        _ => {
            let v = rng.gen_range(0..n) as NodeId;
            if !e.contains(&v) {
                e.push(v);
            }
        }
    }
    e.shuffle(rng);
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn community_graph_has_exact_shape() {
        let mut rng = StdRng::seed_from_u64(1);
        let g = community_hypergraph(&mut rng, 500, 10_000);
        assert_eq!(g.node_count(), 500);
        assert_eq!(g.incidence_sum(), 10_000);
        assert!(g.degrees().iter().all(|&d| d > 0));
        assert!(g.max_rank() <= 12);
    }

    #[test]
    fn small_graphs_use_every_node() {
        let mut rng = StdRng::seed_from_u64(2);
        for _ in 0..50 {
            let g = small_hypergraph(&mut rng, 64, 128, 12);
            assert!(g.degrees().iter().all(|&d| d > 0));
            assert!(g.max_rank() <= 12);
        }
    }
}
