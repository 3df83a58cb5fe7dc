//! Acceptance run: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails.

use std::collections::HashMap;
use std::hint::black_box;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use hypercsa::builder::{build_degree_bitvector, construct_text};
use hypercsa::format::MAGIC;
use hypercsa::random::{community_hypergraph, random_edge_query, random_query, small_hypergraph};
use hypercsa::{
    build_index, build_index_with_map, parse_edge_list, Error, HyperIndex, Hypergraph,
    IncidenceList, LoadError, NodeId, NodeMap, DEFAULT_SAMPLE_PERIOD,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const EXAMPLE: &str = "0,1,2,3\n1,2,3\n2\n0,1,2,4\n2\n";

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn small(seed: u64) -> Hypergraph {
    small_hypergraph(&mut StdRng::seed_from_u64(seed), 64, 128, 12)
}

fn labels(q: &[NodeId]) -> Vec<u64> {
    q.iter().map(|&v| v as u64).collect()
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

fn multiset(edges: &[Vec<NodeId>]) -> HashMap<Vec<NodeId>, usize> {
    let mut m = HashMap::new();
    for e in edges {
        *m.entry(sorted(e.clone())).or_insert(0) += 1;
    }
    m
}

fn golden() -> Outcome {
    let start = Instant::now();
    let (g, _) = parse_edge_list(EXAMPLE).map_err(|e| e.to_string())?;
    let text = construct_text(&g.canonicalize());
    let d = build_degree_bitvector(&text).map_err(|e| e.to_string())?;
    let bits: String = (0..d.len()).map(|i| if d.get(i) { '1' } else { '0' }).collect();
    let elapsed = start.elapsed();
    ensure!(
        text.symbols() == [2, 2, 1, 2, 3, 0, 1, 2, 4, 0, 1, 2, 3],
        "T = {:?}",
        text.symbols()
    );
    ensure!(bits == "10100100001011", "D = {bits}");
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("T and D exact in {elapsed:?}"))
}

fn roundtrip() -> Outcome {
    let start = Instant::now();
    let mut loops = 0;
    for seed in 0..1000 {
        let g = small(seed);
        let index = build_index(&g, DEFAULT_SAMPLE_PERIOD).map_err(|e| e.to_string())?;
        ensure!(index.decompress() == g.canonicalize(), "seed {seed} differs");
        loops += g.edges().iter().filter(|e| e.len() == 1).count();
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!("1000/1000 graphs ({loops} rank-1 edges) in {elapsed:?}"))
}

fn oracle_seed(i: u64) -> u64 {
    10_000 + i
}

fn oracle_equivalence() -> Outcome {
    let mut misses = 0;
    let mut errors = 0;
    for i in 0..200 {
        let mut rng = StdRng::seed_from_u64(oracle_seed(i));
        let g = small_hypergraph(&mut rng, 64, 128, 12);
        let index = build_index(&g, rng.gen_range(1..=256)).map_err(|e| e.to_string())?;
        let oracle = IncidenceList::new(&g, NodeMap::identity(g.node_count()));
        let unknown = g.node_count() as u64 + 3;
        for j in 0..50 {
            match j % 3 {
                0 => {
                    let v = if rng.gen_bool(0.1) {
                        unknown
                    } else {
                        rng.gen_range(0..g.node_count() as u64)
                    };
                    let (a, b) = (index.degree(v), oracle.degree(v));
                    match (a, b) {
                        (Ok(a), Ok(b)) => ensure!(a == b, "degree({v}) {a} != {b}"),
                        (Err(Error::UnknownLabel(_)), Err(Error::UnknownLabel(_))) => errors += 1,
                        (a, b) => return Err(format!("degree({v}): {a:?} vs {b:?}")),
                    }
                }
                1 => {
                    let mut q = labels(&random_query(&mut rng, &g, 4));
                    if rng.gen_bool(0.05) {
                        q.push(unknown);
                    }
                    match (index.contains(&q), oracle.contains(&q)) {
                        (Ok(a), Ok(b)) => {
                            misses += usize::from(b.is_empty());
                            ensure!(sorted(a) == sorted(b), "contains {q:?} differs (graph {i})");
                        }
                        (Err(Error::UnknownLabel(_)), Err(Error::UnknownLabel(_))) => errors += 1,
                        (a, b) => return Err(format!("contains {q:?}: {a:?} vs {b:?}")),
                    }
                }
                _ => {
                    let mut q = labels(&random_edge_query(&mut rng, &g));
                    if rng.gen_bool(0.05) {
                        q.push(unknown);
                    }
                    let (a, b) = (
                        index.exists(&q).map_err(|e| e.to_string())?,
                        oracle.exists(&q).map_err(|e| e.to_string())?,
                    );
                    misses += usize::from(b == 0);
                    ensure!(a == b, "exists {q:?}: {a} != {b} (graph {i})");
                }
            }
        }
    }
    Ok(format!(
        "10000/10000 queries agree ({misses} no-hit, {errors} unknown-label)"
    ))
}

fn check_structure(g: &Hypergraph, index: &HyperIndex) -> Result<(), String> {
    index.check_invariants().map_err(|e| e.to_string())?;
    let psi = index.psi().decode_all();
    let fixed = (0..psi.len()).filter(|&i| psi[i] == i).count();
    let loops = g.edges().iter().filter(|e| e.len() == 1).count();
    ensure!(fixed == loops, "{fixed} fixed points, {loops} rank-1 edges");
    for i in (0..psi.len()).filter(|&i| psi[i] == i) {
        let e = index.extract_edge_at(i).map_err(|e| e.to_string())?;
        ensure!(e.len() == 1, "fixed point {i} extracts {e:?}");
    }
    ensure!(
        index.degrees().count_ones() == g.node_count() + 1,
        "ones(D) = {}",
        index.degrees().count_ones()
    );
    for (e, c) in multiset(index.decompress().edges()) {
        let n = index.exists(&labels(&e)).map_err(|e| e.to_string())?;
        ensure!(n == c, "exists {e:?} = {n}, multiplicity {c}");
    }
    Ok(())
}

fn structural() -> Outcome {
    let mut instances = 0;
    let seeds = (0..1000).chain((0..200).map(oracle_seed));
    for seed in seeds {
        let g = if seed < 1000 {
            small(seed)
        } else {
            small_hypergraph(&mut StdRng::seed_from_u64(seed), 64, 128, 12)
        };
        let index = build_index(&g, DEFAULT_SAMPLE_PERIOD).map_err(|e| e.to_string())?;
        check_structure(&g, &index).map_err(|e| format!("seed {seed}: {e}"))?;
        instances += 1;
    }
    let (g, map) = parse_edge_list(EXAMPLE).map_err(|e| e.to_string())?;
    let index = build_index_with_map(&g, map, 5).map_err(|e| e.to_string())?;
    check_structure(&g, &index)?;
    Ok(format!("(a)-(d) hold on {} instances", instances + 1))
}

fn seco_path() -> Option<PathBuf> {
    if let Some(p) = std::env::var_os("HYPERCSA_SECO") {
        return Some(PathBuf::from(p));
    }
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/senate-committees.txt");
    p.exists().then_some(p)
}

fn large_graph() -> Hypergraph {
    community_hypergraph(&mut StdRng::seed_from_u64(5), 50_000, 1_000_000)
}

fn compression() -> Outcome {
    let part_a = match seco_path() {
        Some(path) => {
            let input = std::fs::read_to_string(&path).map_err(|e| format!("{path:?}: {e}"))?;
            let (g, map) = parse_edge_list(&input).map_err(|e| e.to_string())?;
            let index = build_index_with_map(&g, map, DEFAULT_SAMPLE_PERIOD).map_err(|e| e.to_string())?;
            let ratio = index.to_bytes().len() as f64 / input.len() as f64;
            ensure!(ratio.le(&0.45), "senate-committees ratio {ratio:.4} > 0.45");
            format!("a: ratio {ratio:.4}")
        }
        None => "a: skipped, senate-committees dataset not available".to_string(),
    };
    let g = large_graph();
    let index = build_index(&g, DEFAULT_SAMPLE_PERIOD).map_err(|e| e.to_string())?;
    let bits = index.to_bytes().len() * 8;
    let m = g.incidence_sum();
    let budget = m * (g.node_count() as f64).log2().ceil() as usize;
    ensure!(bits < budget, "index {bits} bits >= {budget}");
    Ok(format!(
        "{part_a}; b: {bits} bits < {budget} ({:.2} bits/incidence)",
        bits as f64 / m as f64
    ))
}

/// Mean nanoseconds per call of `f` over `queries`.
fn mean_ns<Q>(queries: &[Q], mut f: impl FnMut(&Q)) -> f64 {
    let start = Instant::now();
    for q in queries {
        f(q);
    }
    start.elapsed().as_nanos() as f64 / queries.len() as f64
}

fn scaling() -> Outcome {
    let sizes = [10_000usize, 100_000, 1_000_000];
    let mut cases = Vec::new();
    for (k, &m) in sizes.iter().enumerate() {
        let mut rng = StdRng::seed_from_u64(60 + k as u64);
        let g = community_hypergraph(&mut rng, m / 20, m);
        let index = build_index(&g, DEFAULT_SAMPLE_PERIOD).map_err(|e| e.to_string())?;
        let degree_q: Vec<u64> = (0..200_000)
            .map(|_| rng.gen_range(0..g.node_count() as u64))
            .collect();
        // fixed query length 3: rank-3 edges, half of them perturbed
        let rank3: Vec<&Vec<NodeId>> = g.edges().iter().filter(|e| e.len() == 3).collect();
        let exists_q: Vec<Vec<u64>> = (0..20_000)
            .map(|_| {
                let mut q = labels(rank3[rng.gen_range(0..rank3.len())]);
                if rng.gen_bool(0.5) {
                    q[0] = rng.gen_range(0..g.node_count() as u64);
                    q.dedup();
                }
                q
            })
            .filter(|q| q.len() == 3 && q[0] != q[2])
            .collect();
        cases.push((index, degree_q, exists_q));
    }

    let mut last = String::new();
    for attempt in 1..=3 {
        let mut degree_ns = Vec::new();
        let mut exists_ns = Vec::new();
        for (index, dq, eq) in &cases {
            degree_ns.push(mean_ns(dq, |&v| {
                black_box(index.degree(v).unwrap());
            }));
            exists_ns.push(mean_ns(eq, |q| {
                black_box(index.exists(q).unwrap());
            }));
        }
        let spread = degree_ns.iter().cloned().fold(f64::MIN, f64::max)
            / degree_ns.iter().cloned().fold(f64::MAX, f64::min);
        let growth = exists_ns[2] / exists_ns[0];
        last = format!(
            "degree ns {:.0}/{:.0}/{:.0} (spread {spread:.2}x), exists ns {:.0}/{:.0}/{:.0} (growth {growth:.2}x), attempt {attempt}",
            degree_ns[0], degree_ns[1], degree_ns[2], exists_ns[0], exists_ns[1], exists_ns[2]
        );
        if spread < 3.0 && growth < 3.0 {
            return Ok(last);
        }
    }
    Err(last)
}

fn relative_speed() -> Outcome {
    let g = large_graph();
    let index = build_index(&g, DEFAULT_SAMPLE_PERIOD).map_err(|e| e.to_string())?;
    let oracle = IncidenceList::new(&g, NodeMap::identity(g.node_count()));
    let mut rng = StdRng::seed_from_u64(7);
    let queries: Vec<u64> = (0..1000)
        .map(|_| rng.gen_range(0..g.node_count() as u64))
        .collect();
    let mut last = String::new();
    for attempt in 1..=3 {
        let mut hits = 0;
        let fast = mean_ns(&queries, |&v| {
            hits += black_box(index.contains(&[v]).unwrap()).len();
        });
        let mut scan_hits = 0;
        let slow = mean_ns(&queries, |&v| {
            scan_hits += black_box(oracle.contains_scan(&[v]).unwrap()).len();
        });
        ensure!(hits == scan_hits, "result counts differ: {hits} vs {scan_hits}");
        let speedup = slow / fast;
        last = format!(
            "contains {fast:.0} ns vs scan {slow:.0} ns per query, {speedup:.1}x, attempt {attempt}"
        );
        if speedup >= 5.0 {
            return Ok(last);
        }
    }
    Err(last)
}

fn load_error(bytes: &[u8]) -> Result<LoadError, String> {
    match HyperIndex::from_bytes(bytes) {
        Err(Error::Load(e)) => Ok(e),
        Err(e) => Err(format!("unexpected error {e}")),
        Ok(_) => Err("corrupted input was accepted".into()),
    }
}

fn serialization() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let mut corruptions = 0;
    for i in 0..100 {
        let g = small_hypergraph(&mut rng, 64, 128, 12);
        let index = build_index(&g, rng.gen_range(1..=200)).map_err(|e| e.to_string())?;
        let bytes = index.to_bytes();
        let back = HyperIndex::from_bytes(&bytes).map_err(|e| format!("graph {i}: {e}"))?;
        ensure!(back == index, "graph {i}: reloaded index differs");
        ensure!(back.to_bytes() == bytes, "graph {i}: bytes differ after reload");

        let cut = rng.gen_range(MAGIC.len()..bytes.len());
        let e = load_error(&bytes[..cut])?;
        ensure!(e == LoadError::Truncated, "cut at {cut}: {e:?}");

        // header fields that are checked before the checksum are excluded;
        // everything else must be caught by it
        let mut flipped = bytes.clone();
        let pos = loop {
            let p = rng.gen_range(6..bytes.len());
            if !(8..16).contains(&p) {
                break p;
            }
        };
        flipped[pos] ^= 1 << rng.gen_range(0..8);
        let e = load_error(&flipped)?;
        ensure!(
            matches!(e, LoadError::ChecksumMismatch { .. }),
            "flip at {pos}: {e:?}"
        );

        let mut bad_magic = bytes.clone();
        bad_magic[rng.gen_range(0..4)] ^= 0x20;
        let e = load_error(&bad_magic)?;
        ensure!(e == LoadError::BadMagic, "magic: {e:?}");
        corruptions += 3;
    }
    Ok(format!("100/100 bit-exact roundtrips, {corruptions}/{corruptions} corruptions classified"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("golden worked example", golden),
        ("roundtrip", roundtrip),
        ("oracle equivalence", oracle_equivalence),
        ("structural properties", structural),
        ("compression", compression),
        ("query complexity", scaling),
        ("relative speed", relative_speed),
        ("serialization", serialization),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS - {detail}", n + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL - {detail}", n + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
