//! Index construction.
//!
//! 1. Concatenate the canonically ordered edges into the text `T`.
//! 2. Suffix-sort `T` wrapped in a high sentinel at the front and a low
//!    sentinel at the back, derive Ψ_CSA and the degree bitvector `D`.
//! 3. Walk the single cycle of Ψ_CSA and redirect every edge's last node to
//!    the edge's first node, so Ψ gets one cycle per edge. The sentinels end
//!    up in a 2-cycle of their own which is cut away.

use crate::bits::BitBuf;
use crate::bitvector::RankSelectBitvector;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, NodeId, NodeMap};
use crate::index::HyperIndex;
use crate::psi::EncodedPsi;
use crate::sais;

/// Edge nodes of a canonical hypergraph, concatenated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Text {
    symbols: Vec<NodeId>,
    node_count: usize,
}

impl Text {
    pub fn symbols(&self) -> &[NodeId] {
        &self.symbols
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Splits after every position `i` with `T[i] >= T[i + 1]`, recovering
    /// the canonical edge sequence.
    pub fn edges(&self) -> Vec<Vec<NodeId>> {
        self.symbols
            .chunk_by(|a, b| a < b)
            .map(<[NodeId]>::to_vec)
            .collect()
    }
}

/// Builds `T` from `g`, canonicalizing first unless `g` already is.
pub fn construct_text(g: &Hypergraph) -> Text {
    let symbols = if g.is_canonical() {
        g.edges().concat()
    } else {
        g.canonicalize().into_edges().concat()
    };
    Text {
        symbols,
        node_count: g.node_count(),
    }
}

/// Unary degree encoding: ones at every cumulative-frequency boundary,
/// including position 0 and the extra trailing position `M`.
pub fn build_degree_bitvector(text: &Text) -> Result<RankSelectBitvector> {
    let mut freq = vec![0usize; text.node_count];
    for &v in &text.symbols {
        freq[v as usize] += 1;
    }
    if let Some(v) = freq.iter().position(|&f| f == 0) {
        return Err(Error::InvalidHypergraph(format!(
            "node {v} does not occur in any edge"
        )));
    }
    let mut bits = BitBuf::new();
    for &f in &freq {
        bits.push(true);
        for _ in 1..f {
            bits.push(false);
        }
    }
    bits.push(true);
    Ok(RankSelectBitvector::new(bits))
}

/// Suffix array data over the sentinel-wrapped text
/// `X = [high] · T · [low]`, length `M + 2`.
///
/// Symbols of `X` are shifted: the low sentinel is 0, node `v` is `v + 1`
/// and the high sentinel is `node_count + 1`.
#[derive(Debug, Clone)]
pub struct SuffixArrayWorkspace {
    pub x: Vec<u32>,
    pub sa: Vec<usize>,
    pub isa: Vec<usize>,
    pub psi_csa: Vec<usize>,
}

impl SuffixArrayWorkspace {
    /// Length `M` of the unwrapped text.
    pub fn text_len(&self) -> usize {
        self.x.len() - 2
    }
}

pub fn build_psi_csa(text: &Text) -> SuffixArrayWorkspace {
    let high = text.node_count as u32 + 1;
    let mut x = Vec::with_capacity(text.len() + 2);
    x.push(high);
    x.extend(text.symbols.iter().map(|&v| v + 1));
    x.push(0);

    let sa = sais::suffix_array(&x, high);
    let n = sa.len();
    let mut isa = vec![0; n];
    for (i, &p) in sa.iter().enumerate() {
        isa[p] = i;
    }
    let psi_csa = sa.iter().map(|&p| isa[(p + 1) % n]).collect();
    SuffixArrayWorkspace { x, sa, isa, psi_csa }
}

/// Splits the single cycle of Ψ_CSA into one cycle per edge and drops the
/// sentinel positions, returning Ψ over `0..M`.
pub fn adjust_psi(ws: &SuffixArrayWorkspace) -> Result<Vec<usize>> {
    let mut psi = ws.psi_csa.clone();
    let n = psi.len();

    let mut current = psi[0];
    let mut next = psi[current];
    let mut last_first_node = 0;
    while current != 0 {
        if next < current {
            psi[current] = last_first_node;
            last_first_node = next;
        }
        current = next;
        next = psi[next];
    }

    if psi[0] != n - 1 || psi[n - 1] != 0 {
        return Err(Error::Invariant(format!(
            "sentinel cycle is ({} -> {}, {} -> {}), expected (0 -> {m}, {m} -> 0)",
            0,
            psi[0],
            n - 1,
            psi[n - 1],
            m = n - 1
        )));
    }
    psi[1..n - 1]
        .iter()
        .map(|&v| {
            if v == 0 || v == n - 1 {
                Err(Error::Invariant("edge cycle reaches a sentinel".into()))
            } else {
                Ok(v - 1)
            }
        })
        .collect()
}

/// Full pipeline with identity node labels.
pub fn build_index(g: &Hypergraph, sample_period: usize) -> Result<HyperIndex> {
    build_index_with_map(g, NodeMap::identity(g.node_count()), sample_period)
}

pub fn build_index_with_map(
    g: &Hypergraph,
    node_map: NodeMap,
    sample_period: usize,
) -> Result<HyperIndex> {
    if node_map.len() != g.node_count() {
        return Err(Error::InvalidHypergraph(format!(
            "node map has {} labels for {} nodes",
            node_map.len(),
            g.node_count()
        )));
    }
    let text = construct_text(g);
    let degrees = build_degree_bitvector(&text)?;
    let ws = build_psi_csa(&text);
    drop(text);
    let psi = adjust_psi(&ws)?;
    drop(ws);
    let psi = EncodedPsi::encode(&psi, sample_period)?;
    Ok(HyperIndex::from_parts(degrees, psi, node_map, g.edge_count()))
}
