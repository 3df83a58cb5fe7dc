//! Logical hypergraph model: edge-list parsing, validation, canonical
//! ordering and the order-preserving label densification.

use std::io::{self, Write};

use crate::error::{Error, Result};

/// Dense node identifier, `0..node_count`.
pub type NodeId = u32;

/// A multiset of hyperedges over dense node IDs.
///
/// Edges are non-empty and never repeat a node. Identical edges may occur
/// any number of times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    node_count: usize,
    edges: Vec<Vec<NodeId>>,
}

impl Hypergraph {
    /// Validates and wraps an edge multiset.
    pub fn new(node_count: usize, edges: Vec<Vec<NodeId>>) -> Result<Self> {
        if node_count > NodeId::MAX as usize {
            return Err(Error::InvalidHypergraph(format!(
                "{node_count} nodes exceed the supported maximum"
            )));
        }
        let mut scratch = Vec::new();
        for (i, edge) in edges.iter().enumerate() {
            if edge.is_empty() {
                return Err(Error::InvalidHypergraph(format!("edge {i} is empty")));
            }
            if let Some(&v) = edge.iter().find(|&&v| v as usize >= node_count) {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {i} references node {v} but only {node_count} nodes exist"
                )));
            }
            scratch.clear();
            scratch.extend_from_slice(edge);
            scratch.sort_unstable();
            if let Some(w) = scratch.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {i} contains node {} twice",
                    w[0]
                )));
            }
        }
        Ok(Self { node_count, edges })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<NodeId>] {
        &self.edges
    }

    pub fn into_edges(self) -> Vec<Vec<NodeId>> {
        self.edges
    }

    /// Total number of incidences, the sum of all edge ranks.
    pub fn incidence_sum(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    /// Largest edge rank, 0 for an edgeless graph.
    pub fn max_rank(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.node_count];
        for &v in self.edges.iter().flatten() {
            deg[v as usize] += 1;
        }
        deg
    }

    /// True if every edge is strictly ascending and the edge sequence is in
    /// non-increasing lexicographic order.
    pub fn is_canonical(&self) -> bool {
        self.edges
            .iter()
            .all(|e| e.windows(2).all(|w| w[0] < w[1]))
            && self.edges.windows(2).all(|w| w[0] >= w[1])
    }

    /// Returns the canonical form: nodes ascending within each edge, edges in
    /// descending lexicographic order. An edge that is a proper prefix of
    /// another compares smaller, so it is placed after the longer edge.
    pub fn canonicalize(&self) -> Hypergraph {
        self.clone().into_canonical()
    }

    pub fn into_canonical(mut self) -> Hypergraph {
        if self.is_canonical() {
            return self;
        }
        for e in &mut self.edges {
            e.sort_unstable();
        }
        self.edges.sort_unstable_by(|a, b| b.cmp(a));
        self
    }
}

/// Order-preserving bijection between the labels that occur in the input and
/// dense node IDs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeMap {
    /// Strictly ascending; index is the dense ID.
    labels: Vec<u64>,
    identity: bool,
}

impl NodeMap {
    /// Builds a map from strictly ascending labels.
    pub fn from_sorted_labels(labels: Vec<u64>) -> Result<Self> {
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidHypergraph(
                "node labels must be strictly ascending".into(),
            ));
        }
        if labels.len() > NodeId::MAX as usize {
            return Err(Error::InvalidHypergraph("too many distinct labels".into()));
        }
        let identity = labels.iter().enumerate().all(|(i, &l)| i as u64 == l);
        Ok(Self { labels, identity })
    }

    /// The map `i -> i` for `0..n`.
    pub fn identity(n: usize) -> Self {
        Self {
            labels: (0..n as u64).collect(),
            identity: true,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.identity
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn to_dense(&self, label: u64) -> Option<NodeId> {
        if self.identity {
            return (label < self.labels.len() as u64).then_some(label as NodeId);
        }
        self.labels.binary_search(&label).ok().map(|i| i as NodeId)
    }

    pub fn to_external(&self, v: NodeId) -> u64 {
        self.labels[v as usize]
    }
}

/// Parses the comma/whitespace separated edge-list format, one edge per line.
///
/// Blank lines and lines starting with `#` or `%` are skipped. Labels are
/// densified in ascending order.
pub fn parse_edge_list(text: &str) -> Result<(Hypergraph, NodeMap)> {
    let mut raw: Vec<Vec<u64>> = Vec::new();
    let mut scratch: Vec<u64> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut edge = Vec::new();
        for token in trimmed.split(|c: char| c == ',' || c.is_whitespace()) {
            if token.is_empty() {
                continue;
            }
            let label = token.parse::<u64>().map_err(|_| Error::Parse {
                line: line_no,
                token: token.to_string(),
            })?;
            edge.push(label);
        }
        if edge.is_empty() {
            return Err(Error::EmptyEdge { line: line_no });
        }
        scratch.clear();
        scratch.extend_from_slice(&edge);
        scratch.sort_unstable();
        if let Some(w) = scratch.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateNode {
                line: line_no,
                label: w[0],
            });
        }
        raw.push(edge);
    }

    densify(raw)
}

/// Maps arbitrary labels to dense IDs in ascending label order.
pub fn densify(raw: Vec<Vec<u64>>) -> Result<(Hypergraph, NodeMap)> {
    let mut labels: Vec<u64> = raw.iter().flatten().copied().collect();
    labels.sort_unstable();
    labels.dedup();
    let map = NodeMap::from_sorted_labels(labels)?;
    let edges = raw
        .into_iter()
        .map(|e| {
            e.into_iter()
                .map(|l| map.to_dense(l).expect("label collected above"))
                .collect()
        })
        .collect();
    let graph = Hypergraph::new(map.len(), edges)?;
    Ok((graph, map))
}

/// Writes one edge per line with ascending, comma-separated external labels.
pub fn write_edge_list_to<W: Write>(out: &mut W, g: &Hypergraph, map: &NodeMap) -> io::Result<()> {
    let mut nodes = Vec::new();
    for edge in g.edges() {
        nodes.clear();
        nodes.extend_from_slice(edge);
        nodes.sort_unstable();
        for (k, &v) in nodes.iter().enumerate() {
            if k > 0 {
                out.write_all(b",")?;
            }
            write!(out, "{}", map.to_external(v))?;
        }
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn write_edge_list(g: &Hypergraph, map: &NodeMap) -> String {
    let mut buf = Vec::new();
    write_edge_list_to(&mut buf, g, map).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("decimal digits and commas are ASCII")
}
