//! Queries answered directly on the compressed index.
//!
//! Positions are SA-positions over `0..M`. The interval `S(v)` holds the
//! positions whose node is `v`; `Ψ` is strictly increasing on every `S(v)`
//! and walks each edge's nodes in ascending order, wrapping from the last
//! node (the edge's anchor, where `Ψ[i] <= i`) back to the first.

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, NodeId};
use crate::index::HyperIndex;

/// Half-open range `[lo, hi)` of SA-positions that belong to one node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeInterval {
    pub lo: usize,
    pub hi: usize,
}

impl NodeInterval {
    pub fn len(&self) -> usize {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi == self.lo
    }

    pub fn contains(&self, pos: usize) -> bool {
        self.lo <= pos && pos < self.hi
    }
}

/// Whether `contains` may discard a candidate edge before walking it fully.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Pruning {
    #[default]
    Enabled,
    /// Walk every candidate cycle to the end and test membership afterwards.
    Disabled,
}

impl HyperIndex {
    /// Dense ID of an external label.
    pub fn dense_node(&self, label: u64) -> Result<NodeId> {
        self.node_map
            .to_dense(label)
            .ok_or(Error::UnknownLabel(label))
    }

    /// Number of edges incident to the node with external label `label`.
    pub fn degree(&self, label: u64) -> Result<usize> {
        let v = self.dense_node(label)?;
        Ok(self.interval(v).len())
    }

    pub fn node_interval(&self, v: NodeId) -> Result<NodeInterval> {
        if v as usize >= self.node_count() {
            return Err(Error::OutOfBounds {
                what: "node",
                index: v as usize,
                len: self.node_count(),
            });
        }
        Ok(self.interval(v))
    }

    #[inline]
    pub(crate) fn interval(&self, v: NodeId) -> NodeInterval {
        let v = v as usize;
        NodeInterval {
            lo: self.degrees.select1_unchecked(v + 1),
            hi: self.degrees.select1_unchecked(v + 2),
        }
    }

    /// Node stored at SA-position `pos`.
    #[inline]
    pub(crate) fn node_at(&self, pos: usize) -> NodeId {
        (self.degrees.rank1_unchecked(pos) - 1) as NodeId
    }

    #[inline]
    fn psi_at(&self, pos: usize) -> usize {
        self.psi.get(pos)
    }

    /// Dense nodes of the edge whose cycle passes through `pos`, ascending.
    pub fn extract_edge_at(&self, pos: usize) -> Result<Vec<NodeId>> {
        if pos >= self.incidence_sum() {
            return Err(Error::OutOfBounds {
                what: "SA-position",
                index: pos,
                len: self.incidence_sum(),
            });
        }
        let mut edge = Vec::new();
        let mut cur = pos;
        loop {
            edge.push(self.node_at(cur));
            cur = self.psi_at(cur);
            if cur == pos {
                break;
            }
        }
        rotate_to_ascending(&mut edge);
        Ok(edge)
    }

    /// SA-positions with `Ψ[i] <= i`, one per edge.
    pub fn anchors(&self) -> Vec<usize> {
        self.psi
            .decode_all()
            .into_iter()
            .enumerate()
            .filter(|&(i, p)| p <= i)
            .map(|(i, _)| i)
            .collect()
    }

    /// All edges containing every labelled node, with multiplicity, as
    /// ascending external labels.
    pub fn contains(&self, labels: &[u64]) -> Result<Vec<Vec<u64>>> {
        let nodes = labels
            .iter()
            .map(|&l| self.dense_node(l))
            .collect::<Result<Vec<_>>>()?;
        let edges = self.contains_nodes(&nodes, Pruning::Enabled)?;
        Ok(edges
            .into_iter()
            .map(|e| e.into_iter().map(|v| self.node_map.to_external(v)).collect())
            .collect())
    }

    /// Dense-ID `contains`. Duplicate query nodes are ignored. Results come
    /// in the order of their positions in the scanned node interval.
    pub fn contains_nodes(&self, nodes: &[NodeId], pruning: Pruning) -> Result<Vec<Vec<NodeId>>> {
        if nodes.is_empty() {
            return Err(Error::EmptyQuery);
        }
        let mut query = nodes.to_vec();
        query.sort_unstable();
        query.dedup();
        if let Some(&v) = query.iter().find(|&&v| v as usize >= self.node_count()) {
            return Err(Error::OutOfBounds {
                what: "node",
                index: v as usize,
                len: self.node_count(),
            });
        }

        // smallest interval; ties go to the smaller node
        let (m, scan) = query
            .iter()
            .map(|&v| self.interval(v))
            .enumerate()
            .min_by_key(|&(j, s)| (s.len(), j))
            .expect("query is non-empty");

        let mut out = Vec::new();
        let mut buf = Vec::new();
        for start in scan.lo..scan.hi {
            let hit = match pruning {
                Pruning::Enabled => self.match_cycle(start, &query, m, &mut buf),
                Pruning::Disabled => {
                    self.walk_cycle(start, &mut buf);
                    is_superset(&buf, &query)
                }
            };
            if hit {
                rotate_to_ascending(&mut buf);
                out.push(buf.clone());
            }
        }
        Ok(out)
    }

    /// Collects the whole cycle starting at `start` into `buf`.
    fn walk_cycle(&self, start: usize, buf: &mut Vec<NodeId>) {
        buf.clear();
        let mut cur = start;
        loop {
            buf.push(self.node_at(cur));
            cur = self.psi_at(cur);
            if cur == start {
                break;
            }
        }
    }

    /// Walks the cycle through `start` (a position of `query[m]`) looking for
    /// the remaining query nodes in cyclic order and gives up as soon as the
    /// ascending node order rules a match out. On success `buf` holds the
    /// complete cycle, starting at `start`.
    fn match_cycle(&self, start: usize, query: &[NodeId], m: usize, buf: &mut Vec<NodeId>) -> bool {
        let k = query.len();
        buf.clear();
        buf.push(query[m]);
        let mut found = 1;
        let mut need = (m + 1) % k;
        let mut cur = start;
        let mut wrapped = false;
        loop {
            let next = self.psi_at(cur);
            if next == start {
                // cycle closed
                return found == k;
            }
            let node = self.node_at(next);
            if found < k {
                let wraps = next < cur;
                wrapped |= wraps;
                if wraps && need != 0 {
                    // past the edge's highest node while higher query nodes are missing
                    return false;
                }
                if wraps && node > query[0] {
                    // edge's lowest node is above the lowest query node
                    return false;
                }
                if node > query[need] && (need != 0 || wrapped) {
                    // ascending order already passed the node we need
                    return false;
                }
                if node == query[need] {
                    found += 1;
                    need = (need + 1) % k;
                }
            }
            buf.push(node);
            cur = next;
        }
    }

    /// Multiplicity of the edge consisting of exactly the labelled nodes.
    /// Unknown labels yield 0.
    pub fn exists(&self, labels: &[u64]) -> Result<usize> {
        if labels.is_empty() {
            return Err(Error::EmptyQuery);
        }
        let mut sorted = labels.to_vec();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateQueryLabel(w[0]));
        }
        let mut nodes = Vec::with_capacity(sorted.len());
        for &l in &sorted {
            match self.node_map.to_dense(l) {
                Some(v) => nodes.push(v),
                None => return Ok(0),
            }
        }
        self.exists_nodes(&nodes)
    }

    /// Dense-ID `exists`; `nodes` must be strictly ascending.
    ///
    /// Backward search for the cyclic pattern `v_0 v_1 .. v_n v_0`. Starting
    /// from `S(v_0)`, each step keeps the positions of `S(v_k)` whose Ψ lands
    /// in the current range; Ψ is increasing on `S(v_k)`, so that preimage is
    /// an interval found by two binary searches. Nodes are distinct, so a
    /// cycle reading `v_0 .. v_n` and returning to `v_0` is exactly the edge,
    /// and each copy contributes one position.
    pub fn exists_nodes(&self, nodes: &[NodeId]) -> Result<usize> {
        if nodes.is_empty() {
            return Err(Error::EmptyQuery);
        }
        if nodes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidHypergraph(
                "exists query nodes must be strictly ascending".into(),
            ));
        }
        if let Some(&v) = nodes.iter().find(|&&v| v as usize >= self.node_count()) {
            return Err(Error::OutOfBounds {
                what: "node",
                index: v as usize,
                len: self.node_count(),
            });
        }
        let mut range = self.interval(nodes[0]);
        for &v in nodes.iter().rev() {
            let s = self.interval(v);
            let a = self.lower_bound(s, range.lo);
            let b = self.lower_bound(NodeInterval { lo: a, hi: s.hi }, range.hi);
            if a == b {
                return Ok(0);
            }
            range = NodeInterval { lo: a, hi: b };
        }
        Ok(range.len())
    }

    /// First position in `range` with `Ψ >= bound`, `range.hi` if none.
    /// Relies on Ψ being increasing over `range`.
    fn lower_bound(&self, range: NodeInterval, bound: usize) -> usize {
        let (mut lo, mut hi) = (range.lo, range.hi);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.psi_at(mid) < bound {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// Reconstructs the canonical edge multiset.
    pub fn decompress(&self) -> Hypergraph {
        let psi = self.psi.decode_all();
        let mut node_of = Vec::with_capacity(psi.len());
        for v in 0..self.node_count() as NodeId {
            let s = self.interval(v);
            node_of.extend(std::iter::repeat_n(v, s.len()));
        }
        let mut edges = Vec::with_capacity(self.edge_count);
        for (anchor, &first) in psi.iter().enumerate() {
            if first > anchor {
                continue;
            }
            let mut edge = Vec::new();
            let mut cur = first;
            loop {
                edge.push(node_of[cur]);
                if cur == anchor {
                    break;
                }
                cur = psi[cur];
            }
            edges.push(edge);
        }
        Hypergraph::new(self.node_count(), edges)
            .expect("index cycles form valid edges")
            .into_canonical()
    }
}

/// Rotates a cyclic run of strictly increasing nodes so it starts at its minimum.
fn rotate_to_ascending(edge: &mut [NodeId]) {
    if let Some(pos) = edge
        .iter()
        .enumerate()
        .min_by_key(|&(_, v)| v)
        .map(|(i, _)| i)
    {
        edge.rotate_left(pos);
    }
}

fn is_superset(edge: &[NodeId], sorted_query: &[NodeId]) -> bool {
    sorted_query.iter().all(|q| edge.contains(q))
}
