use crate::bitvector::RankSelectBitvector;
use crate::error::{Error, Result};
use crate::hypergraph::{NodeId, NodeMap};
use crate::psi::EncodedPsi;

/// The assembled self-index: degree bitvector `D`, encoded Ψ and the label
/// map. Immutable once built; share it freely between reader threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperIndex {
    pub(crate) degrees: RankSelectBitvector,
    pub(crate) psi: EncodedPsi,
    pub(crate) node_map: NodeMap,
    pub(crate) edge_count: usize,
}

/// Sizes of the index components, in bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeBreakdown {
    pub degree_bits: usize,
    pub degree_directory_bits: usize,
    pub psi_stream_bits: usize,
    pub psi_sample_bits: usize,
    pub node_map_entries: usize,
}

impl HyperIndex {
    pub(crate) fn from_parts(
        degrees: RankSelectBitvector,
        psi: EncodedPsi,
        node_map: NodeMap,
        edge_count: usize,
    ) -> Self {
        Self {
            degrees,
            psi,
            node_map,
            edge_count,
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_map.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// `M`, the total number of incidences.
    pub fn incidence_sum(&self) -> usize {
        self.psi.len()
    }

    pub fn sample_period(&self) -> usize {
        self.psi.period()
    }

    pub fn degrees(&self) -> &RankSelectBitvector {
        &self.degrees
    }

    pub fn psi(&self) -> &EncodedPsi {
        &self.psi
    }

    pub fn node_map(&self) -> &NodeMap {
        &self.node_map
    }

    pub fn size_breakdown(&self) -> SizeBreakdown {
        SizeBreakdown {
            degree_bits: self.degrees.len(),
            degree_directory_bits: self.degrees.directory_bits(),
            psi_stream_bits: self.psi.stream().len(),
            psi_sample_bits: self.psi.samples().size_in_bits() + self.psi.offsets().size_in_bits(),
            node_map_entries: self.node_map.len(),
        }
    }

    /// Full structural self-check, O(M) Ψ decoding: `D` has one more 1 than
    /// there are nodes, Ψ increases on every `S(v)`, every cycle closes within
    /// one pass and the anchors (`Ψ[i] <= i`) number exactly the edges.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Invariant(msg));
        if self.degrees.count_ones() != self.node_count() + 1 {
            return fail(format!(
                "D has {} ones for {} nodes",
                self.degrees.count_ones(),
                self.node_count()
            ));
        }
        let psi = self.psi.decode_all();
        for v in 0..self.node_count() as NodeId {
            let s = self.node_interval(v)?;
            if s.is_empty() {
                return fail(format!("node {v} has degree 0"));
            }
            if psi[s.lo..s.hi].windows(2).any(|w| w[0] >= w[1]) {
                return fail(format!("Ψ is not increasing on S({v})"));
            }
        }
        let anchors = psi.iter().enumerate().filter(|&(i, &p)| p <= i).count();
        if anchors != self.edge_count {
            return fail(format!(
                "{anchors} anchors but {} edges",
                self.edge_count
            ));
        }
        // each cycle must contain exactly one anchor
        let mut seen = vec![false; psi.len()];
        for start in 0..psi.len() {
            if seen[start] {
                continue;
            }
            let (mut i, mut drops) = (start, 0);
            loop {
                if seen[i] {
                    return fail(format!("position {i} is on two cycles"));
                }
                seen[i] = true;
                if psi[i] <= i {
                    drops += 1;
                }
                i = psi[i];
                if i == start {
                    break;
                }
            }
            if drops != 1 {
                return fail(format!("cycle through {start} has {drops} anchors"));
            }
        }
        Ok(())
    }
}
