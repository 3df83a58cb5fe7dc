//! Plain incidence-list engine with the same query surface as
//! [`HyperIndex`](crate::HyperIndex). Used as ground truth in tests and as
//! the `naive` engine of the command line tool.

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, NodeId, NodeMap};

#[derive(Debug, Clone)]
pub struct IncidenceList {
    /// Ascending dense nodes of every edge, in input order.
    edges: Vec<Vec<NodeId>>,
    /// Edge indices per node.
    incidence: Vec<Vec<usize>>,
    node_map: NodeMap,
}

impl IncidenceList {
    pub fn new(g: &Hypergraph, node_map: NodeMap) -> Self {
        let edges: Vec<Vec<NodeId>> = g
            .edges()
            .iter()
            .map(|e| {
                let mut e = e.clone();
                e.sort_unstable();
                e
            })
            .collect();
        let mut incidence = vec![Vec::new(); g.node_count()];
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                incidence[v as usize].push(i);
            }
        }
        Self {
            edges,
            incidence,
            node_map,
        }
    }

    fn dense(&self, label: u64) -> Result<NodeId> {
        self.node_map
            .to_dense(label)
            .ok_or(Error::UnknownLabel(label))
    }

    fn external(&self, e: &[NodeId]) -> Vec<u64> {
        e.iter().map(|&v| self.node_map.to_external(v)).collect()
    }

    fn query_nodes(&self, labels: &[u64]) -> Result<Vec<NodeId>> {
        if labels.is_empty() {
            return Err(Error::EmptyQuery);
        }
        let mut q = labels
            .iter()
            .map(|&l| self.dense(l))
            .collect::<Result<Vec<_>>>()?;
        q.sort_unstable();
        q.dedup();
        Ok(q)
    }

    pub fn degree(&self, label: u64) -> Result<usize> {
        Ok(self.incidence[self.dense(label)? as usize].len())
    }

    /// `contains` through the incidence list of the first query node.
    pub fn contains(&self, labels: &[u64]) -> Result<Vec<Vec<u64>>> {
        let q = self.query_nodes(labels)?;
        Ok(self.incidence[q[0] as usize]
            .iter()
            .map(|&i| &self.edges[i])
            .filter(|e| q.iter().all(|v| e.binary_search(v).is_ok()))
            .map(|e| self.external(e))
            .collect())
    }

    /// `contains` by scanning every edge, without the per-node shortcut.
    pub fn contains_scan(&self, labels: &[u64]) -> Result<Vec<Vec<u64>>> {
        let q = self.query_nodes(labels)?;
        Ok(self
            .edges
            .iter()
            .filter(|e| q.iter().all(|v| e.binary_search(v).is_ok()))
            .map(|e| self.external(e))
            .collect())
    }

    pub fn exists(&self, labels: &[u64]) -> Result<usize> {
        if labels.is_empty() {
            return Err(Error::EmptyQuery);
        }
        let mut sorted = labels.to_vec();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateQueryLabel(w[0]));
        }
        let mut q = Vec::with_capacity(sorted.len());
        for l in sorted {
            match self.node_map.to_dense(l) {
                Some(v) => q.push(v),
                None => return Ok(0),
            }
        }
        Ok(self.edges.iter().filter(|e| **e == q).count())
    }

    pub fn decompress(&self) -> Hypergraph {
        Hypergraph::new(self.incidence.len(), self.edges.clone())
            .expect("edges were validated on construction")
            .into_canonical()
    }
}

/// Suffix array by direct comparison sorting of all suffixes.
pub fn naive_suffix_sort(x: &[u32]) -> Vec<usize> {
    let mut sa: Vec<usize> = (0..x.len()).collect();
    sa.sort_by(|&a, &b| x[a..].cmp(&x[b..]));
    sa
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::parse_edge_list;

    fn example() -> IncidenceList {
        let (g, map) = parse_edge_list("0,1,2,3\n1,2,3\n2\n0,1,2,4\n2\n").unwrap();
        IncidenceList::new(&g, map)
    }

    #[test]
    fn oracle_examples() {
        let h = example();
        assert_eq!(h.exists(&[2]).unwrap(), 2);
        let mut c = h.contains(&[1, 3]).unwrap();
        c.sort();
        assert_eq!(c, vec![vec![0, 1, 2, 3], vec![1, 2, 3]]);
        assert_eq!(h.contains_scan(&[3, 1]).unwrap().len(), 2);
        assert_eq!(h.degree(2).unwrap(), 5);
        assert!(matches!(h.degree(5), Err(Error::UnknownLabel(5))));
        assert_eq!(h.exists(&[5]).unwrap(), 0);
        assert!(h.exists(&[2, 2]).is_err());

        let (g, map) = parse_edge_list("0\n").unwrap();
        assert_eq!(IncidenceList::new(&g, map).degree(0).unwrap(), 1);
    }

    #[test]
    fn naive_sort_examples() {
        // high sentinel 2, node 0 -> 1, low sentinel 0
        assert_eq!(naive_suffix_sort(&[2, 1, 1, 0]), vec![3, 2, 1, 0]);
        assert_eq!(naive_suffix_sort(&[0]), vec![0]);
    }

    #[test]
    fn naive_sort_orders_pairwise() {
        let mut state = 12345u64;
        let x: Vec<u32> = (0..64)
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                (state >> 61) as u32
            })
            .collect();
        let sa = naive_suffix_sort(&x);
        let mut isa = vec![0; x.len()];
        for (i, &p) in sa.iter().enumerate() {
            isa[p] = i;
        }
        for a in 0..x.len() {
            for b in 0..x.len() {
                assert_eq!(isa[a] < isa[b], x[a..] < x[b..]);
            }
        }
    }

    #[test]
    fn insertion_order_does_not_matter() {
        let (g1, m1) = parse_edge_list("0,1\n2\n1,2\n").unwrap();
        let (g2, m2) = parse_edge_list("2\n2,1\n1,0\n").unwrap();
        let a = IncidenceList::new(&g1, m1);
        let b = IncidenceList::new(&g2, m2);
        assert_eq!(a.decompress(), b.decompress());
        for q in [[1u64].as_slice(), &[2], &[1, 2], &[0, 1]] {
            let mut x = a.contains(q).unwrap();
            let mut y = b.contains(q).unwrap();
            x.sort();
            y.sort();
            assert_eq!(x, y);
            assert_eq!(a.exists(q).unwrap(), b.exists(q).unwrap());
        }
    }
}
