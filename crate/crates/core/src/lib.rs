//! Compressed self-index for hypergraphs.
//!
//! Edges are laid out in a canonical order and concatenated into a text; the
//! index keeps a compressed Ψ array over that text plus a bitvector of node
//! degrees. Every edge is a Ψ cycle, so the original edge multiset can be
//! recovered and queried without storing it.
//!
//! ```
//! use hypercsa::{build_index_with_map, parse_edge_list, DEFAULT_SAMPLE_PERIOD};
//!
//! let (g, map) = parse_edge_list("0,1,2,3\n1,2,3\n2\n0,1,2,4\n2\n").unwrap();
//! let index = build_index_with_map(&g, map, DEFAULT_SAMPLE_PERIOD).unwrap();
//! assert_eq!(index.degree(2).unwrap(), 5);
//! assert_eq!(index.exists(&[2]).unwrap(), 2);
//! assert_eq!(index.contains(&[1, 3]).unwrap().len(), 2);
//! ```

pub mod bits;
pub mod bitvector;
pub mod builder;
pub mod error;
pub mod format;
pub mod hypergraph;
pub mod index;
pub mod oracle;
pub mod psi;
pub mod query;
pub mod random;
pub mod sais;

pub use bitvector::RankSelectBitvector;
pub use builder::{build_index, build_index_with_map};
pub use error::{Error, LoadError, Result};
pub use hypergraph::{densify, parse_edge_list, write_edge_list, Hypergraph, NodeId, NodeMap};
pub use index::{HyperIndex, SizeBreakdown};
pub use oracle::IncidenceList;
pub use psi::{EncodedPsi, DEFAULT_SAMPLE_PERIOD};
pub use query::{NodeInterval, Pruning};
