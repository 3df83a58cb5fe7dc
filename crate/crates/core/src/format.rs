//! Versioned binary index format.
//!
//! ```text
//! offset  size  field
//!      0     4  magic "HCSA"
//!      4     2  format version (1)
//!      6     2  flags (bit 0: identity node map)
//!      8     8  total file length in bytes
//!     16     8  sample period t
//!     24     8  node count
//!     32     8  edge count
//!     40     8  incidence sum M
//!     48     …  node map   (omitted for identity maps): bit buffer of δ-coded label gaps
//!            …  D          bit buffer, rank directory, select directory
//!            …  Ψ          samples, block offsets, gap stream
//!   len-8     8  CRC-64/XZ of all preceding bytes
//! ```
//!
//! All integers are little-endian `u64` unless noted. A bit buffer is its
//! bit length followed by its words; a word array is its length followed by
//! the words; a packed integer vector is width, length, then its bit buffer.

use std::io::{Read, Write};

use crc::{Crc, CRC_64_XZ};

use crate::bits::{BitBuf, BitReader, IntVector};
use crate::bitvector::RankSelectBitvector;
use crate::error::{LoadError, Result};
use crate::hypergraph::NodeMap;
use crate::index::HyperIndex;
use crate::psi::EncodedPsi;

pub const MAGIC: &[u8; 4] = b"HCSA";
pub const FORMAT_VERSION: u16 = 1;
const HEADER_LEN: usize = 48;
const FLAG_IDENTITY_MAP: u16 = 1;
const CRC64: Crc<u64> = Crc::<u64>::new(&CRC_64_XZ);

impl HyperIndex {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN);
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        let flags = if self.node_map.is_identity() {
            FLAG_IDENTITY_MAP
        } else {
            0
        };
        out.extend_from_slice(&flags.to_le_bytes());
        put_u64(&mut out, 0); // patched below
        put_u64(&mut out, self.sample_period() as u64);
        put_u64(&mut out, self.node_count() as u64);
        put_u64(&mut out, self.edge_count as u64);
        put_u64(&mut out, self.incidence_sum() as u64);

        if !self.node_map.is_identity() {
            let mut gaps = BitBuf::new();
            let mut prev = None;
            for &l in self.node_map.labels() {
                match prev {
                    None => gaps.push_delta(l + 1),
                    Some(p) => gaps.push_delta(l - p),
                }
                prev = Some(l);
            }
            put_bitbuf(&mut out, &gaps);
        }

        put_bitbuf(&mut out, self.degrees.bits());
        put_words(&mut out, self.degrees.rank_dir());
        put_words(&mut out, self.degrees.select_dir());

        put_intvec(&mut out, self.psi.samples());
        put_intvec(&mut out, self.psi.offsets());
        put_bitbuf(&mut out, self.psi.stream());

        let total = (out.len() + 8) as u64;
        out[8..16].copy_from_slice(&total.to_le_bytes());
        let sum = CRC64.checksum(&out);
        put_u64(&mut out, sum);
        out
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(&self.to_bytes())?;
        Ok(())
    }

    pub fn read_from<R: Read>(mut r: R) -> Result<Self> {
        let mut buf = Vec::new();
        r.read_to_end(&mut buf)?;
        Self::from_bytes(&buf)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        Ok(decode(bytes)?)
    }
}

fn decode(bytes: &[u8]) -> std::result::Result<HyperIndex, LoadError> {
    if bytes.len() < MAGIC.len() || &bytes[..4] != MAGIC {
        return Err(LoadError::BadMagic);
    }
    if bytes.len() < 6 {
        return Err(LoadError::Truncated);
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != FORMAT_VERSION {
        return Err(LoadError::UnsupportedVersion(version));
    }
    if bytes.len() < HEADER_LEN + 8 {
        return Err(LoadError::Truncated);
    }
    let declared = u64::from_le_bytes(bytes[8..16].try_into().unwrap());
    if (bytes.len() as u64) < declared {
        return Err(LoadError::Truncated);
    }
    if bytes.len() as u64 > declared {
        return Err(LoadError::Corrupt(format!(
            "{} trailing bytes after declared length",
            bytes.len() as u64 - declared
        )));
    }
    let (body, trailer) = bytes.split_at(bytes.len() - 8);
    let stored = u64::from_le_bytes(trailer.try_into().unwrap());
    let computed = CRC64.checksum(body);
    if stored != computed {
        return Err(LoadError::ChecksumMismatch { stored, computed });
    }

    let flags = u16::from_le_bytes([body[6], body[7]]);
    let mut cur = Cursor {
        bytes: body,
        pos: 16,
    };
    let period = cur.usize()?;
    let node_count = cur.usize()?;
    let edge_count = cur.usize()?;
    let m = cur.usize()?;
    if node_count > m {
        return Err(corrupt("more nodes than incidences"));
    }

    let node_map = if flags & FLAG_IDENTITY_MAP != 0 {
        NodeMap::identity(node_count)
    } else {
        let gaps = cur.bitbuf()?;
        let mut reader = BitReader::new(&gaps, 0);
        let mut labels: Vec<u64> = Vec::with_capacity(node_count.min(body.len() * 8));
        for i in 0..node_count {
            let g = reader
                .read_delta()
                .ok_or_else(|| corrupt("node map stream ends early"))?;
            let label = if i == 0 {
                g - 1
            } else {
                labels[i - 1]
                    .checked_add(g)
                    .ok_or_else(|| corrupt("node label overflows"))?
            };
            labels.push(label);
        }
        if reader.remaining() != 0 {
            return Err(corrupt("node map has trailing bits"));
        }
        NodeMap::from_sorted_labels(labels).map_err(|e| corrupt(&e.to_string()))?
    };

    let d_bits = cur.bitbuf()?;
    let rank_dir = cur.words()?;
    let select_dir = cur.words()?;
    let degrees = RankSelectBitvector::from_parts(d_bits, rank_dir, select_dir)
        .ok_or_else(|| corrupt("degree directories do not match the bitvector"))?;
    if degrees.len() != m + 1
        || degrees.count_ones() != node_count + 1
        || !degrees.get(0)
        || !degrees.get(m)
    {
        return Err(corrupt("degree bitvector does not fit the header"));
    }

    let samples = cur.intvec()?;
    let offsets = cur.intvec()?;
    let stream = cur.bitbuf()?;
    if cur.pos != body.len() {
        return Err(corrupt("unparsed bytes before checksum"));
    }
    let psi = EncodedPsi::from_parts(period, m, samples, offsets, stream)
        .map_err(|e| corrupt(&e.to_string()))?;
    let idx = HyperIndex::from_parts(degrees, psi, node_map, edge_count);
    if idx.anchors().len() != edge_count {
        return Err(corrupt("edge count does not match the cycles of psi"));
    }
    Ok(idx)
}

fn corrupt(msg: &str) -> LoadError {
    LoadError::Corrupt(msg.to_string())
}

fn put_u64(out: &mut Vec<u8>, v: u64) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn put_words(out: &mut Vec<u8>, words: &[u64]) {
    put_u64(out, words.len() as u64);
    for &w in words {
        put_u64(out, w);
    }
}

fn put_bitbuf(out: &mut Vec<u8>, b: &BitBuf) {
    put_u64(out, b.len() as u64);
    for &w in b.words() {
        put_u64(out, w);
    }
}

fn put_intvec(out: &mut Vec<u8>, v: &IntVector) {
    put_u64(out, v.width() as u64);
    put_u64(out, v.len() as u64);
    put_bitbuf(out, v.bits());
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn u64(&mut self) -> std::result::Result<u64, LoadError> {
        let end = self.pos.checked_add(8).ok_or(LoadError::Truncated)?;
        let chunk = self.bytes.get(self.pos..end).ok_or(LoadError::Truncated)?;
        self.pos = end;
        Ok(u64::from_le_bytes(chunk.try_into().unwrap()))
    }

    fn usize(&mut self) -> std::result::Result<usize, LoadError> {
        usize::try_from(self.u64()?).map_err(|_| corrupt("value exceeds address space"))
    }

    fn word_vec(&mut self, count: usize) -> std::result::Result<Vec<u64>, LoadError> {
        if count > (self.bytes.len() - self.pos) / 8 {
            return Err(LoadError::Truncated);
        }
        (0..count).map(|_| self.u64()).collect()
    }

    fn words(&mut self) -> std::result::Result<Vec<u64>, LoadError> {
        let n = self.usize()?;
        self.word_vec(n)
    }

    fn bitbuf(&mut self) -> std::result::Result<BitBuf, LoadError> {
        let bits = self.usize()?;
        let words = self.word_vec(bits.div_ceil(64))?;
        BitBuf::from_words(words, bits).ok_or_else(|| corrupt("bit buffer padding is not zero"))
    }

    fn intvec(&mut self) -> std::result::Result<IntVector, LoadError> {
        let width = self.usize()?;
        let len = self.usize()?;
        let bits = self.bitbuf()?;
        if width > 64 {
            return Err(corrupt("integer width above 64"));
        }
        IntVector::from_parts(bits, width as u32, len)
            .ok_or_else(|| corrupt("packed vector length mismatch"))
    }
}
