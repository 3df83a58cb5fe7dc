//! Plain bitvector with constant-time rank and select.
//!
//! Rank uses a two-level directory over 512-bit blocks: one absolute count per
//! block plus seven 9-bit counts relative to the block start, 128 bits per
//! block (0.25 extra bits per bit). Select samples the block of every
//! 4096th one bit and finishes with a binary search over the rank directory
//! between two samples followed by an in-word select.

use crate::bits::BitBuf;
use crate::error::{Error, Result};

const BLOCK_BITS: usize = 512;
const WORDS_PER_BLOCK: usize = BLOCK_BITS / 64;
const SELECT_SAMPLE: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankSelectBitvector {
    bits: BitBuf,
    /// Two words per block: absolute ones before the block, packed relative counts.
    rank_dir: Vec<u64>,
    /// Block index holding the (j * SELECT_SAMPLE + 1)-th one.
    select_dir: Vec<u64>,
    ones: usize,
}

impl RankSelectBitvector {
    pub fn new(bits: BitBuf) -> Self {
        let (rank_dir, ones) = build_rank_dir(&bits);
        let select_dir = build_select_dir(&rank_dir, ones);
        let bv = Self {
            bits,
            rank_dir,
            select_dir,
            ones,
        };
        let n = bv.len().max(1) as f64;
        let rank_overhead = (bv.rank_dir.len() * 64) as f64 / n;
        let select_overhead = (bv.select_dir.len() * 64) as f64 / n;
        if bv.len() >= BLOCK_BITS && rank_overhead > 0.25 + 1e-9 {
            log::warn!("rank directory uses {rank_overhead:.3} bits per bit");
        }
        if bv.len() >= SELECT_SAMPLE && select_overhead > 0.2 {
            log::warn!("select directory uses {select_overhead:.3} bits per bit");
        }
        bv
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut buf = BitBuf::new();
        for b in bits {
            buf.push(b);
        }
        Self::new(buf)
    }

    /// Rebuilds from serialized parts, checking the stored directories
    /// against the bits.
    pub fn from_parts(bits: BitBuf, rank_dir: Vec<u64>, select_dir: Vec<u64>) -> Option<Self> {
        let bv = Self::new(bits);
        (bv.rank_dir == rank_dir && bv.select_dir == select_dir).then_some(bv)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn count_ones(&self) -> usize {
        self.ones
    }

    pub fn bits(&self) -> &BitBuf {
        &self.bits
    }

    pub fn rank_dir(&self) -> &[u64] {
        &self.rank_dir
    }

    pub fn select_dir(&self) -> &[u64] {
        &self.select_dir
    }

    pub fn get(&self, pos: usize) -> bool {
        self.bits.get(pos)
    }

    /// Number of one bits in `0..=pos`.
    pub fn rank1(&self, pos: usize) -> Result<usize> {
        if pos >= self.len() {
            return Err(Error::OutOfBounds {
                what: "rank position",
                index: pos,
                len: self.len(),
            });
        }
        Ok(self.rank1_unchecked(pos))
    }

    #[inline]
    pub(crate) fn rank1_unchecked(&self, pos: usize) -> usize {
        self.rank_exclusive(pos + 1)
    }

    /// Ones in `0..end`, for `end <= len`.
    #[inline]
    fn rank_exclusive(&self, end: usize) -> usize {
        if end == self.len() {
            return self.ones;
        }
        let block = end / BLOCK_BITS;
        let word = end / 64;
        let k = word % WORDS_PER_BLOCK;
        let mut r = self.rank_dir[2 * block] as usize;
        if k > 0 {
            r += ((self.rank_dir[2 * block + 1] >> (9 * (k - 1))) & 0x1FF) as usize;
        }
        let off = end % 64;
        if off > 0 {
            r += (self.bits.words()[word] & ((1u64 << off) - 1)).count_ones() as usize;
        }
        r
    }

    /// Position of the `k`-th one bit, `k` counted from 1.
    pub fn select1(&self, k: usize) -> Result<usize> {
        if k == 0 || k > self.ones {
            return Err(Error::OutOfBounds {
                what: "select rank",
                index: k,
                len: self.ones,
            });
        }
        Ok(self.select1_unchecked(k))
    }

    #[inline]
    pub(crate) fn select1_unchecked(&self, k: usize) -> usize {
        let sample = (k - 1) / SELECT_SAMPLE;
        let mut lo = self.select_dir[sample] as usize;
        let mut hi = match self.select_dir.get(sample + 1) {
            Some(&b) => b as usize,
            None => self.rank_dir.len() / 2 - 1,
        };
        // last block whose absolute count is < k
        while lo < hi {
            let mid = (lo + hi).div_ceil(2);
            if (self.rank_dir[2 * mid] as usize) < k {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let block = lo;
        let mut remaining = k - self.rank_dir[2 * block] as usize;
        let packed = self.rank_dir[2 * block + 1];
        let mut word_in_block = 0;
        for j in (1..WORDS_PER_BLOCK).rev() {
            let rel = ((packed >> (9 * (j - 1))) & 0x1FF) as usize;
            if rel < remaining {
                word_in_block = j;
                remaining -= rel;
                break;
            }
        }
        let word = block * WORDS_PER_BLOCK + word_in_block;
        word * 64 + select_in_word(self.bits.words()[word], remaining as u32 - 1) as usize
    }

    /// Bits used by the rank and select directories.
    pub fn directory_bits(&self) -> usize {
        (self.rank_dir.len() + self.select_dir.len()) * 64
    }
}

/// Position of the one bit with 0-based index `r` inside `w`.
#[inline]
fn select_in_word(mut w: u64, r: u32) -> u32 {
    for _ in 0..r {
        w &= w - 1;
    }
    w.trailing_zeros()
}

fn build_rank_dir(bits: &BitBuf) -> (Vec<u64>, usize) {
    let words = bits.words();
    let blocks = words.len().div_ceil(WORDS_PER_BLOCK).max(1);
    let mut dir = Vec::with_capacity(2 * blocks);
    let mut total = 0u64;
    for b in 0..blocks {
        dir.push(total);
        let mut rel = 0u64;
        let mut packed = 0u64;
        for j in 0..WORDS_PER_BLOCK {
            if j > 0 {
                packed |= rel << (9 * (j - 1));
            }
            if let Some(&w) = words.get(b * WORDS_PER_BLOCK + j) {
                rel += w.count_ones() as u64;
            }
        }
        dir.push(packed);
        total += rel;
    }
    (dir, total as usize)
}

fn build_select_dir(rank_dir: &[u64], ones: usize) -> Vec<u64> {
    let blocks = rank_dir.len() / 2;
    let mut dir = Vec::with_capacity(ones / SELECT_SAMPLE + 1);
    let mut block = 0;
    let mut k = 1;
    while k <= ones {
        // last block whose absolute count is < k
        while block + 1 < blocks && (rank_dir[2 * (block + 1)] as usize) < k {
            block += 1;
        }
        dir.push(block as u64);
        k += SELECT_SAMPLE;
    }
    dir
}
