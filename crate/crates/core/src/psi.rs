//! Gap-coded storage for the Ψ permutation.
//!
//! Every `t`-th value is stored verbatim in a packed sample table together
//! with the bit offset of the following gap codes. The positions in between
//! are stored as Elias-δ coded codewords:
//!
//! * `1` — a run of `k >= 3` gaps equal to one, followed by `δ(k)`
//! * `2` — a non-positive gap `g`, followed by `δ(1 - g)`
//! * `g + 2` — a positive gap `g`
//!
//! Runs never cross a sample boundary, so an access decodes at most `t - 1`
//! gaps after the sample lookup.

use crate::bits::{BitBuf, BitReader, IntVector};
use crate::error::{Error, Result};

pub const DEFAULT_SAMPLE_PERIOD: usize = 128;

const CODE_RUN: u64 = 1;
const CODE_NON_POSITIVE: u64 = 2;
const CODE_GAP_BIAS: u64 = 2;
const MIN_RUN: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedPsi {
    period: usize,
    len: usize,
    samples: IntVector,
    offsets: IntVector,
    stream: BitBuf,
}

impl EncodedPsi {
    /// Encodes a permutation of `0..values.len()` with sample period `period`.
    pub fn encode(values: &[usize], period: usize) -> Result<Self> {
        if period == 0 {
            return Err(Error::InvalidHypergraph("sample period must be >= 1".into()));
        }
        check_permutation(values)?;

        let mut samples = Vec::with_capacity(values.len().div_ceil(period));
        let mut offsets = Vec::with_capacity(samples.capacity());
        let mut stream = BitBuf::new();
        for block in values.chunks(period) {
            samples.push(block[0] as u64);
            offsets.push(stream.len() as u64);
            let mut i = 1;
            while i < block.len() {
                let gap = block[i] as i64 - block[i - 1] as i64;
                if gap == 1 {
                    let run = block[i..]
                        .iter()
                        .zip(&block[i - 1..])
                        .take_while(|(a, b)| **a == **b + 1)
                        .count();
                    if run >= MIN_RUN {
                        stream.push_delta(CODE_RUN);
                        stream.push_delta(run as u64);
                        i += run;
                        continue;
                    }
                }
                if gap > 0 {
                    stream.push_delta(gap as u64 + CODE_GAP_BIAS);
                } else {
                    stream.push_delta(CODE_NON_POSITIVE);
                    stream.push_delta((1 - gap) as u64);
                }
                i += 1;
            }
        }
        Ok(Self {
            period,
            len: values.len(),
            samples: IntVector::from_values(&samples),
            offsets: IntVector::from_values(&offsets),
            stream,
        })
    }

    /// Reassembles an encoding from its serialized parts and fully decodes it
    /// once to check that it describes a permutation.
    pub fn from_parts(
        period: usize,
        len: usize,
        samples: IntVector,
        offsets: IntVector,
        stream: BitBuf,
    ) -> Result<Self> {
        let blocks = if period == 0 { 0 } else { len.div_ceil(period) };
        if period == 0 || samples.len() != blocks || offsets.len() != blocks {
            return Err(Error::NotAPermutation("inconsistent sample table".into()));
        }
        let psi = Self {
            period,
            len,
            samples,
            offsets,
            stream,
        };
        let values = psi.try_decode_all()?;
        check_permutation(&values)?;
        Ok(psi)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn samples(&self) -> &IntVector {
        &self.samples
    }

    pub fn offsets(&self) -> &IntVector {
        &self.offsets
    }

    pub fn stream(&self) -> &BitBuf {
        &self.stream
    }

    /// Bits of the gap stream plus both packed sample tables.
    pub fn size_in_bits(&self) -> usize {
        self.stream.len() + self.samples.size_in_bits() + self.offsets.size_in_bits()
    }

    /// Ψ[i], decoding at most `t - 1` gaps.
    pub fn access(&self, i: usize) -> Result<usize> {
        if i >= self.len {
            return Err(Error::OutOfBounds {
                what: "psi index",
                index: i,
                len: self.len,
            });
        }
        Ok(self.get(i))
    }

    #[inline]
    pub(crate) fn get(&self, i: usize) -> usize {
        let block = i / self.period;
        let mut remaining = i % self.period;
        let mut value = self.samples.get(block) as i64;
        if remaining == 0 {
            return value as usize;
        }
        let mut reader = BitReader::new(&self.stream, self.offsets.get(block) as usize);
        while remaining > 0 {
            let code = reader.read_delta().expect("validated gap stream");
            match code {
                CODE_RUN => {
                    let run = reader.read_delta().expect("validated gap stream") as usize;
                    let step = run.min(remaining);
                    value += step as i64;
                    remaining -= step;
                }
                CODE_NON_POSITIVE => {
                    let mag = reader.read_delta().expect("validated gap stream") as i64;
                    value -= mag - 1;
                    remaining -= 1;
                }
                g => {
                    value += (g - CODE_GAP_BIAS) as i64;
                    remaining -= 1;
                }
            }
        }
        value as usize
    }

    /// Decodes the whole sequence in one pass.
    pub fn decode_all(&self) -> Vec<usize> {
        self.try_decode_all().expect("validated gap stream")
    }

    fn try_decode_all(&self) -> Result<Vec<usize>> {
        let corrupt = || Error::NotAPermutation("malformed gap stream".into());
        let mut out = Vec::with_capacity(self.len);
        let mut reader = BitReader::new(&self.stream, 0);
        for block in 0..self.samples.len() {
            if reader.position() != self.offsets.get(block) as usize {
                return Err(corrupt());
            }
            let end = ((block + 1) * self.period).min(self.len);
            let mut value = self.samples.get(block) as i64;
            out.push(value as usize);
            while out.len() < end {
                match reader.read_delta().ok_or_else(corrupt)? {
                    CODE_RUN => {
                        let run = reader.read_delta().ok_or_else(corrupt)? as usize;
                        if run < MIN_RUN || out.len() + run > end {
                            return Err(corrupt());
                        }
                        for _ in 0..run {
                            value += 1;
                            out.push(value as usize);
                        }
                    }
                    CODE_NON_POSITIVE => {
                        let mag = reader.read_delta().ok_or_else(corrupt)?;
                        value = value.checked_sub(mag as i64 - 1).ok_or_else(corrupt)?;
                        if value < 0 {
                            return Err(corrupt());
                        }
                        out.push(value as usize);
                    }
                    g => {
                        value = value
                            .checked_add((g - CODE_GAP_BIAS) as i64)
                            .ok_or_else(corrupt)?;
                        out.push(value as usize);
                    }
                }
            }
        }
        if reader.remaining() != 0 {
            return Err(corrupt());
        }
        Ok(out)
    }
}

fn check_permutation(values: &[usize]) -> Result<()> {
    let mut seen = vec![false; values.len()];
    for (i, &v) in values.iter().enumerate() {
        if v >= values.len() {
            return Err(Error::NotAPermutation(format!(
                "value {v} at {i} is outside 0..{}",
                values.len()
            )));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::NotAPermutation(format!("value {v} repeats")));
        }
    }
    Ok(())
}
