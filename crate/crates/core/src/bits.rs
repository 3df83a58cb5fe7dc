//! Bit-level plumbing: an append-only bit buffer, a cursor reader, Elias
//! gamma/delta codes and a fixed-width packed integer vector.
//!
//! Bits are stored LSB-first inside little-endian `u64` words.

/// Growable bit buffer.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BitBuf {
    words: Vec<u64>,
    len: usize,
}

impl BitBuf {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_words(words: Vec<u64>, len: usize) -> Option<Self> {
        if words.len() != len.div_ceil(64) {
            return None;
        }
        if !len.is_multiple_of(64) {
            let tail = words[words.len() - 1] >> (len % 64);
            if tail != 0 {
                return None;
            }
        }
        Some(Self { words, len })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn push(&mut self, bit: bool) {
        self.push_bits(bit as u64, 1);
    }

    /// Appends the low `width` bits of `value`.
    pub fn push_bits(&mut self, value: u64, width: u32) {
        debug_assert!(width <= 64);
        if width == 0 {
            return;
        }
        let value = if width == 64 {
            value
        } else {
            value & ((1u64 << width) - 1)
        };
        let offset = (self.len % 64) as u32;
        if offset == 0 {
            self.words.push(value);
        } else {
            *self.words.last_mut().unwrap() |= value << offset;
            if offset + width > 64 {
                self.words.push(value >> (64 - offset));
            }
        }
        self.len += width as usize;
    }

    pub fn get(&self, pos: usize) -> bool {
        debug_assert!(pos < self.len);
        (self.words[pos / 64] >> (pos % 64)) & 1 == 1
    }

    /// Reads `width` bits starting at `pos`.
    pub fn get_bits(&self, pos: usize, width: u32) -> u64 {
        read_bits(&self.words, pos, width)
    }

    /// Elias gamma code of `x >= 1`.
    pub fn push_gamma(&mut self, x: u64) {
        assert!(x >= 1, "gamma code undefined for 0");
        let n = 63 - x.leading_zeros();
        self.push_bits(1u64 << n, n + 1);
        self.push_bits(x, n);
    }

    /// Elias delta code of `x >= 1`.
    pub fn push_delta(&mut self, x: u64) {
        assert!(x >= 1, "delta code undefined for 0");
        let n = 63 - x.leading_zeros();
        self.push_gamma(n as u64 + 1);
        self.push_bits(x, n);
    }
}

#[inline]
fn read_bits(words: &[u64], pos: usize, width: u32) -> u64 {
    if width == 0 {
        return 0;
    }
    let w = pos / 64;
    let off = (pos % 64) as u32;
    let mut v = words[w] >> off;
    if off + width > 64 {
        v |= words[w + 1] << (64 - off);
    }
    if width == 64 {
        v
    } else {
        v & ((1u64 << width) - 1)
    }
}

/// Forward cursor over a [`BitBuf`].
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    words: &'a [u64],
    len: usize,
    pos: usize,
}

impl<'a> BitReader<'a> {
    pub fn new(buf: &'a BitBuf, pos: usize) -> Self {
        Self {
            words: &buf.words,
            len: buf.len,
            pos,
        }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.len.saturating_sub(self.pos)
    }

    pub fn read_bits(&mut self, width: u32) -> Option<u64> {
        if self.remaining() < width as usize {
            return None;
        }
        let v = read_bits(self.words, self.pos, width);
        self.pos += width as usize;
        Some(v)
    }

    /// Counts zero bits up to and including the next one bit.
    fn read_unary(&mut self) -> Option<u32> {
        let mut zeros = 0u32;
        loop {
            if self.pos >= self.len {
                return None;
            }
            let w = self.pos / 64;
            let off = self.pos % 64;
            let chunk = self.words[w] >> off;
            if chunk != 0 {
                let tz = chunk.trailing_zeros();
                self.pos += tz as usize + 1;
                if self.pos > self.len {
                    return None;
                }
                return Some(zeros + tz);
            }
            let skipped = 64 - off;
            zeros += skipped as u32;
            self.pos += skipped;
            if zeros > 64 {
                return None;
            }
        }
    }

    pub fn read_gamma(&mut self) -> Option<u64> {
        let n = self.read_unary()?;
        if n > 63 {
            return None;
        }
        let low = self.read_bits(n)?;
        Some((1u64 << n) | low)
    }

    pub fn read_delta(&mut self) -> Option<u64> {
        let n = self.read_gamma()? - 1;
        if n > 63 {
            return None;
        }
        let low = self.read_bits(n as u32)?;
        Some((1u64 << n) | low)
    }
}

/// Number of bits needed to represent `x` (0 for 0).
pub fn bit_width(x: u64) -> u32 {
    64 - x.leading_zeros()
}

/// Length in bits of the Elias delta code of `x`.
pub fn delta_len(x: u64) -> usize {
    let n = 63 - x.leading_zeros() as usize;
    let m = 63 - (n as u64 + 1).leading_zeros() as usize;
    2 * m + 1 + n
}

/// Fixed-width packed unsigned integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntVector {
    bits: BitBuf,
    width: u32,
    len: usize,
}

impl IntVector {
    pub fn from_values(values: &[u64]) -> Self {
        let width = values.iter().copied().map(bit_width).max().unwrap_or(0);
        let mut bits = BitBuf::new();
        for &v in values {
            bits.push_bits(v, width);
        }
        Self {
            bits,
            width,
            len: values.len(),
        }
    }

    pub fn from_parts(bits: BitBuf, width: u32, len: usize) -> Option<Self> {
        if width > 64 || bits.len() != width as usize * len {
            return None;
        }
        Some(Self { bits, width, len })
    }

    pub fn get(&self, i: usize) -> u64 {
        debug_assert!(i < self.len);
        self.bits.get_bits(i * self.width as usize, self.width)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn bits(&self) -> &BitBuf {
        &self.bits
    }

    pub fn size_in_bits(&self) -> usize {
        self.bits.len()
    }
}
