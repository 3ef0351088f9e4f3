//! Dense bit storage shared by sequences and polynomial coefficients.
//!
//! Bit `i` lives in word `i / 64` at position `i % 64` (little-endian within
//! each `u64`), so shifting by a multiple of 64 is a word copy.

/// A fixed-length vector of bits packed into `u64` words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitVec {
    /// All-zero vector of `len` bits.
    pub fn zeros(len: usize) -> Self {
        BitVec {
            words: vec![0u64; words_for(len)],
            len,
        }
    }

    /// Build from a predicate on bit index.
    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut v = BitVec::zeros(len);
        for i in 0..len {
            if f(i) {
                v.set(i, true);
            }
        }
        v
    }

    /// Parse a string of `'0'`/`'1'` characters, index 0 first.
    pub fn from_bit_string(s: &str) -> Option<Self> {
        let mut v = BitVec::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => return None,
            }
        }
        Some(v)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_all_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the highest set bit, or `None` if all bits are zero.
    pub fn highest_set_bit(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(wi * 64 + 63 - w.leading_zeros() as usize);
            }
        }
        None
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Indices of set bits in increasing order.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    /// Read 64 bits starting at bit `offset`, zero-padded past the end.
    #[inline]
    pub fn word_at(&self, offset: usize) -> u64 {
        let wi = offset / 64;
        let b = offset % 64;
        if wi >= self.words.len() {
            return 0;
        }
        let lo = self.words[wi] >> b;
        if b == 0 {
            lo
        } else {
            let hi = self.words.get(wi + 1).copied().unwrap_or(0);
            lo | (hi << (64 - b))
        }
    }

    /// XOR `other << shift` into `self`. Bits shifted beyond `self.len` are
    /// discarded; callers size the destination so that never matters.
    pub fn xor_shifted(&mut self, other: &BitVec, shift: usize) {
        let word_shift = shift / 64;
        let bit_shift = shift % 64;
        let n = self.words.len();
        if bit_shift == 0 {
            for (i, &w) in other.words.iter().enumerate() {
                let di = i + word_shift;
                if di >= n {
                    break;
                }
                self.words[di] ^= w;
            }
        } else {
            let mut carry = 0u64;
            for (i, &w) in other.words.iter().enumerate() {
                let di = i + word_shift;
                if di >= n {
                    break;
                }
                self.words[di] ^= (w << bit_shift) | carry;
                carry = w >> (64 - bit_shift);
            }
            let tail = other.words.len() + word_shift;
            if carry != 0 && tail < n {
                self.words[tail] ^= carry;
            }
        }
        self.clear_excess();
    }

    /// XOR another vector of the same length into `self`.
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a ^= b;
        }
    }

    /// Parity of the AND between `self[0..nbits]` and `other[offset..offset+nbits]`.
    #[inline]
    pub fn dot_window(&self, other: &BitVec, offset: usize, nbits: usize) -> bool {
        let mut acc = 0u64;
        let mut i = 0;
        while i < nbits {
            let take = (nbits - i).min(64);
            let mask = if take == 64 { !0u64 } else { (1u64 << take) - 1 };
            acc ^= self.word_at(i) & other.word_at(offset + i) & mask;
            i += take;
        }
        acc.count_ones() % 2 == 1
    }

    /// Concatenate `self` with itself `times` times.
    pub fn repeat(&self, times: usize) -> BitVec {
        let mut out = BitVec::zeros(self.len * times);
        for k in 0..times {
            out.xor_shifted(self, k * self.len);
        }
        out
    }

    /// One character per bit, index 0 first.
    pub fn to_bit_string(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    /// Hex string, bit 0 in the most significant position of the first digit.
    /// A final partial nibble is padded with zeros in the low bits.
    pub fn to_hex_string(&self) -> String {
        let mut out = String::with_capacity(self.len.div_ceil(4));
        for chunk in 0..self.len.div_ceil(4) {
            let mut nibble = 0u8;
            for j in 0..4 {
                let i = chunk * 4 + j;
                if i < self.len && self.get(i) {
                    nibble |= 8 >> j;
                }
            }
            out.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        out
    }

    /// Shrink so `len` is exactly highest set bit + 1 (0 when empty).
    /// Turns structural equality into equality of bit content.
    pub fn shrink_to_content(&mut self) {
        self.len = self.highest_set_bit().map_or(0, |b| b + 1);
        self.words.truncate(words_for(self.len));
    }

    // Bits beyond `len` in the last word must stay zero.
    fn clear_excess(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.len <= 128 {
            write!(f, "BitVec({})", self.to_bit_string())
        } else {
            write!(f, "BitVec(len={}, weight={})", self.len, self.count_ones())
        }
    }
}
