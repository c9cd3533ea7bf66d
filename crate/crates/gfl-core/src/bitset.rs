//! Word-packed vertex sets and adjacency rows, internal to the crate.

use alloc::vec;
use alloc::vec::Vec;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline]
pub(crate) fn set_bit(words: &mut [u64], i: usize) {
    words[i / 64] |= 1u64 << (i % 64);
}

#[inline]
pub(crate) fn clear_bit(words: &mut [u64], i: usize) {
    words[i / 64] &= !(1u64 << (i % 64));
}

#[inline]
pub(crate) fn test_bit(words: &[u64], i: usize) -> bool {
    words[i / 64] & (1u64 << (i % 64)) != 0
}

pub(crate) fn count_bits(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

pub(crate) fn first_bit(words: &[u64]) -> Option<usize> {
    for (i, &w) in words.iter().enumerate() {
        if w != 0 {
            return Some(i * 64 + w.trailing_zeros() as usize);
        }
    }
    None
}

pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        core::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            }
        })
    })
}

/// Square 0/1 matrix stored as bit rows; used for one color's adjacency.
#[derive(Clone)]
pub(crate) struct BitRows {
    w: usize,
    bits: Vec<u64>,
}

impl BitRows {
    pub(crate) fn new(n: usize) -> Self {
        let w = words_for(n);
        Self { w, bits: vec![0; w * n] }
    }

    #[inline]
    pub(crate) fn row(&self, r: usize) -> &[u64] {
        &self.bits[r * self.w..(r + 1) * self.w]
    }

    #[inline]
    pub(crate) fn set(&mut self, r: usize, c: usize) {
        set_bit(&mut self.bits[r * self.w..(r + 1) * self.w], c);
    }

    #[inline]
    pub(crate) fn words(&self) -> usize {
        self.w
    }
}
