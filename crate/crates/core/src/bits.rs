//! Word-packed bit storage shared by the poset and map-space types.

use alloc::{vec, vec::Vec};

pub(crate) const WORD: usize = 64;

pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// Dense boolean matrix, one bit per entry, rows padded to whole words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct BitMatrix {
    rows: usize,
    cols: usize,
    wpr: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        let wpr = words_for(cols);
        BitMatrix {
            rows,
            cols,
            wpr,
            words: vec![0; rows * wpr],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::new(n, n);
        for i in 0..n {
            m.set(i, i);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        self.words[i * self.wpr + j / WORD] >> (j % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        debug_assert!(i < self.rows && j < self.cols);
        self.words[i * self.wpr + j / WORD] |= 1 << (j % WORD);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.words[i * self.wpr..(i + 1) * self.wpr]
    }

    /// Indices of the set bits in row `i`, ascending.
    pub fn iter_row(&self, i: usize) -> SetBits<'_> {
        SetBits::new(self.row(i))
    }

    pub fn count_row(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::new(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.iter_row(i) {
                t.set(j, i);
            }
        }
        t
    }
}

/// Iterator over the set-bit positions of a word slice.
pub(crate) struct SetBits<'a> {
    words: &'a [u64],
    word_idx: usize,
    cur: u64,
}

impl<'a> SetBits<'a> {
    pub fn new(words: &'a [u64]) -> Self {
        SetBits {
            words,
            word_idx: 0,
            cur: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for SetBits<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.cur == 0 {
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.word_idx];
        }
        let bit = self.cur.trailing_zeros() as usize;
        self.cur &= self.cur - 1;
        Some(self.word_idx * WORD + bit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_iter() {
        let mut m = BitMatrix::new(3, 70);
        m.set(1, 0);
        m.set(1, 69);
        m.set(2, 64);
        assert!(m.get(1, 0) && m.get(1, 69) && m.get(2, 64));
        assert!(!m.get(0, 0));
        assert_eq!(m.iter_row(1).collect::<Vec<_>>(), vec![0, 69]);
        assert_eq!(m.count_row(1), 2);
        let t = m.transpose();
        assert!(t.get(69, 1) && t.get(64, 2));
    }
}
