//! Fixed-length bitset used for every set and candidate pool in the crate.

use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bitset {
    words: Vec<u64>,
    len: usize,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset { words: vec![0; len.div_ceil(WORD)], len }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Bitset { words: vec![!0; len.div_ceil(WORD)], len };
        s.clear_tail();
        s
    }

    /// Builds a bitset from member indices; indices `>= len` are ignored.
    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut s = Bitset::new(len);
        for i in indices {
            if i < len {
                s.insert(i);
            }
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if i < self.len {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of members in `[start, end)`.
    pub fn count_range(&self, start: usize, end: usize) -> usize {
        let end = end.min(self.len);
        if start >= end {
            return 0;
        }
        let (ws, we) = (start / WORD, (end - 1) / WORD);
        let lo_mask = !0u64 << (start % WORD);
        let hi_mask = !0u64 >> (WORD - 1 - (end - 1) % WORD);
        if ws == we {
            return (self.words[ws] & lo_mask & hi_mask).count_ones() as usize;
        }
        let mut total = (self.words[ws] & lo_mask).count_ones() as usize;
        total += self.words[ws + 1..we].iter().map(|w| w.count_ones() as usize).sum::<usize>();
        total + (self.words[we] & hi_mask).count_ones() as usize
    }

    pub fn intersection_count(&self, other: &Bitset) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn intersect_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        let n = other.words.len();
        for a in self.words.iter_mut().skip(n) {
            *a = 0;
        }
    }

    pub fn union_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        self.clear_tail();
    }

    pub fn difference_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn complement(&self) -> Bitset {
        let mut s = Bitset { words: self.words.iter().map(|w| !w).collect(), len: self.len };
        s.clear_tail();
        s
    }

    pub fn is_subset(&self, other: &Bitset) -> bool {
        self.words.iter().enumerate().all(|(i, &w)| {
            let o = other.words.get(i).copied().unwrap_or(0);
            w & !o == 0
        })
    }

    /// Writes `out[i] = self[i + shift]` for every `i < out.len()`.
    pub fn shr_into(&self, shift: usize, out: &mut Bitset) {
        let (ws, bs) = (shift / WORD, shift % WORD);
        let src = &self.words;
        for (w, dst) in out.words.iter_mut().enumerate() {
            let lo = src.get(w + ws).copied().unwrap_or(0);
            *dst = if bs == 0 {
                lo
            } else {
                let hi = src.get(w + ws + 1).copied().unwrap_or(0);
                (lo >> bs) | (hi << (WORD - bs))
            };
        }
        out.clear_tail();
    }

    /// Writes `out[i] = self[i - shift]` (zero below `shift`) for every `i < out.len()`.
    pub fn shl_into(&self, shift: usize, out: &mut Bitset) {
        let (ws, bs) = (shift / WORD, shift % WORD);
        let src = &self.words;
        for (w, dst) in out.words.iter_mut().enumerate() {
            *dst = if w < ws {
                0
            } else {
                let hi = src.get(w - ws).copied().unwrap_or(0);
                if bs == 0 {
                    hi
                } else {
                    let lo = if w > ws { src.get(w - ws - 1).copied().unwrap_or(0) } else { 0 };
                    (hi << bs) | (lo >> (WORD - bs))
                }
            };
        }
        out.clear_tail();
    }

    /// Smallest member `>= from`.
    pub fn next_member(&self, from: usize) -> Option<usize> {
        if from >= self.len {
            return None;
        }
        let mut w = from / WORD;
        let mut word = self.words[w] & (!0u64 << (from % WORD));
        loop {
            if word != 0 {
                let i = w * WORD + word.trailing_zeros() as usize;
                return (i < self.len).then_some(i);
            }
            w += 1;
            if w >= self.words.len() {
                return None;
            }
            word = self.words[w];
        }
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones { words: &self.words, idx: 0, cur: self.words.first().copied().unwrap_or(0) }
    }

    /// The `k` smallest members, or fewer if the set is smaller.
    pub fn first_members(&self, k: usize) -> Vec<usize> {
        self.iter().take(k).collect()
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Debug for Bitset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bitset[{}]", self.len)?;
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.cur == 0 {
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
        let bit = self.cur.trailing_zeros() as usize;
        self.cur &= self.cur - 1;
        Some(self.idx * WORD + bit)
    }
}
