//! Fixed-width vertex bitsets.
//!
//! Four 64-bit words cover every graph the crate accepts. Hot paths only
//! ever touch the low word on graphs with at most 64 vertices, and the
//! whole set is `Copy`, so set algebra never allocates.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Sub, SubAssign};

use serde::{Deserialize, Serialize};

pub const WORDS: usize = 4;
pub const MAX_VERTICES: usize = WORDS * 64;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct VertexSet {
    words: [u64; WORDS],
}

impl VertexSet {
    pub const fn new() -> Self {
        Self { words: [0; WORDS] }
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "vertex count {n} exceeds {MAX_VERTICES}");
        let mut words = [0u64; WORDS];
        for (i, w) in words.iter_mut().enumerate() {
            let lo = i * 64;
            if n >= lo + 64 {
                *w = u64::MAX;
            } else if n > lo {
                *w = (1u64 << (n - lo)) - 1;
            }
        }
        Self { words }
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = Self::new();
        s.insert(v);
        s
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.words[v >> 6] |= 1u64 << (v & 63);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.words[v >> 6] &= !(1u64 << (v & 63));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < MAX_VERTICES && self.words[v >> 6] >> (v & 63) & 1 == 1
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn union(&self, other: &Self) -> Self {
        *self | *other
    }

    #[inline]
    pub fn intersection(&self, other: &Self) -> Self {
        *self & *other
    }

    #[inline]
    pub fn difference(&self, other: &Self) -> Self {
        *self - *other
    }

    #[inline]
    pub fn intersects(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    #[inline]
    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Smallest element.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Largest element.
    pub fn last(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    /// Elements strictly greater than `v`.
    pub fn above(&self, v: usize) -> Self {
        let mut out = *self;
        for (i, w) in out.words.iter_mut().enumerate() {
            let lo = i * 64;
            if v + 1 >= lo + 64 {
                *w = 0;
            } else if v + 1 > lo {
                *w &= !((1u64 << (v + 1 - lo)) - 1);
            }
        }
        out
    }

    pub fn iter(&self) -> Iter {
        Iter {
            words: self.words,
            word: 0,
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Ascending iterator over a [`VertexSet`].
#[derive(Clone)]
pub struct Iter {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = &mut self.words[self.word];
            if *w != 0 {
                let bit = w.trailing_zeros() as usize;
                *w &= *w - 1;
                return Some(self.word * 64 + bit);
            }
            self.word += 1;
        }
        None
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl IntoIterator for &VertexSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Self::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<'a> FromIterator<&'a usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl From<VertexSet> for Vec<usize> {
    fn from(s: VertexSet) -> Self {
        s.to_vec()
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $atr:ident, $af:ident, $op:tt) => {
        impl $tr for VertexSet {
            type Output = VertexSet;
            #[inline]
            fn $f(self, rhs: VertexSet) -> VertexSet {
                let mut words = self.words;
                for (a, b) in words.iter_mut().zip(rhs.words) {
                    *a = *a $op b;
                }
                VertexSet { words }
            }
        }
        impl $atr for VertexSet {
            #[inline]
            fn $af(&mut self, rhs: VertexSet) {
                *self = $tr::$f(*self, rhs);
            }
        }
    };
}

binop!(BitOr, bitor, BitOrAssign, bitor_assign, |);
binop!(BitAnd, bitand, BitAndAssign, bitand_assign, &);

impl Sub for VertexSet {
    type Output = VertexSet;
    #[inline]
    fn sub(self, rhs: VertexSet) -> VertexSet {
        let mut words = self.words;
        for (a, b) in words.iter_mut().zip(rhs.words) {
            *a &= !b;
        }
        VertexSet { words }
    }
}

impl SubAssign for VertexSet {
    #[inline]
    fn sub_assign(&mut self, rhs: VertexSet) {
        *self = *self - rhs;
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
