//! Member sets over a carrier of at most 128 objects.

use core::fmt;
use core::ops::{BitAnd, BitOr, Not, Sub};

pub const MAX_CARRIER: usize = 128;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Members(pub u128);

impl Members {
    pub const EMPTY: Members = Members(0);

    pub fn full(n: usize) -> Members {
        if n >= 128 {
            Members(u128::MAX)
        } else {
            Members((1u128 << n) - 1)
        }
    }

    pub fn single(i: usize) -> Members {
        Members(1u128 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u128 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u128 << i);
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: Members) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Members) -> bool {
        self.0 & other.0 == 0
    }

    pub fn iter(self) -> MemberIter {
        MemberIter(self.0)
    }

    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }
}

impl BitOr for Members {
    type Output = Members;
    fn bitor(self, rhs: Members) -> Members {
        Members(self.0 | rhs.0)
    }
}

impl BitAnd for Members {
    type Output = Members;
    fn bitand(self, rhs: Members) -> Members {
        Members(self.0 & rhs.0)
    }
}

impl Sub for Members {
    type Output = Members;
    fn sub(self, rhs: Members) -> Members {
        Members(self.0 & !rhs.0)
    }
}

impl Not for Members {
    type Output = Members;
    fn not(self) -> Members {
        Members(!self.0)
    }
}

impl FromIterator<usize> for Members {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut m = Members::EMPTY;
        for i in iter {
            m.insert(i);
        }
        m
    }
}

impl fmt::Debug for Members {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct MemberIter(u128);

impl Iterator for MemberIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}
