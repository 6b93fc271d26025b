//! Fixed-width bitsets over element and point indices.
//!
//! Carriers are capped at [`MAX_ELEMENTS`] elements, so a single `u64` word
//! covers every subset of the carrier. A finite residuated lattice has at most
//! as many filters as elements (every filter is principal), which keeps sets
//! of primes inside one word as well.

use serde::Serialize;
use std::fmt;

/// Largest carrier supported by the bitset representation.
pub const MAX_ELEMENTS: usize = 64;

macro_rules! bitset_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
        #[serde(transparent)]
        pub struct $name(u64);

        impl $name {
            pub const fn empty() -> Self {
                Self(0)
            }

            /// `{0, .., n-1}`.
            pub fn full(n: usize) -> Self {
                debug_assert!(n <= MAX_ELEMENTS);
                if n == 64 {
                    Self(u64::MAX)
                } else {
                    Self((1u64 << n) - 1)
                }
            }

            pub fn singleton(i: usize) -> Self {
                Self(1u64 << i)
            }

            pub const fn from_bits(bits: u64) -> Self {
                Self(bits)
            }

            pub const fn bits(self) -> u64 {
                self.0
            }

            pub fn contains(self, i: usize) -> bool {
                i < 64 && self.0 >> i & 1 == 1
            }

            pub fn insert(&mut self, i: usize) {
                self.0 |= 1u64 << i;
            }

            pub fn remove(&mut self, i: usize) {
                self.0 &= !(1u64 << i);
            }

            pub fn with(self, i: usize) -> Self {
                Self(self.0 | 1u64 << i)
            }

            pub fn union(self, other: Self) -> Self {
                Self(self.0 | other.0)
            }

            pub fn intersection(self, other: Self) -> Self {
                Self(self.0 & other.0)
            }

            pub fn difference(self, other: Self) -> Self {
                Self(self.0 & !other.0)
            }

            /// Complement relative to `{0, .., n-1}`.
            pub fn complement(self, n: usize) -> Self {
                Self::full(n).difference(self)
            }

            pub fn is_subset(self, other: Self) -> bool {
                self.0 & !other.0 == 0
            }

            pub fn is_disjoint(self, other: Self) -> bool {
                self.0 & other.0 == 0
            }

            pub fn is_empty(self) -> bool {
                self.0 == 0
            }

            pub fn len(self) -> usize {
                self.0.count_ones() as usize
            }

            /// Smallest member, if any.
            pub fn first(self) -> Option<usize> {
                if self.0 == 0 {
                    None
                } else {
                    Some(self.0.trailing_zeros() as usize)
                }
            }

            pub fn iter(self) -> impl Iterator<Item = usize> {
                let mut bits = self.0;
                std::iter::from_fn(move || {
                    if bits == 0 {
                        None
                    } else {
                        let i = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        Some(i)
                    }
                })
            }
        }

        impl FromIterator<usize> for $name {
            fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
                let mut s = Self::empty();
                for i in iter {
                    s.insert(i);
                }
                s
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.debug_set().entries(self.iter()).finish()
            }
        }
    };
}

bitset_type!(
    /// A subset of the carrier of a lattice, by element index.
    ElementSet
);

bitset_type!(
    /// A subset of a list of points (prime filters), by position in that list.
    PointSet
);
