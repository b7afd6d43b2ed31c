use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use smallvec::{smallvec, SmallVec};

use crate::error::Error;

type Limbs = SmallVec<[u64; 4]>;

/// A word of `{0,1}^n`.
///
/// Coordinates are 0-based in the API. Coordinate `i` lives in bit `i % 64` of
/// limb `i / 64`, so for `n <= 64` coordinate 1 (index 0) is the least
/// significant bit of [`BitWord::to_index`]. Text renderings list coordinate 1
/// first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitWord {
    n: usize,
    limbs: Limbs,
}

fn limb_count(n: usize) -> usize {
    n.div_ceil(64)
}

impl BitWord {
    pub fn zeros(n: usize) -> Self {
        BitWord {
            n,
            limbs: smallvec![0; limb_count(n)],
        }
    }

    pub fn ones(n: usize) -> Self {
        let mut w = Self::zeros(n);
        for l in w.limbs.iter_mut() {
            *l = u64::MAX;
        }
        w.mask_tail();
        w
    }

    /// The word with a single one at coordinate `i` (0-based).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut w = Self::zeros(n);
        w.set(i, true);
        w
    }

    /// Builds the word whose coordinate `i` is bit `i` of `index`.
    pub fn from_index(n: usize, index: u64) -> Self {
        assert!(n <= 64, "from_index needs n <= 64");
        let mut w = Self::zeros(n);
        if n > 0 {
            w.limbs[0] = index;
            w.mask_tail();
        }
        w
    }

    /// Integer index with coordinate 1 as the least significant bit.
    pub fn to_index(&self) -> u64 {
        assert!(self.n <= 64, "to_index needs n <= 64");
        self.limbs.first().copied().unwrap_or(0)
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut w = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                w.set(i, true);
            }
        }
        w
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.n);
        (self.limbs[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        assert!(i < self.n, "coordinate {i} out of range for n={}", self.n);
        let m = 1u64 << (i % 64);
        if v {
            self.limbs[i / 64] |= m;
        } else {
            self.limbs[i / 64] &= !m;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.n);
        self.limbs[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn weight(&self) -> usize {
        self.limbs.iter().map(|l| l.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    /// Inner product over GF(2).
    #[inline]
    pub fn dot(&self, other: &BitWord) -> bool {
        debug_assert_eq!(self.n, other.n);
        let mut acc = 0u64;
        for (a, b) in self.limbs.iter().zip(other.limbs.iter()) {
            acc ^= a & b;
        }
        acc.count_ones() & 1 == 1
    }

    pub fn xor_assign(&mut self, other: &BitWord) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.limbs.iter_mut().zip(other.limbs.iter()) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitWord) -> BitWord {
        let mut w = self.clone();
        w.xor_assign(other);
        w
    }

    pub fn and(&self, other: &BitWord) -> BitWord {
        let mut w = self.clone();
        for (a, b) in w.limbs.iter_mut().zip(other.limbs.iter()) {
            *a &= b;
        }
        w
    }

    /// Coordinates holding a one, ascending.
    pub fn ones_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.limbs.iter().enumerate().flat_map(|(li, &limb)| {
            let mut l = limb;
            std::iter::from_fn(move || {
                if l == 0 {
                    return None;
                }
                let t = l.trailing_zeros() as usize;
                l &= l - 1;
                Some(li * 64 + t)
            })
        })
    }

    pub fn first_one(&self) -> Option<usize> {
        self.ones_positions().next()
    }

    /// Sub-word of coordinates `start..start+len`.
    pub fn slice(&self, start: usize, len: usize) -> BitWord {
        assert!(start + len <= self.n);
        let mut w = BitWord::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                w.set(i, true);
            }
        }
        w
    }

    /// Weight of coordinates `start..start+len`.
    pub fn weight_range(&self, start: usize, len: usize) -> usize {
        (start..start + len).filter(|&i| self.get(i)).count()
    }

    pub fn concat(&self, other: &BitWord) -> BitWord {
        let mut w = BitWord::zeros(self.n + other.n);
        for i in self.ones_positions() {
            w.set(i, true);
        }
        for i in other.ones_positions() {
            w.set(self.n + i, true);
        }
        w
    }

    /// Applies a coordinate permutation: output coordinate `perm[i]` takes input coordinate `i`.
    pub fn permute(&self, perm: &[usize]) -> BitWord {
        assert_eq!(perm.len(), self.n);
        let mut w = BitWord::zeros(self.n);
        for i in self.ones_positions() {
            w.set(perm[i], true);
        }
        w
    }

    fn mask_tail(&mut self) {
        let r = self.n % 64;
        if r != 0 {
            if let Some(last) = self.limbs.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }
}

/// Lexicographic order of the rendered strings: coordinate 1 is compared first.
impl Ord for BitWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            for (a, b) in self.limbs.iter().zip(other.limbs.iter()) {
                let diff = a ^ b;
                if diff != 0 {
                    let low = diff & diff.wrapping_neg();
                    return if a & low == 0 {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    };
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for BitWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitWord({self})")
    }
}

impl FromStr for BitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return Err(Error::param(format!("invalid bit character {c:?}"))),
            }
        }
        Ok(BitWord::from_bits(bits))
    }
}

/// Reverses the low `n` bits of `x`.
pub fn reverse_low_bits(x: u64, n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        x.reverse_bits() >> (64 - n)
    }
}
