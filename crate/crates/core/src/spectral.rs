//! Exact Walsh–Hadamard transforms, Krawtchouk numbers and set self-convolutions.
//!
//! The transform is unnormalized: `(Hf)(s) = Σ_x f(x)·(-1)^{x·s}`. Word `x` sits
//! at index `x.to_index()`, so coordinate 1 is bit 0 of the index.

use std::collections::HashMap;
use std::ops::{Add, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gf2::BitWord;

pub const MAX_WHT_N: usize = 26;
pub const MAX_CONVOLUTION_N: usize = 22;

/// In-place butterfly; `v.len()` must be a power of two.
pub fn wht_in_place<T>(v: &mut [T])
where
    T: Clone + Add<Output = T> + Sub<Output = T>,
{
    assert!(v.len().is_power_of_two(), "length must be a power of two");
    let mut h = 1;
    while h < v.len() {
        for block in v.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let x = a.clone();
                let y = b.clone();
                *a = x.clone() + y.clone();
                *b = x - y;
            }
        }
        h *= 2;
    }
}

/// Float variant for certificate checks.
pub fn wht_f64(v: &mut [f64]) {
    wht_in_place(v);
}

/// A function on `{0,1}^n` stored as `2^n` exact values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSpectrum<T = BigInt> {
    n: usize,
    values: Vec<T>,
}

impl<T> IntSpectrum<T>
where
    T: Clone + Add<Output = T> + Sub<Output = T>,
{
    pub fn new(n: usize, values: Vec<T>) -> Result<Self> {
        if n > MAX_WHT_N {
            return Err(Error::cap("transform length n", n, MAX_WHT_N));
        }
        if values.len() != 1usize << n {
            return Err(Error::param(format!(
                "spectrum of length {} does not match n={n}",
                values.len()
            )));
        }
        Ok(IntSpectrum { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn at(&self, x: &BitWord) -> &T {
        &self.values[x.to_index() as usize]
    }

    pub fn transform(&self) -> IntSpectrum<T> {
        let mut values = self.values.clone();
        wht_in_place(&mut values);
        IntSpectrum { n: self.n, values }
    }
}

pub fn wht<T>(spec: &IntSpectrum<T>) -> IntSpectrum<T>
where
    T: Clone + Add<Output = T> + Sub<Output = T>,
{
    spec.transform()
}

/// Defining sum `Σ_t (-1)^t C(j,t) C(n-j,i-t)`.
pub fn krawtchouk_by_sum(n: usize, i: usize, j: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for t in 0..=i.min(j) {
        if i - t > n - j {
            continue;
        }
        let term = binomial(BigInt::from(j), BigInt::from(t))
            * binomial(BigInt::from(n - j), BigInt::from(i - t));
        if t % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Memoized `K_i^{(n)}(j)` for one `n`, filled one column `j` at a time by the
/// three-term recurrence in `i` and checked against the defining sum.
pub struct Krawtchouk {
    n: usize,
    columns: Vec<OnceLock<Vec<BigInt>>>,
}

impl Krawtchouk {
    pub fn new(n: usize) -> Self {
        Krawtchouk {
            n,
            columns: (0..=n).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `K_0(j), ..., K_n(j)`.
    pub fn column(&self, j: usize) -> &[BigInt] {
        self.columns[j].get_or_init(|| self.fill(j))
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.column(j)[i]
    }

    fn fill(&self, j: usize) -> Vec<BigInt> {
        let n = self.n;
        let mut col = Vec::with_capacity(n + 1);
        col.push(BigInt::one());
        if n >= 1 {
            col.push(BigInt::from(n as i64 - 2 * j as i64));
        }
        for i in 1..n {
            let next = BigInt::from(n as i64 - 2 * j as i64) * &col[i]
                - BigInt::from((n - i + 1) as i64) * &col[i - 1];
            let (q, r) = next.div_rem(&BigInt::from(i as i64 + 1));
            assert!(r.is_zero(), "krawtchouk recurrence left a remainder");
            col.push(q);
        }
        for (i, v) in col.iter().enumerate() {
            assert_eq!(
                *v,
                krawtchouk_by_sum(n, i, j),
                "krawtchouk recurrence disagrees with sum"
            );
        }
        col
    }
}

/// Shared per-`n` table.
pub fn krawtchouk_table(n: usize) -> Arc<Krawtchouk> {
    static TABLES: OnceLock<Mutex<HashMap<usize, Arc<Krawtchouk>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = tables.lock().unwrap_or_else(|e| e.into_inner());
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(Krawtchouk::new(n)))
        .clone()
}

pub fn krawtchouk(n: usize, i: usize, j: usize) -> Result<BigInt> {
    if i > n || j > n {
        return Err(Error::param(format!(
            "krawtchouk indices i={i}, j={j} must not exceed n={n}"
        )));
    }
    Ok(krawtchouk_table(n).get(i, j).clone())
}

/// `W(j) = Σ_{w(s)=j} F(s)` over all `s ∈ {0,1}^n`.
pub fn weight_class_sums<F>(n: usize, mut provider: F) -> Result<Vec<BigInt>>
where
    F: FnMut(&BitWord) -> Result<BigInt>,
{
    if n > MAX_WHT_N {
        return Err(Error::cap("weight-class sum length n", n, MAX_WHT_N));
    }
    let mut sums = vec![BigInt::zero(); n + 1];
    for idx in 0..(1u64 << n) {
        let s = BitWord::from_index(n, idx);
        sums[s.weight()] += provider(&s)?;
    }
    Ok(sums)
}

/// `v(x) = #{z : z ∈ A and x⊕z ∈ A}` for all `x`, via transform, square, transform.
pub fn self_convolution_counts<P>(n: usize, member: P) -> Result<Vec<i128>>
where
    P: Fn(&BitWord) -> bool,
{
    if n > MAX_CONVOLUTION_N {
        return Err(Error::cap(
            "self-convolution length n",
            n,
            MAX_CONVOLUTION_N,
        ));
    }
    let size = 1usize << n;
    let mut v: Vec<i128> = (0..size as u64)
        .map(|i| member(&BitWord::from_index(n, i)) as i128)
        .collect();
    // |A| <= 2^22, so every intermediate stays below 2^67.
    wht_in_place(&mut v);
    for x in v.iter_mut() {
        *x *= *x;
    }
    wht_in_place(&mut v);
    for x in v.iter_mut() {
        if *x % size as i128 != 0 {
            return Err(Error::Internal(
                "self-convolution not divisible by 2^n".into(),
            ));
        }
        *x /= size as i128;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_and_constant() {
        let mut d = vec![BigInt::zero(); 8];
        d[0] = BigInt::one();
        let s = IntSpectrum::new(3, d).unwrap().transform();
        assert!(s.values().iter().all(|v| v.is_one()));
        let ones = IntSpectrum::new(3, vec![BigInt::one(); 8])
            .unwrap()
            .transform();
        let want: Vec<BigInt> = [8, 0, 0, 0, 0, 0, 0, 0]
            .iter()
            .map(|&x| BigInt::from(x))
            .collect();
        assert_eq!(ones.values(), &want[..]);
    }

    #[test]
    fn rejects_mismatched_length() {
        assert!(IntSpectrum::new(3, vec![0i64; 7]).is_err());
        assert!(IntSpectrum::<i64>::new(27, vec![]).is_err());
    }

    #[test]
    fn small_krawtchouk_values() {
        assert_eq!(krawtchouk(4, 1, 1).unwrap(), BigInt::from(2));
        assert_eq!(krawtchouk(4, 2, 1).unwrap(), BigInt::from(0));
        assert_eq!(krawtchouk(7, 3, 0).unwrap(), BigInt::from(35));
        assert!(krawtchouk(4, 5, 0).is_err());
    }

    #[test]
    fn self_convolution_small() {
        let v = self_convolution_counts(2, |x| x.to_index() == 0 || x.to_index() == 3).unwrap();
        assert_eq!(v, vec![2, 0, 0, 2]);
    }

    #[test]
    fn weight_class_sums_of_whole_space() {
        let n = 4;
        let w = weight_class_sums(n, |s| {
            Ok(if s.is_zero() {
                BigInt::from(16)
            } else {
                BigInt::zero()
            })
        })
        .unwrap();
        assert_eq!(w[0], BigInt::from(16));
        assert!(w[1..].iter().all(Zero::is_zero));
    }
}
