use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use super::ConstraintSpec;
use crate::error::{Error, Result};
use crate::gf2::{reverse_low_bits, BitWord};
use crate::spectral::{krawtchouk_table, Krawtchouk};

/// Largest blocklength for which members are listed by walking the whole space.
pub const MAX_ENUMERATION_N: usize = 22;

pub(super) fn check(spec: ConstraintSpec, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::param("blocklength must be at least 1"));
    }
    match spec {
        ConstraintSpec::Subblock { p, z } => {
            if p == 0 || n % p != 0 {
                return Err(Error::param(format!(
                    "subblock count p={p} must divide n={n}"
                )));
            }
            if z > n / p {
                return Err(Error::param(format!(
                    "subblock weight z={z} exceeds block length {}",
                    n / p
                )));
            }
        }
        ConstraintSpec::Rll { d: 0 } => {
            return Err(Error::param("rll needs d >= 1"));
        }
        ConstraintSpec::OddRelaxed if n % 2 == 1 => {
            return Err(Error::Unsupported(format!(
                "the relaxed odd constraint is implemented for even n only (got n={n})"
            )));
        }
        ConstraintSpec::FixedWeight { i } if i > n => {
            return Err(Error::param(format!("weight i={i} exceeds n={n}")));
        }
        _ => {}
    }
    Ok(())
}

/// `b_0 = 10^{n-1}` and `b_i` with ones at 1-based positions `2i, 2i+1`.
#[derive(Clone, Debug)]
pub struct TwoChargeBasis {
    n: usize,
    vectors: Vec<BitWord>,
    pivots: Vec<usize>,
}

impl TwoChargeBasis {
    pub fn new(n: usize) -> Self {
        let mut vectors = vec![BitWord::unit(n, 0)];
        let mut pivots = vec![0];
        for i in 1..n.div_ceil(2) {
            let mut b = BitWord::zeros(n);
            b.set(2 * i - 1, true);
            b.set(2 * i, true);
            vectors.push(b);
            pivots.push(2 * i - 1);
        }
        TwoChargeBasis { n, vectors, pivots }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vectors(&self) -> &[BitWord] {
        &self.vectors
    }

    /// Coefficients `a` with `s = Σ a_i b_i`, or `None` when `s` is outside the span.
    /// The basis is already in echelon form, so elimination runs pivot by pivot.
    pub fn decompose(&self, s: &BitWord) -> Option<Vec<bool>> {
        let mut rest = s.clone();
        let mut coeffs = Vec::with_capacity(self.vectors.len());
        for (b, &p) in self.vectors.iter().zip(&self.pivots) {
            let a = rest.get(p);
            if a {
                rest.xor_assign(b);
            }
            coeffs.push(a);
        }
        rest.is_zero().then_some(coeffs)
    }
}

/// A constraint bound to a blocklength, with whatever tables its character sums need.
#[derive(Clone)]
pub struct Constraint {
    spec: ConstraintSpec,
    n: usize,
    krawtchouk: Option<Arc<Krawtchouk>>,
    /// Members of each short length, indexed by length (RLL and even constraints).
    base: Vec<Vec<BitWord>>,
    basis: Option<TwoChargeBasis>,
}

impl std::fmt::Debug for Constraint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Constraint({}, n={})", self.spec, self.n)
    }
}

impl Constraint {
    pub fn new(spec: ConstraintSpec, n: usize) -> Result<Self> {
        check(spec, n)?;
        let mut c = Constraint {
            spec,
            n,
            krawtchouk: None,
            base: Vec::new(),
            basis: None,
        };
        match spec {
            ConstraintSpec::Subblock { p, .. } => c.krawtchouk = Some(krawtchouk_table(n / p)),
            ConstraintSpec::FixedWeight { .. } => c.krawtchouk = Some(krawtchouk_table(n)),
            ConstraintSpec::TwoCharge => c.basis = Some(TwoChargeBasis::new(n)),
            ConstraintSpec::Rll { d } => {
                c.base = (0..=n.min(d + 1)).map(|len| rll_members(len, d)).collect();
            }
            ConstraintSpec::EvenStrict => {
                c.base = (0..=n.min(2))
                    .map(|len| {
                        (0..1u64 << len)
                            .map(|i| BitWord::from_index(len, i))
                            .filter(is_even_strict)
                            .collect()
                    })
                    .collect();
            }
            _ => {}
        }
        Ok(c)
    }

    pub fn spec(&self) -> ConstraintSpec {
        self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn member(&self, x: &BitWord) -> bool {
        debug_assert_eq!(x.len(), self.n);
        match self.spec {
            ConstraintSpec::TwoCharge => is_two_charge(x),
            ConstraintSpec::Subblock { p, z } => {
                let len = self.n / p;
                (0..p).all(|l| x.weight_range(l * len, len) == z)
            }
            ConstraintSpec::Rll { d } => is_rll(x, d),
            ConstraintSpec::OddStrict => is_odd_strict(x),
            ConstraintSpec::OddRelaxed => gaps(x).all(|g| g % 2 == 1),
            ConstraintSpec::EvenStrict => is_even_strict(x),
            ConstraintSpec::FixedWeight { i } => x.weight() == i,
            ConstraintSpec::Unconstrained => true,
        }
    }

    pub fn cardinality(&self) -> BigInt {
        let n = self.n;
        match self.spec {
            ConstraintSpec::TwoCharge => BigInt::one() << (n / 2),
            ConstraintSpec::Subblock { p, z } => {
                num_traits::pow(binomial(BigInt::from(n / p), BigInt::from(z)), p)
            }
            ConstraintSpec::OddStrict if n % 2 == 1 => BigInt::one() << (n / 2),
            ConstraintSpec::OddStrict => BigInt::one(),
            ConstraintSpec::OddRelaxed => (BigInt::one() << (n / 2 + 1)) - 1,
            ConstraintSpec::FixedWeight { i } => binomial(BigInt::from(n), BigInt::from(i)),
            ConstraintSpec::Unconstrained => BigInt::one() << n,
            ConstraintSpec::Rll { .. } | ConstraintSpec::EvenStrict => {
                self.char_sum(&BitWord::zeros(n))
            }
        }
    }

    /// Exact `F(s) = Σ_{x∈A} (-1)^{x·s}`.
    pub fn char_sum(&self, s: &BitWord) -> BigInt {
        debug_assert_eq!(s.len(), self.n);
        let n = self.n;
        match self.spec {
            ConstraintSpec::TwoCharge => {
                let basis = self.basis.as_ref().expect("two-charge basis");
                match basis.decompose(s) {
                    None => BigInt::zero(),
                    Some(a) => {
                        let mag = BigInt::one() << (n / 2);
                        let odd = a[1..].iter().filter(|&&b| b).count() % 2 == 1;
                        if odd {
                            -mag
                        } else {
                            mag
                        }
                    }
                }
            }
            ConstraintSpec::Subblock { p, z } => {
                let k = self.krawtchouk.as_ref().expect("krawtchouk table");
                let len = n / p;
                let mut acc = BigInt::one();
                for l in 0..p {
                    acc *= k.get(z, s.weight_range(l * len, len));
                    if acc.is_zero() {
                        break;
                    }
                }
                acc
            }
            ConstraintSpec::Rll { d } => self.rll_sum(s, d),
            ConstraintSpec::EvenStrict => self.even_sum(s),
            ConstraintSpec::OddStrict if n % 2 == 1 => {
                if (0..n).skip(1).step_by(2).any(|i| s.get(i)) {
                    BigInt::zero()
                } else {
                    BigInt::one() << (n / 2)
                }
            }
            ConstraintSpec::OddStrict => BigInt::one(),
            ConstraintSpec::OddRelaxed => {
                let half = BigInt::one() << (n / 2);
                if s.is_zero() {
                    (half << 1) - 1
                } else if self.member(s) {
                    half - 1
                } else {
                    -BigInt::one()
                }
            }
            ConstraintSpec::FixedWeight { i } => self
                .krawtchouk
                .as_ref()
                .expect("krawtchouk table")
                .get(i, s.weight())
                .clone(),
            ConstraintSpec::Unconstrained => {
                if s.is_zero() {
                    BigInt::one() << n
                } else {
                    BigInt::zero()
                }
            }
        }
    }

    /// Character sum of the length-`len` members over the suffix of `s` starting at `start`.
    fn base_sum(&self, s: &BitWord, start: usize) -> BigInt {
        let len = self.n - start;
        let tail = s.slice(start, len);
        let mut acc = 0i64;
        for x in &self.base[len] {
            acc += if x.dot(&tail) { -1 } else { 1 };
        }
        BigInt::from(acc)
    }

    /// Suffix recurrence `F(s_i..) = F(s_{i+1}..) + (-1)^{s_i} F(s_{i+d+1}..)`.
    fn rll_sum(&self, s: &BitWord, d: usize) -> BigInt {
        let n = self.n;
        let mut g: Vec<BigInt> = vec![BigInt::zero(); n + 1];
        for start in (0..=n).rev() {
            let len = n - start;
            g[start] = if len <= d + 1 {
                self.base_sum(s, start)
            } else if s.get(start) {
                &g[start + 1] - &g[start + d + 1]
            } else {
                &g[start + 1] + &g[start + d + 1]
            };
        }
        g.swap_remove(0)
    }

    fn even_sum(&self, s: &BitWord) -> BigInt {
        let n = self.n;
        let mut g: Vec<BigInt> = vec![BigInt::zero(); n + 1];
        for start in (0..n).rev() {
            let len = n - start;
            g[start] = if len <= 2 {
                self.base_sum(s, start)
            } else {
                let (a, b) = (&g[start + 1], &g[start + 2]);
                match (len % 2 == 0, s.get(start)) {
                    (true, false) => a + b - 1,
                    (true, true) => b - a + 1,
                    (false, false) => a + b,
                    (false, true) => b - a,
                }
            };
        }
        g.swap_remove(0)
    }

    pub fn enumerate_members(&self) -> Result<Vec<BitWord>> {
        let n = self.n;
        if n > MAX_ENUMERATION_N {
            return Err(Error::cap(
                "member enumeration length n",
                n,
                MAX_ENUMERATION_N,
            ));
        }
        Ok((0..1u64 << n)
            .map(|r| BitWord::from_index(n, reverse_low_bits(r, n)))
            .filter(|x| self.member(x))
            .collect())
    }
}

/// Lengths of the zero runs strictly between consecutive ones.
fn gaps(x: &BitWord) -> impl Iterator<Item = usize> + '_ {
    let ones: Vec<usize> = x.ones_positions().collect();
    (1..ones.len()).map(move |k| ones[k] - ones[k - 1] - 1)
}

fn is_two_charge(x: &BitWord) -> bool {
    let mut sum = 0i64;
    for i in 0..x.len() {
        sum += if x.get(i) { -1 } else { 1 };
        if !(0..=2).contains(&sum) {
            return false;
        }
    }
    true
}

fn is_rll(x: &BitWord, d: usize) -> bool {
    gaps(x).all(|g| g >= d)
}

/// All zero runs (leading, between, trailing) have the given parity.
fn runs_have_parity(x: &BitWord, odd: bool) -> bool {
    let first = match x.first_one() {
        None => return true,
        Some(f) => f,
    };
    let last = x.ones_positions().last().unwrap_or(first);
    let tail = x.len() - 1 - last;
    let want = usize::from(odd);
    first % 2 == want && tail % 2 == want && gaps(x).all(|g| g % 2 == want)
}

fn is_odd_strict(x: &BitWord) -> bool {
    runs_have_parity(x, true)
}

fn is_even_strict(x: &BitWord) -> bool {
    runs_have_parity(x, false)
}

/// RLL members of length `len`, built by placing ones left to right.
fn rll_members(len: usize, d: usize) -> Vec<BitWord> {
    fn walk(len: usize, d: usize, next: usize, cur: &mut BitWord, out: &mut Vec<BitWord>) {
        out.push(cur.clone());
        for pos in next..len {
            cur.set(pos, true);
            walk(len, d, pos + d + 1, cur, out);
            cur.set(pos, false);
        }
    }
    let mut out = Vec::new();
    walk(len, d, 0, &mut BitWord::zeros(len), &mut out);
    out
}
