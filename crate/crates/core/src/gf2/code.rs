use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use num_integer::binomial;

use super::matrix::BitMatrix;
use super::word::BitWord;
use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_CAP: usize = 26;

static ENUMERATION_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_ENUMERATION_CAP);

/// Largest dimension (in message bits) any enumeration will walk.
pub fn enumeration_cap() -> usize {
    ENUMERATION_CAP.load(AtomicOrdering::Relaxed)
}

pub fn set_enumeration_cap(cap: usize) {
    ENUMERATION_CAP.store(cap.min(63), AtomicOrdering::Relaxed);
}

/// Where a code came from, when it was built by a named constructor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CodeFamily {
    Hamming { m: usize },
    Simplex { m: usize },
    ReedMuller { m: usize, r: usize },
    Other,
}

/// A binary linear `[n, k]` code with both a generator and a parity-check matrix.
#[derive(Clone, Debug)]
pub struct BinaryLinearCode {
    n: usize,
    k: usize,
    generator: BitMatrix,
    parity_check: BitMatrix,
    family: CodeFamily,
}

impl BinaryLinearCode {
    /// `rows` must be linearly independent.
    pub fn from_generator(n: usize, rows: Vec<BitWord>) -> Result<Self> {
        check_lengths(n, &rows)?;
        let g = BitMatrix::from_rows(n, rows);
        let k = g.num_rows();
        if g.rank() != k {
            return Err(Error::Structural(format!(
                "generator rows are linearly dependent (rank {} < {k})",
                g.rank()
            )));
        }
        let h = BitMatrix::from_rows(n, g.null_space());
        Ok(Self::assemble(n, g, h, CodeFamily::Other))
    }

    /// Code spanned by `rows`, dependent rows allowed.
    pub fn from_span(n: usize, rows: Vec<BitWord>) -> Result<Self> {
        check_lengths(n, &rows)?;
        let basis = BitMatrix::from_rows(n, rows).echelon().rows;
        Self::from_generator(n, basis)
    }

    /// `rows` must be linearly independent parity checks.
    pub fn from_parity_check(n: usize, rows: Vec<BitWord>) -> Result<Self> {
        Ok(Self::from_generator(n, rows)?.dual())
    }

    pub fn whole_space(n: usize) -> Self {
        let g = BitMatrix::identity(n);
        Self::assemble(n, g, BitMatrix::new(n), CodeFamily::Other)
    }

    pub fn zero_code(n: usize) -> Self {
        Self::assemble(
            n,
            BitMatrix::new(n),
            BitMatrix::identity(n),
            CodeFamily::Other,
        )
    }

    fn assemble(n: usize, g: BitMatrix, h: BitMatrix, family: CodeFamily) -> Self {
        let k = g.num_rows();
        debug_assert_eq!(h.num_rows(), n - k);
        debug_assert!(g.mul_transpose(&h).is_zero());
        BinaryLinearCode {
            n,
            k,
            generator: g,
            parity_check: h,
            family,
        }
    }

    fn with_family(mut self, family: CodeFamily) -> Self {
        self.family = family;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.parity_check
    }

    pub fn family(&self) -> CodeFamily {
        self.family
    }

    pub fn dual(&self) -> Self {
        let family = match self.family {
            CodeFamily::Hamming { m } => CodeFamily::Simplex { m },
            CodeFamily::Simplex { m } => CodeFamily::Hamming { m },
            CodeFamily::ReedMuller { m, r } if r < m => CodeFamily::ReedMuller { m, r: m - r - 1 },
            _ => CodeFamily::Other,
        };
        BinaryLinearCode {
            n: self.n,
            k: self.n - self.k,
            generator: self.parity_check.clone(),
            parity_check: self.generator.clone(),
            family,
        }
    }

    pub fn contains(&self, x: &BitWord) -> bool {
        self.parity_check.mul_vec(x).is_zero()
    }

    /// Syndrome `H·xᵀ`.
    pub fn syndrome(&self, x: &BitWord) -> BitWord {
        self.parity_check.mul_vec(x)
    }

    pub fn same_row_space(&self, other: &BinaryLinearCode) -> bool {
        self.n == other.n
            && self.k == other.k
            && other.generator.rows().iter().all(|r| self.contains(r))
    }

    /// Codeword for message bits `msg` (bit `i` selects generator row `i`).
    pub fn encode(&self, msg: u64) -> BitWord {
        let mut w = BitWord::zeros(self.n);
        for (i, row) in self.generator.rows().iter().enumerate() {
            if (msg >> i) & 1 == 1 {
                w.xor_assign(row);
            }
        }
        w
    }

    /// All `2^k` codewords in Gray-code order over the message bits, starting at `0^n`.
    pub fn codewords(&self) -> Result<Codewords> {
        let cap = enumeration_cap();
        if self.k > cap {
            return Err(Error::cap("code dimension to enumerate", self.k, cap));
        }
        Ok(Codewords::new(self.n, self.generator.rows().to_vec()))
    }
}

fn check_lengths(n: usize, rows: &[BitWord]) -> Result<()> {
    match rows.iter().position(|r| r.len() != n) {
        Some(i) => Err(Error::Structural(format!(
            "row {} has length {}, expected {n}",
            i + 1,
            rows[i].len()
        ))),
        None => Ok(()),
    }
}

/// Gray-code walk over the span of a list of independent words.
pub struct Codewords {
    basis: Vec<BitWord>,
    current: BitWord,
    step: u64,
    total: u64,
}

impl Codewords {
    pub(crate) fn new(n: usize, basis: Vec<BitWord>) -> Self {
        let total = 1u64 << basis.len();
        Codewords {
            basis,
            current: BitWord::zeros(n),
            step: 0,
            total,
        }
    }
}

impl Iterator for Codewords {
    type Item = BitWord;

    fn next(&mut self) -> Option<BitWord> {
        if self.step >= self.total {
            return None;
        }
        if self.step > 0 {
            let j = self.step.trailing_zeros() as usize;
            self.current.xor_assign(&self.basis[j]);
        }
        self.step += 1;
        Some(self.current.clone())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.step) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Codewords {}

pub fn gf2_rank(m: &BitMatrix) -> usize {
    m.rank()
}

pub fn dual_code(c: &BinaryLinearCode) -> BinaryLinearCode {
    c.dual()
}

pub fn enumerate_codewords(c: &BinaryLinearCode) -> Result<Codewords> {
    c.codewords()
}

/// Parity-check matrix of the Hamming code: column `i` (1-based) is the
/// `m`-bit binary form of `i`, most significant bit in row 0.
fn hamming_parity_rows(m: usize) -> Vec<BitWord> {
    let n = (1usize << m) - 1;
    (0..m)
        .map(|r| {
            let mut row = BitWord::zeros(n);
            for i in 1..=n {
                if (i >> (m - 1 - r)) & 1 == 1 {
                    row.set(i - 1, true);
                }
            }
            row
        })
        .collect()
}

fn check_m(m: usize, what: &str) -> Result<()> {
    if m < 2 {
        return Err(Error::param(format!("{what} needs m >= 2, got {m}")));
    }
    if m > 12 {
        return Err(Error::param(format!(
            "{what}: m = {m} is larger than supported (12)"
        )));
    }
    Ok(())
}

pub fn hamming_code(m: usize) -> Result<BinaryLinearCode> {
    check_m(m, "hamming code")?;
    let n = (1usize << m) - 1;
    let c = BinaryLinearCode::from_parity_check(n, hamming_parity_rows(m))?;
    Ok(c.with_family(CodeFamily::Hamming { m }))
}

pub fn simplex_code(m: usize) -> Result<BinaryLinearCode> {
    check_m(m, "simplex code")?;
    let n = (1usize << m) - 1;
    let c = BinaryLinearCode::from_generator(n, hamming_parity_rows(m))?;
    Ok(c.with_family(CodeFamily::Simplex { m }))
}

/// Variable subsets of `{0..m}` of size at most `r`, by size and then lexicographically.
fn monomials(m: usize, r: usize) -> Vec<Vec<usize>> {
    fn combos(
        m: usize,
        size: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for v in start..m {
            cur.push(v);
            combos(m, size, v + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for size in 0..=r.min(m) {
        combos(m, size, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// `RM(m, r)`. Coordinate `i` (0-based) evaluates at `(x_1..x_m)` = binary form
/// of `i` with `x_1` the most significant bit.
pub fn reed_muller(m: usize, r: i64) -> Result<BinaryLinearCode> {
    if r < 0 || r as usize > m {
        return Err(Error::param(format!(
            "reed-muller needs 0 <= r <= m, got m={m} r={r}"
        )));
    }
    if m > 12 {
        return Err(Error::param(format!(
            "reed-muller: m = {m} is larger than supported (12)"
        )));
    }
    let r = r as usize;
    let n = 1usize << m;
    let rows = monomials(m, r)
        .into_iter()
        .map(|mono| {
            let mut row = BitWord::zeros(n);
            for i in 0..n {
                if mono.iter().all(|&v| (i >> (m - 1 - v)) & 1 == 1) {
                    row.set(i, true);
                }
            }
            row
        })
        .collect::<Vec<_>>();
    debug_assert_eq!(rows.len(), (0..=r).map(|i| binomial(m, i)).sum::<usize>());
    let c = BinaryLinearCode::from_generator(n, rows)?;
    Ok(c.with_family(CodeFamily::ReedMuller { m, r }))
}

/// `RM(m, r)` with `r < 0` read as the zero code and `r > m` as the whole space.
pub(crate) fn reed_muller_clamped(m: usize, r: i64) -> Result<BinaryLinearCode> {
    if r < 0 {
        Ok(BinaryLinearCode::zero_code(1 << m))
    } else {
        reed_muller(m, r.min(m as i64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weight_hist(c: &BinaryLinearCode) -> Vec<usize> {
        let mut h = vec![0; c.n() + 1];
        for w in c.codewords().unwrap() {
            h[w.weight()] += 1;
        }
        h
    }

    #[test]
    fn hamming_parameters_and_columns() {
        let h3 = hamming_code(3).unwrap();
        assert_eq!((h3.n(), h3.k()), (7, 4));
        let cols: Vec<String> = (0..7)
            .map(|c| {
                (0..3)
                    .map(|r| {
                        if h3.parity_check().get(r, c) {
                            '1'
                        } else {
                            '0'
                        }
                    })
                    .collect()
            })
            .collect();
        assert_eq!(cols, ["001", "010", "011", "100", "101", "110", "111"]);
        let h4 = hamming_code(4).unwrap();
        assert_eq!((h4.n(), h4.k()), (15, 11));
        let h2 = hamming_code(2).unwrap();
        assert_eq!((h2.n(), h2.k()), (3, 1));
        assert!(hamming_code(1).is_err());
    }

    #[test]
    fn hamming_weight_histogram() {
        assert_eq!(
            weight_hist(&hamming_code(3).unwrap()),
            vec![1, 0, 0, 7, 7, 0, 0, 1]
        );
    }

    #[test]
    fn simplex_codewords() {
        let s2 = simplex_code(2).unwrap();
        let mut words: Vec<String> = s2.codewords().unwrap().map(|w| w.to_string()).collect();
        words.sort();
        assert_eq!(words, ["000", "011", "101", "110"]);
        let s3 = simplex_code(3).unwrap();
        assert_eq!(weight_hist(&s3), vec![1, 0, 0, 0, 7, 0, 0, 0]);
        assert!(s3.dual().same_row_space(&hamming_code(3).unwrap()));
        assert!(hamming_code(3).unwrap().dual().same_row_space(&s3));
    }

    #[test]
    fn reed_muller_parameters() {
        let rm = reed_muller(4, 2).unwrap();
        assert_eq!((rm.n(), rm.k()), (16, 11));
        let rep = reed_muller(3, 0).unwrap();
        let words: Vec<String> = rep.codewords().unwrap().map(|w| w.to_string()).collect();
        assert_eq!(words, ["00000000", "11111111"]);
        assert_eq!(
            weight_hist(&reed_muller(3, 1).unwrap())[..],
            [1, 0, 0, 0, 14, 0, 0, 0, 1]
        );
        assert!(reed_muller(3, 4).is_err());
        assert!(reed_muller(3, -1).is_err());
    }

    #[test]
    fn reed_muller_first_order_rows_follow_coordinate_rule() {
        let rm = reed_muller(3, 1).unwrap();
        let rows: Vec<String> = rm
            .generator()
            .rows()
            .iter()
            .map(|r| r.to_string())
            .collect();
        assert_eq!(rows, ["11111111", "00001111", "00110011", "01010101"]);
    }

    #[test]
    fn reed_muller_duality() {
        for m in 1..=5 {
            for r in 0..m {
                let c = reed_muller(m, r as i64).unwrap();
                let d = reed_muller(m, (m - r - 1) as i64).unwrap();
                assert!(c.dual().same_row_space(&d), "m={m} r={r}");
            }
        }
    }

    #[test]
    fn trivial_codes() {
        let w = BinaryLinearCode::whole_space(5);
        assert_eq!(w.dual().k(), 0);
        let z = BinaryLinearCode::zero_code(5);
        let words: Vec<_> = z.codewords().unwrap().collect();
        assert_eq!(words, vec![BitWord::zeros(5)]);
    }

    #[test]
    fn enumeration_cap_refuses() {
        let c = BinaryLinearCode::whole_space(70);
        assert!(matches!(c.codewords(), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn dependent_generator_rejected() {
        let rows = vec![
            "110".parse().unwrap(),
            "011".parse().unwrap(),
            "101".parse().unwrap(),
        ];
        assert!(BinaryLinearCode::from_generator(3, rows.clone()).is_err());
        assert_eq!(BinaryLinearCode::from_span(3, rows).unwrap().k(), 2);
    }
}
