//! Counting constrained codewords in linear codes, and weight distributions.

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Signed, Zero};

use crate::constraints::{ConstraintSpec, TwoChargeBasis};
use crate::error::{Error, Result};
use crate::gf2::{
    coset_decompose, coset_weight_enumerator, enumeration_cap, reed_muller, reed_muller_clamped,
    BinaryLinearCode, BitMatrix, BitWord, CodeFamily,
};
use crate::spectral::{krawtchouk_table, weight_class_sums};

/// Largest code dimension [`count_brute`] will walk.
pub const MAX_BRUTE_K: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CountMethod {
    /// Pick the smaller of `k` and `n-k`.
    Auto,
    /// `Σ_{s∈C⊥} F_A(s) / 2^{n-k}`.
    DualSum,
    /// Walk `C` and test membership.
    Direct,
    /// Encode every message independently and test membership.
    Brute,
}

impl CountMethod {
    pub fn name(&self) -> &'static str {
        match self {
            CountMethod::Auto => "auto",
            CountMethod::DualSum => "dual_sum",
            CountMethod::Direct => "direct_membership",
            CountMethod::Brute => "brute",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountResult {
    pub value: BigInt,
    /// The method actually run (never `Auto`).
    pub method: CountMethod,
    /// Dimension of the code whose words were visited: `n-k` for the dual sum, `k` otherwise.
    pub dual_dimension_used: usize,
}

/// Number of codewords of `code` lying in the constraint set.
pub fn count_in_code(
    code: &BinaryLinearCode,
    spec: ConstraintSpec,
    method: CountMethod,
) -> Result<CountResult> {
    let n = code.n();
    let k = code.k();
    let cap = enumeration_cap();
    let method = match method {
        CountMethod::Auto => {
            let (first, second) = if n - k < k {
                (CountMethod::DualSum, CountMethod::Direct)
            } else {
                (CountMethod::Direct, CountMethod::DualSum)
            };
            let dim = |m| if m == CountMethod::DualSum { n - k } else { k };
            if dim(first) <= cap {
                first
            } else if dim(second) <= cap {
                second
            } else {
                return Err(Error::cap("smaller side dimension", k.min(n - k), cap));
            }
        }
        m => m,
    };
    let c = spec.at(n)?;
    match method {
        CountMethod::DualSum => {
            let dual = code.dual();
            let mut total = BigInt::zero();
            for s in dual.codewords()? {
                total += c.char_sum(&s);
            }
            let (q, r) = total.div_rem(&(BigInt::one() << (n - k)));
            if !r.is_zero() {
                return Err(Error::Internal(format!(
                    "dual character sum {total} is not divisible by 2^{}",
                    n - k
                )));
            }
            Ok(CountResult {
                value: q,
                method,
                dual_dimension_used: n - k,
            })
        }
        CountMethod::Direct => {
            let mut total = 0u64;
            for x in code.codewords()? {
                total += u64::from(c.member(&x));
            }
            Ok(CountResult {
                value: BigInt::from(total),
                method,
                dual_dimension_used: k,
            })
        }
        CountMethod::Brute => Ok(CountResult {
            value: count_brute(code, spec)?,
            method,
            dual_dimension_used: k,
        }),
        CountMethod::Auto => unreachable!(),
    }
}

/// Oracle count: every message encoded from scratch, every word tested.
pub fn count_brute(code: &BinaryLinearCode, spec: ConstraintSpec) -> Result<BigInt> {
    if code.k() > MAX_BRUTE_K {
        return Err(Error::cap(
            "brute-force code dimension",
            code.k(),
            MAX_BRUTE_K,
        ));
    }
    let c = spec.at(code.n())?;
    let hits = (0..1u64 << code.k())
        .filter(|&m| c.member(&code.encode(m)))
        .count();
    Ok(BigInt::from(hits))
}

/// Counts indexed by weight `0..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    pub n: usize,
    pub counts: Vec<BigInt>,
}

impl WeightDistribution {
    pub fn total(&self) -> BigInt {
        self.counts.iter().sum()
    }

    pub fn from_counts<I: IntoIterator<Item = i64>>(counts: I) -> Self {
        let counts: Vec<BigInt> = counts.into_iter().map(BigInt::from).collect();
        WeightDistribution {
            n: counts.len() - 1,
            counts,
        }
    }

    /// Histogram of the words of `code`.
    pub fn of_code(code: &BinaryLinearCode) -> Result<Self> {
        let mut h = vec![0i64; code.n() + 1];
        for w in code.codewords()? {
            h[w.weight()] += 1;
        }
        Ok(Self::from_counts(h))
    }
}

/// `Σ_j K_i(j)·values[j] / divisor` for each `i`, with exact division enforced.
fn krawtchouk_combine(
    n: usize,
    values: &[BigInt],
    divisor: &BigInt,
    what: &str,
) -> Result<Vec<BigInt>> {
    let kt = krawtchouk_table(n);
    (0..=n)
        .map(|i| {
            let mut acc = BigInt::zero();
            for (j, v) in values.iter().enumerate() {
                if !v.is_zero() {
                    acc += kt.get(i, j) * v;
                }
            }
            let (q, r) = acc.div_rem(divisor);
            if r.is_zero() {
                Ok(q)
            } else {
                Err(Error::Internal(format!(
                    "{what}: entry {i} not divisible by {divisor}"
                )))
            }
        })
        .collect()
}

/// Number of members of each weight, from the character sums of the set.
pub fn weight_distribution(spec: ConstraintSpec, n: usize) -> Result<WeightDistribution> {
    const CAP: usize = 22;
    if n > CAP {
        return Err(Error::cap("weight distribution length n", n, CAP));
    }
    let c = spec.at(n)?;
    let w = weight_class_sums(n, |s| Ok(c.char_sum(s)))?;
    let counts = krawtchouk_combine(n, &w, &(BigInt::one() << n), "weight distribution")?;
    Ok(WeightDistribution { n, counts })
}

/// Weight distribution of the constrained codewords of `code`.
///
/// Words sharing a coset of `C⊥` share the coset sum `T(s) = Σ_{z∈s+C⊥} F(z)`;
/// cosets are labelled by `G·sᵀ`.
pub fn constrained_weight_distribution(
    code: &BinaryLinearCode,
    spec: ConstraintSpec,
) -> Result<WeightDistribution> {
    let n = code.n();
    let k = code.k();
    if n > 18 {
        return Err(Error::cap(
            "constrained weight distribution length n",
            n,
            18,
        ));
    }
    if n - k > 14 {
        return Err(Error::cap(
            "constrained weight distribution co-dimension n-k",
            n - k,
            14,
        ));
    }
    let c = spec.at(n)?;
    let masks: Vec<u64> = code
        .generator()
        .rows()
        .iter()
        .map(BitWord::to_index)
        .collect();
    let label = |x: u64| -> usize {
        masks.iter().enumerate().fold(0usize, |acc, (i, g)| {
            acc | ((((x & g).count_ones() & 1) as usize) << i)
        })
    };
    let mut coset_sums = vec![BigInt::zero(); 1usize << k];
    for z in 0..1u64 << n {
        let f = c.char_sum(&BitWord::from_index(n, z));
        if !f.is_zero() {
            coset_sums[label(z)] += f;
        }
    }
    let mut by_weight = vec![BigInt::zero(); n + 1];
    for s in 0..1u64 << n {
        let t = &coset_sums[label(s)];
        if !t.is_zero() {
            by_weight[s.count_ones() as usize] += t;
        }
    }
    let divisor = BigInt::one() << (2 * n - k);
    let counts = krawtchouk_combine(n, &by_weight, &divisor, "constrained weight distribution")?;
    Ok(WeightDistribution { n, counts })
}

/// Distribution of `C⊥` from that of `C`: `a_i(C⊥) = Σ_j K_i(j)·a_j(C) / |C|`.
pub fn macwilliams(weights: &WeightDistribution, code_size: &BigInt) -> Result<WeightDistribution> {
    if !code_size.is_positive() {
        return Err(Error::param("code size must be positive"));
    }
    let counts = krawtchouk_combine(
        weights.n,
        &weights.counts,
        code_size,
        "macwilliams transform",
    )
    .map_err(|_| {
        Error::param("input is not the weight distribution of a linear code of the given size")
    })?;
    if counts.iter().any(Signed::is_negative) {
        return Err(Error::param(
            "macwilliams transform produced a negative count",
        ));
    }
    Ok(WeightDistribution {
        n: weights.n,
        counts,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoChargeStructure {
    /// No vector of `C⊥ ∩ span(B)` has a negative coefficient.
    pub criterion_c_holds: bool,
    /// `dim(C⊥ ∩ span(B))`.
    pub intersection_dim: usize,
    /// Dimension of the subgroup of `C⊥ ∩ span(B)` with positive coefficient.
    pub t: usize,
    pub predicted_count: BigInt,
}

/// Structural prediction of the two-charge count from `C⊥ ∩ span(B)`.
pub fn two_charge_structure(code: &BinaryLinearCode) -> Result<TwoChargeStructure> {
    let n = code.n();
    let k = code.k();
    let basis = TwoChargeBasis::new(n);
    let b = BitMatrix::from_rows(n, basis.vectors().to_vec());
    // a ∈ ker(G·Bᵀ) exactly when Σ a_i b_i is orthogonal to every codeword.
    let kernel = code.generator().mul_transpose(&b).null_space();
    let dim = kernel.len();
    let signed = |a: &BitWord| a.ones_positions().filter(|&i| i >= 1).count() % 2 == 1;
    let holds = !kernel.iter().any(signed);
    let t = if holds { dim } else { dim - 1 };
    let predicted_count = if holds {
        let exp = (k + t + n / 2) as i64 - n as i64;
        if exp < 0 {
            return Err(Error::Internal(format!(
                "two-charge prediction has negative exponent {exp}"
            )));
        }
        BigInt::one() << exp as usize
    } else {
        BigInt::zero()
    };
    Ok(TwoChargeStructure {
        criterion_c_holds: holds,
        intersection_dim: dim,
        t,
        predicted_count,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddCount {
    pub constraint: ConstraintSpec,
    pub count: CountResult,
    /// Closed-form value for Hamming and Reed–Muller inputs.
    pub predicted: Option<BigInt>,
}

/// Counts words of the strict odd constraint (odd `n`) or the relaxed one (even `n`).
pub fn count_odd_in_code(code: &BinaryLinearCode) -> Result<OddCount> {
    let n = code.n();
    let constraint = if n % 2 == 1 {
        ConstraintSpec::OddStrict
    } else {
        ConstraintSpec::OddRelaxed
    };
    let count = count_in_code(code, constraint, CountMethod::Auto)?;
    let predicted = match code.family() {
        // C⊥ meets the odd-supported words in {0, 1010…01}, hence the extra factor 2.
        CodeFamily::Hamming { m } => Some(BigInt::one() << ((((1usize << m) - 1) / 2) + 1 - m)),
        CodeFamily::ReedMuller { m, r } if m >= 1 => {
            let dim: usize = (0..r).map(|i| binomial(m - 1, i)).sum();
            Some((BigInt::one() << (dim + 1)) - 1)
        }
        _ => None,
    };
    Ok(OddCount {
        constraint,
        count,
        predicted,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlotkinCounts {
    pub count_primal: BigInt,
    pub count_dual: BigInt,
}

/// `N(RM(m,r); C_z^2)` two ways through the `(u | u+v)` split.
pub fn rm_subblock_count_plotkin(m: usize, r: usize, z: usize) -> Result<PlotkinCounts> {
    if !(1..=6).contains(&m) {
        return Err(Error::param(format!(
            "plotkin counting needs 1 <= m <= 6, got {m}"
        )));
    }
    if r > m {
        return Err(Error::param(format!("need r <= m, got m={m} r={r}")));
    }
    let half = 1usize << (m - 1);
    if z > half {
        return Err(Error::param(format!(
            "z={z} exceeds the half length {half}"
        )));
    }
    let (mi, ri) = ((m - 1) as i64, r as i64);

    let sup = reed_muller_clamped(m - 1, ri)?;
    let sub = reed_muller_clamped(m - 1, ri - 1)?;
    let dec = coset_decompose(&sup, &sub)?;
    let mut primal = BigInt::zero();
    for rep in &dec.reps {
        let a = coset_weight_enumerator(rep, &sub)?[z];
        primal += BigInt::from(a) * BigInt::from(a);
    }

    let sup = reed_muller_clamped(m - 1, mi - ri)?;
    let sub = reed_muller_clamped(m - 1, mi - ri - 1)?;
    let dec = coset_decompose(&sup, &sub)?;
    let kt = krawtchouk_table(half);
    let mut dual = BigInt::zero();
    for rep in &dec.reps {
        let inner: BigInt = coset_weight_enumerator(rep, &sub)?
            .iter()
            .enumerate()
            .map(|(j, &a)| BigInt::from(a) * kt.get(z, j))
            .sum();
        dual += &inner * &inner;
    }
    let k = reed_muller(m, r as i64)?.k();
    let (q, rem) = dual.div_rem(&(BigInt::one() << (2 * half - k)));
    if !rem.is_zero() {
        return Err(Error::Internal(
            "dual coset sum not divisible by |C⊥|".into(),
        ));
    }
    Ok(PlotkinCounts {
        count_primal: primal,
        count_dual: q,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::hamming_code;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn small_counts() {
        let rm42 = reed_muller(4, 2).unwrap();
        let r = count_in_code(&rm42, ConstraintSpec::TwoCharge, CountMethod::Auto).unwrap();
        assert_eq!(r.value, big(16));
        assert_eq!(r.method, CountMethod::DualSum);
        let h3 = hamming_code(3).unwrap();
        assert_eq!(
            count_in_code(&h3, ConstraintSpec::Rll { d: 1 }, CountMethod::Auto)
                .unwrap()
                .value,
            big(4)
        );
    }

    #[test]
    fn zero_code_counts_zero_word() {
        let z = BinaryLinearCode::zero_code(6);
        for spec in [
            ConstraintSpec::EvenStrict,
            ConstraintSpec::Rll { d: 2 },
            ConstraintSpec::OddStrict,
        ] {
            assert_eq!(count_brute(&z, spec).unwrap(), big(1));
        }
    }

    #[test]
    fn rm31_subblock() {
        let rm = reed_muller(3, 1).unwrap();
        assert_eq!(
            count_brute(&rm, ConstraintSpec::Subblock { p: 2, z: 2 }).unwrap(),
            big(12)
        );
        let p = rm_subblock_count_plotkin(3, 1, 2).unwrap();
        assert_eq!((p.count_primal, p.count_dual), (big(12), big(12)));
    }

    #[test]
    fn weight_distributions() {
        let d = weight_distribution(ConstraintSpec::FixedWeight { i: 3 }, 7).unwrap();
        assert_eq!(d.counts[3], big(35));
        assert_eq!(d.total(), big(35));
        assert_eq!(
            weight_distribution(ConstraintSpec::TwoCharge, 5)
                .unwrap()
                .total(),
            big(4)
        );
    }

    #[test]
    fn macwilliams_hamming_to_simplex() {
        let h = WeightDistribution::from_counts([1, 0, 0, 7, 7, 0, 0, 1]);
        let s = macwilliams(&h, &big(16)).unwrap();
        assert_eq!(s, WeightDistribution::from_counts([1, 0, 0, 0, 7, 0, 0, 0]));
        assert_eq!(macwilliams(&s, &big(8)).unwrap(), h);
        assert!(macwilliams(&WeightDistribution::from_counts([1, 2, 0]), &big(2)).is_err());
    }

    #[test]
    fn two_charge_prediction_for_hamming3() {
        let s = two_charge_structure(&hamming_code(3).unwrap()).unwrap();
        assert!(s.criterion_c_holds);
        assert_eq!(s.t, 2);
        assert_eq!(s.predicted_count, big(4));
    }

    #[test]
    fn criterion_fails_when_dual_holds_b1() {
        // C⊥ = span{b_1} at n = 5, so C = {x : x_2 = x_3}.
        let b1: BitWord = "01100".parse().unwrap();
        let code = BinaryLinearCode::from_parity_check(5, vec![b1]).unwrap();
        let s = two_charge_structure(&code).unwrap();
        assert!(!s.criterion_c_holds);
        assert_eq!(s.predicted_count, big(0));
        assert_eq!(
            count_brute(&code, ConstraintSpec::TwoCharge).unwrap(),
            big(0)
        );
    }

    #[test]
    fn odd_counts() {
        let r = count_odd_in_code(&hamming_code(3).unwrap()).unwrap();
        assert_eq!(r.count.value, big(2));
        assert_eq!(r.predicted, Some(big(2)));
        for m in 2..=5 {
            let r = count_odd_in_code(&hamming_code(m).unwrap()).unwrap();
            assert_eq!(Some(r.count.value), r.predicted, "m={m}");
        }
        for m in 1..=5 {
            for rr in 0..=m {
                let r = count_odd_in_code(&reed_muller(m, rr as i64).unwrap()).unwrap();
                assert_eq!(Some(r.count.value), r.predicted, "m={m} r={rr}");
            }
        }
        let r = count_odd_in_code(&reed_muller(3, 1).unwrap()).unwrap();
        assert_eq!(r.count.value, big(3));
        assert_eq!(r.predicted, Some(big(3)));
        let r = count_odd_in_code(&reed_muller(4, 2).unwrap()).unwrap();
        assert_eq!(r.predicted, Some(big(31)));
        assert_eq!(r.count.value, big(31));
    }
}
