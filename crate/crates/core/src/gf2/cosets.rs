use super::code::{enumeration_cap, BinaryLinearCode, Codewords};
use super::matrix::BitMatrix;
use super::word::BitWord;
use crate::error::{Error, Result};

/// Cosets of `sub_code` inside `super_code`, one canonical representative each.
#[derive(Clone, Debug)]
pub struct CosetDecomposition {
    pub super_code: BinaryLinearCode,
    pub sub_code: BinaryLinearCode,
    /// Lexicographically least member of each coset, sorted; `reps[0]` is `0^n`.
    pub reps: Vec<BitWord>,
}

pub fn coset_decompose(
    super_code: &BinaryLinearCode,
    sub_code: &BinaryLinearCode,
) -> Result<CosetDecomposition> {
    let n = super_code.n();
    if sub_code.n() != n {
        return Err(Error::Structural(format!(
            "sub-code length {} differs from super-code length {n}",
            sub_code.n()
        )));
    }
    if let Some(row) = sub_code
        .generator()
        .rows()
        .iter()
        .find(|r| !super_code.contains(r))
    {
        return Err(Error::Structural(format!(
            "sub-code word {row} is not in the super-code"
        )));
    }
    let sub_ech = sub_code.generator().echelon();
    let reduced: Vec<BitWord> = super_code
        .generator()
        .rows()
        .iter()
        .map(|r| sub_ech.reduce(r))
        .collect();
    let complement = BitMatrix::from_rows(n, reduced).echelon().rows;
    let extra = complement.len();
    debug_assert_eq!(extra, super_code.k() - sub_code.k());
    let cap = enumeration_cap();
    if extra > cap {
        return Err(Error::cap("coset count exponent", extra, cap));
    }
    // Reduction is linear, so spanning the reduced complement yields reduced reps.
    let mut reps: Vec<BitWord> = Codewords::new(n, complement).collect();
    reps.sort();
    Ok(CosetDecomposition {
        super_code: super_code.clone(),
        sub_code: sub_code.clone(),
        reps,
    })
}

impl CosetDecomposition {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Index of the coset containing `x` (which must lie in the super-code).
    pub fn coset_of(&self, x: &BitWord) -> Option<usize> {
        let rep = self.sub_code.generator().echelon().reduce(x);
        self.reps.binary_search(&rep).ok()
    }
}

/// Weight enumerator of `rep ⊕ sub_code`, indexed `0..=n`.
pub fn coset_weight_enumerator(rep: &BitWord, sub_code: &BinaryLinearCode) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; sub_code.n() + 1];
    for w in sub_code.codewords()? {
        counts[w.xor(rep).weight()] += 1;
    }
    Ok(counts)
}
