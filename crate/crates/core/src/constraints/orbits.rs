use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use super::ConstraintSpec;
use crate::error::{Error, Result};
use crate::gf2::BitWord;
use crate::spectral::{krawtchouk_table, Krawtchouk};

/// Largest `n` for which two-charge orbit sums are bucketed over the whole space.
const MAX_BUCKET_N: usize = 22;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitLabel {
    /// Coordinate 1, counts of `00` and `11` pairs, and coordinate `n` when `n` is even.
    TwoCharge {
        first: bool,
        t00: usize,
        t11: usize,
        last: Option<bool>,
    },
    /// Subblock weights, sorted non-increasing.
    Subblock(Vec<usize>),
}

/// Orbits of `{0,1}^n` under a coordinate permutation group fixing the constraint set.
#[derive(Clone)]
pub struct OrbitStructure {
    spec: ConstraintSpec,
    n: usize,
    pub labels: Vec<OrbitLabel>,
    pub sizes: Vec<BigInt>,
    pub reps: Vec<BitWord>,
    index: HashMap<OrbitLabel, usize>,
    krawtchouk: Option<Arc<Krawtchouk>>,
    bucket: Arc<OnceLock<Vec<u32>>>,
}

impl std::fmt::Debug for OrbitStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "OrbitStructure({}, n={}, {} orbits)",
            self.spec,
            self.n,
            self.labels.len()
        )
    }
}

/// Pairs `(2i, 2i+1)` in 1-based coordinates, returned 0-based.
fn pairs(n: usize) -> Vec<(usize, usize)> {
    let p = if n % 2 == 1 {
        (n - 1) / 2
    } else {
        (n / 2).saturating_sub(1)
    };
    (1..=p).map(|i| (2 * i - 1, 2 * i)).collect()
}

pub fn orbit_structure(spec: ConstraintSpec, n: usize) -> Result<OrbitStructure> {
    spec.check(n)?;
    match spec {
        ConstraintSpec::TwoCharge => Ok(two_charge_orbits(n)),
        ConstraintSpec::Subblock { p, .. } => Ok(subblock_orbits(spec, n, p)),
        _ => Err(Error::Unsupported(format!(
            "no orbit structure for constraint {spec}"
        ))),
    }
}

fn two_charge_orbits(n: usize) -> OrbitStructure {
    let prs = pairs(n);
    let np = prs.len();
    let even = n % 2 == 0 && n >= 2;
    let lasts: Vec<Option<bool>> = if even {
        vec![Some(false), Some(true)]
    } else {
        vec![None]
    };
    let mut labels = Vec::new();
    let mut sizes = Vec::new();
    let mut reps = Vec::new();
    for first in [false, true] {
        for t00 in 0..=np {
            for t11 in 0..=np - t00 {
                for &last in &lasts {
                    let mixed = np - t00 - t11;
                    let size = binomial(BigInt::from(np), BigInt::from(t00))
                        * binomial(BigInt::from(np - t00), BigInt::from(t11))
                        * (BigInt::one() << mixed);
                    let mut rep = BitWord::zeros(n);
                    rep.set(0, first);
                    for (k, &(a, b)) in prs.iter().enumerate() {
                        if k >= t00 && k < t00 + t11 {
                            rep.set(a, true);
                            rep.set(b, true);
                        } else if k >= t00 + t11 {
                            rep.set(a, true);
                        }
                    }
                    if let Some(l) = last {
                        rep.set(n - 1, l);
                    }
                    labels.push(OrbitLabel::TwoCharge {
                        first,
                        t00,
                        t11,
                        last,
                    });
                    sizes.push(size);
                    reps.push(rep);
                }
            }
        }
    }
    finish(ConstraintSpec::TwoCharge, n, labels, sizes, reps, None)
}

/// Distinct orderings of a multiset.
fn arrangements(alpha: &[usize]) -> Vec<Vec<usize>> {
    fn rec(
        counts: &mut Vec<(usize, usize)>,
        cur: &mut Vec<usize>,
        len: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in 0..counts.len() {
            if counts[i].1 > 0 {
                counts[i].1 -= 1;
                cur.push(counts[i].0);
                rec(counts, cur, len, out);
                cur.pop();
                counts[i].1 += 1;
            }
        }
    }
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for &a in alpha {
        match counts.iter_mut().find(|(v, _)| *v == a) {
            Some(c) => c.1 += 1,
            None => counts.push((a, 1)),
        }
    }
    let mut out = Vec::new();
    rec(&mut counts, &mut Vec::new(), alpha.len(), &mut out);
    out
}

fn subblock_orbits(spec: ConstraintSpec, n: usize, p: usize) -> OrbitStructure {
    let len = n / p;
    fn multisets(p: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        let top = cur.last().copied().unwrap_or(max);
        for v in (0..=top).rev() {
            cur.push(v);
            multisets(p, max, cur, out);
            cur.pop();
        }
    }
    let mut alphas = Vec::new();
    multisets(p, len, &mut Vec::new(), &mut alphas);
    let mut labels = Vec::new();
    let mut sizes = Vec::new();
    let mut reps = Vec::new();
    for alpha in alphas {
        let mut size = BigInt::from(arrangements(&alpha).len());
        let mut rep = BitWord::zeros(n);
        for (l, &a) in alpha.iter().enumerate() {
            size *= binomial(BigInt::from(len), BigInt::from(a));
            for j in 0..a {
                rep.set(l * len + j, true);
            }
        }
        labels.push(OrbitLabel::Subblock(alpha));
        sizes.push(size);
        reps.push(rep);
    }
    finish(spec, n, labels, sizes, reps, Some(krawtchouk_table(len)))
}

fn finish(
    spec: ConstraintSpec,
    n: usize,
    labels: Vec<OrbitLabel>,
    sizes: Vec<BigInt>,
    reps: Vec<BitWord>,
    krawtchouk: Option<Arc<Krawtchouk>>,
) -> OrbitStructure {
    let index = labels
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, l)| (l, i))
        .collect();
    OrbitStructure {
        spec,
        n,
        labels,
        sizes,
        reps,
        index,
        krawtchouk,
        bucket: Arc::new(OnceLock::new()),
    }
}

impl OrbitStructure {
    pub fn constraint(&self) -> ConstraintSpec {
        self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label_of(&self, x: &BitWord) -> OrbitLabel {
        match self.spec {
            ConstraintSpec::TwoCharge => {
                let (mut t00, mut t11) = (0, 0);
                for (a, b) in pairs(self.n) {
                    match (x.get(a), x.get(b)) {
                        (false, false) => t00 += 1,
                        (true, true) => t11 += 1,
                        _ => {}
                    }
                }
                let last = (self.n % 2 == 0 && self.n >= 2).then(|| x.get(self.n - 1));
                OrbitLabel::TwoCharge {
                    first: x.get(0),
                    t00,
                    t11,
                    last,
                }
            }
            ConstraintSpec::Subblock { p, .. } => {
                let len = self.n / p;
                let mut w: Vec<usize> = (0..p).map(|l| x.weight_range(l * len, len)).collect();
                w.sort_unstable_by(|a, b| b.cmp(a));
                OrbitLabel::Subblock(w)
            }
            _ => unreachable!("orbit structure only exists for two-charge and subblock"),
        }
    }

    pub fn index_of(&self, x: &BitWord) -> usize {
        self.index[&self.label_of(x)]
    }

    pub fn index_of_label(&self, label: &OrbitLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Orbit index of every word, by integer index.
    fn buckets(&self) -> Result<&[u32]> {
        if self.n > MAX_BUCKET_N {
            return Err(Error::cap("orbit bucketing length n", self.n, MAX_BUCKET_N));
        }
        Ok(self.bucket.get_or_init(|| {
            (0..1u64 << self.n)
                .map(|i| self.index_of(&BitWord::from_index(self.n, i)) as u32)
                .collect()
        }))
    }

    /// `Σ_{x∈O}(-1)^{x·s}` for every orbit `O`, in label order.
    pub fn char_sums_at(&self, s: &BitWord) -> Result<Vec<BigInt>> {
        match self.spec {
            ConstraintSpec::TwoCharge => {
                let buckets = self.buckets()?;
                let mut acc = vec![0i64; self.len()];
                let sm = s.to_index();
                for (x, &b) in buckets.iter().enumerate() {
                    acc[b as usize] += if (x as u64 & sm).count_ones() % 2 == 0 {
                        1
                    } else {
                        -1
                    };
                }
                Ok(acc.into_iter().map(BigInt::from).collect())
            }
            _ => (0..self.len()).map(|o| self.orbit_char_sum(o, s)).collect(),
        }
    }

    /// `Σ_{x∈O}(-1)^{x·s}` for orbit index `orbit`.
    pub fn orbit_char_sum(&self, orbit: usize, s: &BitWord) -> Result<BigInt> {
        match (&self.labels[orbit], self.spec) {
            (OrbitLabel::Subblock(alpha), ConstraintSpec::Subblock { p, .. }) => {
                let k = self.krawtchouk.as_ref().expect("krawtchouk table");
                let len = self.n / p;
                let ws: Vec<usize> = (0..p).map(|l| s.weight_range(l * len, len)).collect();
                let mut total = BigInt::zero();
                for beta in arrangements(alpha) {
                    let mut term = BigInt::one();
                    for (b, &w) in beta.iter().zip(&ws) {
                        term *= k.get(*b, w);
                    }
                    total += term;
                }
                Ok(total)
            }
            _ => Ok(self.char_sums_at(s)?.swap_remove(orbit)),
        }
    }

    /// Coordinate permutations generating the symmetry group used for the orbits.
    pub fn generators(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let swap = |a: usize, b: usize| {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(a, b);
            p
        };
        let mut gens = Vec::new();
        match self.spec {
            ConstraintSpec::TwoCharge => {
                let prs = pairs(n);
                for &(a, b) in &prs {
                    gens.push(swap(a, b));
                }
                for i in 0..prs.len() {
                    for j in i + 1..prs.len() {
                        let mut p: Vec<usize> = (0..n).collect();
                        p.swap(prs[i].0, prs[j].0);
                        p.swap(prs[i].1, prs[j].1);
                        gens.push(p);
                    }
                }
            }
            ConstraintSpec::Subblock { p: blocks, .. } => {
                let len = n / blocks;
                for l in 0..blocks {
                    for j in 0..len.saturating_sub(1) {
                        gens.push(swap(l * len + j, l * len + j + 1));
                    }
                }
                for l in 0..blocks {
                    for m in l + 1..blocks {
                        let mut p: Vec<usize> = (0..n).collect();
                        for j in 0..len {
                            p.swap(l * len + j, m * len + j);
                        }
                        gens.push(p);
                    }
                }
            }
            _ => {}
        }
        gens
    }
}

pub fn orbit_char_sum(
    structure: &OrbitStructure,
    label: &OrbitLabel,
    s_rep: &BitWord,
) -> Result<BigInt> {
    let idx = structure
        .index_of_label(label)
        .ok_or_else(|| Error::param(format!("unknown orbit label {label:?}")))?;
    structure.orbit_char_sum(idx, s_rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_charge_orbit_counts() {
        let o = orbit_structure(ConstraintSpec::TwoCharge, 13).unwrap();
        assert!(o.len() <= 98);
        let total: BigInt = o.sizes.iter().sum();
        assert_eq!(total, BigInt::from(8192));
        for (i, r) in o.reps.iter().enumerate() {
            assert_eq!(o.index_of(r), i);
        }
    }

    #[test]
    fn even_n_two_charge_sizes() {
        for n in [2, 4, 6, 10] {
            let o = orbit_structure(ConstraintSpec::TwoCharge, n).unwrap();
            let total: BigInt = o.sizes.iter().sum();
            assert_eq!(total, BigInt::one() << n);
            let mut counts = vec![0u64; o.len()];
            for i in 0..1u64 << n {
                counts[o.index_of(&BitWord::from_index(n, i))] += 1;
            }
            for (c, s) in counts.iter().zip(&o.sizes) {
                assert_eq!(BigInt::from(*c), *s);
            }
        }
    }

    #[test]
    fn subblock_orbits() {
        let o = orbit_structure(ConstraintSpec::Subblock { p: 2, z: 2 }, 18).unwrap();
        assert_eq!(o.len(), 55);
        let o8 = orbit_structure(ConstraintSpec::Subblock { p: 2, z: 1 }, 8).unwrap();
        let idx = o8
            .index_of_label(&OrbitLabel::Subblock(vec![2, 1]))
            .unwrap();
        assert_eq!(o8.reps[idx].to_string(), "11001000");
        assert!(orbit_structure(ConstraintSpec::Rll { d: 1 }, 8).is_err());
    }

    #[test]
    fn subblock_arrangement_sum_matches_buckets() {
        let n = 8;
        let o = orbit_structure(ConstraintSpec::Subblock { p: 2, z: 2 }, n).unwrap();
        for s in &o.reps {
            let mut brute = vec![0i64; o.len()];
            for x in 0..1u64 << n {
                let xw = BitWord::from_index(n, x);
                brute[o.index_of(&xw)] += if xw.dot(s) { -1 } else { 1 };
            }
            for (k, b) in brute.iter().enumerate() {
                assert_eq!(
                    o.orbit_char_sum(k, s).unwrap(),
                    BigInt::from(*b),
                    "orbit {:?} s={s}",
                    o.labels[k]
                );
            }
        }
    }

    #[test]
    fn arrangements_are_distinct() {
        assert_eq!(arrangements(&[2, 1]).len(), 2);
        assert_eq!(arrangements(&[2, 2]).len(), 1);
        assert_eq!(arrangements(&[2, 1, 1]).len(), 3);
    }
}
