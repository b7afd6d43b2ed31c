//! Brute-force oracles. Each one reads the word as a plain `0`/`1` string and
//! applies the set definition directly, sharing no code with the library.
#![allow(dead_code)]

use concount::{BigInt, BitWord, ConstraintSpec};

pub fn bits(x: &BitWord) -> Vec<u8> {
    x.to_string().bytes().map(|b| b - b'0').collect()
}

/// Lengths of the maximal zero runs, leading and trailing runs included
/// (possibly of length zero), so there are `weight + 1` of them.
fn zero_runs(b: &[u8]) -> Vec<usize> {
    let mut runs = vec![0];
    for &c in b {
        if c == 1 {
            runs.push(0);
        } else {
            *runs.last_mut().unwrap() += 1;
        }
    }
    runs
}

pub fn member(spec: ConstraintSpec, x: &BitWord) -> bool {
    let b = bits(x);
    let n = b.len();
    match spec {
        ConstraintSpec::TwoCharge => {
            let mut s = 0i32;
            b.iter().all(|&c| {
                s += if c == 0 { 1 } else { -1 };
                (0..=2).contains(&s)
            })
        }
        ConstraintSpec::Subblock { p, z } => {
            let m = n / p;
            b.chunks(m)
                .all(|c| c.iter().filter(|&&v| v == 1).count() == z)
        }
        ConstraintSpec::Rll { d } => {
            let ones: Vec<usize> = (0..n).filter(|&i| b[i] == 1).collect();
            ones.windows(2).all(|w| w[1] - w[0] > d)
        }
        ConstraintSpec::OddStrict => {
            b.iter().all(|&c| c == 0) || zero_runs(&b).iter().all(|r| r % 2 == 1)
        }
        ConstraintSpec::OddRelaxed => {
            let r = zero_runs(&b);
            r.len() <= 2 || r[1..r.len() - 1].iter().all(|r| r % 2 == 1)
        }
        ConstraintSpec::EvenStrict => {
            b.iter().all(|&c| c == 0) || zero_runs(&b).iter().all(|r| r % 2 == 0)
        }
        ConstraintSpec::FixedWeight { i } => b.iter().filter(|&&c| c == 1).count() == i,
        ConstraintSpec::Unconstrained => true,
    }
}

pub fn all_words(n: usize) -> impl Iterator<Item = BitWord> {
    (0..1u64 << n).map(move |i| BitWord::from_index(n, i))
}

pub fn members(spec: ConstraintSpec, n: usize) -> Vec<BitWord> {
    all_words(n).filter(|x| member(spec, x)).collect()
}

pub fn char_sum(members: &[BitWord], s: &BitWord) -> BigInt {
    let v: i64 = members.iter().map(|x| if x.dot(s) { -1 } else { 1 }).sum();
    BigInt::from(v)
}

/// Constraints that admit blocklength `n`, with small parameters.
pub fn specs_for(n: usize) -> Vec<ConstraintSpec> {
    let mut out = vec![
        ConstraintSpec::TwoCharge,
        ConstraintSpec::Rll { d: 1 },
        ConstraintSpec::Rll { d: 2 },
        ConstraintSpec::OddStrict,
        ConstraintSpec::EvenStrict,
        ConstraintSpec::FixedWeight { i: n / 2 },
        ConstraintSpec::Unconstrained,
    ];
    if n % 2 == 0 {
        out.push(ConstraintSpec::OddRelaxed);
    }
    for p in [2, 3] {
        if n % p == 0 {
            for z in 0..=n / p {
                out.push(ConstraintSpec::Subblock { p, z });
            }
        }
    }
    out
}

/// Largest code inside `words` with minimum distance at least `d`, by
/// branch and bound over candidate lists.
pub fn max_code(words: &[BitWord], d: usize) -> usize {
    fn go(cands: &[usize], words: &[BitWord], d: usize, size: usize, best: &mut usize) {
        if size + cands.len() <= *best {
            return;
        }
        if cands.is_empty() {
            *best = size;
            return;
        }
        for (i, &c) in cands.iter().enumerate() {
            if size + cands.len() - i <= *best {
                return;
            }
            let rest: Vec<usize> = cands[i + 1..]
                .iter()
                .copied()
                .filter(|&o| words[c].xor(&words[o]).weight() >= d)
                .collect();
            go(&rest, words, d, size + 1, best);
        }
    }
    let all: Vec<usize> = (0..words.len()).collect();
    let mut best = 0;
    go(&all, words, d, 0, &mut best);
    best
}
