//! Property suites run by `verify`. Each suite stops at its first counterexample.

use std::time::Instant;

use concount::gf2::{hamming_code, reed_muller, simplex_code};
use concount::lp::{del_constrained, del_constrained_sym};
use concount::spectral::krawtchouk_table;
use concount::{
    count_in_code, macwilliams, rm_subblock_count_plotkin, two_charge_structure, BigInt,
    BinaryLinearCode, BitWord, ConstraintSpec, CountMethod, WeightDistribution,
};
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};

pub const SEED: u64 = 0x5eed_c0de;
pub const RANDOM_CODES_PER_N: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    CharSum,
    Divisibility,
    Identities,
    Symmetrization,
    Plotkin,
    MacWilliams,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::CharSum,
        Suite::Divisibility,
        Suite::Identities,
        Suite::Symmetrization,
        Suite::Plotkin,
        Suite::MacWilliams,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::CharSum => "char-sum",
            Suite::Divisibility => "divisibility",
            Suite::Identities => "identities",
            Suite::Symmetrization => "symmetrization",
            Suite::Plotkin => "plotkin",
            Suite::MacWilliams => "macwilliams",
        }
    }

    pub fn letter(&self) -> char {
        (b'a' + Suite::ALL.iter().position(|s| s == self).unwrap_or(0) as u8) as char
    }
}

pub fn parse_suites(text: &str) -> CliResult<Vec<Suite>> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let picked: Vec<Suite> = match part {
            "all" => Suite::ALL.to_vec(),
            "fourier" => vec![Suite::CharSum, Suite::Identities],
            _ => Suite::ALL
                .iter()
                .copied()
                .filter(|s| s.name() == part || part.len() == 1 && part.starts_with(s.letter()))
                .collect(),
        };
        if picked.is_empty() {
            let names: Vec<_> = Suite::ALL.iter().map(Suite::name).collect();
            return Err(CliError::usage(format!(
                "unknown suite {part:?} (expected {}, fourier or all)",
                names.join(", ")
            )));
        }
        for s in picked {
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    if out.is_empty() {
        return Err(CliError::usage("no suites selected"));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub case: Value,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub suite: Suite,
    pub checks: u64,
    pub failure: Option<Counterexample>,
    pub elapsed_ms: f64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub max_n: usize,
    pub inject_fault: bool,
}

struct Ctx {
    cfg: VerifyConfig,
    checks: u64,
}

type Check = std::result::Result<(), Counterexample>;

impl Ctx {
    /// Compares, applying the injected fault to the very first comparison.
    fn expect_eq<T: PartialEq + std::fmt::Display>(
        &mut self,
        case: impl FnOnce() -> Value,
        expected: T,
        got: T,
    ) -> Check {
        let fault = self.cfg.inject_fault && self.checks == 0;
        self.checks += 1;
        if expected != got || fault {
            let mut got = got.to_string();
            if fault {
                got.push_str(" (injected fault)");
            }
            return Err(Counterexample {
                case: case(),
                expected: expected.to_string(),
                got,
            });
        }
        Ok(())
    }

    fn expect_close(
        &mut self,
        case: impl FnOnce() -> Value,
        expected: f64,
        got: f64,
        rel: f64,
    ) -> Check {
        let fault = self.cfg.inject_fault && self.checks == 0;
        self.checks += 1;
        if (expected - got).abs() > rel * expected.abs().max(1.0) || fault {
            return Err(Counterexample {
                case: case(),
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
        Ok(())
    }
}

fn internal(case: Value, e: impl std::fmt::Display) -> Counterexample {
    Counterexample {
        case,
        expected: "no error".into(),
        got: e.to_string(),
    }
}

/// Constraints that admit blocklength `n`.
pub fn constraints_for(n: usize) -> Vec<ConstraintSpec> {
    let mut out = vec![
        ConstraintSpec::TwoCharge,
        ConstraintSpec::Rll { d: 1 },
        ConstraintSpec::Rll { d: 2 },
        ConstraintSpec::OddStrict,
        ConstraintSpec::EvenStrict,
        ConstraintSpec::FixedWeight { i: n / 2 },
        ConstraintSpec::FixedWeight { i: 1 },
        ConstraintSpec::Unconstrained,
    ];
    if n % 2 == 0 {
        out.push(ConstraintSpec::OddRelaxed);
    }
    for p in [2, 3, 4] {
        if n % p == 0 && n / p >= 1 {
            for z in 0..=n / p {
                out.push(ConstraintSpec::Subblock { p, z });
            }
        }
    }
    out
}

fn members(spec: ConstraintSpec, n: usize) -> concount::Result<Vec<u64>> {
    let c = spec.at(n)?;
    Ok((0..1u64 << n)
        .filter(|&x| c.member(&BitWord::from_index(n, x)))
        .collect())
}

fn brute_char_sum(members: &[u64], s: u64) -> i64 {
    members
        .iter()
        .map(|&x| if (x & s).count_ones() % 2 == 0 { 1 } else { -1 })
        .sum()
}

fn char_sum_suite(ctx: &mut Ctx) -> Check {
    for n in 1..=ctx.cfg.max_n.min(16) {
        for spec in constraints_for(n) {
            let case = |s: u64| move || json!({"constraint": spec.to_string(), "n": n, "s": BitWord::from_index(n, s).to_string()});
            let m = members(spec, n).map_err(|e| internal(case(0)(), e))?;
            let c = spec.at(n).map_err(|e| internal(case(0)(), e))?;
            for s in 0..1u64 << n {
                let f = c.char_sum(&BitWord::from_index(n, s));
                ctx.expect_eq(case(s), BigInt::from(brute_char_sum(&m, s)), f)?;
            }
        }
    }
    Ok(())
}

fn random_code(rng: &mut StdRng, n: usize) -> BinaryLinearCode {
    let rows = rng.gen_range(1..n);
    let words = (0..rows)
        .map(|_| BitWord::from_index(n, rng.gen_range(0..1u64 << n)))
        .collect();
    BinaryLinearCode::from_span(n, words).expect("rows have length n")
}

fn divisibility_suite(ctx: &mut Ctx) -> Check {
    let mut rng = StdRng::seed_from_u64(SEED);
    for n in 7..=ctx.cfg.max_n.clamp(7, 13) {
        let specs = constraints_for(n);
        for trial in 0..RANDOM_CODES_PER_N {
            let code = random_code(&mut rng, n);
            let rows: Vec<String> = code
                .generator()
                .rows()
                .iter()
                .map(ToString::to_string)
                .collect();
            let dual: Vec<BitWord> = code
                .dual()
                .codewords()
                .map_err(|e| internal(json!({"n": n}), e))?
                .collect();
            let words: Vec<BitWord> = code
                .codewords()
                .map_err(|e| internal(json!({"n": n}), e))?
                .collect();
            for &spec in &specs {
                let case = || json!({"n": n, "trial": trial, "generator": rows, "constraint": spec.to_string()});
                let c = spec.at(n).map_err(|e| internal(case(), e))?;
                let total: BigInt = dual.iter().map(|s| c.char_sum(s)).sum();
                let modulus = BigInt::one() << (n - code.k());
                ctx.expect_eq(case, BigInt::zero(), &total % &modulus)?;
                let brute = words.iter().filter(|x| c.member(x)).count();
                ctx.expect_eq(case, BigInt::from(brute), &total / &modulus)?;
                let auto = count_in_code(&code, spec, CountMethod::Auto)
                    .map_err(|e| internal(case(), e))?;
                ctx.expect_eq(case, BigInt::from(brute), auto.value)?;
                if spec == ConstraintSpec::TwoCharge {
                    let p = two_charge_structure(&code).map_err(|e| internal(case(), e))?;
                    ctx.expect_eq(case, BigInt::from(brute), p.predicted_count)?;
                }
            }
        }
    }
    Ok(())
}

fn identities_suite(ctx: &mut Ctx) -> Check {
    let top = ctx.cfg.max_n.min(12);
    for n in 1..=top {
        let kt = krawtchouk_table(n);
        for i in 0..=n {
            for j in 0..=n {
                let acc: BigInt = (0..=n).map(|l| kt.get(i, l) * kt.get(l, j)).sum();
                let want = if i == j {
                    BigInt::one() << n
                } else {
                    BigInt::zero()
                };
                ctx.expect_eq(
                    || json!({"identity": "krawtchouk orthogonality", "n": n, "i": i, "j": j}),
                    want,
                    acc,
                )?;
            }
        }
    }
    for n in [top.min(6), top.min(9), top] {
        let specs = constraints_for(n);
        let mut spectra = Vec::new();
        let mut sets = Vec::new();
        for &spec in &specs {
            let c = spec.at(n).map_err(|e| internal(json!({"n": n}), e))?;
            spectra.push(
                (0..1u64 << n)
                    .map(|s| c.char_sum(&BitWord::from_index(n, s)))
                    .collect::<Vec<_>>(),
            );
            sets.push(members(spec, n).map_err(|e| internal(json!({"n": n}), e))?);
        }
        for (a, fa) in spectra.iter().enumerate() {
            let sq: BigInt = fa.iter().map(|f| f * f).sum();
            let case =
                || json!({"identity": "parseval", "n": n, "constraint": specs[a].to_string()});
            ctx.expect_eq(case, BigInt::from(sets[a].len()) << n, sq)?;
            for (b, fb) in spectra.iter().enumerate().skip(a + 1) {
                let inner: BigInt = fa.iter().zip(fb).map(|(x, y)| x * y).sum();
                let both = sets[a]
                    .iter()
                    .filter(|x| sets[b].binary_search(x).is_ok())
                    .count();
                let case = || json!({"identity": "plancherel", "n": n, "a": specs[a].to_string(), "b": specs[b].to_string()});
                ctx.expect_eq(case, BigInt::from(both) << n, inner)?;
            }
        }
    }
    Ok(())
}

fn symmetrization_suite(ctx: &mut Ctx) -> Check {
    let cases = [
        (ConstraintSpec::TwoCharge, 7),
        (ConstraintSpec::TwoCharge, 9),
        (ConstraintSpec::Subblock { p: 2, z: 1 }, 8),
        (ConstraintSpec::Subblock { p: 2, z: 2 }, 8),
        (ConstraintSpec::Subblock { p: 3, z: 1 }, 9),
        (ConstraintSpec::Subblock { p: 2, z: 1 }, 10),
    ];
    for (spec, n) in cases {
        if n > ctx.cfg.max_n.min(10) {
            continue;
        }
        for d in 1..=n {
            let case = || json!({"constraint": spec.to_string(), "n": n, "d": d});
            let sym = del_constrained_sym(n, d, spec)
                .map_err(|e| internal(case(), e))?
                .lp_value;
            let full = del_constrained(n, d, spec)
                .map_err(|e| internal(case(), e))?
                .lp_value;
            ctx.expect_close(case, full, sym, 1e-5)?;
        }
    }
    Ok(())
}

fn plotkin_suite(ctx: &mut Ctx) -> Check {
    for (m, r) in [(3, 1), (4, 2), (4, 3), (5, 3)] {
        let code = reed_muller(m, r as i64).map_err(|e| internal(json!({"m": m, "r": r}), e))?;
        for z in 0..=1usize << (m - 1) {
            let case = || json!({"m": m, "r": r, "z": z});
            let spec = ConstraintSpec::Subblock { p: 2, z };
            let direct = count_in_code(&code, spec, CountMethod::Auto)
                .map_err(|e| internal(case(), e))?
                .value;
            let p = rm_subblock_count_plotkin(m, r, z).map_err(|e| internal(case(), e))?;
            ctx.expect_eq(case, direct.clone(), p.count_primal)?;
            ctx.expect_eq(case, direct, p.count_dual)?;
        }
    }
    Ok(())
}

/// Named codes of length at most 15.
pub fn constructed_codes() -> Vec<(String, BinaryLinearCode)> {
    let mut out = Vec::new();
    for m in 2..=4 {
        out.push((format!("hamming:m={m}"), hamming_code(m).expect("valid m")));
        out.push((format!("simplex:m={m}"), simplex_code(m).expect("valid m")));
    }
    for m in 1..=3usize {
        for r in 0..=m {
            out.push((
                format!("rm:m={m},r={r}"),
                reed_muller(m, r as i64).expect("valid m, r"),
            ));
        }
    }
    out
}

fn macwilliams_suite(ctx: &mut Ctx) -> Check {
    for (name, code) in constructed_codes() {
        let case = || json!({"code": name});
        let wd = WeightDistribution::of_code(&code).map_err(|e| internal(case(), e))?;
        let dual_wd = WeightDistribution::of_code(&code.dual()).map_err(|e| internal(case(), e))?;
        let there =
            macwilliams(&wd, &(BigInt::one() << code.k())).map_err(|e| internal(case(), e))?;
        let back = macwilliams(&there, &(BigInt::one() << (code.n() - code.k())))
            .map_err(|e| internal(case(), e))?;
        let show = |w: &WeightDistribution| {
            w.counts
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        ctx.expect_eq(case, show(&dual_wd), show(&there))?;
        ctx.expect_eq(case, show(&wd), show(&back))?;
    }
    Ok(())
}

pub fn run_suite(suite: Suite, cfg: VerifyConfig) -> SuiteResult {
    let start = Instant::now();
    let mut ctx = Ctx { cfg, checks: 0 };
    let outcome = match suite {
        Suite::CharSum => char_sum_suite(&mut ctx),
        Suite::Divisibility => divisibility_suite(&mut ctx),
        Suite::Identities => identities_suite(&mut ctx),
        Suite::Symmetrization => symmetrization_suite(&mut ctx),
        Suite::Plotkin => plotkin_suite(&mut ctx),
        Suite::MacWilliams => macwilliams_suite(&mut ctx),
    };
    SuiteResult {
        suite,
        checks: ctx.checks,
        failure: outcome.err(),
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

pub fn counterexample_json(r: &SuiteResult) -> Value {
    match &r.failure {
        None => Value::Null,
        Some(c) => {
            json!({"suite": r.suite.name(), "case": c.case, "expected": c.expected, "got": c.got})
        }
    }
}
