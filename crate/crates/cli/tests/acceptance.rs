//! One PASS/FAIL line per acceptance criterion. Values are asserted; cells
//! known to disagree with the published numbers are reported as FAIL and their
//! recomputed values are pinned instead.

use std::time::{Duration, Instant};

use concount::gf2::{hamming_code, reed_muller};
use concount::lp::del_constrained_sym;
use concount::{count_in_code, count_odd_in_code, BigInt, ConstraintSpec, CountMethod};
use concount_cli::tables::{compute_table, Computed, Status, Table, LP_TOL};
use concount_cli::verify::{run_suite, Suite, VerifyConfig};
use num_traits::One;

type Criterion = (&'static str, fn() -> Line, Duration);

struct Line {
    pass: bool,
    detail: String,
}

fn report(n: usize, name: &str, line: Line, elapsed: Duration, budget: Duration) -> bool {
    let in_time = elapsed <= budget;
    let pass = line.pass && in_time;
    println!(
        "criterion {n} {}: {name}: {} [{:.1} s of {:.0} s]",
        if pass { "PASS" } else { "FAIL" },
        line.detail,
        elapsed.as_secs_f64(),
        budget.as_secs_f64(),
    );
    pass
}

fn timed<F: FnOnce() -> Line>(f: F) -> (Line, Duration) {
    let t = Instant::now();
    let line = f();
    (line, t.elapsed())
}

fn table_line(t: &Table) -> Line {
    let bad: Vec<String> = t
        .cells
        .iter()
        .filter(|c| c.status != Status::Match)
        .map(|c| {
            format!(
                "{}/{} = {} vs {}",
                c.row,
                c.column,
                c.computed_text(),
                c.expected_text()
            )
        })
        .collect();
    Line {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{} cells match", t.cells.len())
        } else {
            bad.join("; ")
        },
    }
}

fn float_of(t: &Table, row: &str, column: &str) -> f64 {
    match t.cell(row, column).and_then(|c| c.computed.clone()) {
        Some(Computed::Float(v)) => v,
        other => panic!("{row}/{column}: {other:?}"),
    }
}

fn assert_all_match_except(t: &Table, allowed: &[(&str, &str)]) {
    for c in &t.cells {
        if allowed.contains(&(c.row.as_str(), c.column.as_str())) {
            continue;
        }
        assert_eq!(
            c.status,
            Status::Match,
            "table {} {}/{}: {} vs {}",
            t.id,
            c.row,
            c.column,
            c.computed_text(),
            c.expected_text()
        );
    }
}

fn count(code: &concount::BinaryLinearCode, spec: ConstraintSpec) -> BigInt {
    count_in_code(code, spec, CountMethod::Auto).unwrap().value
}

fn criterion_1() -> Line {
    let t = compute_table("I", None).unwrap();
    assert_all_match_except(&t, &[]);
    table_line(&t)
}

fn criterion_2() -> Line {
    let mut parts = Vec::new();
    for m in 3..=5usize {
        let want = BigInt::one() << (((1usize << m) - 1) / 2 - 1);
        let got = count(&hamming_code(m).unwrap(), ConstraintSpec::TwoCharge);
        assert_eq!(got, want, "Ham_{m}");
        parts.push(format!("Ham_{m} = {got}"));
    }
    Line {
        pass: true,
        detail: parts.join(", "),
    }
}

fn criterion_3() -> Line {
    let mut ok = true;
    let mut notes = Vec::new();
    for id in ["V", "even-counts"] {
        let t = compute_table(id, None).unwrap();
        assert_all_match_except(&t, &[]);
        notes.push(format!("table {id}: {} exact counts match", t.cells.len()));
    }
    // Relaxed odd constraint in Reed-Muller codes: stated closed form, every m <= 5 and r.
    for m in 1..=5usize {
        for r in 0..=m {
            let odd = count_odd_in_code(&reed_muller(m, r as i64).unwrap()).unwrap();
            let dim: usize = (0..r).map(|i| binomial(m - 1, i)).sum();
            assert_eq!(
                odd.count.value,
                (BigInt::one() << (dim + 1)) - 1,
                "RM({m},{r})"
            );
        }
    }
    notes.push("RM odd closed form holds for m <= 5".into());
    // Strict odd constraint in Hamming codes: the stated closed form is half the count.
    let mut bad = Vec::new();
    for m in 2..=5usize {
        let odd = count_odd_in_code(&hamming_code(m).unwrap()).unwrap();
        let corrected = BigInt::one() << (((1usize << m) - 1) / 2 + 1 - m);
        assert_eq!(odd.count.value, corrected, "Ham_{m}");
        let stated_exp = ((1i64 << m) - 1) / 2 - m as i64;
        let stated_holds =
            stated_exp >= 0 && odd.count.value == BigInt::one() << stated_exp as usize;
        if !stated_holds {
            ok = false;
            let stated = if stated_exp >= 0 {
                (1u64 << stated_exp).to_string()
            } else {
                format!("2^{stated_exp}")
            };
            bad.push(format!(
                "Ham_{m} count {} vs stated {stated}",
                odd.count.value
            ));
        }
    }
    if !bad.is_empty() {
        notes.push(format!(
            "Hamming odd closed form off by a factor 2: {}",
            bad.join(", ")
        ));
    }
    Line {
        pass: ok,
        detail: notes.join("; "),
    }
}

fn criterion_4() -> Line {
    let t = compute_table("even-weights", None).unwrap();
    assert_all_match_except(&t, &[]);
    table_line(&t)
}

fn criterion_5() -> Line {
    let t = compute_table("II", None).unwrap();
    assert_all_match_except(&t, &[]);
    table_line(&t)
}

fn criterion_6() -> Line {
    let typo = ("d=5", "sqrt del_constrained_sym");
    let t3 = compute_table("III", None).unwrap();
    assert_all_match_except(&t3, &[typo]);
    // The recomputed optimum is exactly 3·2^13.
    let v = float_of(&t3, typo.0, typo.1);
    assert!((v - 24576f64.sqrt()).abs() < 1e-6, "{v}");
    let lp = del_constrained_sym(15, 5, ConstraintSpec::Subblock { p: 3, z: 2 })
        .unwrap()
        .lp_value;
    assert!((lp - 24576.0).abs() < 1e-6 * 24576.0);
    let t4 = compute_table("IV", None).unwrap();
    assert_all_match_except(&t4, &[]);
    let mut line = table_line(&t3);
    let l4 = table_line(&t4);
    line.pass &= l4.pass;
    line.detail = format!("(15,3,2): {}; (18,2,2): {}", line.detail, l4.detail);
    line
}

fn criterion_7() -> Line {
    let t = compute_table("VI", None).unwrap();
    assert_all_match_except(&t, &[]);
    let l = table_line(&t);
    Line {
        detail: format!("{} (tolerance {LP_TOL})", l.detail),
        ..l
    }
}

fn criterion_8() -> (bool, Vec<String>) {
    let cfg = VerifyConfig {
        max_n: 12,
        inject_fault: false,
    };
    let budget = Duration::from_secs(120);
    let mut pass = true;
    let mut lines = Vec::new();
    for s in Suite::ALL {
        let r = run_suite(s, cfg);
        assert!(r.passed(), "suite {}: {:?}", s.name(), r.failure);
        let in_time = r.elapsed_ms <= budget.as_secs_f64() * 1e3;
        pass &= in_time;
        lines.push(format!(
            "  ({}) {}: {} checks, {} [{:.1} s]",
            s.letter(),
            s.name(),
            r.checks,
            if in_time { "PASS" } else { "FAIL (over 120 s)" },
            r.elapsed_ms / 1e3
        ));
    }
    (pass, lines)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn main() {
    // `cargo test -- <filter>` passes arguments; a listing request must not run the suite.
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let secs = Duration::from_secs;
    let criteria: [Criterion; 7] = [
        (
            "two-charge counts in Reed-Muller codes",
            criterion_1,
            secs(60),
        ),
        ("two-charge counts in Hamming codes", criterion_2, secs(10)),
        ("RLL, even and odd counts in codes", criterion_3, secs(30)),
        ("even-run weight distribution, n=17", criterion_4, secs(60)),
        ("two-charge LP bounds, n=13", criterion_5, secs(120)),
        ("subblock LP bounds", criterion_6, secs(120)),
        ("RLL LP bounds, n=10", criterion_7, secs(180)),
    ];
    let mut passed = 0;
    for (i, (name, f, budget)) in criteria.into_iter().enumerate() {
        let (line, elapsed) = timed(f);
        passed += usize::from(report(i + 1, name, line, elapsed, budget));
    }
    let t = Instant::now();
    let (ok, lines) = criterion_8();
    passed += usize::from(report(
        8,
        "property suites",
        Line {
            pass: ok,
            detail: "six suites".into(),
        },
        t.elapsed(),
        secs(720),
    ));
    for l in lines {
        println!("{l}");
    }
    println!("acceptance: {passed}/8 criteria PASS");
}
