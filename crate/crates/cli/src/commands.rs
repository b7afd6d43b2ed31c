//! The computational subcommands.

use std::fs::File;
use std::io::BufWriter;

use concount::lp::{
    del_classic, del_classic_model, del_constrained, del_constrained_model, del_constrained_sym,
    del_constrained_sym_model, gensph, gensph_model,
};
use concount::spectral::weight_class_sums;
use concount::{
    constrained_weight_distribution, count_in_code, weight_distribution, BitWord, BoundReport,
    ConstraintSpec, CountMethod, Error as CoreError, LpModel, Program,
};
use serde_json::{json, Value};

use crate::args::{BoundArgs, CountArgs, FourierArgs, LpArg, MethodArg, WeightDistArgs};
use crate::error::{CliError, CliResult};
use crate::grammar::{parse_constraint, CodeSpec};
use crate::report::{fixed3, Report};

/// Longest blocklength for a full `F(s)` listing.
pub const MAX_LISTING_N: usize = 16;

fn method(m: MethodArg) -> CountMethod {
    match m {
        MethodArg::Auto => CountMethod::Auto,
        MethodArg::Dual => CountMethod::DualSum,
        MethodArg::Direct => CountMethod::Direct,
        MethodArg::Brute => CountMethod::Brute,
    }
}

pub fn count(a: &CountArgs) -> CliResult<Report> {
    let spec: CodeSpec = a.code.parse()?;
    let constraint = parse_constraint(&a.constraint)?;
    let code = spec.build()?;
    let requested = method(a.method);
    let r = count_in_code(&code, constraint, requested)?;

    let inputs = json!({"code": spec.to_string(), "constraint": constraint.to_string(), "method": requested.name()});
    let mut rep =
        Report::new("", inputs).header(["code", "constraint", "n", "k", "count", "method"]);
    rep.row([
        spec.to_string(),
        constraint.to_string(),
        code.n().to_string(),
        code.k().to_string(),
        r.value.to_string(),
        r.method.name().to_string(),
    ]);
    rep.result = json!({
        "code": spec.to_string(),
        "constraint": constraint.to_string(),
        "n": code.n(),
        "k": code.k(),
        "count": r.value.to_string(),
        "method": r.method.name(),
        "dual_dimension_used": r.dual_dimension_used,
    });
    rep.provenance = json!({"operation": "count_in_code"});
    Ok(rep)
}

pub fn weight_dist(a: &WeightDistArgs) -> CliResult<Report> {
    let constraint = parse_constraint(&a.constraint)?;
    let (dist, code, op) = match (&a.code, a.n) {
        (Some(text), _) => {
            let spec: CodeSpec = text.parse()?;
            let code = spec.build()?;
            (
                constrained_weight_distribution(&code, constraint)?,
                Some(spec),
                "constrained_weight_distribution",
            )
        }
        (None, Some(n)) => (
            weight_distribution(constraint, n)?,
            None,
            "weight_distribution",
        ),
        (None, None) => return Err(CliError::usage("give --n or --code")),
    };
    let counts: Vec<String> = dist.counts.iter().map(ToString::to_string).collect();
    let inputs = json!({
        "constraint": constraint.to_string(),
        "n": dist.n,
        "code": code.as_ref().map(ToString::to_string),
    });
    let mut rep = Report::new("", inputs).header(["weight", "count"]);
    for (i, c) in counts.iter().enumerate() {
        rep.row([i.to_string(), c.clone()]);
    }
    rep.notes.push(format!("total {}", dist.total()));
    rep.result = json!({"n": dist.n, "counts": counts, "total": dist.total().to_string()});
    rep.provenance = json!({"operation": op});
    Ok(rep)
}

fn default_lp(c: ConstraintSpec) -> LpArg {
    if c.has_orbits() {
        LpArg::DelSym
    } else {
        LpArg::Del
    }
}

fn primary_model(n: usize, d: usize, c: ConstraintSpec, lp: LpArg) -> CliResult<LpModel> {
    Ok(match (lp, c) {
        (LpArg::Gensph, _) => gensph_model(n, d, c)?,
        (_, ConstraintSpec::Unconstrained) => del_classic_model(n, d)?,
        (LpArg::DelSym, _) => del_constrained_sym_model(n, d, c)?,
        _ => del_constrained_model(n, d, c)?,
    })
}

fn primary_bound(n: usize, d: usize, c: ConstraintSpec, lp: LpArg) -> CliResult<BoundReport> {
    Ok(match (lp, c) {
        (LpArg::Gensph, _) => gensph(n, d, c)?,
        (_, ConstraintSpec::Unconstrained) => del_classic(n, d)?,
        (LpArg::DelSym, _) => del_constrained_sym(n, d, c)?,
        _ => del_constrained(n, d, c)?,
    })
}

fn bound_json(r: &BoundReport) -> Value {
    json!({
        "program": r.program.name(),
        "lp_value": r.lp_value,
        "code_size_bound": r.code_size_bound,
        "iterations": r.iterations,
        "variables": r.variables,
        "rows": r.rows,
    })
}

pub fn bound(a: &BoundArgs) -> CliResult<Report> {
    let c = parse_constraint(&a.constraint)?;
    let lp = a.lp.unwrap_or_else(|| default_lp(c));
    let main_lp = if lp == LpArg::All { default_lp(c) } else { lp };
    if let Some(path) = &a.lp_dump {
        let model = primary_model(a.n, a.d, c, main_lp)?;
        model.write_dump(BufWriter::new(File::create(path)?))?;
    }
    let mut reports = vec![primary_bound(a.n, a.d, c, main_lp)?];
    if lp == LpArg::All {
        if reports[0].program != Program::GenSph {
            reports.push(gensph(a.n, a.d, c)?);
        }
        if reports[0].program != Program::DelClassic {
            reports.push(del_classic(a.n, a.d)?);
        }
    }

    let inputs = json!({
        "n": a.n,
        "d": a.d,
        "constraint": c.to_string(),
        "lp": format!("{lp:?}").to_lowercase(),
        "lp_dump": a.lp_dump.as_ref().map(|p| p.display().to_string()),
    });
    let mut rep = Report::new("", inputs).header(["program", "lp_value", "bound"]);
    for r in &reports {
        rep.row([
            r.program.name().to_string(),
            fixed3(r.lp_value),
            fixed3(r.code_size_bound),
        ]);
    }
    let find = |p: Program| {
        reports
            .iter()
            .find(|r| r.program == p)
            .map(|r| r.code_size_bound)
    };
    rep.result = json!({
        "primary": bound_json(&reports[0]),
        "gensph": find(Program::GenSph).filter(|_| reports[0].program != Program::GenSph),
        "delsarte": find(Program::DelClassic).filter(|_| reports[0].program != Program::DelClassic),
    });
    rep.provenance = json!({
        "operations": reports.iter().map(|r| r.program.name()).collect::<Vec<_>>(),
        "bound": "square root of the optimum for constrained programs, the optimum otherwise",
    });
    Ok(rep)
}

pub fn fourier(a: &FourierArgs) -> CliResult<Report> {
    let c = parse_constraint(&a.constraint)?;
    let inputs = json!({
        "constraint": c.to_string(),
        "words": a.words,
        "n": a.n,
        "by_weight": a.by_weight,
    });
    if let Some(n) = a.n {
        let eval = c.at(n)?;
        if a.by_weight {
            let sums = weight_class_sums(n, |s| Ok(eval.char_sum(s)))?;
            let mut rep = Report::new("", inputs).header(["weight", "sum_F"]);
            for (j, v) in sums.iter().enumerate() {
                rep.row([j.to_string(), v.to_string()]);
            }
            rep.result = json!({"n": n, "weight_sums": sums.iter().map(ToString::to_string).collect::<Vec<_>>()});
            rep.provenance = json!({"operation": "weight_class_sums"});
            return Ok(rep);
        }
        if n > MAX_LISTING_N {
            return Err(CoreError::CapExceeded {
                what: "listing length n",
                value: n,
                cap: MAX_LISTING_N,
            }
            .into());
        }
        let mut rep = Report::new("", inputs).header(["s", "F"]);
        let mut values = Vec::with_capacity(1 << n);
        for i in 0..1u64 << n {
            let s = BitWord::from_index(n, i);
            let f = eval.char_sum(&s).to_string();
            rep.row([s.to_string(), f.clone()]);
            values.push(json!({"s": s.to_string(), "F": f}));
        }
        rep.result = json!({"n": n, "values": values});
        rep.provenance = json!({"operation": "char_sum"});
        return Ok(rep);
    }
    let mut rep = Report::new("", inputs).header(["s", "F"]);
    let mut values = Vec::new();
    for w in &a.words {
        let s: BitWord = w
            .parse()
            .map_err(|e| CliError::usage(format!("word {w:?}: {e}")))?;
        let f = c.char_sum(&s)?.to_string();
        rep.row([s.to_string(), f.clone()]);
        values.push(json!({"s": s.to_string(), "F": f}));
    }
    rep.result = json!({"values": values});
    rep.provenance = json!({"operation": "char_sum"});
    Ok(rep)
}
