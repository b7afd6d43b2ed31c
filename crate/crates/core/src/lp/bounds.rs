//! Delsarte-type programs for (constrained) codes and the sphere-packing baseline.

use num_traits::ToPrimitive;

use super::model::{LpModel, Relation, Sense};
use super::simplex::{solve, LpSolution, LpStatus};
use crate::constraints::{orbit_structure, ConstraintSpec};
use crate::error::{Error, Result};
use crate::gf2::BitWord;
use crate::spectral::{krawtchouk_table, self_convolution_counts};

pub const MAX_FULL_LP_N: usize = 12;
pub const MAX_GENSPH_N: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Program {
    /// Weight-symmetrized Delsarte program, `n+1` variables.
    DelClassic,
    /// Delsarte program over all `2^n` words.
    DelFull,
    /// Constrained program over all `2^n` words.
    DelConstrained,
    /// Constrained program over orbits.
    DelConstrainedSym,
    /// Generalized sphere-packing program with radius `t = ⌊(d-1)/2⌋`.
    GenSph,
}

impl Program {
    pub fn name(&self) -> &'static str {
        match self {
            Program::DelClassic => "del_classic",
            Program::DelFull => "del_full",
            Program::DelConstrained => "del_constrained",
            Program::DelConstrainedSym => "del_constrained_sym",
            Program::GenSph => "gensph",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub d: usize,
    pub constraint: ConstraintSpec,
    pub program: Program,
    pub lp_value: f64,
    /// The code-size bound: the optimum itself, or its square root for the constrained programs.
    pub code_size_bound: f64,
    pub gensph: Option<f64>,
    pub delsarte: Option<f64>,
    pub iterations: usize,
    pub variables: usize,
    pub rows: usize,
}

impl BoundReport {
    fn new(
        n: usize,
        d: usize,
        constraint: ConstraintSpec,
        program: Program,
        model: &LpModel,
        sol: &LpSolution,
    ) -> Self {
        let code_size_bound = match program {
            Program::DelConstrained | Program::DelConstrainedSym => sol.value.max(0.0).sqrt(),
            _ => sol.value,
        };
        BoundReport {
            n,
            d,
            constraint,
            program,
            lp_value: sol.value,
            code_size_bound,
            gensph: None,
            delsarte: None,
            iterations: sol.iterations,
            variables: model.num_vars(),
            rows: model.num_rows(),
        }
    }
}

fn check_nd(n: usize, d: usize) -> Result<()> {
    if n == 0 || d == 0 || d > n {
        return Err(Error::param(format!("need 1 <= d <= n, got n={n} d={d}")));
    }
    Ok(())
}

fn solved(model: &LpModel) -> Result<LpSolution> {
    let sol = solve(model)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Solver(sol.status));
    }
    Ok(sol)
}

fn big_f64(v: &num_bigint::BigInt) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

pub fn del_classic_model(n: usize, d: usize) -> Result<LpModel> {
    check_nd(n, d)?;
    let kt = krawtchouk_table(n);
    let mut lp = LpModel::new(Sense::Maximize, vec![1.0; n + 1]);
    lp.fix(0, 1.0);
    for j in 1..d {
        lp.fix(j, 0.0);
    }
    for k in 0..=n {
        let row = (0..=n).map(|j| big_f64(kt.get(k, j))).collect();
        lp.add_row(row, Relation::Ge, 0.0)?;
    }
    Ok(lp)
}

pub fn del_classic(n: usize, d: usize) -> Result<BoundReport> {
    let lp = del_classic_model(n, d)?;
    let sol = solved(&lp)?;
    Ok(BoundReport::new(
        n,
        d,
        ConstraintSpec::Unconstrained,
        Program::DelClassic,
        &lp,
        &sol,
    ))
}

/// Character rows `Σ_x (-1)^{x·s} f(x) ≥ 0`, one per `s`.
fn add_character_rows(lp: &mut LpModel, n: usize) -> Result<()> {
    let size = 1usize << n;
    for s in 0..size {
        let row = (0..size)
            .map(|x| {
                if (x & s).count_ones() % 2 == 0 {
                    1.0
                } else {
                    -1.0
                }
            })
            .collect();
        lp.add_row(row, Relation::Ge, 0.0)?;
    }
    Ok(())
}

fn check_full_n(n: usize) -> Result<()> {
    if n > MAX_FULL_LP_N {
        return Err(Error::cap("full-space LP length n", n, MAX_FULL_LP_N));
    }
    Ok(())
}

pub fn del_full_model(n: usize, d: usize) -> Result<LpModel> {
    check_nd(n, d)?;
    check_full_n(n)?;
    let size = 1usize << n;
    let mut lp = LpModel::new(Sense::Maximize, vec![1.0; size]);
    add_character_rows(&mut lp, n)?;
    lp.fix(0, 1.0);
    for x in 1..size {
        if (x.count_ones() as usize) < d {
            lp.fix(x, 0.0);
        }
    }
    Ok(lp)
}

pub fn del_full(n: usize, d: usize) -> Result<BoundReport> {
    let lp = del_full_model(n, d)?;
    let sol = solved(&lp)?;
    Ok(BoundReport::new(
        n,
        d,
        ConstraintSpec::Unconstrained,
        Program::DelFull,
        &lp,
        &sol,
    ))
}

fn convolution(n: usize, spec: ConstraintSpec) -> Result<Vec<i128>> {
    let c = spec.at(n)?;
    self_convolution_counts(n, |x| c.member(x))
}

pub fn del_constrained_model(n: usize, d: usize, spec: ConstraintSpec) -> Result<LpModel> {
    check_nd(n, d)?;
    check_full_n(n)?;
    let delsarte = del_classic(n, d)?.lp_value;
    let v = convolution(n, spec)?;
    let size = 1usize << n;
    let mut lp = LpModel::new(Sense::Maximize, vec![1.0; size]);
    add_character_rows(&mut lp, n)?;
    for (x, &cap) in v.iter().enumerate() {
        let w = x.count_ones() as usize;
        if w >= 1 && w < d {
            lp.fix(x, 0.0);
        } else {
            lp.cap_upper(x, cap as f64);
        }
    }
    lp.cap_upper(0, delsarte);
    Ok(lp)
}

fn constrained_report(
    n: usize,
    d: usize,
    spec: ConstraintSpec,
    program: Program,
    lp: &LpModel,
) -> Result<BoundReport> {
    let sol = solved(lp)?;
    let mut rep = BoundReport::new(n, d, spec, program, lp, &sol);
    rep.delsarte = Some(del_classic(n, d)?.lp_value);
    Ok(rep)
}

pub fn del_constrained(n: usize, d: usize, spec: ConstraintSpec) -> Result<BoundReport> {
    let lp = del_constrained_model(n, d, spec)?;
    constrained_report(n, d, spec, Program::DelConstrained, &lp)
}

pub fn del_constrained_sym_model(n: usize, d: usize, spec: ConstraintSpec) -> Result<LpModel> {
    check_nd(n, d)?;
    let orbits = orbit_structure(spec, n)?;
    let delsarte = del_classic(n, d)?.lp_value;
    let v = convolution(n, spec)?;
    let sizes: Vec<f64> = orbits.sizes.iter().map(big_f64).collect();
    let mut lp = LpModel::new(Sense::Maximize, sizes);
    for s in &orbits.reps {
        let row = orbits.char_sums_at(s)?.iter().map(big_f64).collect();
        lp.add_row(row, Relation::Ge, 0.0)?;
    }
    for (o, rep) in orbits.reps.iter().enumerate() {
        let w = rep.weight();
        if w >= 1 && w < d {
            lp.fix(o, 0.0);
        } else {
            lp.cap_upper(o, v[rep.to_index() as usize] as f64);
        }
        if w == 0 {
            lp.cap_upper(o, delsarte);
        }
    }
    Ok(lp)
}

pub fn del_constrained_sym(n: usize, d: usize, spec: ConstraintSpec) -> Result<BoundReport> {
    let lp = del_constrained_sym_model(n, d, spec)?;
    constrained_report(n, d, spec, Program::DelConstrainedSym, &lp)
}

/// Radius used by the covering program.
pub fn gensph_radius(d: usize) -> usize {
    (d.max(1) - 1) / 2
}

/// Generalized sphere-packing program in packing form: one variable per word
/// `y` within distance `t` of `A`, maximize `Σ u_y` subject to
/// `Σ_{y ∈ B(x,t)} u_y ≤ 1` for every `x ∈ A`. Its optimum equals the covering
/// program that weights the words of `A` so every such `y` is covered.
pub fn gensph_model(n: usize, d: usize, spec: ConstraintSpec) -> Result<LpModel> {
    check_nd(n, d)?;
    if n > MAX_GENSPH_N {
        return Err(Error::cap("covering LP length n", n, MAX_GENSPH_N));
    }
    let t = gensph_radius(d) as u32;
    let members: Vec<u64> = spec
        .enumerate_members(n)?
        .iter()
        .map(BitWord::to_index)
        .collect();
    let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); members.len()];
    let mut nvars = 0;
    for y in 0..1u64 << n {
        let mut hit = false;
        for (i, &x) in members.iter().enumerate() {
            if (x ^ y).count_ones() <= t {
                rows[i].push((nvars, 1.0));
                hit = true;
            }
        }
        if hit {
            nvars += 1;
        }
    }
    let mut lp = LpModel::new(Sense::Maximize, vec![1.0; nvars]);
    for r in rows {
        lp.add_sparse_row(r, Relation::Le, 1.0)?;
    }
    Ok(lp)
}

pub fn gensph(n: usize, d: usize, spec: ConstraintSpec) -> Result<BoundReport> {
    let lp = gensph_model(n, d, spec)?;
    let sol = solved(&lp)?;
    Ok(BoundReport::new(n, d, spec, Program::GenSph, &lp, &sol))
}
