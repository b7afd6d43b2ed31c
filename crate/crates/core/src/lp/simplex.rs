//! Two-phase primal simplex on bounded variables, with a dense explicit basis
//! inverse and sparse column storage.
//!
//! Pricing is steepest edge with incrementally updated reduced costs; the ratio
//! test is the two-pass Harris variant. A long degenerate run switches to Bland's
//! rule until the next nondegenerate pivot.

#![allow(clippy::needless_range_loop)]

use super::model::{LpModel, Relation, Sense};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Objective at `primal`, in the model's own sense.
    pub value: f64,
    pub primal: Vec<f64>,
    pub iterations: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct SolverOptions {
    pub pivot_tol: f64,
    pub feasibility_tol: f64,
    pub optimality_tol: f64,
    pub max_iterations: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            pivot_tol: 1e-9,
            feasibility_tol: 1e-7,
            optimality_tol: 1e-9,
            max_iterations: 1_000_000,
        }
    }
}

pub fn solve(model: &LpModel) -> Result<LpSolution> {
    solve_with(model, SolverOptions::default())
}

pub fn solve_with(model: &LpModel, opts: SolverOptions) -> Result<LpSolution> {
    model.validate()?;
    let mut t = Tableau::build(model, opts);
    let mut iterations = 0;

    if t.has_artificials() {
        t.set_phase_one_costs();
        let st = t.run(&mut iterations)?;
        if st == LpStatus::IterationLimit {
            return Ok(t.solution(model, LpStatus::IterationLimit, iterations));
        }
        let infeas: f64 = t.artificial_total();
        let scale = 1.0 + model.rows.iter().map(|r| r.rhs.abs()).fold(0.0, f64::max);
        if infeas > opts.feasibility_tol * scale {
            return Ok(t.solution(model, LpStatus::Infeasible, iterations));
        }
    }
    t.set_phase_two(model);
    let st = t.run(&mut iterations)?;
    if st != LpStatus::Optimal {
        return Ok(t.solution(model, st, iterations));
    }
    let sol = t.solution(model, LpStatus::Optimal, iterations);
    let viol = model.max_violation(&sol.primal);
    if viol > opts.feasibility_tol {
        return Err(Error::Internal(format!(
            "simplex returned a point violating the model by {viol:.3e}"
        )));
    }
    Ok(sol)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum At {
    Lower,
    Upper,
    Basic,
}

struct Tableau {
    opts: SolverOptions,
    m: usize,
    n_struct: usize,
    /// Columns in CSC form: structural, then slacks, then artificials.
    col_start: Vec<usize>,
    col_row: Vec<u32>,
    col_val: Vec<f64>,
    lo: Vec<f64>,
    hi: Vec<f64>,
    cost: Vec<f64>,
    state: Vec<At>,
    /// Value of every variable; basic entries are refreshed from the basis.
    x: Vec<f64>,
    basis: Vec<usize>,
    binv: Vec<f64>,
    /// Steepest-edge reference weights `1 + |B⁻¹ a_j|²`.
    gamma: Vec<f64>,
    b: Vec<f64>,
    first_artificial: usize,
    pivots_since_refactor: usize,
}

impl Tableau {
    fn build(model: &LpModel, opts: SolverOptions) -> Tableau {
        let keep = model.distinct_rows();
        let m = keep.len();
        let ns = model.num_vars();
        let mut cols: Vec<Vec<(u32, f64)>> = vec![Vec::new(); ns];
        let mut b = Vec::with_capacity(m);
        let mut rel = Vec::with_capacity(m);
        for (i, &ri) in keep.iter().enumerate() {
            let row = &model.rows[ri];
            row.coeffs
                .for_each_nonzero(|j, a| cols[j].push((i as u32, a)));
            b.push(row.rhs);
            rel.push(row.relation);
        }
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        let mut state = Vec::new();
        let mut x = Vec::new();
        for j in 0..ns {
            let l = model.lower[j];
            let u = model.upper[j].unwrap_or(f64::INFINITY);
            lo.push(l);
            hi.push(u.max(l));
            state.push(At::Lower);
            x.push(l);
        }
        // Residual of each row at the starting point.
        let mut resid = b.clone();
        for (j, col) in cols.iter().enumerate() {
            for &(i, a) in col {
                resid[i as usize] -= a * x[j];
            }
        }
        // Slack per row: a·x + s = b.
        for i in 0..m {
            cols.push(vec![(i as u32, 1.0)]);
            let (l, u) = match rel[i] {
                Relation::Le => (0.0, f64::INFINITY),
                Relation::Ge => (f64::NEG_INFINITY, 0.0),
                Relation::Eq => (0.0, 0.0),
            };
            lo.push(l);
            hi.push(u);
        }
        let first_artificial = ns + m;
        state.resize(first_artificial, At::Basic);
        x.resize(first_artificial, 0.0);
        let mut basis = vec![usize::MAX; m];
        let mut binv = vec![0.0; m * m];
        for i in 0..m {
            let s = ns + i;
            let r = resid[i];
            if r >= lo[s] && r <= hi[s] {
                state[s] = At::Basic;
                x[s] = r;
                basis[i] = s;
                binv[i * m + i] = 1.0;
            } else {
                let v = r.clamp(lo[s], hi[s]);
                state[s] = if v == lo[s] { At::Lower } else { At::Upper };
                x[s] = v;
                let sign = if r > v { 1.0 } else { -1.0 };
                cols.push(vec![(i as u32, sign)]);
                lo.push(0.0);
                hi.push(f64::INFINITY);
                state.push(At::Basic);
                x.push((r - v).abs());
                basis[i] = cols.len() - 1;
                binv[i * m + i] = sign;
            }
        }
        let mut col_start = vec![0];
        let mut col_row = Vec::new();
        let mut col_val = Vec::new();
        for c in &cols {
            for &(i, a) in c {
                col_row.push(i);
                col_val.push(a);
            }
            col_start.push(col_row.len());
        }
        let nt = cols.len();
        // The starting basis is a signed identity, so `B⁻¹ a_j` has the norm of `a_j`.
        let gamma = cols
            .iter()
            .map(|c| 1.0 + c.iter().map(|(_, a)| a * a).sum::<f64>())
            .collect();
        Tableau {
            opts,
            m,
            n_struct: ns,
            col_start,
            col_row,
            col_val,
            lo,
            hi,
            cost: vec![0.0; nt],
            state,
            x,
            basis,
            binv,
            gamma,
            b,
            first_artificial,
            pivots_since_refactor: 0,
        }
    }

    fn ncols(&self) -> usize {
        self.lo.len()
    }

    fn has_artificials(&self) -> bool {
        self.ncols() > self.first_artificial
    }

    fn artificial_total(&self) -> f64 {
        (self.first_artificial..self.ncols())
            .map(|j| self.x[j].max(0.0))
            .sum()
    }

    fn set_phase_one_costs(&mut self) {
        for j in 0..self.ncols() {
            self.cost[j] = if j >= self.first_artificial { 1.0 } else { 0.0 };
        }
    }

    fn set_phase_two(&mut self, model: &LpModel) {
        let sign = if model.sense == Sense::Maximize {
            -1.0
        } else {
            1.0
        };
        for j in 0..self.ncols() {
            self.cost[j] = if j < self.n_struct {
                sign * model.objective[j]
            } else {
                0.0
            };
        }
        for j in self.first_artificial..self.ncols() {
            self.hi[j] = 0.0;
            if self.state[j] != At::Basic {
                self.state[j] = At::Lower;
                self.x[j] = 0.0;
            }
        }
    }

    fn column(&self, j: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let (s, e) = (self.col_start[j], self.col_start[j + 1]);
        self.col_row[s..e]
            .iter()
            .zip(&self.col_val[s..e])
            .map(|(&i, &a)| (i as usize, a))
    }

    /// Rebuilds the basis inverse by Gauss–Jordan and recomputes basic values.
    fn refactor(&mut self) -> Result<()> {
        let m = self.m;
        let mut a = vec![0.0; m * m];
        for (k, &j) in self.basis.iter().enumerate() {
            for (i, v) in self.column(j) {
                a[i * m + k] = v;
            }
        }
        let mut inv = vec![0.0; m * m];
        for i in 0..m {
            inv[i * m + i] = 1.0;
        }
        for c in 0..m {
            let p = (c..m)
                .max_by(|&r1, &r2| a[r1 * m + c].abs().total_cmp(&a[r2 * m + c].abs()))
                .unwrap_or(c);
            if a[p * m + c].abs() < 1e-12 {
                return Err(Error::Internal("basis matrix became singular".into()));
            }
            if p != c {
                for k in 0..m {
                    a.swap(p * m + k, c * m + k);
                    inv.swap(p * m + k, c * m + k);
                }
            }
            let d = 1.0 / a[c * m + c];
            for k in 0..m {
                a[c * m + k] *= d;
                inv[c * m + k] *= d;
            }
            for r in 0..m {
                if r == c {
                    continue;
                }
                let f = a[r * m + c];
                if f != 0.0 {
                    for k in 0..m {
                        a[r * m + k] -= f * a[c * m + k];
                        inv[r * m + k] -= f * inv[c * m + k];
                    }
                }
            }
        }
        // B⁻¹ maps row space to basis positions: inverse of A where A[:,k] = column of basis[k].
        self.binv = inv;
        let mut rhs = self.b.clone();
        for j in 0..self.ncols() {
            if self.state[j] != At::Basic && self.x[j] != 0.0 {
                let xj = self.x[j];
                for (i, v) in self.column(j) {
                    rhs[i] -= v * xj;
                }
            }
        }
        for k in 0..m {
            let row = &self.binv[k * m..(k + 1) * m];
            let v: f64 = row.iter().zip(&rhs).map(|(p, q)| p * q).sum();
            self.x[self.basis[k]] = v;
        }
        self.pivots_since_refactor = 0;
        Ok(())
    }

    /// Reduced costs `c_j − yᵀa_j` for every column, with `y = c_Bᵀ B⁻¹`.
    fn reduced_costs(&self, d: &mut [f64]) {
        let m = self.m;
        let mut y = vec![0.0; m];
        for k in 0..m {
            let c = self.cost[self.basis[k]];
            if c != 0.0 {
                let row = &self.binv[k * m..(k + 1) * m];
                for (yi, r) in y.iter_mut().zip(row) {
                    *yi += c * r;
                }
            }
        }
        for (j, dj) in d.iter_mut().enumerate() {
            *dj = if self.state[j] == At::Basic {
                0.0
            } else {
                self.cost[j] - self.column(j).map(|(i, a)| y[i] * a).sum::<f64>()
            };
        }
    }

    /// Largest row residual of `B x_B + N x_N = b`, relative to `1 + |b|`.
    fn residual(&self) -> f64 {
        let mut r = self.b.clone();
        for j in 0..self.ncols() {
            let xj = self.x[j];
            if xj != 0.0 {
                for (i, a) in self.column(j) {
                    r[i] -= a * xj;
                }
            }
        }
        r.iter()
            .zip(&self.b)
            .map(|(v, b)| v.abs() / (1.0 + b.abs()))
            .fold(0.0, f64::max)
    }

    fn eligible(&self, j: usize, dj: f64) -> Option<f64> {
        let tol = self.opts.optimality_tol;
        match self.state[j] {
            At::Lower if dj < -tol && self.lo[j] < self.hi[j] => Some(-dj),
            At::Upper if dj > tol && self.lo[j] < self.hi[j] => Some(dj),
            _ => None,
        }
    }

    fn run(&mut self, iterations: &mut usize) -> Result<LpStatus> {
        let m = self.m;
        let nt = self.ncols();
        let check_every = 100;
        let refactor_cap = 4 * m.max(100);
        let degenerate_limit = 5 * (m + nt);
        let mut degenerate_run = 0usize;
        let mut bland = false;
        let mut d = vec![0.0; nt];
        let mut w = vec![0.0; m];
        let mut alpha = vec![0.0; m];
        let mut rho = vec![0.0; m];
        let mut dense_col = vec![0.0; m];
        self.reduced_costs(&mut d);
        loop {
            if *iterations >= self.opts.max_iterations {
                return Ok(LpStatus::IterationLimit);
            }
            if self.pivots_since_refactor >= refactor_cap
                || (self.pivots_since_refactor > 0
                    && self.pivots_since_refactor % check_every == 0
                    && self.residual() > 1e-7)
            {
                self.refactor()?;
                self.reduced_costs(&mut d);
            }
            let mut enter = None;
            let mut best = -1.0;
            for j in 0..nt {
                let Some(g) = self.eligible(j, d[j]) else {
                    continue;
                };
                if bland {
                    enter = Some(j);
                    break;
                }
                let score = g * g / self.gamma[j];
                if score > best {
                    best = score;
                    enter = Some(j);
                }
            }
            let Some(q) = enter else {
                // Confirm against freshly computed duals before stopping.
                self.refactor()?;
                self.reduced_costs(&mut d);
                if (0..nt).any(|j| self.eligible(j, d[j]).is_some()) {
                    continue;
                }
                return Ok(LpStatus::Optimal);
            };

            // alpha = B⁻¹ a_q
            dense_col.iter_mut().for_each(|v| *v = 0.0);
            for (i, a) in self.column(q) {
                dense_col[i] = a;
            }
            for (k, al) in alpha.iter_mut().enumerate() {
                let row = &self.binv[k * m..(k + 1) * m];
                *al = row.iter().zip(&dense_col).map(|(p, c)| p * c).sum();
            }
            let dir = if self.state[q] == At::Lower {
                1.0
            } else {
                -1.0
            };
            let ptol = self.opts.pivot_tol;
            let ftol = if bland {
                0.0
            } else {
                self.opts.feasibility_tol * 1e-2
            };
            let limit = |k: usize, slack: f64| -> Option<f64> {
                let delta = dir * alpha[k];
                let j = self.basis[k];
                if delta > ptol && self.lo[j].is_finite() {
                    Some((self.x[j] - self.lo[j] + slack) / delta)
                } else if delta < -ptol && self.hi[j].is_finite() {
                    Some((self.hi[j] - self.x[j] + slack) / -delta)
                } else {
                    None
                }
            };
            // Harris pass one: the largest step keeping every basic within tolerance.
            let mut theta_max = f64::INFINITY;
            for k in 0..m {
                if let Some(l) = limit(k, ftol) {
                    theta_max = theta_max.min(l);
                }
            }
            let span = self.hi[q] - self.lo[q];
            let mut leave: Option<usize> = None;
            let mut theta = span;
            if span > theta_max || !span.is_finite() {
                if !theta_max.is_finite() {
                    return Ok(LpStatus::Unbounded);
                }
                // Pass two: among rows blocking within theta_max, the largest pivot.
                let mut best_piv = 0.0;
                for k in 0..m {
                    if let Some(l) = limit(k, 0.0) {
                        if l <= theta_max {
                            let better = if bland {
                                match leave {
                                    None => true,
                                    Some(b) => {
                                        let lb = limit(b, 0.0).unwrap_or(f64::INFINITY);
                                        l < lb - 1e-12
                                            || (l <= lb + 1e-12 && self.basis[k] < self.basis[b])
                                    }
                                }
                            } else {
                                alpha[k].abs() > best_piv
                            };
                            if better {
                                best_piv = alpha[k].abs();
                                leave = Some(k);
                            }
                        }
                    }
                }
                let r = leave
                    .ok_or_else(|| Error::Internal("ratio test found no blocking row".into()))?;
                theta = limit(r, 0.0).unwrap_or(0.0).max(0.0);
            }
            *iterations += 1;
            if theta <= 1e-12 {
                degenerate_run += 1;
                if degenerate_run > degenerate_limit {
                    bland = true;
                }
            } else {
                degenerate_run = 0;
                bland = false;
            }
            for k in 0..m {
                if alpha[k] != 0.0 {
                    self.x[self.basis[k]] -= dir * theta * alpha[k];
                }
            }
            let Some(r) = leave else {
                self.state[q] = if self.state[q] == At::Lower {
                    At::Upper
                } else {
                    At::Lower
                };
                self.x[q] = if self.state[q] == At::Lower {
                    self.lo[q]
                } else {
                    self.hi[q]
                };
                continue;
            };
            let out = self.basis[r];
            if dir * alpha[r] > 0.0 {
                self.state[out] = At::Lower;
                self.x[out] = self.lo[out];
            } else {
                self.state[out] = At::Upper;
                self.x[out] = self.hi[out];
            }
            self.x[q] += dir * theta;
            self.state[q] = At::Basic;
            self.basis[r] = q;
            let piv = alpha[r];

            // Pivot row of the tableau drives the reduced-cost and steepest-edge updates.
            rho.copy_from_slice(&self.binv[r * m..(r + 1) * m]);
            w.iter_mut().for_each(|v| *v = 0.0);
            for (k, &ak) in alpha.iter().enumerate() {
                if ak != 0.0 {
                    for (wi, b) in w.iter_mut().zip(&self.binv[k * m..(k + 1) * m]) {
                        *wi += ak * b;
                    }
                }
            }
            let ratio = d[q] / piv;
            let gq = 1.0 + alpha.iter().map(|a| a * a).sum::<f64>();
            for j in 0..nt {
                if self.state[j] == At::Basic || self.lo[j] == self.hi[j] {
                    continue;
                }
                let (mut arj, mut awj) = (0.0, 0.0);
                for (i, a) in self.column(j) {
                    arj += rho[i] * a;
                    awj += w[i] * a;
                }
                if arj != 0.0 {
                    d[j] -= ratio * arj;
                    let t = arj / piv;
                    self.gamma[j] = (self.gamma[j] - 2.0 * t * awj + t * t * gq).max(1.0 + t * t);
                }
            }
            d[out] = -ratio;
            self.gamma[out] = (gq / (piv * piv)).max(1.0);
            d[q] = 0.0;

            let (before, rest) = self.binv.split_at_mut(r * m);
            let (prow, after) = rest.split_at_mut(m);
            for v in prow.iter_mut() {
                *v /= piv;
            }
            for (k, chunk) in before.chunks_mut(m).enumerate() {
                let f = alpha[k];
                if f != 0.0 {
                    for (c, p) in chunk.iter_mut().zip(prow.iter()) {
                        *c -= f * p;
                    }
                }
            }
            for (k, chunk) in after.chunks_mut(m).enumerate() {
                let f = alpha[r + 1 + k];
                if f != 0.0 {
                    for (c, p) in chunk.iter_mut().zip(prow.iter()) {
                        *c -= f * p;
                    }
                }
            }
            self.pivots_since_refactor += 1;
        }
    }

    fn solution(&self, model: &LpModel, status: LpStatus, iterations: usize) -> LpSolution {
        let primal: Vec<f64> = self.x[..self.n_struct].to_vec();
        LpSolution {
            status,
            value: model.objective_value(&primal),
            primal,
            iterations,
        }
    }
}
