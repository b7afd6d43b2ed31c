use std::collections::HashSet;
use std::fmt;
use std::io::{self, Write};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        })
    }
}

/// Row coefficients. Sparse rows are a storage choice only; every row has one
/// logical coefficient per variable.
#[derive(Clone, Debug, PartialEq)]
pub enum Coeffs {
    Dense(Vec<f64>),
    Sparse(Vec<(usize, f64)>),
}

impl Coeffs {
    pub fn for_each_nonzero(&self, mut f: impl FnMut(usize, f64)) {
        match self {
            Coeffs::Dense(v) => v
                .iter()
                .enumerate()
                .filter(|(_, a)| **a != 0.0)
                .for_each(|(j, &a)| f(j, a)),
            Coeffs::Sparse(v) => v
                .iter()
                .filter(|(_, a)| *a != 0.0)
                .for_each(|&(j, a)| f(j, a)),
        }
    }

    pub fn dot(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        self.for_each_nonzero(|j, a| acc += a * x[j]);
        acc
    }

    fn nonzeros(&self) -> Vec<(usize, u64)> {
        let mut out = Vec::new();
        self.for_each_nonzero(|j, a| out.push((j, a.to_bits())));
        out.sort_unstable();
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub coeffs: Coeffs,
    pub relation: Relation,
    pub rhs: f64,
}

#[derive(Clone, Debug)]
pub struct LpModel {
    pub sense: Sense,
    pub objective: Vec<f64>,
    pub rows: Vec<Row>,
    pub lower: Vec<f64>,
    pub upper: Vec<Option<f64>>,
}

impl LpModel {
    pub fn new(sense: Sense, objective: Vec<f64>) -> Self {
        let nv = objective.len();
        LpModel {
            sense,
            objective,
            rows: Vec::new(),
            lower: vec![0.0; nv],
            upper: vec![None; nv],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn add_row(&mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) -> Result<()> {
        if coeffs.len() != self.num_vars() {
            return Err(Error::param(format!(
                "row has {} coefficients for {} variables",
                coeffs.len(),
                self.num_vars()
            )));
        }
        self.rows.push(Row {
            coeffs: Coeffs::Dense(coeffs),
            relation,
            rhs,
        });
        Ok(())
    }

    pub fn add_sparse_row(
        &mut self,
        entries: Vec<(usize, f64)>,
        relation: Relation,
        rhs: f64,
    ) -> Result<()> {
        if let Some(&(j, _)) = entries.iter().find(|(j, _)| *j >= self.num_vars()) {
            return Err(Error::param(format!("variable {j} out of range")));
        }
        self.rows.push(Row {
            coeffs: Coeffs::Sparse(entries),
            relation,
            rhs,
        });
        Ok(())
    }

    pub fn set_bounds(&mut self, j: usize, lower: f64, upper: Option<f64>) {
        self.lower[j] = lower;
        self.upper[j] = upper;
    }

    /// Tightens the upper bound of `j` to `u` if `u` is smaller.
    pub fn cap_upper(&mut self, j: usize, u: f64) {
        self.upper[j] = Some(match self.upper[j] {
            Some(old) => old.min(u),
            None => u,
        });
    }

    pub fn fix(&mut self, j: usize, v: f64) {
        self.set_bounds(j, v, Some(v));
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Largest violation of any row or bound, each measured relative to `1 + |rhs|`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for row in &self.rows {
            let lhs = row.coeffs.dot(x);
            let v = match row.relation {
                Relation::Le => lhs - row.rhs,
                Relation::Ge => row.rhs - lhs,
                Relation::Eq => (lhs - row.rhs).abs(),
            };
            worst = worst.max(v / (1.0 + row.rhs.abs()));
        }
        for (j, &xj) in x.iter().enumerate() {
            worst = worst.max((self.lower[j] - xj) / (1.0 + self.lower[j].abs()));
            if let Some(u) = self.upper[j] {
                worst = worst.max((xj - u) / (1.0 + u.abs()));
            }
        }
        worst
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |v: f64| v.is_finite();
        if !self.objective.iter().copied().all(finite) {
            return Err(Error::param("objective has a non-finite coefficient"));
        }
        for (i, row) in self.rows.iter().enumerate() {
            let mut ok = finite(row.rhs);
            row.coeffs.for_each_nonzero(|_, a| ok &= finite(a));
            if let Coeffs::Dense(v) = &row.coeffs {
                ok &= v.len() == self.num_vars();
            }
            if !ok {
                return Err(Error::param(format!(
                    "row {i} is malformed or has a non-finite entry"
                )));
            }
        }
        for j in 0..self.num_vars() {
            if !finite(self.lower[j]) {
                return Err(Error::Unsupported(format!(
                    "variable {j} needs a finite lower bound"
                )));
            }
            if let Some(u) = self.upper[j] {
                if !finite(u) {
                    return Err(Error::param(format!(
                        "variable {j} has a non-finite upper bound"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Indices of rows that are not exact repeats of an earlier row.
    pub fn distinct_rows(&self) -> Vec<usize> {
        let mut seen = HashSet::new();
        (0..self.rows.len())
            .filter(|&i| {
                let r = &self.rows[i];
                seen.insert((r.coeffs.nonzeros(), r.relation, r.rhs.to_bits()))
            })
            .collect()
    }

    /// Plain-text dump: an objective line, then one line per constraint with
    /// every coefficient, the relation and the right-hand side. Variable bounds
    /// follow as single-variable constraints.
    pub fn write_dump<W: Write>(&self, mut out: W) -> io::Result<()> {
        let nv = self.num_vars();
        writeln!(
            out,
            "# variables {nv} constraints {} bounds follow rows",
            self.num_rows()
        )?;
        let sense = match self.sense {
            Sense::Maximize => "max",
            Sense::Minimize => "min",
        };
        write!(out, "{sense}")?;
        for c in &self.objective {
            write!(out, " {c}")?;
        }
        writeln!(out)?;
        let mut dense = vec![0.0; nv];
        let emit = |out: &mut W, dense: &[f64], rel: Relation, rhs: f64| -> io::Result<()> {
            let mut first = true;
            for a in dense {
                if !first {
                    write!(out, " ")?;
                }
                first = false;
                write!(out, "{a}")?;
            }
            writeln!(out, " {rel} {rhs}")
        };
        for row in &self.rows {
            dense.iter_mut().for_each(|v| *v = 0.0);
            row.coeffs.for_each_nonzero(|j, a| dense[j] = a);
            emit(&mut out, &dense, row.relation, row.rhs)?;
        }
        for j in 0..nv {
            dense.iter_mut().for_each(|v| *v = 0.0);
            dense[j] = 1.0;
            match self.upper[j] {
                Some(u) if u == self.lower[j] => emit(&mut out, &dense, Relation::Eq, u)?,
                Some(u) => {
                    if self.lower[j] != 0.0 {
                        emit(&mut out, &dense, Relation::Ge, self.lower[j])?;
                    }
                    emit(&mut out, &dense, Relation::Le, u)?;
                }
                None if self.lower[j] != 0.0 => {
                    emit(&mut out, &dense, Relation::Ge, self.lower[j])?
                }
                None => {}
            }
        }
        Ok(())
    }
}
