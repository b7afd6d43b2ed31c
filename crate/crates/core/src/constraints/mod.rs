//! Constraint families: membership, exact character sums and orbit structure.
//!
//! `F_A(s) = Σ_{x∈A} (-1)^{x·s}` throughout, an exact integer.

mod eval;
mod orbits;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::gf2::BitWord;

pub use eval::{Constraint, TwoChargeBasis, MAX_ENUMERATION_N};
pub use orbits::{orbit_char_sum, orbit_structure, OrbitLabel, OrbitStructure};

/// One constraint family with its parameters. Blocklength is supplied at use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConstraintSpec {
    /// Running sums of `(-1)^{x_i}` stay in `[0, 2]`.
    TwoCharge,
    /// `p` equal subblocks, each of weight `z`.
    Subblock { p: usize, z: usize },
    /// At least `d` zeros between consecutive ones.
    Rll { d: usize },
    /// Every zero run, leading and trailing included, has odd length; `0^n` is a member.
    OddStrict,
    /// Zero runs between consecutive ones have odd length. Even `n` only.
    OddRelaxed,
    /// Every zero run, leading and trailing included, has even length; `0^n` is a member.
    EvenStrict,
    /// Words of weight exactly `i`.
    FixedWeight { i: usize },
    /// The whole space.
    Unconstrained,
}

impl ConstraintSpec {
    /// Checks parameter/blocklength compatibility and returns the prepared evaluator.
    pub fn at(&self, n: usize) -> Result<Constraint> {
        Constraint::new(*self, n)
    }

    pub fn check(&self, n: usize) -> Result<()> {
        eval::check(*self, n)
    }

    pub fn member(&self, x: &BitWord) -> Result<bool> {
        Ok(self.at(x.len())?.member(x))
    }

    pub fn cardinality(&self, n: usize) -> Result<BigInt> {
        Ok(self.at(n)?.cardinality())
    }

    pub fn char_sum(&self, s: &BitWord) -> Result<BigInt> {
        Ok(self.at(s.len())?.char_sum(s))
    }

    /// Members in lexicographic order (coordinate 1 compared first).
    pub fn enumerate_members(&self, n: usize) -> Result<Vec<BitWord>> {
        self.at(n)?.enumerate_members()
    }

    pub fn has_orbits(&self) -> bool {
        matches!(
            self,
            ConstraintSpec::TwoCharge | ConstraintSpec::Subblock { .. }
        )
    }
}

impl fmt::Display for ConstraintSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstraintSpec::TwoCharge => write!(f, "2charge"),
            ConstraintSpec::Subblock { p, z } => write!(f, "subblock:p={p},z={z}"),
            ConstraintSpec::Rll { d } => write!(f, "rll:d={d}"),
            ConstraintSpec::OddStrict => write!(f, "odd-strict"),
            ConstraintSpec::OddRelaxed => write!(f, "odd"),
            ConstraintSpec::EvenStrict => write!(f, "even-strict"),
            ConstraintSpec::FixedWeight { i } => write!(f, "weight:i={i}"),
            ConstraintSpec::Unconstrained => write!(f, "none"),
        }
    }
}

/// Splits `kind:k1=v1,k2=v2` into the kind and its integer parameters.
pub(crate) fn parse_params(text: &str) -> Result<(&str, Vec<(&str, usize)>)> {
    let (kind, rest) = match text.split_once(':') {
        Some((k, r)) => (k, Some(r)),
        None => (text, None),
    };
    let mut params = Vec::new();
    if let Some(rest) = rest {
        for part in rest.split(',') {
            let (key, val) = part.split_once('=').ok_or_else(|| {
                Error::param(format!("expected key=value in {text:?}, got {part:?}"))
            })?;
            let val = val.trim().parse::<usize>().map_err(|_| {
                Error::param(format!("{key} must be a non-negative integer in {text:?}"))
            })?;
            params.push((key.trim(), val));
        }
    }
    Ok((kind.trim(), params))
}

/// Looks up the named parameters in order, rejecting missing and unknown keys.
pub(crate) fn take_params<const N: usize>(
    text: &str,
    params: &[(&str, usize)],
    names: [&str; N],
) -> Result<[usize; N]> {
    if let Some((k, _)) = params.iter().find(|(k, _)| !names.contains(k)) {
        return Err(Error::param(format!("unknown parameter {k:?} in {text:?}")));
    }
    let mut out = [0; N];
    for (slot, name) in out.iter_mut().zip(names) {
        let mut hits = params.iter().filter(|(k, _)| *k == name);
        *slot = hits
            .next()
            .ok_or_else(|| Error::param(format!("missing parameter {name} in {text:?}")))?
            .1;
        if hits.next().is_some() {
            return Err(Error::param(format!(
                "parameter {name} repeated in {text:?}"
            )));
        }
    }
    Ok(out)
}

impl FromStr for ConstraintSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (kind, params) = parse_params(text)?;
        let spec = match kind {
            "2charge" => {
                take_params(text, &params, [])?;
                ConstraintSpec::TwoCharge
            }
            "subblock" => {
                let [p, z] = take_params(text, &params, ["p", "z"])?;
                if p == 0 {
                    return Err(Error::param("subblock needs p >= 1"));
                }
                ConstraintSpec::Subblock { p, z }
            }
            "rll" => {
                let [d] = take_params(text, &params, ["d"])?;
                if d == 0 {
                    return Err(Error::param("rll needs d >= 1"));
                }
                ConstraintSpec::Rll { d }
            }
            "odd-strict" => {
                take_params(text, &params, [])?;
                ConstraintSpec::OddStrict
            }
            "odd" => {
                take_params(text, &params, [])?;
                ConstraintSpec::OddRelaxed
            }
            "even-strict" => {
                take_params(text, &params, [])?;
                ConstraintSpec::EvenStrict
            }
            "weight" => {
                let [i] = take_params(text, &params, ["i"])?;
                ConstraintSpec::FixedWeight { i }
            }
            "none" => {
                take_params(text, &params, [])?;
                ConstraintSpec::Unconstrained
            }
            _ => return Err(Error::param(format!("unknown constraint {kind:?}"))),
        };
        Ok(spec)
    }
}
