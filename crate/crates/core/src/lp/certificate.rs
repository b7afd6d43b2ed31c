use num_traits::ToPrimitive;

use super::bounds::del_classic;
use crate::constraints::ConstraintSpec;
use crate::error::{Error, Result};
use crate::spectral::wht_f64;

pub const CERTIFICATE_TOL: f64 = 1e-9;
pub const MAX_CERTIFICATE_N: usize = 16;

/// Checks a dual certificate `beta` (indexed by word) and returns
/// `beta(0) * min(OPT(Del(n,d)), |A|)`.
///
/// The conditions are: nonnegative transform, `beta(s) <= 0` whenever
/// `w(s) >= d`, and `sum beta = 2^n`.
pub fn dual_certificate_bound(
    n: usize,
    d: usize,
    constraint: ConstraintSpec,
    beta: &[f64],
) -> Result<f64> {
    if n > MAX_CERTIFICATE_N {
        return Err(Error::cap("certificate length n", n, MAX_CERTIFICATE_N));
    }
    if d == 0 || d > n {
        return Err(Error::param(format!("need 1 <= d <= n, got n={n} d={d}")));
    }
    let size = 1usize << n;
    if beta.len() != size {
        return Err(Error::param(format!(
            "certificate has {} entries, expected {size}",
            beta.len()
        )));
    }
    if let Some(x) = beta.iter().position(|b| !b.is_finite()) {
        return Err(Error::param(format!("certificate entry {x} is not finite")));
    }
    let scale = beta.iter().fold(1.0f64, |m, b| m.max(b.abs()));

    let mut hat = beta.to_vec();
    wht_f64(&mut hat);
    if let Some(s) = hat
        .iter()
        .position(|&v| v < -CERTIFICATE_TOL * scale * size as f64)
    {
        return Err(Error::CertificateRejected(format!(
            "transform is negative at word index {s} ({})",
            hat[s]
        )));
    }
    if let Some(s) =
        (0..size).find(|&s| s.count_ones() as usize >= d && beta[s] > CERTIFICATE_TOL * scale)
    {
        return Err(Error::CertificateRejected(format!(
            "value {} is positive at word index {s} of weight >= d",
            beta[s]
        )));
    }
    let total: f64 = beta.iter().sum();
    let target = size as f64;
    if (total - target).abs() > CERTIFICATE_TOL * target.max(scale) {
        return Err(Error::CertificateRejected(format!(
            "values sum to {total}, expected {target}"
        )));
    }

    let v = del_classic(n, d)?.lp_value;
    let card = constraint.cardinality(n)?.to_f64().unwrap_or(f64::INFINITY);
    Ok(beta[0] * v.min(card))
}
