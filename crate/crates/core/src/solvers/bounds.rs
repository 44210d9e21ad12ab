//! Analytic performance guarantees as exact rationals.
//!
//! For `a > b > 0` the matching strategy is within
//! `1 + a / (2(a+b)) = (3a+2b)/(2a+2b)` of optimal and a `rho`-approximate
//! path cover gives `rho (a+b)/a`. Taking the better of the two, the
//! guarantee with an exact cover is worst where the two meet,
//! `a^2 = 2ab + 2b^2`, i.e. `a/b = 1 + sqrt(3)`, with value
//! `(1 + sqrt(3)) / 2`.

use std::cmp::Ordering;

use num_rational::Ratio;

use crate::instance::TaskParams;

pub type Rational = Ratio<u64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundTable {
    pub matching: Rational,
    pub dpc: Rational,
    pub combined: Rational,
    /// Sign of `a^2 - 2ab - 2b^2`: `Less` means `a/b` is below the
    /// crossover and the matching bound is the smaller one.
    pub crossover: Ordering,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("bounds need a > b > 0, got a={a} b={b}")]
    NotIsomorphic { a: u64, b: u64 },
    #[error("path cover ratio must be at least 1")]
    RhoBelowOne,
}

pub fn matching_bound(a: u64, b: u64) -> Rational {
    Ratio::new(3 * a + 2 * b, 2 * a + 2 * b)
}

pub fn dpc_bound(a: u64, b: u64, rho_dpc: Rational) -> Rational {
    rho_dpc * Ratio::new(a + b, a)
}

/// Sign of `a^2 - 2ab - 2b^2`.
pub fn crossover_side(a: u64, b: u64) -> Ordering {
    let (a, b) = (a as i128, b as i128);
    (a * a - 2 * a * b - 2 * b * b).cmp(&0)
}

pub fn bounds(params: TaskParams, rho_dpc: Rational) -> Result<BoundTable, BoundsError> {
    let TaskParams { a, b, .. } = params;
    if b == 0 || a <= b {
        return Err(BoundsError::NotIsomorphic { a, b });
    }
    if rho_dpc < Ratio::from_integer(1) {
        return Err(BoundsError::RhoBelowOne);
    }
    let matching = matching_bound(a, b);
    let dpc = dpc_bound(a, b, rho_dpc);
    Ok(BoundTable {
        matching,
        dpc,
        combined: matching.min(dpc),
        crossover: crossover_side(a, b),
    })
}

/// `(1 + sqrt 3) / 2` as a float, for display only.
pub fn worst_combined_approx() -> f64 {
    (1.0 + 3f64.sqrt()) / 2.0
}

/// Exact comparison of a rational `r` with `(1 + sqrt 3) / 2`.
///
/// `r = p/q` compares like `2p - q` against `q sqrt 3`, and both sides are
/// compared through their squares when `2p - q >= 0`.
pub fn cmp_with_worst_combined(r: Rational) -> Ordering {
    let (p, q) = (*r.numer() as i128, *r.denom() as i128);
    let lhs = 2 * p - q;
    if lhs < 0 {
        return Ordering::Less;
    }
    (lhs * lhs).cmp(&(3 * q * q))
}

/// Maximum combined bound (with an exact path cover) over `a` in the
/// inclusive range for fixed `b`; returns the smallest maximizing `a`.
pub fn combined_bound_sweep(b: u64, a_min: u64, a_max: u64) -> Option<(u64, Rational)> {
    let one = Ratio::from_integer(1);
    (a_min.max(b + 1)..=a_max)
        .map(|a| {
            let t = bounds(TaskParams::new(a, b, a + b), one).expect("a > b");
            (a, t.combined)
        })
        .fold(None, |best: Option<(u64, Rational)>, (a, v)| match best {
            Some((_, bv)) if bv >= v => best,
            _ => Some((a, v)),
        })
}
