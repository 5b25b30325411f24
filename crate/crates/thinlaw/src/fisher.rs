//! Scaled Fisher information `K`, the auxiliary functional `S` that controls
//! its derivative under thinning, and the small-alpha rate limit.

use crate::charlier::{charlier_moments, find_kappa, KAPPA_TOL};
use crate::classes::is_ub;
use crate::distcore::{summary_stats, KahanSum, Pmf};
use crate::error::{Error, Result};
use crate::thinning::thin;

/// The scaled score `rho_X(x) = (x+1) P(x+1) / (lambda P(x)) - 1` on the
/// support of a PMF.
#[derive(Clone, Debug)]
pub struct ScoreVector {
    /// Mean of the underlying PMF.
    pub lambda: f64,
    /// `rho[x]` aligned with the support; zero placeholder at excluded
    /// positions.
    pub rho: Vec<f64>,
    /// Interior positions with `P(x) = 0` where the score is undefined.
    /// Nonempty gaps flag the PMF as non-contiguous, which excludes it from
    /// the `K`-based divergence bounds.
    pub gaps: Vec<usize>,
}

impl ScoreVector {
    pub fn contiguous(&self) -> bool {
        self.gaps.is_empty()
    }
}

/// Scaled score of `P`. Errors on zero-mean input.
pub fn score(p: &Pmf) -> Result<ScoreVector> {
    let (lambda, _) = summary_stats(p);
    if lambda <= 0.0 {
        return Err(Error::ParameterDomain("score requires mean(P) > 0".into()));
    }
    let hull = p.probs().iter().rposition(|&v| v > 0.0).unwrap_or(0);
    let mut rho = vec![0.0; p.len()];
    let mut gaps = Vec::new();
    for (x, r) in rho.iter_mut().enumerate() {
        let px = p.get(x);
        if px > 0.0 {
            *r = (x + 1) as f64 * p.get(x + 1) / (lambda * px) - 1.0;
        } else if x < hull {
            gaps.push(x);
        }
    }
    Ok(ScoreVector { lambda, rho, gaps })
}

/// Scaled Fisher information `K(P) = lambda E[rho(X)^2]`; zero exactly for
/// the Poisson law.
pub fn k_info(p: &Pmf) -> Result<f64> {
    let sv = score(p)?;
    let mut s = KahanSum::new();
    for (x, &px) in p.probs().iter().enumerate() {
        if px > 0.0 {
            s.add(px * sv.rho[x] * sv.rho[x]);
        }
    }
    Ok(sv.lambda * s.value())
}

/// The functional
/// `S(Y) = (1/mu) sum_y (y+1) Q(y+1) (Q(y+1)(y+1)/Q(y) - Q(y+2)(y+2)/Q(y+1))^2`
/// whose value at `T_alpha P` is `alpha^2 (d/d alpha)(K(T_alpha P)/alpha)`.
/// Terms at zero-mass points contribute zero and are skipped.
pub fn s_info(p: &Pmf) -> Result<f64> {
    let (mu, _) = summary_stats(p);
    if mu <= 0.0 {
        return Err(Error::ParameterDomain("s_info requires mean(P) > 0".into()));
    }
    let mut s = KahanSum::new();
    for y in 0..p.len() {
        let (qy, qy1, qy2) = (p.get(y), p.get(y + 1), p.get(y + 2));
        if qy == 0.0 || qy1 == 0.0 {
            continue;
        }
        let diff = qy1 * (y + 1) as f64 / qy - qy2 * (y + 2) as f64 / qy1;
        s.add((y + 1) as f64 * qy1 * diff * diff / mu);
    }
    Ok(s.value())
}

/// One row of the small-alpha rate sweep.
#[derive(Clone, Copy, Debug)]
pub struct KRateRow {
    pub alpha: f64,
    pub k_thinned: f64,
    /// `K(T_alpha P) / alpha^kappa`; converges to `kappa c^2`.
    pub k_scaled: f64,
}

/// Result of [`k_rate_limit`]: the sweep rows plus the limit data
/// `kappa` and `c = E[P_kappa^lambda(X)]`.
#[derive(Clone, Debug)]
pub struct KRateSweep {
    pub kappa: usize,
    pub c: f64,
    pub rows: Vec<KRateRow>,
}

/// Sweeps `K(T_alpha P) / alpha^kappa` along a decreasing alpha grid for an
/// ultra bounded `P` whose mean equals `lambda`. The ratio tends to
/// `kappa c^2` as alpha goes to zero.
pub fn k_rate_limit(p: &Pmf, lambda: f64, alpha_grid: &[f64]) -> Result<KRateSweep> {
    let (mean, _) = summary_stats(p);
    if (mean - lambda).abs() > 1e-6 * lambda.abs().max(1.0) {
        return Err(Error::ParameterDomain(format!(
            "k_rate_limit requires lambda = mean(P); got lambda = {lambda}, mean = {mean}"
        )));
    }
    let cert = is_ub(p, lambda * (1.0 + 1e-9), 30)?;
    if !cert.holds {
        let detail = cert
            .witness
            .map(|w| {
                format!(
                    "E[X^({})] = {} exceeds lambda E[X^({})] = {}",
                    w.index,
                    w.lhs,
                    w.index - 1,
                    w.rhs
                )
            })
            .unwrap_or_default();
        return Err(Error::HypothesisViolation {
            class: format!("ultra bounded (ratio {lambda})"),
            detail,
        });
    }
    if alpha_grid.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::ParameterDomain(
            "alpha_grid must be strictly decreasing".into(),
        ));
    }
    let coeffs = charlier_moments(p, lambda, 12)?;
    let (kappa, c) = match find_kappa(&coeffs, KAPPA_TOL) {
        Some(k) => (k, coeffs.coeffs[k]),
        None => (1, 0.0), // Poisson-like: K is identically zero on the grid
    };
    let rows = alpha_grid
        .iter()
        .map(|&alpha| {
            if !(alpha > 0.0 && alpha <= 1.0) {
                return Err(Error::ParameterDomain(format!(
                    "alpha = {alpha} outside (0, 1]"
                )));
            }
            let k_thinned = k_info(&thin(p, alpha)?)?;
            Ok(KRateRow {
                alpha,
                k_thinned,
                k_scaled: k_thinned / alpha.powi(kappa as i32),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KRateSweep { kappa, c, rows })
}
