//! Poisson-Charlier polynomials, Charlier moments, the likelihood-ratio
//! expansion against a Poisson reference, and the resulting chi-square
//! series.
//!
//! Polynomial values always come from the three-term recurrence; the
//! defining alternating sum loses roughly `k` digits at large `x` and is
//! kept only as a test oracle.

use serde::Serialize;

use crate::classes::{is_pb, minimal_pb_ratio};
use crate::distcore::{factorial_moment, KahanSum, Pmf};
use crate::error::{Error, Result};

/// Default expansion order.
pub const DEFAULT_KMAX: usize = 24;

/// Default tolerance for [`find_kappa`]; coefficients are O(1)-scaled by the
/// orthonormal normalization, so an absolute cutoff is appropriate.
pub const KAPPA_TOL: f64 = 1e-9;

/// Truncation metadata attached to a coefficient sequence.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TruncNote {
    /// Tail residual of the PMF the moments were computed from.
    pub pmf_tail: f64,
    /// Envelope on `|c_k|` for `k > kmax`, from the Poisson-bounded
    /// certificate ratio; `None` when no certificate was consulted.
    pub coeff_envelope: Option<f64>,
}

/// Charlier moments `c_k = E[P_k^lambda(X)]` for `k = 0..=kmax`.
#[derive(Clone, Debug)]
pub struct CharlierCoeffs {
    pub lambda: f64,
    pub coeffs: Vec<f64>,
    pub kmax: usize,
    pub trunc_note: TruncNote,
}

#[derive(Serialize)]
struct CoeffsJson<'a> {
    lambda: f64,
    coeffs: &'a [f64],
}

impl CharlierCoeffs {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&CoeffsJson {
            lambda: self.lambda,
            coeffs: &self.coeffs,
        })
        .expect("coefficient serialization cannot fail")
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 {
        Ok(())
    } else {
        Err(Error::ParameterDomain(format!(
            "lambda = {lambda} must be > 0"
        )))
    }
}

/// Values `P_k^lambda(x)` for `x = 0..=xmax`, built row by row from the
/// recurrence `P_{k+1}(x) = (x P_k(x-1) - lambda P_k(x)) / sqrt(lambda (k+1))`.
pub fn charlier_row(k: usize, lambda: f64, xmax: usize) -> Result<Vec<f64>> {
    check_lambda(lambda)?;
    let mut row = vec![1.0; xmax + 1];
    for j in 0..k {
        let norm = (lambda * (j + 1) as f64).sqrt();
        let mut prev_at_x_minus_1 = 0.0; // x * P_j(x-1) vanishes at x = 0
        for (x, cell) in row.iter_mut().enumerate() {
            let cur = *cell;
            *cell = (x as f64 * prev_at_x_minus_1 - lambda * cur) / norm;
            prev_at_x_minus_1 = cur;
        }
    }
    Ok(row)
}

/// Single polynomial value `P_k^lambda(x)`.
pub fn charlier_eval(k: usize, lambda: f64, x: usize) -> Result<f64> {
    Ok(charlier_row(k, lambda, x)?[x])
}

/// Charlier moment `E[P_k^lambda(X)]` from the factorial moments:
/// `c_k = (lambda^k k!)^{-1/2} sum_l (-lambda)^{k-l} C(k, l) E[X^(l)]`.
pub fn charlier_moment(p: &Pmf, lambda: f64, k: usize) -> Result<f64> {
    check_lambda(lambda)?;
    if k == 0 {
        return Ok(factorial_moment(p, 0));
    }
    let mut sum = KahanSum::new();
    let mut binom = 1.0; // C(k, l)
    let mut lam_pow = if k.is_multiple_of(2) {
        lambda.powi(k as i32)
    } else {
        -lambda.powi(k as i32)
    };
    for l in 0..=k {
        if l > 0 {
            binom *= (k - l + 1) as f64 / l as f64;
            lam_pow /= -lambda;
        }
        sum.add(lam_pow * binom * factorial_moment(p, l));
    }
    // 1 / sqrt(lambda^k k!) in log space; k! overflows past 170 otherwise.
    let mut log_norm = -0.5 * k as f64 * lambda.ln();
    for j in 1..=k {
        log_norm -= 0.5 * (j as f64).ln();
    }
    Ok(sum.value() * log_norm.exp())
}

/// All Charlier moments up to `kmax`, without any class gate. See
/// [`lr_coefficients`] for the certified expansion.
pub fn charlier_moments(p: &Pmf, lambda: f64, kmax: usize) -> Result<CharlierCoeffs> {
    let coeffs: Vec<f64> = (0..=kmax)
        .map(|k| charlier_moment(p, lambda, k))
        .collect::<Result<_>>()?;
    Ok(CharlierCoeffs {
        lambda,
        coeffs,
        kmax,
        trunc_note: TruncNote {
            pmf_tail: p.tail(),
            coeff_envelope: None,
        },
    })
}

/// Smallest `k` in `[1, kmax]` with `|c_k| > tol`, or `None` when every
/// coefficient is below tolerance ("Poisson-like up to kmax").
pub fn find_kappa(coeffs: &CharlierCoeffs, tol: f64) -> Option<usize> {
    coeffs
        .coeffs
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, c)| c.abs() > tol)
        .map(|(k, _)| k)
}

/// Coefficients of the likelihood-ratio expansion
/// `P(x) / Po(lambda, x) = sum_k c_k P_k^lambda(x)`, which requires the
/// input to be Poisson bounded for the series to converge in `L^2`.
///
/// The returned truncation note bounds `|c_k|` for `k > kmax` via the
/// envelope `e^mu (mu^2/lambda)^{(kmax+1)/2} / sqrt((kmax+1)!)` built from
/// the certificate ratio `mu`.
pub fn lr_coefficients(p: &Pmf, lambda: f64, kmax: usize) -> Result<CharlierCoeffs> {
    check_lambda(lambda)?;
    let mu = minimal_pb_ratio(p);
    let cert = is_pb(p, mu * (1.0 + 1e-9), kmax.max(p.max_index()))?;
    if !cert.holds {
        let w = cert.witness.as_ref().map(|w| {
            format!(
                "factorial moment E[X^({})] = {} exceeds {}",
                w.index, w.lhs, w.rhs
            )
        });
        return Err(Error::HypothesisViolation {
            class: format!("Poisson bounded (ratio {mu})"),
            detail: w.unwrap_or_else(|| "PB certificate failed".into()),
        });
    }
    let mut out = charlier_moments(p, lambda, kmax)?;
    let k1 = (kmax + 1) as f64;
    let mut log_env = mu + 0.5 * k1 * (mu * mu / lambda).ln();
    for j in 1..=(kmax + 1) {
        log_env -= 0.5 * (j as f64).ln();
    }
    out.trunc_note.coeff_envelope = Some(log_env.exp());
    Ok(out)
}

/// Evaluates the truncated likelihood-ratio expansion at `x`.
pub fn lr_reconstruct(coeffs: &CharlierCoeffs, x: usize) -> Result<f64> {
    let mut acc = KahanSum::new();
    for (k, &ck) in coeffs.coeffs.iter().enumerate() {
        if ck != 0.0 {
            acc.add(ck * charlier_eval(k, coeffs.lambda, x)?);
        }
    }
    Ok(acc.value())
}

/// Chi-square series `sum_{k >= 1} alpha^{2k} c_k^2`, the exact value of
/// `chi2(U_alpha^lambda P, Po(lambda))` up to the `kmax` truncation.
pub fn chi2_series(coeffs: &CharlierCoeffs, alpha: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::ParameterDomain(format!(
            "alpha = {alpha} outside [0, 1]"
        )));
    }
    let mut s = KahanSum::new();
    let a2 = alpha * alpha;
    let mut weight = 1.0;
    for &ck in coeffs.coeffs.iter().skip(1) {
        weight *= a2;
        s.add(weight * ck * ck);
    }
    Ok(s.value())
}
