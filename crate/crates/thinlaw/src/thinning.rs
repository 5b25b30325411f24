//! The alpha-thinning operator, compound thinning, and the compound Poisson
//! construction.

use crate::distcore::{convolve, materialize_poisson, KahanSum, Pmf};
use crate::error::{Error, Result};

/// Thinning parameters: retention probability plus an optional compounding
/// distribution on `{1, 2, ...}` (absent means plain thinning).
#[derive(Clone, Debug)]
pub struct ThinParams {
    pub alpha: f64,
    pub compounder: Option<Pmf>,
}

impl ThinParams {
    pub fn new(alpha: f64, compounder: Option<Pmf>) -> Result<Self> {
        check_alpha(alpha)?;
        if let Some(q) = &compounder {
            check_compounder(q)?;
        }
        Ok(ThinParams { alpha, compounder })
    }

    pub fn apply(&self, p: &Pmf) -> Result<Pmf> {
        match &self.compounder {
            None => thin(p, self.alpha),
            Some(q) => compound_thin(p, self.alpha, q),
        }
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::ParameterDomain(format!(
            "alpha = {alpha} outside [0, 1]"
        )))
    }
}

fn check_compounder(q: &Pmf) -> Result<()> {
    if q.get(0) > 0.0 {
        Err(Error::ParameterDomain(
            "compounding distribution has mass at 0 (ambiguous compounding)".into(),
        ))
    } else {
        Ok(())
    }
}

/// Alpha-thinning: each unit of the variable survives independently with
/// probability `alpha`, so `T_alpha(P)(z) = sum_{x >= z} P(x) Bin(x, alpha)(z)`.
///
/// The binomial kernel for each source point `x` is generated by the ratio
/// recurrence in `z`, carried in log space so that `x` up to ~1e4 neither
/// overflows a factorial nor underflows the `(1-alpha)^x` seed.
pub fn thin(p: &Pmf, alpha: f64) -> Result<Pmf> {
    check_alpha(alpha)?;
    // alpha exactly 0 or 1 short-circuits; removes the 0^0 ambiguity.
    if alpha == 1.0 {
        return Ok(p.clone());
    }
    if alpha == 0.0 {
        return Ok(Pmf::point_mass(0));
    }
    let mut out = vec![KahanSum::new(); p.len()];
    let log_keep = alpha.ln();
    let log_drop = (-alpha).ln_1p();
    let log_odds = log_keep - log_drop;
    for (x, &px) in p.probs().iter().enumerate() {
        if px == 0.0 {
            continue;
        }
        // log Bin(x, alpha)(z), seeded at z = 0.
        let mut log_b = x as f64 * log_drop;
        out[0].add(px * log_b.exp());
        for z in 0..x {
            log_b += (((x - z) as f64) / ((z + 1) as f64)).ln() + log_odds;
            out[z + 1].add(px * log_b.exp());
        }
    }
    let probs: Vec<f64> = out.iter().map(|k| k.value()).collect();
    Pmf::new(probs, p.tail())
}

/// Compound thinning: surviving units are replaced by independent draws
/// from `Q`, so the result mixes compound binomials
/// `CBin(l, alpha, Q) = ((1-alpha) d_0 + alpha Q)^{*l}` with weights `P(l)`.
///
/// The `l`-fold convolutions are built incrementally across mixture terms,
/// one convolution per source point.
pub fn compound_thin(p: &Pmf, alpha: f64, q: &Pmf) -> Result<Pmf> {
    check_alpha(alpha)?;
    check_compounder(q)?;
    if alpha == 0.0 {
        return Ok(Pmf::point_mass(0));
    }
    // Two-point compounding kernel (1-alpha) d_0 + alpha Q.
    let kernel = {
        let mut probs: Vec<f64> = q.probs().iter().map(|&v| alpha * v).collect();
        probs[0] += 1.0 - alpha;
        Pmf::new(probs, alpha * q.tail())?
    };
    let max_len = p.len() + (p.len() - 1) * (kernel.len() - 1);
    let mut out = vec![KahanSum::new(); max_len];
    let mut tail = KahanSum::new();
    tail.add(p.tail());
    let mut current = Pmf::point_mass(0); // kernel^{*0}
    for (l, &pl) in p.probs().iter().enumerate() {
        if pl > 0.0 {
            for (k, &ck) in current.probs().iter().enumerate() {
                out[k].add(pl * ck);
            }
            tail.add(pl * current.tail());
        }
        if l + 1 < p.len() {
            current = convolve(&current, &kernel)?;
        }
    }
    let probs: Vec<f64> = out.iter().map(|k| k.value()).collect();
    Pmf::new(probs, tail.value().max(0.0))
}

/// `CPo(lambda, Q)`: a Poisson(lambda) mixture of the self-convolutions of
/// `Q`, truncated when the Poisson weight tail drops below `eps_tail`.
pub fn compound_poisson(lambda: f64, q: &Pmf, eps_tail: f64) -> Result<Pmf> {
    if lambda <= 0.0 {
        return Err(Error::ParameterDomain(format!(
            "lambda = {lambda} must be > 0"
        )));
    }
    check_compounder(q)?;
    if !(eps_tail > 0.0 && eps_tail <= 1e-3) {
        return Err(Error::ParameterDomain(format!(
            "eps_tail {eps_tail} outside (0, 1e-3]"
        )));
    }
    let weights = materialize_poisson(lambda, eps_tail)?;
    let max_len = 1 + (weights.len() - 1) * (q.len() - 1) + (weights.len() - 1);
    let mut out = vec![KahanSum::new(); max_len];
    let mut tail = KahanSum::new();
    tail.add(weights.tail());
    let mut current = Pmf::point_mass(0);
    for (k, &wk) in weights.probs().iter().enumerate() {
        if wk > 0.0 {
            for (j, &cj) in current.probs().iter().enumerate() {
                out[j].add(wk * cj);
            }
            tail.add(wk * current.tail());
        }
        if k + 1 < weights.len() {
            current = convolve(&current, q)?;
        }
    }
    let probs: Vec<f64> = out.iter().map(|s| s.value()).collect();
    Pmf::new(probs, tail.value().max(0.0))
}
