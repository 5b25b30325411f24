//! Exact finite-support representation of distributions on the nonnegative
//! integers, with convolution, moments, and entropy.
//!
//! Every infinite-support family is truncated at the smallest support size
//! whose residual mass is below a caller-supplied `eps_tail`; the residual is
//! carried in [`Pmf::tail`] rather than silently dropped, so downstream
//! functionals can report a truncation-induced error bound.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Masses below this are trimmed from the end of the support into the tail.
/// Sits at the subnormal boundary so repeated convolution does not grow the
/// support with denormal dust.
pub const TRIM_THRESHOLD: f64 = 1e-300;

/// Largest admissible support size.
pub const MAX_SUPPORT: usize = 100_000;

/// Tolerance on `sum(probs) + tail - 1` accepted by the constructor.
pub const MASS_TOLERANCE: f64 = 1e-12;

/// Compensated (Kahan) accumulator. All moment and divergence sums in the
/// library go through this; plain summation loses too much to meet the
/// 1e-10 tolerances downstream.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Incrementally built table of `ln(n!)`.
#[derive(Debug, Default)]
pub(crate) struct LnFactorial {
    table: Vec<f64>,
    acc: KahanSum,
}

impl LnFactorial {
    pub fn new() -> Self {
        Self {
            table: vec![0.0],
            acc: KahanSum::new(),
        }
    }

    /// `ln(n!)`, extending the table as needed.
    pub fn get(&mut self, n: usize) -> f64 {
        while self.table.len() <= n {
            let m = self.table.len();
            self.acc.add((m as f64).ln());
            self.table.push(self.acc.value());
        }
        self.table[n]
    }
}

/// Truncated probability mass function on `{0, 1, ..., N}` with an explicit
/// nonnegative residual for the mass beyond the last index.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Pmf {
    probs: Vec<f64>,
    tail: f64,
}

impl Pmf {
    /// Validates and canonicalizes: entries must be nonnegative, total mass
    /// must be within [`MASS_TOLERANCE`] of one, and trailing entries below
    /// [`TRIM_THRESHOLD`] are folded into the tail.
    pub fn new(probs: Vec<f64>, tail: f64) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidPmf("empty support".into()));
        }
        if probs.len() > MAX_SUPPORT {
            return Err(Error::Resource(format!(
                "support size {} exceeds cap {}",
                probs.len(),
                MAX_SUPPORT
            )));
        }
        if tail.is_nan() || tail < 0.0 {
            return Err(Error::InvalidPmf(format!("negative tail {tail}")));
        }
        for (i, &p) in probs.iter().enumerate() {
            if !(0.0..=1.0 + MASS_TOLERANCE).contains(&p) {
                return Err(Error::InvalidPmf(format!(
                    "probs[{i}] = {p} outside [0, 1]"
                )));
            }
        }
        let mut total = KahanSum::new();
        for &p in &probs {
            total.add(p);
        }
        total.add(tail);
        if (total.value() - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidPmf(format!(
                "total mass {} deviates from 1 by more than {MASS_TOLERANCE}",
                total.value()
            )));
        }
        let mut pmf = Pmf { probs, tail };
        pmf.canonicalize();
        Ok(pmf)
    }

    /// Point mass at `k`.
    pub fn point_mass(k: usize) -> Self {
        let mut probs = vec![0.0; k + 1];
        probs[k] = 1.0;
        Pmf { probs, tail: 0.0 }
    }

    fn canonicalize(&mut self) {
        while self.probs.len() > 1 {
            let last = *self.probs.last().unwrap();
            if last < TRIM_THRESHOLD {
                self.probs.pop();
                self.tail += last;
            } else {
                break;
            }
        }
    }

    /// Mass at `x`; zero beyond the truncated support.
    #[inline]
    pub fn get(&self, x: usize) -> f64 {
        self.probs.get(x).copied().unwrap_or(0.0)
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Upper bound on the mass beyond the last support index.
    pub fn tail(&self) -> f64 {
        self.tail
    }

    /// Number of stored support points (`max index + 1`).
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Largest stored support index.
    pub fn max_index(&self) -> usize {
        self.probs.len() - 1
    }

    /// True when no interior support gap exists: every index below the last
    /// positive-mass index carries positive mass. Score-based functionals
    /// require this.
    pub fn contiguous_support(&self) -> bool {
        let hi = match self.probs.iter().rposition(|&p| p > 0.0) {
            Some(h) => h,
            None => return true,
        };
        self.probs[..hi].iter().all(|&p| p > 0.0)
    }

    /// Parses the `{"probs": [...], "tail": t}` interchange format,
    /// rejecting negative entries and mass imbalance beyond 1e-9.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: Pmf = serde_json::from_str(text)
            .map_err(|e| Error::InvalidPmf(format!("malformed pmf json: {e}")))?;
        for (i, &p) in raw.probs.iter().enumerate() {
            if p.is_nan() || p < 0.0 {
                return Err(Error::InvalidPmf(format!("probs[{i}] = {p} is negative")));
            }
        }
        if raw.tail.is_nan() || raw.tail < 0.0 {
            return Err(Error::InvalidPmf(format!("tail {} is negative", raw.tail)));
        }
        let mut total = KahanSum::new();
        for &p in &raw.probs {
            total.add(p);
        }
        total.add(raw.tail);
        if (total.value() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidPmf(format!(
                "total mass {} deviates from 1 by more than 1e-9",
                total.value()
            )));
        }
        let mut pmf = raw;
        pmf.canonicalize();
        Ok(pmf)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("pmf serialization cannot fail")
    }
}

/// Symbolic descriptor of an analytic family on the nonnegative integers.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum FamilySpec {
    PointMass(usize),
    Bernoulli(f64),
    Binomial(usize, f64),
    /// Geometric on `{0, 1, ...}` parameterized by its mean.
    Geometric(f64),
    /// Negative binomial with `r >= 1` failures-parameter, given by its mean.
    NegativeBinomial(f64, f64),
    Poisson(f64),
    /// Poisson(lambda) number of i.i.d. summands drawn from `Q` on `{1, 2, ...}`.
    CompoundPoisson(f64, Pmf),
    Empirical(Pmf),
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::PointMass(_) => Ok(()),
            FamilySpec::Bernoulli(p) => {
                if (0.0..=1.0).contains(p) {
                    Ok(())
                } else {
                    Err(Error::ParameterDomain(format!(
                        "bernoulli p = {p} outside [0, 1]"
                    )))
                }
            }
            FamilySpec::Binomial(_, p) => {
                if (0.0..=1.0).contains(p) {
                    Ok(())
                } else {
                    Err(Error::ParameterDomain(format!(
                        "binomial p = {p} outside [0, 1]"
                    )))
                }
            }
            FamilySpec::Geometric(lambda) => {
                if *lambda > 0.0 {
                    Ok(())
                } else {
                    Err(Error::ParameterDomain(format!(
                        "geometric mean {lambda} must be > 0"
                    )))
                }
            }
            FamilySpec::NegativeBinomial(r, lambda) => {
                if *r < 1.0 {
                    Err(Error::ParameterDomain(format!(
                        "negative binomial r = {r} must be >= 1"
                    )))
                } else if *lambda <= 0.0 {
                    Err(Error::ParameterDomain(format!(
                        "negative binomial mean {lambda} must be > 0"
                    )))
                } else {
                    Ok(())
                }
            }
            FamilySpec::Poisson(lambda) => {
                if *lambda > 0.0 {
                    Ok(())
                } else {
                    Err(Error::ParameterDomain(format!(
                        "poisson lambda {lambda} must be > 0"
                    )))
                }
            }
            FamilySpec::CompoundPoisson(lambda, q) => {
                if *lambda <= 0.0 {
                    return Err(Error::ParameterDomain(format!(
                        "compound poisson lambda {lambda} must be > 0"
                    )));
                }
                if q.get(0) > 0.0 {
                    return Err(Error::ParameterDomain(
                        "compounding distribution has mass at 0".into(),
                    ));
                }
                Ok(())
            }
            FamilySpec::Empirical(_) => Ok(()),
        }
    }
}

/// Materializes a family descriptor as a truncated PMF with `tail <= eps_tail`.
///
/// Masses for the infinite-support families are computed in log space and
/// exponentiated, so parameters like `lambda ~ 50` do not underflow
/// intermediate products.
pub fn materialize(spec: &FamilySpec, eps_tail: f64) -> Result<Pmf> {
    if !(eps_tail > 0.0 && eps_tail <= 1e-3) {
        return Err(Error::ParameterDomain(format!(
            "eps_tail {eps_tail} outside (0, 1e-3]"
        )));
    }
    spec.validate()?;
    match spec {
        FamilySpec::PointMass(k) => Ok(Pmf::point_mass(*k)),
        FamilySpec::Bernoulli(p) => Pmf::new(vec![1.0 - p, *p], 0.0),
        FamilySpec::Binomial(n, p) => materialize_binomial(*n, *p),
        FamilySpec::Geometric(lambda) => {
            // Geo(lambda, x) = (1/(1+lambda)) (lambda/(1+lambda))^x
            let log_ratio = lambda.ln() - lambda.ln_1p();
            let log_p0 = -lambda.ln_1p();
            let mut probs = Vec::new();
            let mut covered = KahanSum::new();
            let mut x = 0usize;
            loop {
                let p = (log_p0 + x as f64 * log_ratio).exp();
                probs.push(p);
                covered.add(p);
                // Exact residual: sum_{j > x} = p(x) * lambda.
                if p * lambda <= eps_tail {
                    break;
                }
                x += 1;
                if x >= MAX_SUPPORT {
                    return Err(Error::Resource(format!(
                        "geometric({lambda}) support exceeds cap at eps_tail {eps_tail}"
                    )));
                }
            }
            Pmf::new(probs, (1.0 - covered.value()).max(0.0))
        }
        FamilySpec::NegativeBinomial(r, lambda) => {
            // Success probability from mean r(1-p)/p = lambda.
            let p = r / (r + lambda);
            let mut lnf = LnFactorial::new();
            let log_q = (1.0 - p).ln();
            let mut probs = Vec::new();
            let mut covered = KahanSum::new();
            // ln Gamma(x + r) - ln Gamma(r) accumulated multiplicatively.
            let mut log_coeff = KahanSum::new();
            let mut x = 0usize;
            loop {
                let log_px = log_coeff.value() - lnf.get(x) + r * p.ln() + x as f64 * log_q;
                let px = log_px.exp();
                probs.push(px);
                covered.add(px);
                // Past the mode the pmf ratio (x + r)(1 - p)/(x + 1) falls
                // below one and decreases, so the residual is dominated by a
                // geometric series started at the current ratio.
                let ratio = (x as f64 + r) * (1.0 - p) / (x as f64 + 1.0);
                if ratio < 1.0 && px * ratio / (1.0 - ratio) <= eps_tail {
                    break;
                }
                log_coeff.add((x as f64 + r).ln());
                x += 1;
                if x >= MAX_SUPPORT {
                    return Err(Error::Resource(format!(
                        "negative binomial({r}, {lambda}) support exceeds cap"
                    )));
                }
            }
            Pmf::new(probs, (1.0 - covered.value()).max(0.0))
        }
        FamilySpec::Poisson(lambda) => materialize_poisson(*lambda, eps_tail),
        FamilySpec::CompoundPoisson(lambda, q) => {
            crate::thinning::compound_poisson(*lambda, q, eps_tail)
        }
        FamilySpec::Empirical(pmf) => Ok(pmf.clone()),
    }
}

pub(crate) fn materialize_poisson(lambda: f64, eps_tail: f64) -> Result<Pmf> {
    if lambda == 0.0 {
        return Ok(Pmf::point_mass(0));
    }
    let mut lnf = LnFactorial::new();
    let log_lambda = lambda.ln();
    let mut probs = Vec::new();
    let mut covered = KahanSum::new();
    let mut x = 0usize;
    loop {
        let p = (-lambda + x as f64 * log_lambda - lnf.get(x)).exp();
        probs.push(p);
        covered.add(p);
        // Past the mode the pmf ratio lambda/(x+1) is below one and
        // decreasing, so the residual is at most the geometric series
        // p(x) (r + r^2 + ...). Bounding the tail analytically rather than
        // through the accumulated float mass keeps the rule meaningful for
        // eps_tail far below machine resolution.
        let r = lambda / (x as f64 + 1.0);
        if r < 1.0 && p * r / (1.0 - r) <= eps_tail {
            break;
        }
        x += 1;
        if x >= MAX_SUPPORT {
            return Err(Error::Resource(format!(
                "poisson({lambda}) support exceeds cap at eps_tail {eps_tail}"
            )));
        }
    }
    Pmf::new(probs, (1.0 - covered.value()).max(0.0))
}

fn materialize_binomial(n: usize, p: f64) -> Result<Pmf> {
    if n > MAX_SUPPORT - 1 {
        return Err(Error::Resource(format!(
            "binomial n = {n} exceeds support cap"
        )));
    }
    if p == 0.0 {
        return Ok(Pmf::point_mass(0));
    }
    if p == 1.0 {
        return Ok(Pmf::point_mass(n));
    }
    let mut lnf = LnFactorial::new();
    let ln_n = lnf.get(n);
    let (lp, lq) = (p.ln(), (1.0 - p).ln());
    let probs: Vec<f64> = (0..=n)
        .map(|k| (ln_n - lnf.get(k) - lnf.get(n - k) + k as f64 * lp + (n - k) as f64 * lq).exp())
        .collect();
    let mut covered = KahanSum::new();
    for &v in &probs {
        covered.add(v);
    }
    Pmf::new(probs, (1.0 - covered.value()).max(0.0))
}

/// Exact Cauchy-product convolution on the combined support.
pub fn convolve(p: &Pmf, q: &Pmf) -> Result<Pmf> {
    let out_len = p.len() + q.len() - 1;
    if out_len > MAX_SUPPORT {
        return Err(Error::Resource(format!(
            "convolution support {out_len} exceeds cap {MAX_SUPPORT}"
        )));
    }
    let mut out = vec![KahanSum::new(); out_len];
    for (i, &pi) in p.probs().iter().enumerate() {
        if pi == 0.0 {
            continue;
        }
        for (j, &qj) in q.probs().iter().enumerate() {
            if qj != 0.0 {
                out[i + j].add(pi * qj);
            }
        }
    }
    let probs: Vec<f64> = out.iter().map(|k| k.value()).collect();
    // Missing mass: tails add, minus the double-counted product.
    let tail = p.tail() + q.tail() - p.tail() * q.tail();
    Pmf::new(probs, tail.max(0.0))
}

/// `n`-fold self-convolution by binary splitting (`log2 n` convolutions).
/// `n = 0` yields the point mass at zero (the empty convolution).
pub fn n_fold(p: &Pmf, n: usize) -> Result<Pmf> {
    if n > 4096 {
        return Err(Error::Resource(format!("n = {n} exceeds cap 4096")));
    }
    let mut result = Pmf::point_mass(0);
    let mut base = p.clone();
    let mut remaining = n;
    while remaining > 0 {
        if remaining & 1 == 1 {
            result = convolve(&result, &base)?;
        }
        remaining >>= 1;
        if remaining > 0 {
            base = convolve(&base, &base)?;
        }
    }
    Ok(result)
}

/// `E[X^(k)] = sum_x P(x) x(x-1)...(x-k+1)`, compensated.
///
/// The truncated tail is not added to the value; its worst-case contribution
/// is unknowable from the PMF alone and is accounted for by callers via
/// [`Pmf::tail`].
pub fn factorial_moment(p: &Pmf, k: usize) -> f64 {
    if k == 0 {
        let mut s = KahanSum::new();
        for &px in p.probs() {
            s.add(px);
        }
        s.add(p.tail());
        return s.value();
    }
    let mut s = KahanSum::new();
    for (x, &px) in p.probs().iter().enumerate().skip(k) {
        if px == 0.0 {
            continue;
        }
        let mut ff = 1.0;
        for j in 0..k {
            ff *= (x - j) as f64;
        }
        s.add(px * ff);
    }
    s.value()
}

/// `(mean, variance)` from the first two factorial moments.
pub fn summary_stats(p: &Pmf) -> (f64, f64) {
    let mean = factorial_moment(p, 1);
    let variance = factorial_moment(p, 2) + mean - mean * mean;
    (mean, variance)
}

/// Natural-log entropy with the `0 log 0 = 0` convention.
pub fn entropy(p: &Pmf) -> f64 {
    let mut s = KahanSum::new();
    for &px in p.probs() {
        if px > 0.0 {
            s.add(-px * px.ln());
        }
    }
    s.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn point_mass_is_degenerate() {
        let p = materialize(&FamilySpec::PointMass(0), 1e-14).unwrap();
        assert_eq!(p.probs(), &[1.0]);
        assert_eq!(p.tail(), 0.0);
    }

    #[test]
    fn geometric_mean_one_matches_closed_form() {
        let p = materialize(&FamilySpec::Geometric(1.0), 1e-14).unwrap();
        for x in 0..10 {
            assert_close(p.get(x), 0.5f64.powi(x as i32 + 1), 1e-14);
        }
    }

    #[test]
    fn poisson_one_at_zero() {
        let p = materialize(&FamilySpec::Poisson(1.0), 1e-14).unwrap();
        assert_close(p.get(0), (-1.0f64).exp(), 1e-14);
        assert!(p.tail() <= 1e-14);
    }

    #[test]
    fn convolve_identity_with_delta_zero() {
        let p = materialize(&FamilySpec::Binomial(3, 0.4), 1e-14).unwrap();
        let d0 = Pmf::point_mass(0);
        let conv = convolve(&d0, &p).unwrap();
        for x in 0..p.len() {
            assert_close(conv.get(x), p.get(x), 1e-15);
        }
    }

    #[test]
    fn bernoulli_squared_is_binomial() {
        let b = materialize(&FamilySpec::Bernoulli(0.3), 1e-14).unwrap();
        let conv = convolve(&b, &b).unwrap();
        let bin = materialize(&FamilySpec::Binomial(2, 0.3), 1e-14).unwrap();
        for x in 0..3 {
            assert_close(conv.get(x), bin.get(x), 1e-14);
        }
    }

    #[test]
    fn poisson_convolution_adds_rates() {
        let p1 = materialize(&FamilySpec::Poisson(1.0), 1e-15).unwrap();
        let p2 = materialize(&FamilySpec::Poisson(2.0), 1e-15).unwrap();
        let conv = convolve(&p1, &p2).unwrap();
        let p3 = materialize(&FamilySpec::Poisson(3.0), 1e-15).unwrap();
        for x in 0..p3.len().min(conv.len()) {
            assert_close(conv.get(x), p3.get(x), 1e-12);
        }
    }

    #[test]
    fn n_fold_bernoulli_is_binomial() {
        let b = materialize(&FamilySpec::Bernoulli(0.25), 1e-14).unwrap();
        let f = n_fold(&b, 8).unwrap();
        let bin = materialize(&FamilySpec::Binomial(8, 0.25), 1e-14).unwrap();
        for x in 0..9 {
            assert_close(f.get(x), bin.get(x), 1e-13);
        }
    }

    #[test]
    fn n_fold_degenerate_cases() {
        let g = materialize(&FamilySpec::Geometric(1.0), 1e-14).unwrap();
        let one = n_fold(&g, 1).unwrap();
        for x in 0..g.len() {
            assert_close(one.get(x), g.get(x), 1e-15);
        }
        let zero = n_fold(&g, 0).unwrap();
        assert_eq!(zero.probs(), &[1.0]);
        // Two-fold by hand: probs[0] = 1/4, probs[1] = 2 (1/2)^3.
        let two = n_fold(&g, 2).unwrap();
        assert_close(two.get(0), 0.25, 1e-14);
        assert_close(two.get(1), 0.25, 1e-14);
    }

    #[test]
    fn factorial_moments_of_poisson() {
        for &lambda in &[0.5, 2.0, 7.0] {
            // High-order moments weight the tail by x^(k); materialize far
            // past the eps that plain mass accounting would need.
            let p = materialize(&FamilySpec::Poisson(lambda), 1e-30).unwrap();
            for k in 0..=6 {
                let expect = lambda.powi(k as i32);
                let got = factorial_moment(&p, k);
                assert!(
                    (got - expect).abs() <= 1e-10 * expect.max(1.0),
                    "lambda {lambda} k {k}: {got} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn factorial_moments_of_bernoulli() {
        let b = materialize(&FamilySpec::Bernoulli(0.3), 1e-14).unwrap();
        assert_close(factorial_moment(&b, 0), 1.0, 1e-15);
        assert_close(factorial_moment(&b, 1), 0.3, 1e-15);
        assert_eq!(factorial_moment(&b, 2), 0.0);
        assert_eq!(factorial_moment(&b, 5), 0.0);
    }

    #[test]
    fn summary_stats_examples() {
        let bin = materialize(&FamilySpec::Binomial(2, 0.5), 1e-14).unwrap();
        let (m, v) = summary_stats(&bin);
        assert_close(m, 1.0, 1e-14);
        assert_close(v, 0.5, 1e-14);

        let (m, v) = summary_stats(&Pmf::point_mass(7));
        assert_close(m, 7.0, 1e-14);
        assert_close(v, 0.0, 1e-12);

        let g = materialize(&FamilySpec::Geometric(1.0), 1e-14).unwrap();
        let (m, v) = summary_stats(&g);
        assert_close(m, 1.0, 1e-10);
        assert_close(v, 2.0, 1e-9);
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy(&Pmf::point_mass(5)), 0.0);
        let b = materialize(&FamilySpec::Bernoulli(0.5), 1e-14).unwrap();
        assert_close(entropy(&b), 2.0f64.ln(), 1e-14);
        // Brute-force oracle for Po(1).
        let p = materialize(&FamilySpec::Poisson(1.0), 1e-15).unwrap();
        let direct: f64 = p
            .probs()
            .iter()
            .filter(|&&x| x > 0.0)
            .map(|&x| -x * x.ln())
            .sum();
        assert_close(entropy(&p), direct, 1e-10);
    }

    #[test]
    fn negative_binomial_recovers_mean() {
        let p = materialize(&FamilySpec::NegativeBinomial(2.0, 1.5), 1e-14).unwrap();
        let (m, _) = summary_stats(&p);
        assert_close(m, 1.5, 1e-9);
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let p = materialize(&FamilySpec::Binomial(2, 0.3), 1e-14).unwrap();
        let back = Pmf::from_json(&p.to_json()).unwrap();
        assert_eq!(back.probs(), p.probs());

        assert!(Pmf::from_json(r#"{"probs": [0.5, -0.1, 0.6], "tail": 0.0}"#).is_err());
        assert!(Pmf::from_json(r#"{"probs": [0.5, 0.4], "tail": 0.0}"#).is_err());
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(materialize(&FamilySpec::Bernoulli(1.2), 1e-14).is_err());
        assert!(materialize(&FamilySpec::Poisson(-1.0), 1e-14).is_err());
        assert!(materialize(&FamilySpec::Geometric(0.0), 1e-14).is_err());
        assert!(materialize(&FamilySpec::Poisson(1.0), 0.5).is_err());
    }
}
