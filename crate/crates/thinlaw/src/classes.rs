//! Certifiers for the distribution classes that gate the convergence-rate
//! results: ultra log-concave (ULC), ultra bounded (UB), Poisson bounded
//! (PB), and constructive Bernoulli sums. Also the alternating factorial-
//! moment representation of a PB mass function.

use serde::{Deserialize, Serialize};

use crate::distcore::{factorial_moment, FamilySpec, Pmf};
use crate::error::{Error, Result};

/// Relative slack granted to each certified inequality.
pub const CLASS_SLACK: f64 = 1e-12;

/// Default number of factorial-moment inequalities checked for UB/PB.
pub const DEFAULT_KMAX: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassName {
    BernoulliSum,
    Ulc,
    Ub,
    Pb,
}

/// Site of a failed inequality: the index at which it broke and the two
/// sides as evaluated.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub index: usize,
    pub lhs: f64,
    pub rhs: f64,
}

/// Outcome of a class check. `witness` is present exactly when the
/// certificate does not hold, and re-evaluates as a violated inequality.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassCertificate {
    pub class_name: ClassName,
    pub holds: bool,
    pub ratio: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub kmax_checked: usize,
    /// False when the input carries truncated tail mass, in which case the
    /// UB/PB certificate is scoped "up to kmax_checked" only.
    pub complete: bool,
}

impl ClassCertificate {
    fn pass(class_name: ClassName, ratio: f64, kmax_checked: usize, complete: bool) -> Self {
        ClassCertificate {
            class_name,
            holds: true,
            ratio,
            witness: None,
            kmax_checked,
            complete,
        }
    }

    fn fail(
        class_name: ClassName,
        ratio: f64,
        kmax_checked: usize,
        complete: bool,
        witness: Witness,
    ) -> Self {
        ClassCertificate {
            class_name,
            holds: false,
            ratio,
            witness: Some(witness),
            kmax_checked,
            complete,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization cannot fail")
    }
}

/// Ultra log-concavity via the lambda-free equivalent
/// `j P(j)^2 >= (j+1) P(j-1) P(j+1)` at every interior `j` with
/// `P(j-1) > 0`.
pub fn is_ulc(p: &Pmf) -> ClassCertificate {
    let kmax = p.max_index();
    for j in 1..p.len().saturating_sub(1) {
        if p.get(j - 1) == 0.0 {
            continue;
        }
        let lhs = j as f64 * p.get(j) * p.get(j);
        let rhs = (j + 1) as f64 * p.get(j - 1) * p.get(j + 1);
        if lhs < rhs * (1.0 - CLASS_SLACK) - f64::MIN_POSITIVE {
            return ClassCertificate::fail(
                ClassName::Ulc,
                f64::NAN,
                kmax,
                true,
                Witness { index: j, lhs, rhs },
            );
        }
    }
    ClassCertificate::pass(ClassName::Ulc, f64::NAN, kmax, true)
}

/// Whether all factorial moments vanish beyond the stored support, making a
/// finite moment check a complete certificate.
fn moments_complete(p: &Pmf) -> bool {
    p.tail() == 0.0 || p.tail() < f64::MIN_POSITIVE
}

/// Poisson boundedness with ratio `lambda`: `E[X^(k)] <= lambda^k` for
/// `k <= kmax`. For finite-support input the moments vanish beyond the
/// largest support point, so the certificate is complete; for truncated
/// infinite-support input it is scoped to `kmax` and says so.
pub fn is_pb(p: &Pmf, lambda: f64, kmax: usize) -> Result<ClassCertificate> {
    if lambda <= 0.0 {
        return Err(Error::ParameterDomain(format!(
            "lambda = {lambda} must be > 0"
        )));
    }
    if kmax < 1 {
        return Err(Error::ParameterDomain("kmax must be >= 1".into()));
    }
    let effective = kmax.min(p.max_index().max(1));
    let complete = moments_complete(p) && kmax >= p.max_index();
    for k in 1..=effective {
        let lhs = factorial_moment(p, k);
        let rhs = lambda.powi(k as i32);
        if lhs > rhs * (1.0 + CLASS_SLACK) {
            return Ok(ClassCertificate::fail(
                ClassName::Pb,
                lambda,
                effective,
                complete,
                Witness { index: k, lhs, rhs },
            ));
        }
    }
    Ok(ClassCertificate::pass(
        ClassName::Pb,
        lambda,
        effective,
        complete,
    ))
}

/// Ultra boundedness with ratio `lambda`: `E[X^(k+1)] <= lambda E[X^(k)]`
/// for `k < kmax`.
pub fn is_ub(p: &Pmf, lambda: f64, kmax: usize) -> Result<ClassCertificate> {
    if lambda <= 0.0 {
        return Err(Error::ParameterDomain(format!(
            "lambda = {lambda} must be > 0"
        )));
    }
    if kmax < 1 {
        return Err(Error::ParameterDomain("kmax must be >= 1".into()));
    }
    let effective = kmax.min(p.max_index().max(1) + 1);
    let complete = moments_complete(p) && kmax >= p.max_index();
    let mut prev = factorial_moment(p, 0);
    for k in 0..effective {
        let next = factorial_moment(p, k + 1);
        if next > lambda * prev * (1.0 + CLASS_SLACK) + f64::MIN_POSITIVE {
            return Ok(ClassCertificate::fail(
                ClassName::Ub,
                lambda,
                effective,
                complete,
                Witness {
                    index: k + 1,
                    lhs: next,
                    rhs: lambda * prev,
                },
            ));
        }
        prev = next;
    }
    Ok(ClassCertificate::pass(
        ClassName::Ub,
        lambda,
        effective,
        complete,
    ))
}

/// Smallest ratio under which the stored moments satisfy the PB
/// inequalities: `max_k E[X^(k)]^{1/k}` over `1 <= k <= max support`.
pub fn minimal_pb_ratio(p: &Pmf) -> f64 {
    let mut ratio: f64 = 0.0;
    for k in 1..=p.max_index().max(1) {
        let m = factorial_moment(p, k);
        if m > 0.0 {
            ratio = ratio.max(m.powf(1.0 / k as f64));
        }
    }
    ratio.max(f64::MIN_POSITIVE)
}

/// Constructive Bernoulli-sum membership, decidable only for inputs built
/// from Bernoulli-like family descriptors. General membership testing from a
/// PMF is a root-finding problem deliberately left out of scope.
pub fn is_bernoulli_sum(spec: &FamilySpec) -> ClassCertificate {
    let holds = matches!(
        spec,
        FamilySpec::Bernoulli(_) | FamilySpec::Binomial(_, _) | FamilySpec::PointMass(_)
    );
    ClassCertificate {
        class_name: ClassName::BernoulliSum,
        holds,
        ratio: f64::NAN,
        witness: None,
        kmax_checked: 0,
        complete: holds,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BracketSide {
    Upper,
    Lower,
}

/// Partial sum `(1/x!) sum_{l=0}^m (-1)^l E[X^(x+l)] / l!` of the
/// alternating factorial-moment representation of a PB mass function, with
/// its bracketing side: an upper bound on `P(x)` for even `m`, a lower bound
/// for odd `m`.
pub fn altsum_pmf(fact_moments: &[f64], x: usize, m: usize) -> Result<(f64, BracketSide)> {
    if fact_moments.len() <= x + m {
        return Err(Error::ParameterDomain(format!(
            "need factorial moments up to order {} but only {} supplied",
            x + m,
            fact_moments.len()
        )));
    }
    let mut inv_x_fact = 1.0;
    for j in 1..=x {
        inv_x_fact /= j as f64;
    }
    let mut sum = crate::distcore::KahanSum::new();
    let mut inv_l_fact = 1.0;
    for l in 0..=m {
        if l > 0 {
            inv_l_fact /= l as f64;
        }
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        sum.add(sign * fact_moments[x + l] * inv_l_fact);
    }
    let side = if m.is_multiple_of(2) {
        BracketSide::Upper
    } else {
        BracketSide::Lower
    };
    Ok((inv_x_fact * sum.value(), side))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distcore::{materialize, Pmf};
    use crate::thinning::thin;

    fn mat(spec: &FamilySpec) -> Pmf {
        materialize(spec, 1e-15).unwrap()
    }

    #[test]
    fn binomial_is_ulc() {
        for spec in [FamilySpec::Binomial(5, 0.3), FamilySpec::Binomial(2, 0.9)] {
            assert!(is_ulc(&mat(&spec)).holds, "{spec:?}");
        }
    }

    #[test]
    fn point_mass_is_vacuously_ulc() {
        assert!(is_ulc(&Pmf::point_mass(4)).holds);
    }

    #[test]
    fn geometric_fails_ulc_with_witness() {
        let cert = is_ulc(&mat(&FamilySpec::Geometric(1.0)));
        assert!(!cert.holds);
        let w = cert.witness.expect("failed certificate carries a witness");
        // Witness inequality re-evaluates as violated.
        assert!(w.lhs < w.rhs);
    }

    #[test]
    fn poisson_is_pb_and_ub_with_its_rate() {
        let p = mat(&FamilySpec::Poisson(1.5));
        assert!(is_pb(&p, 1.5, 30).unwrap().holds);
        assert!(is_ub(&p, 1.5, 30).unwrap().holds);
    }

    #[test]
    fn bernoulli_is_pb_with_ratio_p() {
        let b = mat(&FamilySpec::Bernoulli(0.3));
        assert!(is_pb(&b, 0.3, 30).unwrap().holds);
    }

    #[test]
    fn geometric_fails_pb_and_ub_at_documented_indices() {
        let g = mat(&FamilySpec::Geometric(1.0));
        let pb = is_pb(&g, 1.0, 10).unwrap();
        assert!(!pb.holds);
        assert_eq!(pb.witness.as_ref().unwrap().index, 2);
        let ub = is_ub(&g, 1.0, 10).unwrap();
        assert!(!ub.holds);
        assert_eq!(ub.witness.as_ref().unwrap().index, 2);
    }

    #[test]
    fn small_binomial_is_ub_with_unit_ratio() {
        let b = mat(&FamilySpec::Binomial(2, 0.5));
        assert!(is_ub(&b, 1.0, 10).unwrap().holds);
    }

    #[test]
    fn pb_closure_under_convolution_and_thinning() {
        let p = mat(&FamilySpec::Binomial(3, 0.4));
        let q = mat(&FamilySpec::Bernoulli(0.6));
        let conv = crate::distcore::convolve(&p, &q).unwrap();
        assert!(is_pb(&conv, 1.2 + 0.6, 30).unwrap().holds);
        let th = thin(&p, 0.5).unwrap();
        assert!(is_pb(&th, 0.6, 30).unwrap().holds);
        assert!(is_ub(&conv, 1.8, 30).unwrap().holds);
        assert!(is_ub(&th, 0.6, 30).unwrap().holds);
    }

    #[test]
    fn bernoulli_sum_membership_is_constructive() {
        assert!(is_bernoulli_sum(&FamilySpec::Binomial(3, 0.2)).holds);
        assert!(is_bernoulli_sum(&FamilySpec::Bernoulli(0.7)).holds);
        assert!(!is_bernoulli_sum(&FamilySpec::Geometric(1.0)).holds);
        assert!(!is_bernoulli_sum(&FamilySpec::Poisson(1.0)).holds);
    }

    #[test]
    fn altsum_point_mass_one() {
        // delta_1 moments (1, 1, 0, ...): partial sums at x = 0 collapse to 0
        // for every m >= 1, matching P(0) = 0.
        let moments = [1.0, 1.0, 0.0, 0.0, 0.0, 0.0];
        for m in 1..=4 {
            let (v, _) = altsum_pmf(&moments, 0, m).unwrap();
            assert!(v.abs() <= 1e-15, "m = {m}: {v}");
        }
    }

    #[test]
    fn altsum_poisson_brackets_e_inverse() {
        let moments = vec![1.0; 12]; // Po(1) factorial moments
        let target = (-1.0f64).exp();
        let (lo, side_lo) = altsum_pmf(&moments, 0, 3).unwrap();
        assert_eq!(side_lo, BracketSide::Lower);
        assert!((lo - 1.0 / 3.0).abs() <= 1e-15);
        assert!(lo <= target);
        let (hi, side_hi) = altsum_pmf(&moments, 0, 4).unwrap();
        assert_eq!(side_hi, BracketSide::Upper);
        assert!((hi - 0.375).abs() <= 1e-15);
        assert!(hi >= target);
    }

    #[test]
    fn altsum_m_zero_is_markov_style_upper_bound() {
        let p = mat(&FamilySpec::Binomial(4, 0.3));
        let moments: Vec<f64> = (0..=5).map(|k| factorial_moment(&p, k)).collect();
        for x in 0..4 {
            let (v, side) = altsum_pmf(&moments, x, 0).unwrap();
            assert_eq!(side, BracketSide::Upper);
            assert!(v >= p.get(x) - 1e-12);
        }
    }

    #[test]
    fn altsum_insufficient_moments_rejected() {
        assert!(altsum_pmf(&[1.0, 0.5], 1, 3).is_err());
    }

    #[test]
    fn pb_envelope_from_lemma() {
        let p = mat(&FamilySpec::Binomial(3, 0.4));
        let mu = minimal_pb_ratio(&p);
        assert!(is_pb(&p, mu * (1.0 + 1e-12), 30).unwrap().holds);
        let po = mat(&FamilySpec::Poisson(mu));
        for x in 0..p.len() {
            assert!(p.get(x) <= po.get(x) * mu.exp() + 1e-12, "x = {x}");
        }
    }
}
