//! The thinning Markov semigroup `U_alpha^lambda(P) = T_alpha(P) * Po((1-alpha) lambda)`
//! and its continuous-time chain, exposed through exact distribution
//! evolution rather than stochastic simulation.
//!
//! The time/retention conversion `alpha = e^{-t}` is centralized here so it
//! cannot drift between modules.

use std::collections::BTreeMap;

use crate::distcore::{convolve, materialize_poisson, Pmf};
use crate::divergences::{chi2_to_poisson, kl_to_poisson, tv};
use crate::error::{Error, Result};
use crate::thinning::thin;

/// Chain time to retention probability.
pub fn alpha_from_time(t: f64) -> f64 {
    (-t).exp()
}

/// One evaluated point of a chain trajectory.
#[derive(Clone, Debug)]
pub struct ChainPoint {
    pub t: f64,
    pub alpha: f64,
    pub dist: Pmf,
    /// `tv_to_po`, `kl_to_po`, `chi2_to_po` against the invariant Po(lambda).
    pub functionals: BTreeMap<String, f64>,
}

/// `U_alpha^lambda(P)`: thin by `alpha`, then add independent
/// `Po((1-alpha) lambda)` noise.
pub fn u_operator(p: &Pmf, alpha: f64, lambda: f64) -> Result<Pmf> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::ParameterDomain(format!(
            "alpha = {alpha} outside [0, 1]"
        )));
    }
    if lambda <= 0.0 {
        return Err(Error::ParameterDomain(format!(
            "lambda = {lambda} must be > 0"
        )));
    }
    let thinned = thin(p, alpha)?;
    if alpha == 1.0 {
        return Ok(thinned); // Po(0) = point mass at zero
    }
    // Noise truncation leaks into high-order moments as eps * x^(k); keep it
    // far below anything the moment-level invariants can see.
    let noise = materialize_poisson((1.0 - alpha) * lambda, 1e-30)?;
    convolve(&thinned, &noise)
}

/// Row `i` of the transition kernel at time `t`:
/// `Pr{ Bin(i, e^{-t}) + Po((1 - e^{-t}) lambda) = j }`.
pub fn transition_row(i: usize, t: f64, lambda: f64, eps_tail: f64) -> Result<Pmf> {
    if t < 0.0 {
        return Err(Error::ParameterDomain(format!("t = {t} must be >= 0")));
    }
    if !(eps_tail > 0.0 && eps_tail <= 1e-3) {
        return Err(Error::ParameterDomain(format!(
            "eps_tail {eps_tail} outside (0, 1e-3]"
        )));
    }
    let alpha = alpha_from_time(t);
    if lambda <= 0.0 {
        return Err(Error::ParameterDomain(format!(
            "lambda = {lambda} must be > 0"
        )));
    }
    let thinned = thin(&Pmf::point_mass(i), alpha)?;
    if alpha == 1.0 {
        return Ok(thinned);
    }
    let noise = materialize_poisson((1.0 - alpha) * lambda, eps_tail)?;
    convolve(&thinned, &noise)
}

/// Evolves `P0` along the chain, evaluating the distance functionals to the
/// invariant Po(lambda) at each grid time.
pub fn chain_trajectory(p0: &Pmf, lambda: f64, t_grid: &[f64]) -> Result<Vec<ChainPoint>> {
    if t_grid.windows(2).any(|w| w[1] < w[0]) || t_grid.iter().any(|&t| t < 0.0) {
        return Err(Error::ParameterDomain(
            "t_grid must be nondecreasing and nonnegative".into(),
        ));
    }
    let target = materialize_poisson(lambda, 1e-16)?;
    t_grid
        .iter()
        .map(|&t| {
            let alpha = alpha_from_time(t);
            let dist = u_operator(p0, alpha, lambda)?;
            let mut functionals = BTreeMap::new();
            // TV tolerates a truncated target (error bounded by the tails);
            // KL and chi-square do not, so those go against the analytic law.
            functionals.insert("tv_to_po".into(), tv(&dist, &target));
            functionals.insert("kl_to_po".into(), kl_to_poisson(&dist, lambda)?);
            functionals.insert("chi2_to_po".into(), chi2_to_poisson(&dist, lambda)?);
            Ok(ChainPoint {
                t,
                alpha,
                dist,
                functionals,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charlier::charlier_moment;
    use crate::distcore::{materialize, summary_stats, FamilySpec};

    fn mat(spec: &FamilySpec) -> Pmf {
        materialize(spec, 1e-15).unwrap()
    }

    #[test]
    fn identity_at_alpha_one() {
        let p = mat(&FamilySpec::Binomial(4, 0.3));
        let u = u_operator(&p, 1.0, 2.0).unwrap();
        for x in 0..p.len() {
            assert_eq!(u.get(x), p.get(x));
        }
    }

    #[test]
    fn poisson_is_invariant() {
        let p = mat(&FamilySpec::Poisson(1.5));
        for &alpha in &[0.2, 0.5, 0.9] {
            let u = u_operator(&p, alpha, 1.5).unwrap();
            for x in 0..p.len() {
                assert!((u.get(x) - p.get(x)).abs() <= 1e-12, "alpha {alpha} x {x}");
            }
        }
    }

    #[test]
    fn non_poisson_inputs_are_moved() {
        // Uniqueness probe: anything with the right mean but the wrong shape
        // is displaced by the operator.
        for spec in [FamilySpec::Binomial(2, 0.5), FamilySpec::Geometric(1.0)] {
            let p = mat(&spec);
            for &alpha in &[0.3, 0.5, 0.9] {
                let u = u_operator(&p, alpha, 1.0).unwrap();
                assert!(tv(&u, &p) > 1e-9, "{spec:?} alpha {alpha}");
            }
        }
    }

    #[test]
    fn semigroup_composition() {
        let p = mat(&FamilySpec::Binomial(3, 0.4));
        let (a, b, lambda) = (0.6, 0.7, 1.2);
        let two_step = u_operator(&u_operator(&p, b, lambda).unwrap(), a, lambda).unwrap();
        let one_step = u_operator(&p, a * b, lambda).unwrap();
        for x in 0..two_step.len().max(one_step.len()) {
            assert!(
                (two_step.get(x) - one_step.get(x)).abs() <= 1e-12,
                "x = {x}"
            );
        }
    }

    #[test]
    fn mean_interpolates() {
        let p = mat(&FamilySpec::Geometric(2.0));
        let (m0, _) = summary_stats(&p);
        for &alpha in &[0.25, 0.5, 0.75] {
            let u = u_operator(&p, alpha, 1.0).unwrap();
            let (m, _) = summary_stats(&u);
            let expect = alpha * m0 + (1.0 - alpha);
            assert!(
                (m - expect).abs() <= 1e-10,
                "alpha {alpha}: {m} vs {expect}"
            );
        }
    }

    #[test]
    fn charlier_moments_contract_geometrically() {
        let p = mat(&FamilySpec::Binomial(4, 0.25));
        let lambda = 1.0;
        for &alpha in &[0.3, 0.6] {
            let u = u_operator(&p, alpha, lambda).unwrap();
            for k in 1..=6 {
                let before = charlier_moment(&p, lambda, k).unwrap();
                let after = charlier_moment(&u, lambda, k).unwrap();
                let expect = alpha.powi(k as i32) * before;
                assert!(
                    (after - expect).abs() <= 1e-9 * expect.abs().max(1e-6),
                    "alpha {alpha} k {k}: {after} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn transition_row_degenerate_cases() {
        let row = transition_row(3, 0.0, 1.0, 1e-14).unwrap();
        assert_eq!(row.get(3), 1.0);

        let row = transition_row(0, 0.7, 1.0, 1e-14).unwrap();
        let noise = materialize_poisson((1.0 - (-0.7f64).exp()) * 1.0, 1e-14).unwrap();
        for x in 0..noise.len() {
            assert!((row.get(x) - noise.get(x)).abs() <= 1e-13, "x = {x}");
        }
    }

    #[test]
    fn transition_row_converges_to_invariant() {
        let row = transition_row(3, 10.0, 1.0, 1e-14).unwrap();
        let target = materialize_poisson(1.0, 1e-14).unwrap();
        assert!(tv(&row, &target) <= 1e-4);
    }

    #[test]
    fn trajectory_of_invariant_is_flat() {
        let p = mat(&FamilySpec::Poisson(2.0));
        let points = chain_trajectory(&p, 2.0, &[0.0, 0.5, 1.0, 3.0]).unwrap();
        for pt in &points {
            for (name, value) in &pt.functionals {
                assert!(value.abs() <= 1e-9, "t = {}, {name} = {value}", pt.t);
            }
        }
    }

    #[test]
    fn trajectory_tv_is_nonincreasing_and_bounded() {
        let p = mat(&FamilySpec::Binomial(4, 0.25));
        let grid = [0.0, 0.25, 0.5, 1.0, 2.0, 4.0];
        let points = chain_trajectory(&p, 1.0, &grid).unwrap();
        for w in points.windows(2) {
            assert!(
                w[1].functionals["tv_to_po"] <= w[0].functionals["tv_to_po"] + 1e-12,
                "tv increased between t = {} and {}",
                w[0].t,
                w[1].t
            );
        }
        // Chain-of-bounds from the convergence proof:
        // tv <= 2 - T_alpha(P)(0) - Po(alpha lambda, 0).
        for pt in &points {
            let thinned = thin(&p, pt.alpha).unwrap();
            let bound = 2.0 - thinned.get(0) - (-pt.alpha).exp();
            assert!(pt.functionals["tv_to_po"] <= bound + 1e-12, "t = {}", pt.t);
        }
    }

    #[test]
    fn bad_grids_rejected() {
        let p = mat(&FamilySpec::Poisson(1.0));
        assert!(chain_trajectory(&p, 1.0, &[1.0, 0.5]).is_err());
        assert!(chain_trajectory(&p, 1.0, &[-0.1, 0.5]).is_err());
    }
}
