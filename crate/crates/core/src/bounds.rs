//! Closed-form constants for quasi-geodesic neighborhoods, bounded coset
//! penetration, and conjugator lengths in relatively hyperbolic groups.
//!
//! Everything here is evaluated in `f64`; the logarithms rule out exact
//! arithmetic.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rdalgebra::{BoundingFunction, PolynomialBound};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("δ = 0 leaves the inner logarithm undefined; substitute a positive floor")]
    DegenerateDelta,
    #[error("constant {name} must be {requirement}, got {value}")]
    InvalidConstant { name: &'static str, requirement: &'static str, value: f64 },
}

fn check(name: &'static str, value: f64, positive: bool) -> Result<f64, BoundsError> {
    let ok = value.is_finite() && if positive { value > 0.0 } else { value >= 0.0 };
    if ok {
        Ok(value)
    } else {
        let requirement = if positive { "finite and positive" } else { "finite and nonnegative" };
        Err(BoundsError::InvalidConstant { name, requirement, value })
    }
}

/// Constants of a finite relative presentation. None of them can be derived
/// from the presentation here, so each defaults to 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PresentationConstants {
    /// Hyperbolicity constant of the coned-off graph.
    pub delta: f64,
    pub l_pres: f64,
    pub m_pres: f64,
    /// Radius `C` of the ball in the parabolic coset lemma.
    pub c_ds: f64,
    /// Cardinality `M` of the radius-`C` ball.
    pub m_ballcard: f64,
    pub k_axis: f64,
    pub k_h: f64,
    pub d_trans: f64,
    /// Replaces `delta` when it is zero.
    pub delta_min: f64,
    /// Additive allowance for the parabolic-pair case, whose constant comes
    /// from outside the closed-form chain.
    pub parabolic_pair_extra: f64,
}

impl Default for PresentationConstants {
    fn default() -> Self {
        PresentationConstants {
            delta: 1.0,
            l_pres: 1.0,
            m_pres: 1.0,
            c_ds: 1.0,
            m_ballcard: 1.0,
            k_axis: 1.0,
            k_h: 1.0,
            d_trans: 1.0,
            delta_min: 0.25,
            parabolic_pair_extra: 0.0,
        }
    }
}

impl PresentationConstants {
    pub fn validate(&self) -> Result<(), BoundsError> {
        check("delta", self.delta, false)?;
        check("l_pres", self.l_pres, true)?;
        check("m_pres", self.m_pres, true)?;
        check("c_ds", self.c_ds, true)?;
        check("m_ballcard", self.m_ballcard, true)?;
        check("k_axis", self.k_axis, true)?;
        check("k_h", self.k_h, true)?;
        check("d_trans", self.d_trans, true)?;
        check("delta_min", self.delta_min, true)?;
        check("parabolic_pair_extra", self.parabolic_pair_extra, false)?;
        Ok(())
    }

    /// `delta`, or `delta_min` when `delta` is zero.
    pub fn effective_delta(&self) -> f64 {
        if self.delta == 0.0 {
            self.delta_min
        } else {
            self.delta
        }
    }

    /// Notes for reports about substitutions made.
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if self.delta == 0.0 {
            w.push(alloc::format!("delta = 0 replaced by delta_min = {}", self.delta_min));
        }
        w
    }
}

fn check_k(k: f64) -> Result<f64, BoundsError> {
    if k.is_finite() && k >= 1.0 {
        Ok(k)
    } else {
        Err(BoundsError::InvalidConstant { name: "k", requirement: "finite and at least 1", value: k })
    }
}

/// `(δ·log₂P + δ·log₂[δ·log₂P] + 1)(k²+1) + ½(2k³+3k)` with
/// `P = 2k³+6k²+3k+2`: every `(k,k)`-quasi-geodesic lies in this
/// neighborhood of every geodesic with the same endpoints.
pub fn n_tilde(k: f64, delta: f64) -> Result<f64, BoundsError> {
    let k = check_k(k)?;
    check("delta", delta, false)?;
    if delta == 0.0 {
        return Err(BoundsError::DegenerateDelta);
    }
    let p = 2.0 * k * k * k + 6.0 * k * k + 3.0 * k + 2.0;
    let dl = delta * libm::log2(p);
    Ok((dl + delta * libm::log2(dl) + 1.0) * (k * k + 1.0) + 0.5 * (2.0 * k * k * k + 3.0 * k))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Neighborhood {
    pub n_tilde: f64,
    /// `Ñ + R + 2δ`.
    pub n: f64,
    /// `Ñ + R + 4δ`, the value the neighborhood argument itself yields.
    pub n_proof: f64,
}

/// Neighborhood constant for `(k, R)` quasi-geodesics.
pub fn neighborhood_n(k: f64, r: f64, delta: f64) -> Result<Neighborhood, BoundsError> {
    check("R", r, false)?;
    let nt = n_tilde(k, delta)?;
    Ok(Neighborhood { n_tilde: nt, n: nt + r + 2.0 * delta, n_proof: nt + r + 4.0 * delta })
}

/// The chain of constants for bounded coset penetration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BcpChain {
    pub k: f64,
    pub delta: f64,
    pub n_tilde: f64,
    /// `N(k, 0)`.
    pub k0: f64,
    /// `N(k, K₀) + ½`.
    pub k_const: f64,
    /// `2K²LM(4k+1)`.
    pub eps_prime: f64,
    /// `LM(1 + k(2ε′+1) + 2ε′)`.
    pub c_prime: f64,
    /// `C′ + LM(k+1)`.
    pub d: f64,
    /// `max{ε′, C′, D}`.
    pub epsilon: f64,
}

pub fn bcp_epsilon(k: f64, consts: &PresentationConstants) -> Result<BcpChain, BoundsError> {
    consts.validate()?;
    let delta = consts.effective_delta();
    let k0 = neighborhood_n(k, 0.0, delta)?;
    let k_const = neighborhood_n(k, k0.n, delta)?.n + 0.5;
    let lm = consts.l_pres * consts.m_pres;
    let eps_prime = 2.0 * k_const * k_const * lm * (4.0 * k + 1.0);
    let c_prime = lm * (1.0 + k * (2.0 * eps_prime + 1.0) + 2.0 * eps_prime);
    let d = lm * (1.0 + k * (2.0 * eps_prime + 1.0) + 2.0 * eps_prime + k + 1.0);
    Ok(BcpChain {
        k,
        delta,
        n_tilde: k0.n_tilde,
        k0: k0.n,
        k_const,
        eps_prime,
        c_prime,
        d,
        epsilon: eps_prime.max(c_prime).max(d),
    })
}

/// `K_h·(lu + lv)`, a bound on the relative length of a shortest
/// conjugator between hyperbolic elements.
pub fn hyperbolic_conjugator_bound(lu: f64, lv: f64, consts: &PresentationConstants) -> f64 {
    consts.k_h * (lu + lv)
}

/// `(M + 1)·lu + C + 1`, a bound on the relative length of an element
/// conjugating a parabolic `u` into its subgroup.
pub fn parabolic_coset_bound(lu: f64, consts: &PresentationConstants) -> f64 {
    (consts.m_ballcard + 1.0) * lu + consts.c_ds + 1.0
}

/// Per-case conjugator length bounds for `L = lu + lv`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremBound {
    pub total_length: f64,
    /// `Q(L)`: both elements already in a parabolic subgroup.
    pub subgroup: f64,
    /// `(2L + 10c(8L))·K_h·L`.
    pub hyperbolic: f64,
    /// `Q(2Λ)` where `Λ = (7L + 2δ + 2Ñ(2L+1))·(3c(56L + 18δ + 16Ñ(2L+1)) + 4L + 10c(8L))`
    /// bounds the lengths of the two subgroup elements met when the paths
    /// cross a coset synchronously.
    pub synchronous_coset: f64,
    /// `c(7L) + Q(L + 2c(7L)) + extra`: conjugate into the subgroup, then
    /// conjugate inside it.
    pub parabolic_pair: f64,
    pub bound: f64,
}

/// `Q = Σ Q_λ`.
pub fn total_subgroup_bound(subgroup_bounds: &[PolynomialBound]) -> PolynomialBound {
    subgroup_bounds.iter().fold(PolynomialBound::zero(), |acc, q| acc.add(q))
}

/// `c(k)` as used by the theorem: arguments below 1 are raised to 1, since
/// the penetration constants are only defined for `k ≥ 1`.
fn c_at(c_of_k: &BoundingFunction, k: f64) -> f64 {
    c_of_k.eval_f64(k.max(1.0))
}

pub fn theorem_bound(
    lu: f64,
    lv: f64,
    consts: &PresentationConstants,
    c_of_k: &BoundingFunction,
    subgroup_bounds: &[PolynomialBound],
) -> Result<TheoremBound, BoundsError> {
    consts.validate()?;
    check("lu", lu, false)?;
    check("lv", lv, false)?;
    let l = lu + lv;
    let q = total_subgroup_bound(subgroup_bounds);
    let delta = consts.effective_delta();

    let subgroup = q.eval_f64(l);
    let hyperbolic = (2.0 * l + 10.0 * c_at(c_of_k, 8.0 * l)) * hyperbolic_conjugator_bound(lu, lv, consts);
    let nt = n_tilde(2.0 * l + 1.0, delta)?;
    let gamma_rel = 7.0 * l + 2.0 * delta + 2.0 * nt;
    let per_coset = 3.0 * c_at(c_of_k, 56.0 * l + 18.0 * delta + 16.0 * nt) + 4.0 * l + 10.0 * c_at(c_of_k, 8.0 * l);
    let synchronous_coset = q.eval_f64(2.0 * gamma_rel * per_coset);
    let c7 = c_at(c_of_k, 7.0 * l);
    let parabolic_pair = c7 + q.eval_f64(l + 2.0 * c7) + consts.parabolic_pair_extra;

    let bound = subgroup.max(hyperbolic).max(synchronous_coset).max(parabolic_pair);
    Ok(TheoremBound { total_length: l, subgroup, hyperbolic, synchronous_coset, parabolic_pair, bound })
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    fn unit() -> PresentationConstants {
        PresentationConstants::default()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn n_tilde_values() {
        let v = n_tilde(1.0, 1.0).unwrap();
        assert!((v - 15.67629).abs() < 1e-4);
        assert!(close(v, 15.676272865056628674, 1e-9));
        assert!(close(n_tilde(1.0, 2.0).unwrap(), 30.852545730113257348, 1e-9));
        assert!(close(n_tilde(2.0, 1.0).unwrap(), 56.332550473661491624, 1e-9));
        assert!(close(n_tilde(1.0, 0.25).unwrap(), 6.2940682162641571685, 1e-9));
        assert!(n_tilde(2.0, 1.0).unwrap() > n_tilde(1.0, 1.0).unwrap());
    }

    #[test]
    fn n_tilde_errors() {
        assert_eq!(n_tilde(1.0, 0.0), Err(BoundsError::DegenerateDelta));
        assert!(matches!(n_tilde(0.5, 1.0), Err(BoundsError::InvalidConstant { name: "k", .. })));
        assert!(n_tilde(1.0, -1.0).is_err());
        assert!(n_tilde(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn neighborhood_values() {
        let n = neighborhood_n(1.0, 0.0, 1.0).unwrap();
        assert!((n.n - 17.67629).abs() < 1e-4);
        assert!(close(n.n, 17.676272865056628674, 1e-9));
        assert_eq!(n.n_proof - n.n, 2.0);
        let n5 = neighborhood_n(1.0, 5.0, 1.0).unwrap();
        assert_eq!(n5.n - n.n, 5.0);
    }

    // K₀, K, ε′, C′, D, ε at δ = L = M = 1, from a 50-digit evaluation
    const CHAIN: [(f64, [f64; 6]); 4] = [
        (1.0, [17.676272865056628674, 35.852545730113257348, 12854.050353298623614, 51418.201413194494455, 51420.201413194494455, 51420.201413194494455]),
        (2.0, [58.332550473661491624, 117.16510094732298325, 247097.89583993493048, 1482590.3750396095829, 1482593.3750396095829, 1482593.3750396095829]),
        (4.0, [273.88730337491271049, 548.27460674982542098, 10220571.509826974177, 102205720.09826974177, 102205725.09826974177, 102205725.09826974177]),
        (8.0, [1492.9528940596852, 2986.4057881193703999, 588628889.06664993813, 10595320012.199698886, 10595320021.199698886, 10595320021.199698886]),
    ];

    #[test]
    fn bcp_chain_values() {
        for (k, want) in CHAIN {
            let c = bcp_epsilon(k, &unit()).unwrap();
            let got = [c.k0, c.k_const, c.eps_prime, c.c_prime, c.d, c.epsilon];
            for (g, w) in got.iter().zip(want) {
                assert!(close(*g, w, 1e-9), "k={k}: {g} vs {w}");
                assert!((g - w).abs() <= 1e-6 * w, "k={k}");
            }
            assert!(close(c.d - c.c_prime, k + 1.0, 1e-6));
        }
        let c = bcp_epsilon(1.0, &unit()).unwrap();
        assert!((c.k0 - 17.67629).abs() < 1e-4);
        assert!((c.c_prime - (4.0 * c.eps_prime + 2.0)).abs() < 1e-6);
        assert_eq!(c.d, c.c_prime + 2.0);
    }

    #[test]
    fn bcp_monotone_in_k() {
        let eps: Vec<f64> = [1.0, 2.0, 4.0, 8.0].iter().map(|&k| bcp_epsilon(k, &unit()).unwrap().epsilon).collect();
        assert!(eps.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn zero_delta_uses_floor() {
        let consts = PresentationConstants { delta: 0.0, ..unit() };
        let c = bcp_epsilon(1.0, &consts).unwrap();
        assert_eq!(c.delta, 0.25);
        assert!(close(c.n_tilde, 6.2940682162641571685, 1e-9));
        assert_eq!(consts.warnings().len(), 1);
        assert!(unit().warnings().is_empty());
        let bad = PresentationConstants { l_pres: 0.0, ..unit() };
        assert!(matches!(bcp_epsilon(1.0, &bad), Err(BoundsError::InvalidConstant { name: "l_pres", .. })));
    }

    #[test]
    fn lemma_bounds() {
        let c = PresentationConstants { k_h: 2.0, ..unit() };
        assert_eq!(hyperbolic_conjugator_bound(3.0, 3.0, &c), 12.0);
        assert_eq!(hyperbolic_conjugator_bound(0.0, 0.0, &c), 0.0);
        let p = PresentationConstants { m_ballcard: 5.0, c_ds: 2.0, ..unit() };
        assert_eq!(parabolic_coset_bound(1.0, &p), 9.0);
        assert_eq!(parabolic_coset_bound(0.0, &p), 3.0);
        let slopes: Vec<f64> = (0..5).map(|x| parabolic_coset_bound(f64::from(x + 1), &p) - parabolic_coset_bound(f64::from(x), &p)).collect();
        assert!(slopes.iter().all(|&s| s == 6.0));
    }

    proptest! {
        #[test]
        fn k_h_plus_one_dominates_proof_bound(k_axis in 0.01f64..100.0, lu in 0.0f64..1e3, lv in 0.0f64..1e3) {
            let c = PresentationConstants { k_axis, k_h: k_axis + 1.0, ..PresentationConstants::default() };
            prop_assert!(hyperbolic_conjugator_bound(lu, lv, &c) >= k_axis * lu + lu + k_axis * lv);
        }

        #[test]
        fn evaluators_monotone(k in 1.0f64..20.0, dk in 0.0f64..5.0, delta in 0.01f64..10.0, dd in 0.0f64..5.0, r in 0.0f64..50.0, dr in 0.0f64..50.0) {
            prop_assert!(n_tilde(k, delta).unwrap() <= n_tilde(k + dk, delta).unwrap());
            prop_assert!(n_tilde(k, delta).unwrap() <= n_tilde(k, delta + dd).unwrap() * (1.0 + 1e-12));
            prop_assert!(neighborhood_n(k, r, delta).unwrap().n <= neighborhood_n(k, r + dr, delta).unwrap().n);
            let consts = PresentationConstants { delta, ..PresentationConstants::default() };
            let c = bcp_epsilon(k, &consts).unwrap();
            prop_assert!(c.epsilon >= c.eps_prime && c.epsilon >= c.d && c.d >= c.c_prime);
            prop_assert!(c.epsilon <= bcp_epsilon(k + dk, &consts).unwrap().epsilon);
        }

        #[test]
        fn theorem_bound_monotone(lu in 0.0f64..30.0, du in 0.0f64..10.0, lv in 0.0f64..30.0) {
            let c = BoundingFunction::parse("2*(1+x)^2").unwrap();
            let qs = [PolynomialBound::monomial(2, q(3)), PolynomialBound::monomial(1, q(1))];
            let consts = PresentationConstants::default();
            let a = theorem_bound(lu, lv, &consts, &c, &qs).unwrap();
            let b = theorem_bound(lu + du, lv, &consts, &c, &qs).unwrap();
            prop_assert!(a.bound <= b.bound);
            prop_assert!(a.bound >= a.hyperbolic && a.bound >= a.subgroup);
            prop_assert_eq!(a, theorem_bound(lu, lv, &consts, &c, &qs).unwrap());
        }
    }

    fn id_fn() -> BoundingFunction {
        BoundingFunction::identity()
    }

    #[test]
    fn theorem_bound_hyperbolic_example() {
        let t = theorem_bound(1.0, 1.0, &unit(), &id_fn(), &[]).unwrap();
        assert_eq!(t.hyperbolic, 328.0);
        assert_eq!(t.subgroup, 0.0);
        assert_eq!(t.synchronous_coset, 0.0);
        // c(14) + Q(2 + 28) + 0 with Q = 0
        assert_eq!(t.parabolic_pair, 14.0);
        assert_eq!(t.bound, 328.0);
    }

    #[test]
    fn theorem_bound_subgroup_dominates() {
        let qs = [PolynomialBound::monomial(6, q(1000))];
        let t = theorem_bound(1.0, 1.0, &unit(), &id_fn(), &qs).unwrap();
        assert!(t.bound >= t.subgroup);
        let small_c = BoundingFunction::constant(BigRational::new(1.into(), 100.into())).unwrap();
        let zero_h = PresentationConstants { k_h: 1e-9, ..unit() };
        let t = theorem_bound(1.0, 1.0, &zero_h, &small_c, &[PolynomialBound::monomial(1, q(1))]).unwrap();
        assert!(t.bound >= t.subgroup && t.subgroup == 3.0);
    }
}
