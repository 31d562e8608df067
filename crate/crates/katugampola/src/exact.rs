//! Closed-form Katugampola integrals of power functions.
//!
//! For `x(t) = (t^rho - a^rho)^v` with `v > -1` the left integral reduces to
//! `rho^(-alpha) Γ(v+1)/Γ(alpha+v+1) (t^rho - a^rho)^(alpha+v)`, and the
//! right integral of `(b^rho - t^rho)^v` mirrors it. These closed forms are
//! the ground truth used by the tests of every other module.

use crate::domain::OperatorParams;
use crate::error::{Error, Result};
use crate::specfun::gamma;

/// Which endpoint a power function is anchored to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `x(t) = (t^rho - a^rho)^v`
    Left,
    /// `y(t) = (b^rho - t^rho)^v`
    Right,
}

/// A power function of the deformed variable, anchored at one endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerFunction {
    v: f64,
    side: Side,
}

impl PowerFunction {
    pub fn new(v: f64, side: Side) -> Result<Self> {
        check_exponent(v)?;
        Ok(Self { v, side })
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// Evaluates the power function itself at `t`.
    pub fn eval(&self, params: &OperatorParams, t: f64) -> f64 {
        let rho = params.rho();
        match self.side {
            Side::Left => (t.powf(rho) - params.a().powf(rho)).powf(self.v),
            Side::Right => (params.b().powf(rho) - t.powf(rho)).powf(self.v),
        }
    }

    /// Evaluates the closed-form integral of this power function at `t`.
    pub fn integral(&self, params: &OperatorParams, t: f64) -> Result<f64> {
        match self.side {
            Side::Left => exact_left_power(params, self.v, t),
            Side::Right => exact_right_power(params, self.v, t),
        }
    }
}

fn check_exponent(v: f64) -> Result<()> {
    if !v.is_finite() || v <= -1.0 {
        return Err(Error::domain(
            "v",
            format!("power exponent must satisfy v > -1, got {v}"),
        ));
    }
    Ok(())
}

fn check_point(params: &OperatorParams, t: f64) -> Result<()> {
    if !t.is_finite() || t < params.a() || t > params.b() {
        return Err(Error::domain(
            "t",
            format!(
                "evaluation point must lie in [{}, {}], got {t}",
                params.a(),
                params.b()
            ),
        ));
    }
    Ok(())
}

/// Left integral of `x(t) = (t^rho - a^rho)^v` in closed form.
pub fn exact_left_power(params: &OperatorParams, v: f64, t: f64) -> Result<f64> {
    check_exponent(v)?;
    check_point(params, t)?;
    let (alpha, rho) = (params.alpha(), params.rho());
    let u = t.powf(rho) - params.a().powf(rho);
    let coeff = rho.powf(-alpha) * gamma(v + 1.0)? / gamma(alpha + v + 1.0)?;
    Ok(coeff * u.powf(alpha + v))
}

/// Right integral of `y(t) = (b^rho - t^rho)^v` in closed form.
pub fn exact_right_power(params: &OperatorParams, v: f64, t: f64) -> Result<f64> {
    check_exponent(v)?;
    check_point(params, t)?;
    let (alpha, rho) = (params.alpha(), params.rho());
    let u = params.b().powf(rho) - t.powf(rho);
    let coeff = rho.powf(-alpha) * gamma(v + 1.0)? / gamma(alpha + v + 1.0)?;
    Ok(coeff * u.powf(alpha + v))
}

/// Left integral of the test function `x(t) = t^(2 rho)` from 0:
/// `2 rho^(-alpha) / Γ(alpha + 3) · t^(rho (alpha + 2))`.
///
/// Requires `a = 0`; equals [`exact_left_power`] with `v = 2`.
pub fn exact_testfn_integral(params: &OperatorParams, t: f64) -> Result<f64> {
    if params.a() != 0.0 {
        return Err(Error::domain(
            "a",
            format!("test-function closed form requires a = 0, got {}", params.a()),
        ));
    }
    check_point(params, t)?;
    let (alpha, rho) = (params.alpha(), params.rho());
    Ok(2.0 * rho.powf(-alpha) / gamma(alpha + 3.0)? * t.powf(rho * (alpha + 2.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(alpha: f64, rho: f64, a: f64, b: f64) -> OperatorParams {
        OperatorParams::new(alpha, rho, a, b).unwrap()
    }

    #[test]
    fn left_power_frozen_value() {
        // closed form at alpha=0.5, rho=1, a=0, v=2, t=0.5, 50-digit reference
        let p = params(0.5, 1.0, 0.0, 1.0);
        let got = exact_left_power(&p, 2.0, 0.5).unwrap();
        let want = 0.10638460810704871412;
        assert!(((got - want) / want).abs() <= 1e-14, "got {got}");
    }

    #[test]
    fn left_power_zero_at_a() {
        let p = params(0.7, 2.1, 0.2, 1.0);
        assert_eq!(exact_left_power(&p, 0.0, 0.2).unwrap(), 0.0);
        let p = params(3.0, 0.4, 0.0, 1.0);
        assert_eq!(exact_left_power(&p, 0.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn left_power_alpha_one_is_plain_integration() {
        // alpha=1, rho=1, a=0, v=1: int_0^t tau dtau = t^2/2
        let p = params(1.0, 1.0, 0.0, 1.0);
        for t in [0.1, 0.3, 0.9] {
            let got = exact_left_power(&p, 1.0, t).unwrap();
            assert!((got - t * t / 2.0).abs() <= 1e-16);
        }
    }

    #[test]
    fn right_power_frozen_value() {
        let p = params(0.5, 2.0, 0.0, 1.0);
        let got = exact_right_power(&p, 1.0, 0.0).unwrap();
        let want = 0.53192304053524357059;
        assert!(((got - want) / want).abs() <= 1e-14, "got {got}");
    }

    #[test]
    fn right_power_zero_at_b() {
        let p = params(1.3, 0.7, 0.0, 1.0);
        assert_eq!(exact_right_power(&p, 0.0, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn right_power_alpha_one_is_interval_length() {
        // alpha=1, rho=1, b=1, v=0: int_t^1 1 dtau = 1 - t
        let p = params(1.0, 1.0, 0.0, 1.0);
        for t in [0.0, 0.25, 0.8] {
            let got = exact_right_power(&p, 0.0, t).unwrap();
            assert!((got - (1.0 - t)).abs() <= 1e-16);
        }
    }

    #[test]
    fn testfn_matches_left_power_v2() {
        let p = params(0.9, 0.2, 0.0, 0.5);
        let got = exact_testfn_integral(&p, 0.5).unwrap();
        let want = 1.0746935914961252921; // 50-digit reference
        assert!(((got - want) / want).abs() <= 1e-14, "got {got}");
        assert_eq!(exact_testfn_integral(&p, 0.0).unwrap(), 0.0);

        // identical to v = 2 closed form for random parameter draws
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let alpha = rng.random_range(0.05..3.0);
            let rho = rng.random_range(0.05..3.0);
            let t = rng.random_range(0.0..0.5);
            let p = params(alpha, rho, 0.0, 0.5);
            let lhs = exact_testfn_integral(&p, t).unwrap();
            let rhs = exact_left_power(&p, 2.0, t).unwrap();
            assert!(
                (lhs - rhs).abs() <= 1e-13 * (1.0 + rhs.abs()),
                "alpha {alpha} rho {rho} t {t}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn testfn_requires_a_zero() {
        let p = params(0.5, 1.0, 0.1, 1.0);
        assert!(matches!(
            exact_testfn_integral(&p, 0.5).unwrap_err(),
            Error::Domain { field: "a", .. }
        ));
    }

    #[test]
    fn rejects_bad_exponent_and_point() {
        let p = params(0.5, 1.0, 0.0, 1.0);
        assert!(matches!(
            exact_left_power(&p, -1.5, 0.5).unwrap_err(),
            Error::Domain { field: "v", .. }
        ));
        assert!(matches!(
            exact_left_power(&p, -1.0, 0.5).unwrap_err(),
            Error::Domain { field: "v", .. }
        ));
        assert!(matches!(
            exact_left_power(&p, 1.0, 1.5).unwrap_err(),
            Error::Domain { field: "t", .. }
        ));
        assert!(exact_right_power(&p, 1.0, -0.1).is_err());
    }

    #[test]
    fn riemann_liouville_reduction_at_rho_one() {
        // rho = 1 must match Gamma(v+1)/Gamma(alpha+v+1) (t-a)^(alpha+v)
        for (alpha, v, a, t) in [
            (0.5, 2.0, 0.0, 0.5),
            (1.7, 0.3, 0.2, 0.9),
            (2.2, -0.4, 0.0, 0.35),
            (0.9, 1.0, 0.1, 1.0),
        ] {
            let p = params(alpha, 1.0, a, 1.0);
            let got = exact_left_power(&p, v, t).unwrap();
            let want = gamma(v + 1.0).unwrap() / gamma(alpha + v + 1.0).unwrap()
                * (t - a).powf(alpha + v);
            assert!(
                ((got - want) / want.abs().max(1e-300)).abs() <= 1e-13,
                "alpha {alpha} v {v}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn hadamard_limit_as_rho_vanishes() {
        // v = 0, a = 1: value tends to (ln(t/a))^alpha / Gamma(alpha+1)
        // with O(rho) error, so the error decreases monotonically in rho
        let t = 2.0;
        for alpha in [0.5, 1.5] {
            let limit = (t / 1.0_f64).ln().powf(alpha) / gamma(alpha + 1.0).unwrap();
            let mut last = f64::INFINITY;
            for rho in [1e-2, 1e-3, 1e-4] {
                let p = params(alpha, rho, 1.0, 2.0);
                let got = exact_left_power(&p, 0.0, t).unwrap();
                let err = (got - limit).abs();
                assert!(
                    err < last,
                    "alpha {alpha} rho {rho}: error {err} did not shrink (prev {last})"
                );
                last = err;
            }
        }
    }

    #[test]
    fn homogeneous_in_deformed_distance() {
        // doubling t^rho - a^rho scales the value by 2^(alpha+v)
        let alpha = 0.8;
        let rho = 1.6;
        let v = 1.2;
        let p = params(alpha, rho, 0.0, 10.0);
        let t1: f64 = 0.7;
        let u1 = t1.powf(rho);
        let t2 = (2.0 * u1).powf(1.0 / rho); // t with doubled deformed distance
        let i1 = exact_left_power(&p, v, t1).unwrap();
        let i2 = exact_left_power(&p, v, t2).unwrap();
        let ratio = i2 / i1;
        let want = 2.0_f64.powf(alpha + v);
        assert!(((ratio - want) / want).abs() <= 1e-12, "ratio {ratio}");
    }

    #[test]
    fn power_function_type() {
        assert!(PowerFunction::new(-1.0, Side::Left).is_err());
        let pf = PowerFunction::new(2.0, Side::Left).unwrap();
        let p = params(0.5, 1.0, 0.0, 1.0);
        assert_eq!(pf.eval(&p, 0.5), 0.25);
        let int = pf.integral(&p, 0.5).unwrap();
        assert!((int - 0.10638460810704871412).abs() <= 1e-15);
        let pf = PowerFunction::new(1.0, Side::Right).unwrap();
        assert_eq!(pf.eval(&p, 0.25), 0.75);
    }
}
