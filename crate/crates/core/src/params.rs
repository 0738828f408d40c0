//! Parameter derivation for the colouring constructions.
//!
//! Everything that influences validity is kept exact: eps, p, t, and the
//! regime thresholds are rationals. The two scale exponents are reals (f64
//! images of exact rationals), and the default integer orders m and n are
//! rounded from them. At calibration scale those orders are astronomically
//! large; desk runs override them, so out-of-range defaults saturate at
//! u64::MAX instead of failing.

use std::error::Error;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::{ratio, Rational};

/// Derived parameter bundle shared by construction, diagnostics, and the CLI.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstructionParams {
    /// Palette size, at least 2.
    pub r: u32,
    /// Colours per edge, 1 <= s < r (verification alone also accepts s = r).
    pub s: u32,
    /// Forbidden clique order, at least 2.
    pub k: u32,
    /// Density margin, 0 < delta < 1/16.
    pub delta: Rational,
    /// (r - s)/r, exact.
    pub eps: Rational,
    /// 1/delta^3, exact.
    pub big_c: Rational,
    /// delta^2 * eps * k.
    pub m_exponent: f64,
    /// delta^4 * eps^2 * r * k.
    pub n_exponent: f64,
    /// Seed-graph order; default ceil(2^m_exponent).
    pub m: u64,
    /// Host graph order; default max(2, floor(2^n_exponent)).
    pub n: u64,
    /// Seed-graph edge probability 1 - 5*delta*eps, exact.
    pub p: Rational,
    /// Cluster budget delta * eps * k^2, exact.
    pub t: Rational,
    /// ceil(t).
    pub t_int: u64,
    /// s <= r - C ln r and k >= (C/eps) ln r, with ln r rounded to f64.
    pub in_asymptotic_regime: bool,
    /// k <= 1/eps, decided exactly as k*(r - s) <= r.
    pub in_turan_regime: bool,
    /// Set when m, n, or p were overridden away from their derived defaults.
    pub non_canonical: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamError {
    PaletteTooSmall(u32),
    ColoursPerEdge { s: u32, r: u32 },
    CliqueOrder(u32),
    DeltaRange(String),
    OverrideM(u64),
    OverrideN(u64),
    OverrideP(String),
}

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamError::PaletteTooSmall(r) => write!(f, "palette size r = {r} must be at least 2"),
            ParamError::ColoursPerEdge { s, r } => write!(
                f,
                "colours per edge s = {s} must satisfy 1 <= s < r = {r} for construction \
                 (verification alone accepts s = r)"
            ),
            ParamError::CliqueOrder(k) => write!(f, "clique order k = {k} must be at least 2"),
            ParamError::DeltaRange(d) => {
                write!(f, "delta = {d} must lie strictly between 0 and 1/16")
            }
            ParamError::OverrideM(m) => write!(f, "override m = {m} must be at least 1"),
            ParamError::OverrideN(n) => write!(f, "override n = {n} must be at least 2"),
            ParamError::OverrideP(p) => write!(f, "override p = {p} must lie in [0, 1]"),
        }
    }
}

impl Error for ParamError {}

/// 2^exponent rounded with `round`, clamped to [floor_at, u64::MAX].
fn pow2_to_u64(exponent: f64, round_up: bool, floor_at: u64) -> u64 {
    let x = 2f64.powf(exponent);
    let rounded = if round_up { x.ceil() } else { x.floor() };
    if !rounded.is_finite() || rounded >= u64::MAX as f64 {
        return u64::MAX;
    }
    (rounded as u64).max(floor_at)
}

/// The slack value used when the caller does not pick one.
pub fn default_delta() -> Rational {
    ratio::from_frac(1, 32)
}

/// Derives the full parameter bundle from (r, s, k, delta).
pub fn derive_params(r: u32, s: u32, k: u32, delta: &Rational) -> Result<ConstructionParams, ParamError> {
    if r < 2 {
        return Err(ParamError::PaletteTooSmall(r));
    }
    if s < 1 || s >= r {
        return Err(ParamError::ColoursPerEdge { s, r });
    }
    if k < 2 {
        return Err(ParamError::CliqueOrder(k));
    }
    let sixteenth = Rational::new(BigInt::from(1), BigInt::from(16));
    if !delta.is_positive() || *delta >= sixteenth {
        return Err(ParamError::DeltaRange(ratio::format(delta)));
    }

    let eps = ratio::from_frac((r - s) as u64, r as u64);
    let big_c = Rational::one() / (delta * delta * delta);
    let p = Rational::one() - ratio::from_u64(5) * delta * &eps;
    let t = delta * &eps * ratio::from_u64(k as u64 * k as u64);
    let t_int = t.ceil().to_integer().to_u64().unwrap_or(u64::MAX);

    let m_exponent = ratio::to_f64(&(delta * delta * &eps * ratio::from_u64(k as u64)));
    let n_exponent = ratio::to_f64(
        &(delta * delta * delta * delta * &eps * &eps * ratio::from_u64(r as u64 * k as u64)),
    );
    let m = pow2_to_u64(m_exponent, true, 1);
    let n = pow2_to_u64(n_exponent, false, 2);

    // ln r is the single rounded quantity in the regime predicates
    let ln_r = (r as f64).ln();
    let in_asymptotic_regime = (s as f64) <= (r as f64) - ratio::to_f64(&big_c) * ln_r
        && (k as f64) >= ratio::to_f64(&(&big_c / &eps)) * ln_r;
    let in_turan_regime = (k as u64) * ((r - s) as u64) <= r as u64;

    Ok(ConstructionParams {
        r,
        s,
        k,
        delta: delta.clone(),
        eps,
        big_c,
        m_exponent,
        n_exponent,
        m,
        n,
        p,
        t,
        t_int,
        in_asymptotic_regime,
        in_turan_regime,
        non_canonical: false,
    })
}

/// Replaces m, n, or p on an already derived bundle, for desk-scale runs.
pub fn override_params(
    base: &ConstructionParams,
    m: Option<u64>,
    n: Option<u64>,
    p: Option<Rational>,
) -> Result<ConstructionParams, ParamError> {
    let mut out = base.clone();
    if let Some(m) = m {
        if m < 1 {
            return Err(ParamError::OverrideM(m));
        }
        out.m = m;
    }
    if let Some(n) = n {
        if n < 2 {
            return Err(ParamError::OverrideN(n));
        }
        out.n = n;
    }
    if let Some(p) = p {
        if p.is_negative() || p > Rational::one() {
            return Err(ParamError::OverrideP(ratio::format(&p)));
        }
        out.p = p;
    }
    out.non_canonical =
        base.non_canonical || out.m != base.m || out.n != base.n || out.p != base.p;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn delta_default() -> Rational {
        default_delta()
    }

    #[test]
    fn frozen_large_scale_bundle() {
        let p = derive_params(16, 12, 4096, &delta_default()).unwrap();
        assert_eq!(p.eps, ratio::from_frac(1, 4));
        assert_eq!(p.p, ratio::from_frac(123, 128));
        assert_eq!(ratio::to_f64(&p.p), 0.9609375);
        assert_eq!(p.m_exponent, 1.0);
        assert_eq!(p.m, 2);
        assert_eq!(p.t, ratio::from_u64(131072));
        assert_eq!(p.t_int, 131072);
        assert_eq!(p.n_exponent, 0.00390625); // 2^-8
        assert_eq!(p.n, 2);
        assert!(!p.non_canonical);
    }

    #[test]
    fn desk_scale_bundle() {
        let p = derive_params(10, 5, 7, &delta_default()).unwrap();
        assert_eq!(p.eps, ratio::from_frac(1, 2));
        assert_eq!(p.p, ratio::from_frac(59, 64));
        assert_eq!(p.t, ratio::from_frac(49, 64));
        assert_eq!(p.t_int, 1);
        assert_eq!(p.m, 2);
        assert!(!p.in_asymptotic_regime);
        assert!(!p.in_turan_regime);
    }

    #[test]
    fn turan_regime_is_exact() {
        // k <= 1/eps iff k*(r-s) <= r
        let p = derive_params(10, 9, 10, &delta_default()).unwrap();
        assert!(p.in_turan_regime);
        let p = derive_params(10, 9, 11, &delta_default()).unwrap();
        assert!(!p.in_turan_regime);
    }

    #[test]
    fn domain_errors() {
        let d = delta_default();
        assert!(matches!(
            derive_params(4, 4, 3, &d),
            Err(ParamError::ColoursPerEdge { s: 4, r: 4 })
        ));
        assert!(derive_params(4, 0, 3, &d).is_err());
        assert!(derive_params(1, 1, 3, &d).is_err());
        assert!(derive_params(4, 2, 1, &d).is_err());
        assert!(derive_params(4, 2, 3, &ratio::from_frac(1, 16)).is_err());
        assert!(derive_params(4, 2, 3, &ratio::from_u64(0)).is_err());
    }

    #[test]
    fn m_exponent_strictly_increases_in_k() {
        let mut last = f64::NEG_INFINITY;
        for k in [2u32, 3, 5, 8, 13, 100, 4096] {
            let p = derive_params(16, 12, k, &delta_default()).unwrap();
            assert!(p.m_exponent > last, "k = {k}");
            last = p.m_exponent;
        }
    }

    #[test]
    fn overrides_validate_and_mark_non_canonical() {
        let base = derive_params(12, 8, 6, &delta_default()).unwrap();
        let o = override_params(
            &base,
            Some(20),
            Some(60),
            Some(ratio::from_frac(7, 10)),
        )
        .unwrap();
        assert_eq!((o.m, o.n), (20, 60));
        assert_eq!(o.p, ratio::from_frac(7, 10));
        assert!(o.non_canonical);
        assert!(!base.non_canonical);
        assert!(override_params(&base, Some(0), None, None).is_err());
        assert!(override_params(&base, None, Some(1), None).is_err());
        assert!(override_params(&base, None, None, Some(ratio::from_frac(3, 2))).is_err());
        // p = 0 and p = 1 are allowed for stress runs
        assert!(override_params(&base, None, None, Some(Rational::one())).is_ok());
    }
}
