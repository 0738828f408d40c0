//! Closed-form growth-rate bounds and comparison tables.
//!
//! Everything here is evaluated in log-space (natural log, "nats") so
//! astronomically large bounds stay representable: a row's fields are the
//! exponents of the bounds, not the bounds themselves. The known upper
//! and lower exponents from earlier work carry free constants `c` and
//! `cprime` that are not pinned anywhere; they default to 1 and the table
//! labels them explicitly so nobody mistakes them for derived values. The
//! same goes for `cdelta`, except an explicit non-arbitrary instantiation
//! is available from the exact relative-entropy (Chernoff) tail bound.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::Rational;

/// Scale factors the bound formulas leave free.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundConstants {
    /// Scales the known upper exponent. Arbitrary default 1.
    pub c: f64,
    /// Scales the known lower exponent. Arbitrary default 1.
    pub c_prime: f64,
    /// The slack parameter of the randomised construction.
    pub delta: f64,
    /// Scales the concentration-based lower exponent. Arbitrary default 1;
    /// `chernoff_c_delta` offers a principled value.
    pub c_delta: f64,
}

impl Default for BoundConstants {
    fn default() -> Self {
        BoundConstants { c: 1.0, c_prime: 1.0, delta: 1.0 / 32.0, c_delta: 1.0 }
    }
}

impl BoundConstants {
    /// The table token recording which constants produced a row.
    pub fn label(&self) -> String {
        format!(
            "c={};cprime={};delta={};cdelta={}",
            self.c, self.c_prime, self.delta, self.c_delta,
        )
    }
}

/// One grid point: every bound exponent at a single (r, s, k), in nats.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub r: u32,
    pub s: u32,
    pub k: u32,
    /// (r - s) / r.
    pub eps: f64,
    /// c * k(r-s)^2/r * ln(r / min(s, r-s)): the best known upper exponent.
    pub upper_prior: f64,
    /// cprime * k(r-s)^3/r^2: the previously best lower exponent.
    pub lower_prior: f64,
    /// delta * k(r-s)^2/r * ln 2: the exponent the randomised blow-up
    /// construction achieves, matching the upper bound up to the log factor.
    pub lower_main: f64,
    /// max(0, (eps r / 2) * ln(eps (k-1) / e)): what the complete
    /// multipartite construction already gives.
    pub lower_simple: f64,
    /// cdelta * eps * r: the concentration-argument exponent.
    pub lower_chernoff: f64,
    /// (eps k / 6) * ln 2: the uniform random baseline.
    pub lower_random: f64,
    /// The bound k^2 itself (not an exponent), present exactly when
    /// k(r - s) <= r, where clique counting alone caps the answer.
    pub turan_upper: Option<f64>,
    pub constants: BoundConstants,
}

#[derive(Debug, PartialEq, Eq)]
pub enum BoundsError {
    Domain { r: u32, s: u32, k: u32, reason: &'static str },
    BadConstants(String),
}

impl fmt::Display for BoundsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundsError::Domain { r, s, k, reason } => {
                write!(f, "bounds undefined at (r={r}, s={s}, k={k}): {reason}")
            }
            BoundsError::BadConstants(msg) => write!(f, "bad constants: {msg}"),
        }
    }
}

impl std::error::Error for BoundsError {}

/// Evaluate every exponent at one grid point.
pub fn evaluate_bounds(
    r: u32,
    s: u32,
    k: u32,
    constants: &BoundConstants,
) -> Result<BoundRow, BoundsError> {
    if r < 2 {
        return Err(BoundsError::Domain { r, s, k, reason: "need at least two colours" });
    }
    if s < 1 || s >= r {
        return Err(BoundsError::Domain { r, s, k, reason: "need 1 <= s < r" });
    }
    if k < 2 {
        return Err(BoundsError::Domain { r, s, k, reason: "need clique order k >= 2" });
    }
    if !(constants.c > 0.0 && constants.c_prime > 0.0 && constants.delta > 0.0
        && constants.c_delta > 0.0)
    {
        return Err(BoundsError::BadConstants(
            "all of c, cprime, delta, cdelta must be positive".to_string(),
        ));
    }

    let (rf, kf) = (f64::from(r), f64::from(k));
    let surplus = f64::from(r - s);
    let eps = surplus / rf;

    let upper_prior =
        constants.c * kf * surplus * surplus / rf * (rf / f64::from(s.min(r - s))).ln();
    let lower_prior = constants.c_prime * kf * surplus.powi(3) / (rf * rf);
    let lower_main =
        constants.delta * kf * surplus * surplus / rf * std::f64::consts::LN_2;
    let lower_simple =
        (eps * rf / 2.0 * (eps * (kf - 1.0) / std::f64::consts::E).ln()).max(0.0);
    let lower_chernoff = constants.c_delta * eps * rf;
    let lower_random = eps * kf / 6.0 * std::f64::consts::LN_2;
    // k(r - s) <= r, checked in integers so the boundary is exact.
    let turan_upper =
        (u64::from(k) * u64::from(r - s) <= u64::from(r)).then(|| kf * kf);

    Ok(BoundRow {
        r,
        s,
        k,
        eps,
        upper_prior,
        lower_prior,
        lower_main,
        lower_simple,
        lower_chernoff,
        lower_random,
        turan_upper,
        constants: *constants,
    })
}

/// The largest cd with P(Bin(r, 1/(k-1)) >= eps*r) <= exp(-cd*eps*r),
/// from the exact relative-entropy form of the Chernoff bound. None when
/// eps <= 1/(k-1): the event is then typical and has no exponential decay.
pub fn chernoff_c_delta(r: u32, s: u32, k: u32) -> Option<f64> {
    if r < 2 || s < 1 || s >= r || k < 3 {
        return None;
    }
    let eps = f64::from(r - s) / f64::from(r);
    let q = 1.0 / (f64::from(k) - 1.0);
    if eps <= q {
        return None;
    }
    // KL(eps || q) for the upper tail; eps < 1 because s >= 1.
    let kl = eps * (eps / q).ln() + (1.0 - eps) * ((1.0 - eps) / (1.0 - q)).ln();
    Some(kl / eps)
}

/// Exact P(Bin(n, p) >= threshold) as a rational number.
pub fn binomial_tail_ge(n: u64, threshold: u64, p: &Rational) -> Rational {
    assert!(
        !p.is_negative() && *p <= Rational::one(),
        "success probability must lie in [0, 1]",
    );
    assert!(n <= 100_000, "tail computation capped at n = 100000");
    if threshold == 0 {
        return Rational::one();
    }
    if threshold > n {
        return Rational::zero();
    }
    let q = Rational::one() - p;
    let mut total = Rational::zero();
    for j in threshold..=n {
        let ways = Rational::from_integer(num_integer::binomial(
            BigInt::from(n),
            BigInt::from(j),
        ));
        total += ways * p.pow(j as i32) * q.pow((n - j) as i32);
    }
    total
}

/// How the sweep derives s from r.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SRule {
    /// The same s everywhere.
    Fixed(u32),
    /// s = r - d.
    Minus(u32),
    /// s = r - ceil(log2 r): the regime where the known upper and lower
    /// exponents are separated by roughly a log factor.
    MinusCeilLog2,
}

impl SRule {
    /// The s this rule picks at a given r, when it lands in 1..r.
    pub fn s_for(&self, r: u32) -> Option<u32> {
        let s = match *self {
            SRule::Fixed(v) => v,
            SRule::Minus(d) => r.checked_sub(d)?,
            SRule::MinusCeilLog2 => r.checked_sub(ceil_log2(r))?,
        };
        (s >= 1 && s < r).then_some(s)
    }
}

/// Smallest j with 2^j >= v, for v >= 1.
pub fn ceil_log2(v: u32) -> u32 {
    assert!(v >= 1);
    u32::from(!v.is_power_of_two()) + v.ilog2()
}

#[derive(Debug, PartialEq, Eq)]
pub struct ParseSRuleError(String);

impl fmt::Display for ParseSRuleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unrecognised s rule {:?}; expected fixed:<v>, minus:<d>, or minus-log2",
            self.0,
        )
    }
}

impl std::error::Error for ParseSRuleError {}

impl FromStr for SRule {
    type Err = ParseSRuleError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        if text == "minus-log2" {
            return Ok(SRule::MinusCeilLog2);
        }
        if let Some(v) = text.strip_prefix("fixed:") {
            if let Ok(v) = v.parse() {
                return Ok(SRule::Fixed(v));
            }
        }
        if let Some(d) = text.strip_prefix("minus:") {
            if let Ok(d) = d.parse() {
                return Ok(SRule::Minus(d));
            }
        }
        Err(ParseSRuleError(text.to_string()))
    }
}

/// The fixed column layout of the bounds table.
pub const TABLE_HEADER: &str = "r,s,k,eps,upper_cfhmsv,lower_cfhmsv,lower_thm12,lower_thm41,lower_thm42,lower_random,turan_upper,constants";

fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Write the header plus one row per (r, k) grid point whose s rule lands
/// in range, comma-separated with 12 significant digits and NA for absent
/// fields. Returns the number of data rows written.
pub fn emit_bounds_table(
    r_values: &[u32],
    s_rule: &SRule,
    k_values: &[u32],
    constants: &BoundConstants,
    out: &mut impl Write,
) -> io::Result<u64> {
    writeln!(out, "{TABLE_HEADER}")?;
    let mut rows = 0;
    for &r in r_values {
        let Some(s) = s_rule.s_for(r) else { continue };
        for &k in k_values {
            let row = match evaluate_bounds(r, s, k, constants) {
                Ok(row) => row,
                Err(BoundsError::Domain { .. }) => continue,
                Err(e @ BoundsError::BadConstants(_)) => {
                    return Err(io::Error::new(io::ErrorKind::InvalidInput, e.to_string()));
                }
            };
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                row.r,
                row.s,
                row.k,
                sig12(row.eps),
                sig12(row.upper_prior),
                sig12(row.lower_prior),
                sig12(row.lower_main),
                sig12(row.lower_simple),
                sig12(row.lower_chernoff),
                sig12(row.lower_random),
                row.turan_upper.map_or_else(|| "NA".to_string(), sig12),
                row.constants.label(),
            )?;
            rows += 1;
        }
    }
    Ok(rows)
}
