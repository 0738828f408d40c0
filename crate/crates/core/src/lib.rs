//! Toolkit for set colourings of complete graphs.
//!
//! A set colouring assigns every edge of K_n a set of s colours drawn from a
//! palette of r. A clique is monochromatic when some single colour appears in
//! the colour set of every one of its edges. This crate generates random
//! colourings engineered to avoid monochromatic K_k (blow-ups of random seed
//! graphs, plus a complete multipartite family), verifies candidates exactly,
//! cross-checks tiny cases against exhaustive search, and evaluates the
//! closed-form bounds the constructions are calibrated against.
//!
//! Everything randomized is driven by explicit 64-bit seeds through keyed
//! ChaCha8 streams, so artifacts and certificates reproduce bit for bit
//! across platforms and thread counts.

pub mod bounds;
pub mod certificate;
pub mod cli;
pub mod colouring;
pub mod construction;
pub mod diagnostics;
pub mod oracle;
pub mod params;
pub mod ratio;
pub mod rng;
pub mod verifier;

/// Exact rational scalar, used wherever a value must carry no rounding error
/// (edge probabilities, regime thresholds, bucket inequalities).
pub type Rational = num_rational::BigRational;

pub use certificate::{Certificate, CertificateError, ConstructionTag};
pub use colouring::SetColouring;
pub use construction::{
    build_main_colouring, build_simple_colouring, resample_until_valid, BuiltColouring,
    ConstructionKind, ResampleOutcome,
};
pub use params::{default_delta, derive_params, override_params, ConstructionParams};
pub use verifier::{find_monochromatic_clique, verify, CliqueWitness, VerificationReport};
