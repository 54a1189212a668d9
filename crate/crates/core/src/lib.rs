//! Exact-integer toolkit for the generalized gcd `(a, b)_s` and the totients
//! built on it, with exhaustive verifiers for Menon-type gcd-sum identities.
//!
//! * [`factorint`]: primality, factorization, divisors, checked powers.
//! * [`arithfn`]: Φ_s, J_s, φ_s, H_s, τ_s, σ_{k,s} with closed forms, oracles and a sieve.
//! * [`identities`]: left/right-hand sides of every identity and [`identities::verify`].
//! * [`grouptotient`]: element-order censuses and Φ_s of finite abelian groups.
//! * [`sweep`]: batch verification over parameter ranges with deterministic output.
//! * [`report`]: table, JSON and CSV rendering of reports.

pub mod arithfn;
pub mod error;
pub mod factorint;
pub mod grouptotient;
pub mod identities;
pub mod par;
pub mod report;
pub mod sweep;
pub mod wide;

pub use arithfn::SParam;
pub use error::{Error, Result};
pub use factorint::Factorization;
pub use identities::{verify, IdentityInstance, VerificationReport, VerifyConfig};
pub use wide::WideNat;
