//! Menon-type gcd-sum identities: brute-force left-hand sides, closed-form
//! right-hand sides, and a uniform [`verify`] that compares the two.
//!
//! Parameter naming is the same for every identity: `k` counts the
//! unit-constrained coordinates `m_1..m_k`, `r` counts the free coordinates
//! `b_1..b_r`, `s` is the power of the generalized gcd, and `a` holds the
//! shifts `a_1..a_k`.

mod closed;
mod enumerate;

use std::fmt;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

pub use closed::{
    li_kim_rhs, likim_sum_rhs, main_rhs, menon_rhs, prime_power_lhs, prime_power_rhs, progression_count_rhs,
    shifted_li_kim_rhs, single_unit_rhs, sury_rhs, units_only_rhs,
};
pub use enumerate::{residue, s_units, shifted_gcd_sum, GcdSum};

use crate::arithfn::{gcd_s, ModulusGcd, SParam, DEFAULT_ENUMERATION_BOUND};
use crate::error::{Error, Result};
use crate::factorint::ipow_checked;
use crate::grouptotient;
use crate::par::Exec;
use crate::wide::WideNat;

/// Knobs shared by every verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Maximum number of tuples a single left-hand side may enumerate.
    pub budget: u128,
    pub exec: Exec,
    /// Adds one to every right-hand side. Only for exercising mismatch paths.
    #[doc(hidden)]
    pub falsify_rhs: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { budget: DEFAULT_ENUMERATION_BOUND, exec: Exec::default(), falsify_rhs: false }
    }
}

impl VerifyConfig {
    pub fn with_budget(budget: u128) -> Self {
        VerifyConfig { budget, ..Self::default() }
    }
}

/// `n^s` as a `u64` modulus for enumeration.
pub fn power_modulus(n: u64, s: SParam) -> Result<u64> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    ipow_checked(WideNat::from(n), s.get())?.to_u64().ok_or(Error::Overflow)
}

/// True iff `(a mod N, N)_s = 1`.
pub fn is_admissible_shift(a: i64, modulus: u64, s: SParam) -> Result<bool> {
    Ok(ModulusGcd::new(modulus, s)?.is_coprime(residue(a as i128, modulus)))
}

fn check_shifts(a: &[i64], k: u32, modulus: u64, s: SParam) -> Result<()> {
    if a.len() != k as usize {
        return Err(Error::domain(format!("expected {k} shifts, got {}", a.len())));
    }
    let table = ModulusGcd::new(modulus, s)?;
    for &ai in a {
        if !table.is_coprime(residue(ai as i128, modulus)) {
            return Err(Error::domain(format!(
                "shift {ai} is not relatively {}-prime to {modulus}",
                s.get()
            )));
        }
    }
    Ok(())
}

fn require_k(k: u32) -> Result<()> {
    if k == 0 {
        Err(Error::domain("k must be at least 1"))
    } else {
        Ok(())
    }
}

/// `Σ_{m ≤ n, (m,n)=1} (m-1, n)`.
pub fn menon_lhs(n: u64, cfg: &VerifyConfig) -> Result<GcdSum> {
    shifted_gcd_sum(n, SParam::ONE, &[1], 0, cfg.budget, cfg.exec)
}

/// `Σ (m_1 - 1, m_2, ..., m_k, n)` with `m_1` a unit and `m_2..m_k` free.
pub fn sury_lhs(n: u64, k: u32, cfg: &VerifyConfig) -> Result<GcdSum> {
    require_k(k)?;
    shifted_gcd_sum(n, SParam::ONE, &[1], k - 1, cfg.budget, cfg.exec)
}

/// `Σ (a_1 - c_1, ..., a_k - c_k, b_1, ..., b_r, n)` over units `a_i` and
/// residues `b_j`, with shifts `c_i` coprime to `n`.
pub fn li_kim_lhs(n: u64, k: u32, r: u32, a: &[i64], cfg: &VerifyConfig) -> Result<GcdSum> {
    require_k(k)?;
    check_shifts(a, k, n.max(1), SParam::ONE)?;
    shifted_gcd_sum(n, SParam::ONE, a, r, cfg.budget, cfg.exec)
}

/// Parameters of the generalized identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MainParams {
    pub n: u64,
    pub s: SParam,
    pub k: u32,
    pub r: u32,
    pub a: Vec<i64>,
}

/// Left-hand side of the generalized identity: the sum over `m_i` in
/// `[1, n^s]` relatively `s`-prime to `n^s` and free `b_j` in `[1, n^s]` of
/// `(m_1 - a_1, ..., m_k - a_k, b_1, ..., b_r, n^s)_s`.
pub fn main_lhs(params: &MainParams, cfg: &VerifyConfig) -> Result<GcdSum> {
    require_k(params.k)?;
    let modulus = power_modulus(params.n, params.s)?;
    check_shifts(&params.a, params.k, modulus, params.s)?;
    shifted_gcd_sum(modulus, params.s, &params.a, params.r, cfg.budget, cfg.exec)
}

fn check_progression(n: u64, d: u64, s: SParam, r_shift: u64) -> Result<u64> {
    if n == 0 || d == 0 {
        return Err(Error::domain("n and d must be positive"));
    }
    let ds = power_modulus(d, s)?;
    if !n.is_multiple_of(ds) {
        return Err(Error::domain(format!("d^s = {ds} does not divide {n}")));
    }
    if gcd_s(&[WideNat::from(r_shift), WideNat::from(ds)], s)? != WideNat::ONE {
        return Err(Error::domain(format!("({r_shift}, {ds})_{} != 1", s.get())));
    }
    Ok(ds)
}

/// Number of `t` in `1..=n/d^s` with `(r + t d^s, n)_s = 1`, in closed form
/// `Φ_s(n) / Φ_s(d^s)`.
pub fn count_progression(n: u64, d: u64, s: SParam, r_shift: u64) -> Result<WideNat> {
    check_progression(n, d, s, r_shift)?;
    progression_count_rhs(n, d, s)
}

/// Direct count for [`count_progression`].
pub fn count_progression_oracle(n: u64, d: u64, s: SParam, r_shift: u64, budget: u128) -> Result<WideNat> {
    let ds = check_progression(n, d, s, r_shift)?;
    let len = n / ds;
    if len as u128 > budget {
        return Err(Error::BoundExceeded { required: len as u128, budget });
    }
    let table = ModulusGcd::new(n, s)?;
    let base = r_shift % n;
    let count = (1..=len)
        .filter(|&t| table.is_coprime(((base as u128 + t as u128 * ds as u128) % n as u128) as u64))
        .count();
    Ok(WideNat::from(count as u64))
}

/// Which second route an [`IdentityInstance::RhsEquivalence`] compares
/// against the Li–Kim product.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EquivalenceRoute {
    /// `φ(n) · Σ_{d|n} d^r (φ(n)/φ(n/d))^(k-1)`.
    #[default]
    DivisorSum,
    /// The generalized right-hand side at `s = 1`.
    MainAtOne,
}

/// An identity together with all of its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "identity", content = "params", rename_all = "snake_case")]
pub enum IdentityInstance {
    Menon {
        n: u64,
    },
    MenonSury {
        n: u64,
        k: u32,
    },
    LiKim {
        n: u64,
        k: u32,
        r: u32,
        a: Vec<i64>,
    },
    Main(MainParams),
    PrimePower {
        p: u64,
        t: u32,
        r: u32,
        k: u32,
    },
    RhsEquivalence {
        n: u64,
        k: u32,
        r: u32,
        #[serde(default)]
        via: EquivalenceRoute,
    },
    /// `s = 1`, arbitrary unit shifts.
    ShiftedLiKim {
        n: u64,
        k: u32,
        r: u32,
        a: Vec<i64>,
    },
    /// `r = 0`.
    UnitsOnly {
        n: u64,
        s: SParam,
        k: u32,
        a: Vec<i64>,
    },
    /// `k = 1`, `r = 0`, `a = [1]`.
    SingleUnit {
        n: u64,
        s: SParam,
    },
    ProgressionCount {
        n: u64,
        d: u64,
        s: SParam,
        r_shift: u64,
    },
    /// `Φ_s` of a direct product of cyclic groups against its product rule.
    GroupProduct {
        factors: Vec<u64>,
        s: SParam,
    },
}

impl IdentityInstance {
    pub fn name(&self) -> &'static str {
        match self {
            IdentityInstance::Menon { .. } => "menon",
            IdentityInstance::MenonSury { .. } => "menon_sury",
            IdentityInstance::LiKim { .. } => "li_kim",
            IdentityInstance::Main(_) => "main",
            IdentityInstance::PrimePower { .. } => "prime_power",
            IdentityInstance::RhsEquivalence { .. } => "rhs_equivalence",
            IdentityInstance::ShiftedLiKim { .. } => "shifted_li_kim",
            IdentityInstance::UnitsOnly { .. } => "units_only",
            IdentityInstance::SingleUnit { .. } => "single_unit",
            IdentityInstance::ProgressionCount { .. } => "progression_count",
            IdentityInstance::GroupProduct { .. } => "group_product",
        }
    }

    /// Compact `key=value` rendering of the parameters.
    pub fn params_string(&self) -> String {
        fn list<T: ToString>(xs: &[T]) -> String {
            xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
        }
        match self {
            IdentityInstance::Menon { n } => format!("n={n}"),
            IdentityInstance::MenonSury { n, k } => format!("n={n} k={k}"),
            IdentityInstance::LiKim { n, k, r, a } | IdentityInstance::ShiftedLiKim { n, k, r, a } => {
                format!("n={n} k={k} r={r} a={}", list(a))
            }
            IdentityInstance::Main(p) => {
                format!("n={} s={} k={} r={} a={}", p.n, p.s.get(), p.k, p.r, list(&p.a))
            }
            IdentityInstance::PrimePower { p, t, r, k } => format!("p={p} t={t} r={r} k={k}"),
            IdentityInstance::RhsEquivalence { n, k, r, via } => {
                let via = match via {
                    EquivalenceRoute::DivisorSum => "divisor_sum",
                    EquivalenceRoute::MainAtOne => "main_at_one",
                };
                format!("n={n} k={k} r={r} via={via}")
            }
            IdentityInstance::UnitsOnly { n, s, k, a } => {
                format!("n={n} s={} k={k} a={}", s.get(), list(a))
            }
            IdentityInstance::SingleUnit { n, s } => format!("n={n} s={}", s.get()),
            IdentityInstance::ProgressionCount { n, d, s, r_shift } => {
                format!("n={n} d={d} s={} r_shift={r_shift}", s.get())
            }
            IdentityInstance::GroupProduct { factors, s } => {
                format!("factors={} s={}", list(factors), s.get())
            }
        }
    }
}

impl fmt::Display for IdentityInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name(), self.params_string())
    }
}

/// Category of a verification that could not produce both sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    Domain,
    Overflow,
    BoundExceeded,
    Unsupported,
    ResourceLimit,
    Internal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub kind: FailureKind,
    pub message: String,
}

impl From<&Error> for Failure {
    fn from(e: &Error) -> Self {
        let kind = match e {
            Error::Domain(_) => FailureKind::Domain,
            Error::Overflow => FailureKind::Overflow,
            Error::BoundExceeded { .. } => FailureKind::BoundExceeded,
            Error::Unsupported(_) => FailureKind::Unsupported,
            Error::ResourceLimit(_) => FailureKind::ResourceLimit,
            Error::Internal(_) => FailureKind::Internal,
        };
        Failure { kind, message: e.to_string() }
    }
}

/// Outcome of verifying one instance. `matched` holds exactly when both
/// sides were computed and are equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    #[serde(flatten)]
    pub instance: IdentityInstance,
    pub lhs: Option<WideNat>,
    pub rhs: Option<WideNat>,
    pub matched: bool,
    #[serde(rename = "terms")]
    pub terms_enumerated: u64,
    #[serde(rename = "elapsed_ns", with = "duration_ns")]
    pub elapsed: Duration,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
}

mod duration_ns {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(d.as_nanos().min(u64::MAX as u128) as u64)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        u64::deserialize(d).map(Duration::from_nanos)
    }
}

struct Sides {
    lhs: Result<WideNat>,
    rhs: Result<WideNat>,
    terms: u128,
}

fn sum_sides(lhs: Result<GcdSum>, rhs: Result<WideNat>) -> Sides {
    let terms = lhs.as_ref().map(|g| g.terms).unwrap_or(0);
    Sides { lhs: lhs.map(|g| g.value), rhs, terms }
}

fn evaluate(inst: &IdentityInstance, cfg: &VerifyConfig) -> Sides {
    match inst {
        IdentityInstance::Menon { n } => sum_sides(menon_lhs(*n, cfg), menon_rhs(*n)),
        IdentityInstance::MenonSury { n, k } => sum_sides(sury_lhs(*n, *k, cfg), sury_rhs(*n, *k)),
        IdentityInstance::LiKim { n, k, r, a } => {
            sum_sides(li_kim_lhs(*n, *k, *r, a, cfg), li_kim_rhs(*n, *k, *r))
        }
        IdentityInstance::Main(p) => sum_sides(main_lhs(p, cfg), main_rhs(p.n, p.s, p.k, p.r)),
        IdentityInstance::PrimePower { p, t, r, k } => Sides {
            lhs: prime_power_lhs(*p, *t, *r, *k),
            rhs: prime_power_rhs(*p, *t, *r, *k),
            terms: *t as u128 + 1,
        },
        IdentityInstance::RhsEquivalence { n, k, r, via } => {
            let lhs = match via {
                EquivalenceRoute::DivisorSum => shifted_li_kim_rhs(*n, *k, *r),
                EquivalenceRoute::MainAtOne => main_rhs(*n, SParam::ONE, *k, *r),
            };
            Sides { lhs, rhs: li_kim_rhs(*n, *k, *r), terms: 0 }
        }
        IdentityInstance::ShiftedLiKim { n, k, r, a } => {
            let lhs = require_k(*k).and_then(|_| {
                check_shifts(a, *k, (*n).max(1), SParam::ONE)?;
                shifted_gcd_sum(*n, SParam::ONE, a, *r, cfg.budget, cfg.exec)
            });
            sum_sides(lhs, shifted_li_kim_rhs(*n, *k, *r))
        }
        IdentityInstance::UnitsOnly { n, s, k, a } => {
            let params = MainParams { n: *n, s: *s, k: *k, r: 0, a: a.clone() };
            sum_sides(main_lhs(&params, cfg), units_only_rhs(*n, *s, *k))
        }
        IdentityInstance::SingleUnit { n, s } => {
            let params = MainParams { n: *n, s: *s, k: 1, r: 0, a: vec![1] };
            sum_sides(main_lhs(&params, cfg), single_unit_rhs(*n, *s))
        }
        IdentityInstance::ProgressionCount { n, d, s, r_shift } => {
            let lhs = count_progression_oracle(*n, *d, *s, *r_shift, cfg.budget);
            let terms = match &lhs {
                Ok(_) => (*n / power_modulus(*d, *s).unwrap_or(1).max(1)) as u128,
                Err(_) => 0,
            };
            Sides { lhs, rhs: count_progression(*n, *d, *s, *r_shift), terms }
        }
        IdentityInstance::GroupProduct { factors, s } => {
            match grouptotient::product_property_sides(factors, *s, cfg.budget) {
                Ok((lhs, rhs, terms)) => Sides { lhs: Ok(lhs), rhs: Ok(rhs), terms },
                Err(e) => Sides { lhs: Err(e.clone()), rhs: Err(e), terms: 0 },
            }
        }
    }
}

/// Evaluates both sides of `inst`. Errors become report-level failure states;
/// nothing here panics or returns `Err`.
pub fn verify(inst: &IdentityInstance, cfg: &VerifyConfig) -> VerificationReport {
    let start = Instant::now();
    let Sides { lhs, mut rhs, terms } = evaluate(inst, cfg);
    if cfg.falsify_rhs {
        rhs = rhs.and_then(|v| v.checked_add(WideNat::ONE));
    }
    let elapsed = start.elapsed();
    let failure = lhs.as_ref().err().or(rhs.as_ref().err()).map(Failure::from);
    let (lhs, rhs) = (lhs.ok(), rhs.ok());
    VerificationReport {
        instance: inst.clone(),
        matched: failure.is_none() && lhs.is_some() && lhs == rhs,
        lhs,
        rhs,
        terms_enumerated: terms.min(u64::MAX as u128) as u64,
        elapsed,
        failure,
    }
}

/// Verifies one of the three specializations of the generalized identity.
pub fn specialization(inst: &IdentityInstance, cfg: &VerifyConfig) -> Result<VerificationReport> {
    match inst {
        IdentityInstance::ShiftedLiKim { .. }
        | IdentityInstance::UnitsOnly { .. }
        | IdentityInstance::SingleUnit { .. } => Ok(verify(inst, cfg)),
        other => Err(Error::domain(format!(
            "{} is not a specialization of the generalized identity",
            other.name()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: u64) -> WideNat {
        WideNat::from(v)
    }

    fn s(v: u32) -> SParam {
        SParam::new(v).unwrap()
    }

    fn cfg() -> VerifyConfig {
        VerifyConfig::default()
    }

    #[test]
    fn menon_examples() {
        for (n, v) in [(1, 1), (4, 6), (6, 8)] {
            assert_eq!(menon_lhs(n, &cfg()).unwrap().value, w(v));
            assert_eq!(menon_rhs(n).unwrap(), w(v));
        }
    }

    #[test]
    fn sury_examples() {
        assert_eq!(sury_lhs(4, 2, &cfg()).unwrap().value, w(14));
        assert_eq!(sury_lhs(9, 1, &cfg()).unwrap().value, menon_lhs(9, &cfg()).unwrap().value);
        assert_eq!(sury_lhs(1, 3, &cfg()).unwrap().value, w(1));
        assert!(sury_lhs(4, 0, &cfg()).is_err());
    }

    #[test]
    fn li_kim_examples() {
        assert_eq!(li_kim_lhs(4, 2, 0, &[1, 1], &cfg()).unwrap().value, w(10));
        assert_eq!(li_kim_lhs(11, 1, 0, &[1], &cfg()).unwrap().value, w(20));
        assert_eq!(li_kim_lhs(6, 2, 1, &[1, 1], &cfg()).unwrap().value, li_kim_rhs(6, 2, 1).unwrap());
        assert!(li_kim_lhs(6, 2, 1, &[1, 2], &cfg()).is_err());
        assert!(li_kim_lhs(6, 2, 1, &[1], &cfg()).is_err());
    }

    #[test]
    fn main_examples() {
        let p = |n, sv, k, r, a: Vec<i64>| MainParams { n, s: s(sv), k, r, a };
        assert_eq!(main_lhs(&p(2, 2, 1, 1, vec![1]), &cfg()).unwrap().value, w(15));
        assert_eq!(main_lhs(&p(1, 3, 2, 1, vec![1, 1]), &cfg()).unwrap().value, w(1));
        assert_eq!(main_lhs(&p(6, 1, 1, 0, vec![1]), &cfg()).unwrap().value, w(8));
        // 2 is not relatively 2-prime to 4.
        assert!(main_lhs(&p(2, 2, 1, 0, vec![4]), &cfg()).is_err());
        assert!(main_lhs(&p(2, 2, 1, 0, vec![-1]), &cfg()).is_ok());
    }

    #[test]
    fn progression_examples() {
        let b = DEFAULT_ENUMERATION_BOUND;
        assert_eq!(count_progression(36, 2, s(2), 1).unwrap(), w(8));
        assert_eq!(count_progression_oracle(36, 2, s(2), 1, b).unwrap(), w(8));
        assert_eq!(count_progression(12, 2, s(2), 1).unwrap(), w(3));
        assert_eq!(count_progression_oracle(12, 2, s(2), 1, b).unwrap(), w(3));
        assert_eq!(count_progression_oracle(12, 1, s(2), 1, b).unwrap(), w(9));
        assert!(count_progression(12, 3, s(2), 1).is_err());
        assert!(count_progression(36, 2, s(2), 4).is_err());
    }

    #[test]
    fn single_unit_example() {
        let r = specialization(&IdentityInstance::SingleUnit { n: 2, s: s(2) }, &cfg()).unwrap();
        assert_eq!((r.lhs, r.rhs, r.matched), (Some(w(6)), Some(w(6)), true));
        assert!(specialization(&IdentityInstance::Menon { n: 2 }, &cfg()).is_err());
    }

    #[test]
    fn units_only_example() {
        let inst = IdentityInstance::UnitsOnly { n: 2, s: s(2), k: 2, a: vec![1, 1] };
        let r = verify(&inst, &cfg());
        assert!(r.matched, "{r:?}");
        assert_eq!(r.terms_enumerated, 9);
    }

    #[test]
    fn verify_reports() {
        let r = verify(&IdentityInstance::Menon { n: 6 }, &cfg());
        assert!(r.matched);
        assert_eq!(r.lhs, Some(w(8)));
        let main = IdentityInstance::Main(MainParams { n: 2, s: s(2), k: 1, r: 1, a: vec![1] });
        let r = verify(&main, &cfg());
        assert!(r.matched);
        assert_eq!(r.rhs, Some(w(15)));
        let one = IdentityInstance::Main(MainParams { n: 1, s: s(2), k: 2, r: 1, a: vec![1, 1] });
        assert_eq!(verify(&one, &cfg()).lhs, Some(w(1)));
    }

    #[test]
    fn verify_captures_failures() {
        let r = verify(&IdentityInstance::MenonSury { n: 100, k: 3 }, &VerifyConfig::with_budget(10));
        assert!(!r.matched);
        assert_eq!(r.failure.unwrap().kind, FailureKind::BoundExceeded);
        assert!(r.lhs.is_none());
        let falsified = VerifyConfig { falsify_rhs: true, ..cfg() };
        let r = verify(&IdentityInstance::Menon { n: 6 }, &falsified);
        assert!(!r.matched);
        assert!(r.failure.is_none());
        assert_eq!(r.rhs, Some(w(9)));
    }

    #[test]
    fn report_json_round_trip() {
        let inst = IdentityInstance::Main(MainParams { n: 2, s: s(2), k: 1, r: 1, a: vec![-3] });
        let r = verify(&inst, &cfg());
        let text = serde_json::to_string(&r).unwrap();
        assert!(
            text.starts_with(r#"{"identity":"main","params":{"n":2,"s":2,"k":1,"r":1,"a":[-3]}"#),
            "{text}"
        );
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        let bad = verify(&IdentityInstance::PrimePower { p: 4, t: 1, r: 0, k: 0 }, &cfg());
        let back: VerificationReport = serde_json::from_str(&serde_json::to_string(&bad).unwrap()).unwrap();
        assert_eq!(back, bad);
    }
}
