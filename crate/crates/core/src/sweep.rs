//! Batch verification over Cartesian parameter ranges.
//!
//! Instances are generated sequentially (random shift vectors come from one
//! seeded stream), verified on a bounded worker pool, and returned in
//! generation order, so output never depends on the worker count.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arithfn::{ModulusGcd, SParam};
use crate::error::{Error, Result};
use crate::factorint::{gcd_u64, ipow_checked, is_prime_u64};
use crate::identities::{
    power_modulus, residue, verify, EquivalenceRoute, FailureKind, IdentityInstance, MainParams,
    VerificationReport, VerifyConfig,
};
use crate::par::{map_indexed, with_workers, Exec};
use crate::wide::WideNat;

/// Inclusive integer range `lo..=hi`; empty when `lo > hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Span {
    pub lo: u64,
    pub hi: u64,
}

impl Span {
    pub const fn new(lo: u64, hi: u64) -> Self {
        Span { lo, hi }
    }

    pub const fn single(v: u64) -> Self {
        Span { lo: v, hi: v }
    }

    pub fn iter(self) -> impl Iterator<Item = u64> + Clone {
        self.lo..=self.hi
    }

    pub fn is_empty(self) -> bool {
        self.lo > self.hi
    }
}

impl FromStr for Span {
    type Err = Error;

    /// Accepts `7`, `1..500` (inclusive) and `1..=500`.
    fn from_str(text: &str) -> Result<Self> {
        let num = |t: &str| {
            t.trim().parse::<u64>().map_err(|_| Error::domain(format!("bad range bound {t:?} in {text:?}")))
        };
        match text.split_once("..") {
            None => Ok(Span::single(num(text)?)),
            Some((lo, hi)) => Ok(Span::new(num(lo)?, num(hi.strip_prefix('=').unwrap_or(hi))?)),
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityKind {
    Menon,
    MenonSury,
    LiKim,
    Main,
    PrimePower,
    RhsEquivalence,
    ShiftedLiKim,
    UnitsOnly,
    SingleUnit,
    ProgressionCount,
    GroupProduct,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 11] = [
        IdentityKind::Menon,
        IdentityKind::MenonSury,
        IdentityKind::LiKim,
        IdentityKind::Main,
        IdentityKind::PrimePower,
        IdentityKind::RhsEquivalence,
        IdentityKind::ShiftedLiKim,
        IdentityKind::UnitsOnly,
        IdentityKind::SingleUnit,
        IdentityKind::ProgressionCount,
        IdentityKind::GroupProduct,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::Menon => "menon",
            IdentityKind::MenonSury => "sury",
            IdentityKind::LiKim => "li-kim",
            IdentityKind::Main => "main",
            IdentityKind::PrimePower => "prime-power",
            IdentityKind::RhsEquivalence => "rhs-equivalence",
            IdentityKind::ShiftedLiKim => "shifted-li-kim",
            IdentityKind::UnitsOnly => "units-only",
            IdentityKind::SingleUnit => "single-unit",
            IdentityKind::ProgressionCount => "progression",
            IdentityKind::GroupProduct => "group-product",
        }
    }
}

impl FromStr for IdentityKind {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let key = text.trim().to_ascii_lowercase().replace('_', "-");
        let alias = match key.as_str() {
            "menon-sury" => "sury",
            "likim" => "li-kim",
            "generalized" => "main",
            "progression-count" => "progression",
            other => other,
        };
        IdentityKind::ALL
            .into_iter()
            .find(|k| k.name() == alias)
            .ok_or_else(|| Error::domain(format!("unknown identity {text:?}")))
    }
}

/// Parameter ranges for a sweep. Fields an identity does not use are ignored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepSpec {
    pub kind: IdentityKind,
    pub n: Span,
    pub s: Span,
    pub k: Span,
    pub r: Span,
    pub p: Span,
    pub t: Span,
    /// First group factor for `GroupProduct`; `n` is the second.
    pub m: Span,
    /// Skip `(n, s)` with `n^s` above this cap.
    pub max_modulus: Option<u64>,
    /// Extra seeded random admissible shift vectors per shifted instance,
    /// on top of the all-ones vector.
    pub random_shifts: u32,
    pub seed: u64,
}

impl SweepSpec {
    pub fn new(kind: IdentityKind, n: Span) -> Self {
        SweepSpec {
            kind,
            n,
            s: Span::single(1),
            k: Span::single(1),
            r: Span::single(0),
            p: Span::new(2, 7),
            t: Span::single(1),
            m: Span::single(1),
            max_modulus: None,
            random_shifts: 0,
            seed: 0,
        }
    }
}

fn sparams(span: Span) -> Result<Vec<SParam>> {
    span.iter().map(|s| SParam::new(u32::try_from(s).map_err(|_| Error::Overflow)?)).collect()
}

fn small(v: u64) -> Result<u32> {
    u32::try_from(v).map_err(|_| Error::domain(format!("{v} is too large for a count parameter")))
}

/// Draws a shift vector of length `k`, each entry in `[-N, 2N]` and
/// relatively `s`-prime to `N`, distinct from all-ones.
fn random_shift(rng: &mut ChaCha8Rng, k: u32, table: &ModulusGcd) -> Option<Vec<i64>> {
    let modulus = table.modulus() as i64;
    for _ in 0..64 {
        let v: Vec<i64> = (0..k)
            .map(|_| loop {
                let a = rng.gen_range(-modulus..=2 * modulus);
                if table.is_coprime(residue(a as i128, table.modulus())) {
                    break a;
                }
            })
            .collect();
        if v.iter().any(|&a| a != 1) {
            return Some(v);
        }
    }
    None
}

struct ShiftSource {
    rng: ChaCha8Rng,
    extra: u32,
}

impl ShiftSource {
    fn vectors(&mut self, k: u32, modulus: u64, s: SParam) -> Result<Vec<Vec<i64>>> {
        let mut out = vec![vec![1i64; k as usize]];
        if self.extra > 0 {
            let table = ModulusGcd::new(modulus, s)?;
            for _ in 0..self.extra {
                if let Some(v) = random_shift(&mut self.rng, k, &table) {
                    out.push(v);
                }
            }
        }
        Ok(out)
    }
}

/// Expands a spec into instances in lexicographic parameter order.
pub fn instances(spec: &SweepSpec) -> Result<Vec<IdentityInstance>> {
    let mut shifts = ShiftSource { rng: ChaCha8Rng::seed_from_u64(spec.seed), extra: spec.random_shifts };
    let cap = spec.max_modulus.unwrap_or(u64::MAX);
    let within_cap = |n: u64, s: SParam| -> bool {
        ipow_checked(WideNat::from(n), s.get()).map(|v| v.get() <= cap as u128).unwrap_or(false)
    };
    let ns = || spec.n.iter().filter(|&n| n >= 1);
    let ks = || spec.k.iter().filter(|&k| k >= 1);
    let mut out = Vec::new();
    match spec.kind {
        IdentityKind::Menon => out.extend(ns().map(|n| IdentityInstance::Menon { n })),
        IdentityKind::MenonSury => {
            for n in ns() {
                for k in ks() {
                    out.push(IdentityInstance::MenonSury { n, k: small(k)? });
                }
            }
        }
        IdentityKind::LiKim | IdentityKind::ShiftedLiKim => {
            for n in ns() {
                for k in ks() {
                    for r in spec.r.iter() {
                        let (k, r) = (small(k)?, small(r)?);
                        for a in shifts.vectors(k, n, SParam::ONE)? {
                            out.push(if spec.kind == IdentityKind::LiKim {
                                IdentityInstance::LiKim { n, k, r, a }
                            } else {
                                IdentityInstance::ShiftedLiKim { n, k, r, a }
                            });
                        }
                    }
                }
            }
        }
        IdentityKind::Main => {
            for n in ns() {
                for s in sparams(spec.s)? {
                    if !within_cap(n, s) {
                        continue;
                    }
                    let modulus = power_modulus(n, s)?;
                    for k in ks() {
                        for r in spec.r.iter() {
                            let (k, r) = (small(k)?, small(r)?);
                            for a in shifts.vectors(k, modulus, s)? {
                                out.push(IdentityInstance::Main(MainParams { n, s, k, r, a }));
                            }
                        }
                    }
                }
            }
        }
        IdentityKind::UnitsOnly => {
            for n in ns() {
                for s in sparams(spec.s)? {
                    if !within_cap(n, s) {
                        continue;
                    }
                    let modulus = power_modulus(n, s)?;
                    for k in ks() {
                        let k = small(k)?;
                        for a in shifts.vectors(k, modulus, s)? {
                            out.push(IdentityInstance::UnitsOnly { n, s, k, a });
                        }
                    }
                }
            }
        }
        IdentityKind::SingleUnit => {
            for n in ns() {
                for s in sparams(spec.s)? {
                    if within_cap(n, s) {
                        out.push(IdentityInstance::SingleUnit { n, s });
                    }
                }
            }
        }
        IdentityKind::PrimePower => {
            for p in spec.p.iter().filter(|&p| is_prime_u64(p)) {
                for t in spec.t.iter().filter(|&t| t >= 1) {
                    for r in spec.r.iter() {
                        for k in spec.k.iter() {
                            out.push(IdentityInstance::PrimePower {
                                p,
                                t: small(t)?,
                                r: small(r)?,
                                k: small(k)?,
                            });
                        }
                    }
                }
            }
        }
        IdentityKind::RhsEquivalence => {
            for n in ns() {
                for k in ks() {
                    for r in spec.r.iter() {
                        for via in [EquivalenceRoute::DivisorSum, EquivalenceRoute::MainAtOne] {
                            out.push(IdentityInstance::RhsEquivalence { n, k: small(k)?, r: small(r)?, via });
                        }
                    }
                }
            }
        }
        IdentityKind::ProgressionCount => {
            for n in ns() {
                for s in sparams(spec.s)? {
                    for d in (1..=n).take_while(|&d| within_cap(d, s)) {
                        let ds = power_modulus(d, s)?;
                        if n % ds != 0 {
                            continue;
                        }
                        let table = ModulusGcd::new(ds, s)?;
                        for r_shift in (1..=ds).filter(|&x| table.is_coprime(x)) {
                            out.push(IdentityInstance::ProgressionCount { n, d, s, r_shift });
                        }
                    }
                }
            }
        }
        IdentityKind::GroupProduct => {
            for m in spec.m.iter().filter(|&m| m >= 1) {
                for n in ns() {
                    for s in sparams(spec.s)? {
                        let applies = gcd_u64(m, n) == 1
                            || (crate::arithfn::is_s_free(WideNat::from(m), s)?
                                && crate::arithfn::is_s_free(WideNat::from(n), s)?);
                        if applies {
                            out.push(IdentityInstance::GroupProduct { factors: vec![m, n], s });
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub checked: u64,
    pub matched: u64,
    pub mismatched: u64,
    /// Instances abandoned for budget or overflow reasons.
    pub skipped: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepOutcome {
    pub reports: Vec<VerificationReport>,
    pub summary: SweepSummary,
}

pub fn is_skip(report: &VerificationReport) -> bool {
    matches!(
        report.failure.as_ref().map(|f| f.kind),
        Some(FailureKind::BoundExceeded | FailureKind::Overflow | FailureKind::ResourceLimit)
    )
}

pub fn summarize(reports: &[VerificationReport]) -> SweepSummary {
    let mut s = SweepSummary::default();
    for r in reports {
        s.checked += 1;
        if r.matched {
            s.matched += 1;
        } else if is_skip(r) {
            s.skipped += 1;
        } else {
            s.mismatched += 1;
        }
    }
    s
}

/// Verifies `instances` on `workers` threads; reports keep input order.
pub fn run(instances: &[IdentityInstance], cfg: &VerifyConfig, workers: usize) -> Result<SweepOutcome> {
    let inner = VerifyConfig { exec: Exec::Sequential, ..*cfg };
    let reports =
        with_workers(workers, || map_indexed(cfg.exec, instances.len(), |i| verify(&instances[i], &inner)))?;
    let summary = summarize(&reports);
    Ok(SweepOutcome { reports, summary })
}
