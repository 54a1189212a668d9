//! Linear sieve tabulating Φ_s or J_s over `1..=limit`.

use serde::{Deserialize, Serialize};

use super::SParam;
use crate::error::{Error, Result};
use crate::wide::WideNat;

/// Default memory ceiling for a table and its scratch arrays.
pub const DEFAULT_SIEVE_MEMORY_BYTES: u64 = 1 << 30;

/// Scratch bytes per index: value (16), smallest prime (4), its power (4), exponent (1).
const BYTES_PER_ENTRY: u64 = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SieveKind {
    KleePhi,
    Jordan,
}

/// Immutable table of `values[n]` for `1 <= n <= limit`.
#[derive(Clone, Debug)]
pub struct SieveTable {
    limit: u64,
    s: SParam,
    kind: SieveKind,
    values: Vec<u128>,
}

impl SieveTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn s(&self) -> SParam {
        self.s
    }

    pub fn kind(&self) -> SieveKind {
        self.kind
    }

    /// The tabulated value at `n`, or `None` outside `1..=limit`.
    pub fn get(&self, n: u64) -> Option<WideNat> {
        if n == 0 || n > self.limit {
            return None;
        }
        Some(WideNat::new(self.values[n as usize]).expect("sieve values are range-checked"))
    }

    /// Values for `1..=limit` in order.
    pub fn values(&self) -> &[u128] {
        &self.values[1..]
    }
}

/// Builds the table in `O(limit)` with a linear (Euler) sieve that tracks the
/// full power of the smallest prime of every index.
pub fn sieve_build(limit: u64, s: SParam, kind: SieveKind, memory_bytes: u64) -> Result<SieveTable> {
    if limit == 0 {
        return Err(Error::domain("sieve limit must be at least 1"));
    }
    if limit > u32::MAX as u64 || limit.saturating_mul(BYTES_PER_ENTRY) > memory_bytes {
        return Err(Error::ResourceLimit(format!(
            "sieve to {limit} needs ~{} bytes, budget is {memory_bytes}",
            limit.saturating_mul(BYTES_PER_ENTRY)
        )));
    }
    let sp = s.get();
    if kind == SieveKind::Jordan {
        // Largest entry is below limit^s.
        WideNat::from(limit).checked_pow(sp)?;
    }
    let prime_power_value = |pw: u128, p: u128, e: u32| -> u128 {
        match kind {
            SieveKind::KleePhi => {
                if e < sp {
                    pw
                } else {
                    pw - pw / p.pow(sp)
                }
            }
            SieveKind::Jordan => pw.pow(sp) - (pw / p).pow(sp),
        }
    };

    let len = limit as usize + 1;
    let mut values = vec![0u128; len];
    let mut smallest = vec![0u32; len];
    let mut smallest_power = vec![0u32; len];
    let mut exponent = vec![0u8; len];
    let mut primes: Vec<u32> = Vec::new();
    values[1] = 1;

    for i in 2..len {
        if smallest[i] == 0 {
            smallest[i] = i as u32;
            smallest_power[i] = i as u32;
            exponent[i] = 1;
            values[i] = prime_power_value(i as u128, i as u128, 1);
            primes.push(i as u32);
        }
        let lp = smallest[i];
        for &p in &primes {
            if p > lp {
                break;
            }
            let j = i * p as usize;
            if j >= len {
                break;
            }
            smallest[j] = p;
            if p == lp {
                let pw = smallest_power[i] as u64 * p as u64;
                smallest_power[j] = pw as u32;
                exponent[j] = exponent[i] + 1;
                values[j] = if pw as usize == j {
                    prime_power_value(pw as u128, p as u128, exponent[j] as u32)
                } else {
                    values[j / pw as usize] * values[pw as usize]
                };
            } else {
                smallest_power[j] = p;
                exponent[j] = 1;
                values[j] = values[i] * values[p as usize];
            }
        }
    }
    Ok(SieveTable { limit, s, kind, values })
}
