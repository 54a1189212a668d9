//! Arithmetic functions built on the generalized gcd: Klee's Φ_s, Jordan's
//! J_s, Cohen's φ_s, von Sterneck's H_s, τ_s and σ_{k,s}.
//!
//! Closed forms work on a [`Factorization`] and stay in exact integers
//! (`p^e - p^(e-s)` per prime, never the rational product). The `*_oracle`
//! functions count straight from the definitions and exist to cross-check
//! the closed forms.

mod sieve;

pub use sieve::{sieve_build, SieveKind, SieveTable, DEFAULT_SIEVE_MEMORY_BYTES};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorint::{
    divisors_u64, factorize, factorize_u64, gcd_u128, gcd_u64, ipow_checked, largest_s_power_part,
    Factorization,
};
use crate::wide::WideNat;

/// Default cap on the number of terms an oracle may enumerate.
pub const DEFAULT_ENUMERATION_BOUND: u128 = 10_000_000;

/// The power parameter `s >= 1` of the generalized gcd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct SParam(u32);

impl SParam {
    pub const ONE: SParam = SParam(1);

    pub fn new(s: u32) -> Result<Self> {
        if s == 0 {
            Err(Error::domain("s must be at least 1"))
        } else {
            Ok(SParam(s))
        }
    }

    #[inline]
    pub const fn get(self) -> u32 {
        self.0
    }
}

impl TryFrom<u32> for SParam {
    type Error = Error;

    fn try_from(s: u32) -> Result<Self> {
        SParam::new(s)
    }
}

impl From<SParam> for u32 {
    fn from(s: SParam) -> u32 {
        s.0
    }
}

/// Generalized gcd `(x_1, ..., x_k)_s`: the largest `l^s` dividing every entry.
/// Zero entries impose no constraint.
pub fn gcd_s(xs: &[WideNat], s: SParam) -> Result<WideNat> {
    let g = xs.iter().fold(0u128, |g, x| gcd_u128(g, x.get()));
    if g == 0 {
        return Err(Error::domain("generalized gcd of all-zero list"));
    }
    largest_s_power_part(WideNat::new(g)?, s.get())
}

/// True iff no `l^s` with `l >= 2` divides `n`.
pub fn is_s_free(n: WideNat, s: SParam) -> Result<bool> {
    if n.is_zero() {
        return Err(Error::domain("s-freeness of 0 is undefined"));
    }
    Ok(factorize(n)?.factors().iter().all(|&(_, e)| e < s.get()))
}

pub fn mobius(f: &Factorization) -> i8 {
    if f.factors().iter().any(|&(_, e)| e >= 2) {
        0
    } else if f.factors().len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Product over prime powers of `local(p, e)`.
fn multiplicative(f: &Factorization, local: impl Fn(WideNat, u32) -> Result<WideNat>) -> Result<WideNat> {
    f.factors().iter().try_fold(WideNat::ONE, |acc, &(p, e)| acc.checked_mul(local(p, e)?))
}

pub fn euler_phi(f: &Factorization) -> Result<WideNat> {
    multiplicative(f, |p, e| ipow_checked(p, e - 1)?.checked_mul(p.checked_sub(WideNat::ONE)?))
}

/// Klee's function: `p^e` when `e < s`, else `p^e - p^(e-s)`, multiplied over `n`.
pub fn klee_phi(f: &Factorization, s: SParam) -> Result<WideNat> {
    let s = s.get();
    multiplicative(f, |p, e| {
        let pe = ipow_checked(p, e)?;
        if e < s {
            Ok(pe)
        } else {
            pe.checked_sub(ipow_checked(p, e - s)?)
        }
    })
}

/// Jordan's totient `J_s(n) = prod (p^(se) - p^(s(e-1)))`.
pub fn jordan(f: &Factorization, s: SParam) -> Result<WideNat> {
    let s = s.get();
    multiplicative(f, |p, e| {
        let hi = e.checked_mul(s).ok_or(Error::Overflow)?;
        ipow_checked(p, hi)?.checked_sub(ipow_checked(p, hi - s)?)
    })
}

pub fn tau(f: &Factorization) -> WideNat {
    // Exponents are below 128, so the product of (e + 1) fits easily.
    WideNat::from(f.factors().iter().map(|&(_, e)| e as u64 + 1).product::<u64>())
}

/// Number of perfect `s`-th powers dividing `n`.
pub fn tau_s(f: &Factorization, s: SParam) -> WideNat {
    WideNat::from(f.factors().iter().map(|&(_, e)| (e / s.get()) as u64 + 1).product::<u64>())
}

/// `sigma_k(n) = sum_{d | n} d^k`.
pub fn sigma_k(f: &Factorization, k: u32) -> Result<WideNat> {
    multiplicative(f, |p, e| geometric(ipow_checked(p, k)?, e))
}

/// `sigma_{k,s}(n) = sum_{d^s | n} (d^s)^k`.
pub fn sigma_ks(f: &Factorization, k: u32, s: SParam) -> Result<WideNat> {
    let step = k.checked_mul(s.get()).ok_or(Error::Overflow)?;
    multiplicative(f, |p, e| geometric(ipow_checked(p, step)?, e / s.get()))
}

/// `1 + q + q^2 + ... + q^terms`.
fn geometric(q: WideNat, terms: u32) -> Result<WideNat> {
    let mut acc = WideNat::ONE;
    let mut pow = WideNat::ONE;
    for _ in 0..terms {
        pow = pow.checked_mul(q)?;
        acc = acc.checked_add(pow)?;
    }
    Ok(acc)
}

fn check_bound(required: u128, bound: u128) -> Result<()> {
    if required > bound {
        Err(Error::BoundExceeded { required, budget: bound })
    } else {
        Ok(())
    }
}

/// `gcd_s([x, modulus], s)` for a fixed modulus, answered by table lookup on
/// the divisor `gcd(x, modulus)`.
#[derive(Clone, Debug)]
pub struct ModulusGcd {
    modulus: u64,
    lookup: Lookup,
}

#[derive(Clone, Debug)]
enum Lookup {
    Dense(Vec<u64>),
    Sorted { divisors: Vec<u64>, parts: Vec<u64> },
}

const DENSE_LOOKUP_LIMIT: u64 = 1 << 20;

impl ModulusGcd {
    pub fn new(modulus: u64, s: SParam) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::domain("modulus must be positive"));
        }
        let divisors = divisors_u64(&factorize_u64(modulus)?)?;
        let parts = divisors
            .iter()
            .map(|&d| {
                largest_s_power_part(WideNat::from(d), s.get()).map(|v| v.to_u64().expect("divisor of a u64"))
            })
            .collect::<Result<Vec<_>>>()?;
        let lookup = if modulus <= DENSE_LOOKUP_LIMIT {
            let mut dense = vec![0u64; modulus as usize + 1];
            for (&d, &part) in divisors.iter().zip(&parts) {
                dense[d as usize] = part;
            }
            Lookup::Dense(dense)
        } else {
            Lookup::Sorted { divisors, parts }
        };
        Ok(ModulusGcd { modulus, lookup })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `gcd_s` of a divisor of the modulus.
    #[inline]
    pub fn of_divisor(&self, d: u64) -> u64 {
        match &self.lookup {
            Lookup::Dense(t) => t[d as usize],
            Lookup::Sorted { divisors, parts } => {
                parts[divisors.binary_search(&d).expect("argument divides the modulus")]
            }
        }
    }

    /// `gcd_s([x, modulus], s)`; `x = 0` yields the s-power part of the modulus.
    #[inline]
    pub fn with(&self, x: u64) -> u64 {
        self.of_divisor(gcd_u64(x, self.modulus))
    }

    /// True iff `(x, modulus)_s = 1`.
    #[inline]
    pub fn is_coprime(&self, x: u64) -> bool {
        self.with(x) == 1
    }
}

/// Direct count of `{1 <= m <= n : (m, n)_s = 1}`.
pub fn klee_phi_oracle(n: u64, s: SParam, bound: u128) -> Result<WideNat> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    check_bound(n as u128, bound)?;
    let table = ModulusGcd::new(n, s)?;
    Ok(WideNat::from((1..=n).filter(|&m| table.is_coprime(m)).count() as u64))
}

/// Size of an `s`-reduced residue system mod `n`: the count of
/// `1 <= m <= n^s` with `(m, n^s)_s = 1`.
pub fn cohen_phi_oracle(n: u64, s: SParam, bound: u128) -> Result<WideNat> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    let ns = ipow_checked(WideNat::from(n), s.get())?;
    check_bound(ns.get(), bound)?;
    klee_phi_oracle(ns.to_u64().ok_or(Error::Overflow)?, s, bound)
}

/// von Sterneck's `H_s(n)`: sum of `phi(d_1)...phi(d_s)` over ordered
/// `s`-tuples of divisors whose lcm is `n`, by enumeration.
pub fn von_sterneck(n: u64, s: SParam, bound: u128) -> Result<WideNat> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    let f = factorize_u64(n)?;
    let divs = divisors_u64(&f)?;
    let tuples = (divs.len() as u128)
        .checked_pow(s.get())
        .ok_or(Error::BoundExceeded { required: u128::MAX, budget: bound })?;
    check_bound(tuples, bound)?;
    let phis = divs.iter().map(|&d| euler_phi(&factorize_u64(d)?)).collect::<Result<Vec<_>>>()?;

    fn walk(
        depth: u32,
        lcm: u64,
        weight: WideNat,
        n: u64,
        divs: &[u64],
        phis: &[WideNat],
    ) -> Result<WideNat> {
        if depth == 0 {
            return Ok(if lcm == n { weight } else { WideNat::ZERO });
        }
        let mut acc = WideNat::ZERO;
        for (&d, &phi) in divs.iter().zip(phis) {
            let l = lcm / gcd_u64(lcm, d) * d;
            acc = acc.checked_add(walk(depth - 1, l, weight.checked_mul(phi)?, n, divs, phis)?)?;
        }
        Ok(acc)
    }

    walk(s.get(), 1, WideNat::ONE, n, &divs, &phis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: u64) -> WideNat {
        WideNat::from(v)
    }

    fn f(n: u64) -> Factorization {
        factorize_u64(n).unwrap()
    }

    fn s(v: u32) -> SParam {
        SParam::new(v).unwrap()
    }

    #[test]
    fn gcd_s_examples() {
        assert_eq!(gcd_s(&[w(8), w(12)], s(2)).unwrap(), w(4));
        assert_eq!(gcd_s(&[w(8), w(12)], s(1)).unwrap(), w(4));
        assert_eq!(gcd_s(&[w(18), w(12)], s(2)).unwrap(), w(1));
        assert_eq!(gcd_s(&[w(0), w(9)], s(2)).unwrap(), w(9));
        assert!(gcd_s(&[w(0), w(0)], s(2)).is_err());
        assert!(SParam::new(0).is_err());
    }

    #[test]
    fn s_free_examples() {
        assert!(is_s_free(w(12), s(3)).unwrap());
        assert!(!is_s_free(w(12), s(2)).unwrap());
        assert!(is_s_free(w(1), s(5)).unwrap());
        assert!(is_s_free(w(0), s(2)).is_err());
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(&f(1)), 1);
        assert_eq!(mobius(&f(6)), 1);
        assert_eq!(mobius(&f(12)), 0);
        assert_eq!(mobius(&f(30)), -1);
    }

    #[test]
    fn totient_examples() {
        assert_eq!(euler_phi(&f(1)).unwrap(), w(1));
        assert_eq!(euler_phi(&f(12)).unwrap(), w(4));
        assert_eq!(euler_phi(&f(97)).unwrap(), w(96));
        assert_eq!(klee_phi(&f(12), s(2)).unwrap(), w(9));
        assert_eq!(klee_phi(&f(12), s(1)).unwrap(), w(4));
        assert_eq!(klee_phi(&f(5), s(2)).unwrap(), w(5));
        assert_eq!(jordan(&f(12), s(1)).unwrap(), w(4));
        assert_eq!(jordan(&f(4), s(2)).unwrap(), w(12));
        assert_eq!(jordan(&f(6), s(2)).unwrap(), w(24));
    }

    #[test]
    fn oracle_examples() {
        let b = DEFAULT_ENUMERATION_BOUND;
        assert_eq!(klee_phi_oracle(1, s(3), b).unwrap(), w(1));
        assert_eq!(klee_phi_oracle(12, s(2), b).unwrap(), w(9));
        assert_eq!(klee_phi_oracle(36, s(2), b).unwrap(), w(24));
        assert!(matches!(klee_phi_oracle(100, s(2), 99), Err(Error::BoundExceeded { .. })));
        assert_eq!(cohen_phi_oracle(10, s(1), b).unwrap(), w(4));
        assert_eq!(cohen_phi_oracle(2, s(2), b).unwrap(), w(3));
        assert_eq!(cohen_phi_oracle(6, s(2), b).unwrap(), w(24));
        assert_eq!(von_sterneck(10, s(1), b).unwrap(), w(4));
        assert_eq!(von_sterneck(4, s(2), b).unwrap(), w(12));
        assert_eq!(von_sterneck(6, s(2), b).unwrap(), w(24));
        assert!(matches!(von_sterneck(720_720, s(4), b), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn divisor_function_examples() {
        assert_eq!(tau(&f(1)), w(1));
        assert_eq!(tau(&f(12)), w(6));
        assert_eq!(tau(&f(36)), w(9));
        assert_eq!(tau_s(&f(36), s(1)), w(9));
        assert_eq!(tau_s(&f(36), s(2)), w(4));
        assert_eq!(tau_s(&f(48), s(2)), w(3));
        assert_eq!(sigma_k(&f(6), 1).unwrap(), w(12));
        assert_eq!(sigma_k(&f(4), 1).unwrap(), w(7));
        assert_eq!(sigma_k(&f(36), 0).unwrap(), w(9));
        assert_eq!(sigma_ks(&f(36), 1, s(2)).unwrap(), w(50));
        assert_eq!(sigma_ks(&f(16), 2, s(2)).unwrap(), w(273));
        assert_eq!(sigma_ks(&f(36), 3, s(1)).unwrap(), sigma_k(&f(36), 3).unwrap());
    }

    #[test]
    fn closed_forms_report_overflow() {
        let big = Factorization::from_factors(vec![(w(3), 80)]).unwrap();
        assert!(klee_phi(&big, s(2)).is_ok());
        assert_eq!(jordan(&big, s(2)), Err(Error::Overflow));
        assert_eq!(sigma_k(&big, 2), Err(Error::Overflow));
    }

    #[test]
    fn modulus_gcd_handles_zero_and_large_moduli() {
        let t = ModulusGcd::new(36, s(2)).unwrap();
        assert_eq!(t.with(0), 36);
        assert_eq!(t.with(72), 36);
        assert_eq!(t.with(6), 1);
        assert_eq!(t.with(12), 4);
        let big = ModulusGcd::new(1 << 30, s(3)).unwrap();
        assert_eq!(big.with(1 << 10), 1 << 9);
        assert_eq!(big.with(0), 1 << 30);
    }
}
