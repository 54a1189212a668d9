//! Closed-form right-hand sides, evaluated in exact integers with every
//! intermediate division checked for exactness.

use crate::arithfn::{euler_phi, klee_phi, sigma_k, tau, tau_s, SParam};
use crate::error::{Error, Result};
use crate::factorint::{divisors_u64, factorize_u64, ipow_checked, is_prime_u64, Factorization};
use crate::wide::WideNat;

fn exact(num: WideNat, den: WideNat, what: &str) -> Result<WideNat> {
    num.div_exact(den).ok_or_else(|| Error::internal(format!("{what}: {den} does not divide {num}")))
}

fn positive(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    factorize_u64(n)
}

fn klee_of_power(d: u64, s: SParam) -> Result<WideNat> {
    klee_phi(&factorize_u64(d)?.pow(s.get())?, s)
}

/// `phi(n) * tau(n)`.
pub fn menon_rhs(n: u64) -> Result<WideNat> {
    let f = positive(n)?;
    euler_phi(&f)?.checked_mul(tau(&f))
}

/// `phi(n) * sigma_{k-1}(n)`.
pub fn sury_rhs(n: u64, k: u32) -> Result<WideNat> {
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    let f = positive(n)?;
    euler_phi(&f)?.checked_mul(sigma_k(&f, k - 1)?)
}

/// Prime-power product form:
/// `phi(n) * prod_p (phi(p^e)^(k-1) p^(er) - p^(e(k+r-1)) + sigma_{k+r-1}(p^e))`.
pub fn li_kim_rhs(n: u64, k: u32, r: u32) -> Result<WideNat> {
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    let f = positive(n)?;
    let top = k + r - 1;
    let mut acc = euler_phi(&f)?;
    for &(p, e) in f.factors() {
        let pe = ipow_checked(p, e)?;
        let local = Factorization::from_factors(vec![(p, e)])?;
        let lead = euler_phi(&local)?.checked_pow(k - 1)?.checked_mul(pe.checked_pow(r)?)?;
        // sigma_{k+r-1}(p^e) >= p^(e(k+r-1)), so add before subtracting.
        let factor = lead.checked_add(sigma_k(&local, top)?)?.checked_sub(pe.checked_pow(top)?)?;
        acc = acc.checked_mul(factor)?;
    }
    Ok(acc)
}

/// Divisor-sum form `sum_{d | n} d^r (phi(n) / phi(n/d))^(k-1)`.
pub fn likim_sum_rhs(n: u64, k: u32, r: u32) -> Result<WideNat> {
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    let f = positive(n)?;
    let phi_n = euler_phi(&f)?;
    divisors_u64(&f)?.into_iter().try_fold(WideNat::ZERO, |acc, d| {
        let ratio = exact(phi_n, euler_phi(&factorize_u64(n / d)?)?, "phi(n)/phi(n/d)")?;
        acc.checked_add(WideNat::from(d).checked_pow(r)?.checked_mul(ratio.checked_pow(k - 1)?)?)
    })
}

/// Right-hand side of the generalized identity,
/// `Φ_s(n^s)^k · Σ_{d^s | n^s} (d^s)^r / Φ_s(n^s/d^s)^(k-1)`,
/// evaluated termwise as `Σ_{d | n} Φ_s(d^s) (Φ_s(n^s)/Φ_s(d^s))^k (n^s/d^s)^r`.
pub fn main_rhs(n: u64, s: SParam, k: u32, r: u32) -> Result<WideNat> {
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    let f = positive(n)?;
    let big = f.pow(s.get())?;
    let phi_big = klee_phi(&big, s)?;
    divisors_u64(&f)?.into_iter().try_fold(WideNat::ZERO, |acc, d| {
        let phi_d = klee_of_power(d, s)?;
        let ratio = exact(phi_big, phi_d, "Φ_s(n^s)/Φ_s(d^s)")?;
        let cofactor = WideNat::from(n / d).checked_pow(s.get())?;
        let term = phi_d.checked_mul(ratio.checked_pow(k)?)?.checked_mul(cofactor.checked_pow(r)?)?;
        acc.checked_add(term)
    })
}

/// `Σ_{d | p^t} d^r (phi(p^t) / phi(p^t/d))^k`.
pub fn prime_power_lhs(p: u64, t: u32, r: u32, k: u32) -> Result<WideNat> {
    check_prime_power(p, t)?;
    let phi = |j: u32| -> Result<WideNat> {
        if j == 0 {
            Ok(WideNat::ONE)
        } else {
            euler_phi(&Factorization::from_factors(vec![(WideNat::from(p), j)])?)
        }
    };
    let phi_t = phi(t)?;
    (0..=t).try_fold(WideNat::ZERO, |acc, j| {
        let ratio = exact(phi_t, phi(t - j)?, "phi(p^t)/phi(p^(t-j))")?;
        let d_r = WideNat::from(p).checked_pow(j.checked_mul(r).ok_or(Error::Overflow)?)?;
        acc.checked_add(d_r.checked_mul(ratio.checked_pow(k)?)?)
    })
}

/// `Σ_{j<t} p^(j(k+r)) + p^(t(k+r)) (1 - 1/p)^k`, the last term computed as
/// `p^(t(k+r)) (p-1)^k / p^k`.
pub fn prime_power_rhs(p: u64, t: u32, r: u32, k: u32) -> Result<WideNat> {
    check_prime_power(p, t)?;
    let pw = WideNat::from(p);
    let kr = k.checked_add(r).ok_or(Error::Overflow)?;
    let head = (0..t).try_fold(WideNat::ZERO, |acc, j| acc.checked_add(pw.checked_pow(j * kr)?))?;
    let tail_num = pw
        .checked_pow(t.checked_mul(kr).ok_or(Error::Overflow)?)?
        .checked_mul(WideNat::from(p - 1).checked_pow(k)?)?;
    let tail = exact(tail_num, pw.checked_pow(k)?, "p^(t(k+r))(p-1)^k / p^k")?;
    head.checked_add(tail)
}

fn check_prime_power(p: u64, t: u32) -> Result<()> {
    if !is_prime_u64(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    if t == 0 {
        return Err(Error::domain("t must be at least 1"));
    }
    Ok(())
}

/// Progression count `Φ_s(n) / Φ_s(d^s)`.
pub fn progression_count_rhs(n: u64, d: u64, s: SParam) -> Result<WideNat> {
    let f = positive(n)?;
    exact(klee_phi(&f, s)?, klee_of_power(d, s)?, "Φ_s(n)/Φ_s(d^s)")
}

/// `φ(n)^k Σ_{d | n} d^r / φ(n/d)^(k-1)`, written as `φ(n) · likim_sum_rhs`.
pub fn shifted_li_kim_rhs(n: u64, k: u32, r: u32) -> Result<WideNat> {
    euler_phi(&positive(n)?)?.checked_mul(likim_sum_rhs(n, k, r)?)
}

/// `Φ_s(n^s)^k Σ_{d^s | n^s} 1 / Φ_s(d^s)^(k-1)`, written as
/// `Σ_{d | n} Φ_s(n^s) (Φ_s(n^s)/Φ_s(d^s))^(k-1)`.
pub fn units_only_rhs(n: u64, s: SParam, k: u32) -> Result<WideNat> {
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    let f = positive(n)?;
    let phi_big = klee_phi(&f.pow(s.get())?, s)?;
    divisors_u64(&f)?.into_iter().try_fold(WideNat::ZERO, |acc, d| {
        let ratio = exact(phi_big, klee_of_power(d, s)?, "Φ_s(n^s)/Φ_s(d^s)")?;
        acc.checked_add(phi_big.checked_mul(ratio.checked_pow(k - 1)?)?)
    })
}

/// `Φ_s(n^s) τ_s(n^s)`.
pub fn single_unit_rhs(n: u64, s: SParam) -> Result<WideNat> {
    let big = positive(n)?.pow(s.get())?;
    klee_phi(&big, s)?.checked_mul(tau_s(&big, s))
}
