//! Primality, factorization, divisors and the other integer plumbing shared
//! by every other module.

use crate::error::{Error, Result};
use crate::wide::WideNat;

/// Trial division runs over `2, 3` and `6k ± 1` up to this bound before
/// Pollard's rho takes over.
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// Witnesses making Miller–Rabin deterministic for every `n < 2^64`.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Canonical prime-power decomposition of a positive integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    value: WideNat,
    factors: Vec<(WideNat, u32)>,
}

impl Factorization {
    /// The factorization of 1.
    pub fn one() -> Self {
        Factorization { value: WideNat::ONE, factors: Vec::new() }
    }

    /// Builds a factorization from `(prime, exponent)` pairs, checking the
    /// canonical-form invariants and computing the value.
    pub fn from_factors(factors: Vec<(WideNat, u32)>) -> Result<Self> {
        let mut value = WideNat::ONE;
        let mut prev = WideNat::ONE;
        for &(p, e) in &factors {
            if p <= prev {
                return Err(Error::domain("primes must be strictly increasing"));
            }
            if e == 0 {
                return Err(Error::domain("exponents must be positive"));
            }
            if !is_prime(p)? {
                return Err(Error::domain(format!("{p} is not prime")));
            }
            value = value.checked_mul(ipow_checked(p, e)?)?;
            prev = p;
        }
        Ok(Factorization { value, factors })
    }

    pub fn value(&self) -> WideNat {
        self.value
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(WideNat, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Factorization of `value^exp`, obtained by scaling exponents.
    pub fn pow(&self, exp: u32) -> Result<Self> {
        if exp == 0 {
            return Ok(Self::one());
        }
        let value = ipow_checked(self.value, exp)?;
        let factors = self
            .factors
            .iter()
            .map(|&(p, e)| e.checked_mul(exp).map(|e| (p, e)).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Factorization { value, factors })
    }

    /// Multiplies the represented value back out from its factors.
    pub fn product(&self) -> Result<WideNat> {
        self.factors.iter().try_fold(WideNat::ONE, |acc, &(p, e)| acc.checked_mul(ipow_checked(p, e)?))
    }
}

/// `base^exp`, or [`Error::Overflow`] once the result leaves the 127-bit range.
pub fn ipow_checked(base: WideNat, exp: u32) -> Result<WideNat> {
    base.checked_pow(exp)
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm_checked(a: WideNat, b: WideNat) -> Result<WideNat> {
    if a.is_zero() || b.is_zero() {
        return Ok(WideNat::ZERO);
    }
    let g = gcd_u128(a.get(), b.get());
    WideNat::new(a.get() / g)?.checked_mul(b)
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for the whole `u64` range.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality test. Exact for all `n < 2^64`; larger inputs are decided by
/// trial division up to [`TRIAL_DIVISION_BOUND`] when that suffices.
pub fn is_prime(n: WideNat) -> Result<bool> {
    is_prime_bounded(n, TRIAL_DIVISION_BOUND)
}

/// As [`is_prime`] with an explicit trial-division bound for inputs `>= 2^64`.
pub fn is_prime_bounded(n: WideNat, trial_bound: u64) -> Result<bool> {
    if let Some(small) = n.to_u64() {
        return Ok(is_prime_u64(small));
    }
    let v = n.get();
    for q in trial_candidates().take_while(|&q| q <= trial_bound) {
        let q = q as u128;
        if q * q > v {
            return Ok(true);
        }
        if v.is_multiple_of(q) {
            return Ok(false);
        }
    }
    Err(Error::Unsupported(format!("primality of {n} needs trial division beyond {trial_bound}")))
}

/// 2, 3, then 5, 7, 11, 13, ... (numbers of the form 6k ± 1).
fn trial_candidates() -> impl Iterator<Item = u64> {
    [2u64, 3].into_iter().chain((1u64..).flat_map(|k| [6 * k - 1, 6 * k + 1]))
}

/// One nontrivial factor of an odd composite `n` via Pollard's rho with
/// Brent's cycle detection. Polynomial constants are tried in a fixed order,
/// so the result is deterministic.
fn pollard_brent(n: u64) -> u64 {
    const BATCH: u64 = 128;
    for c in 1..n {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut y = 2u64;
        let mut x;
        let mut ys = y;
        let mut q = 1u64;
        let mut g = 1u64;
        let mut r = 1u64;
        loop {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += BATCH;
            }
            r *= 2;
            if g != 1 {
                break;
            }
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("pollard_brent called on a prime or unit")
}

fn factor_rho(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    factor_rho(d, out);
    factor_rho(n / d, out);
}

fn push_factor(factors: &mut Vec<(WideNat, u32)>, p: u128, e: u32) {
    match factors.iter_mut().find(|(q, _)| q.get() == p) {
        Some(slot) => slot.1 += e,
        None => factors.push((WideNat::new(p).expect("factor below input"), e)),
    }
}

/// Canonical factorization of `n >= 1`.
///
/// Trial division by 2, 3 and `6k ± 1` up to [`TRIAL_DIVISION_BOUND`], then
/// Pollard–Brent on the remaining cofactor. A cofactor `>= 2^64` that trial
/// division cannot resolve yields [`Error::Unsupported`].
pub fn factorize(n: WideNat) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::domain("cannot factorize 0"));
    }
    let mut rest = n.get();
    let mut factors: Vec<(WideNat, u32)> = Vec::new();
    for q in trial_candidates().take_while(|&q| q <= TRIAL_DIVISION_BOUND) {
        let q = q as u128;
        if q * q > rest {
            break;
        }
        let mut e = 0;
        while rest.is_multiple_of(q) {
            rest /= q;
            e += 1;
        }
        if e > 0 {
            factors.push((WideNat::new(q)?, e));
        }
    }
    if rest > 1 {
        let bound = TRIAL_DIVISION_BOUND as u128;
        if rest < bound * bound {
            // No factor up to the bound, so the cofactor is prime.
            push_factor(&mut factors, rest, 1);
        } else if let Ok(small) = u64::try_from(rest) {
            let mut primes = Vec::new();
            factor_rho(small, &mut primes);
            for p in primes {
                push_factor(&mut factors, p as u128, 1);
            }
        } else {
            return Err(Error::Unsupported(format!(
                "cofactor {rest} of {n} exceeds 2^64 and has no factor below {TRIAL_DIVISION_BOUND}"
            )));
        }
    }
    factors.sort_unstable_by_key(|&(p, _)| p);
    Ok(Factorization { value: n, factors })
}

/// Convenience wrapper for small arguments.
pub fn factorize_u64(n: u64) -> Result<Factorization> {
    factorize(WideNat::from(n))
}

/// All divisors of `f.value()` in increasing order.
pub fn divisors(f: &Factorization) -> Result<Vec<WideNat>> {
    let mut divs = vec![WideNat::ONE];
    for &(p, e) in f.factors() {
        let len = divs.len();
        let mut pk = WideNat::ONE;
        for _ in 0..e {
            pk = pk.checked_mul(p)?;
            for i in 0..len {
                let d = divs[i].checked_mul(pk)?;
                divs.push(d);
            }
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

/// Divisors of a `u64` value, as `u64`.
pub fn divisors_u64(f: &Factorization) -> Result<Vec<u64>> {
    divisors(f)?.into_iter().map(|d| d.to_u64().ok_or(Error::Overflow)).collect()
}

/// Largest perfect `s`-th power dividing `g`:
/// the product of `p^(s * floor(e / s))` over `p^e || g`.
pub fn largest_s_power_part(g: WideNat, s: u32) -> Result<WideNat> {
    if g.is_zero() {
        return Err(Error::domain("largest s-th power part of 0 is undefined"));
    }
    if s == 0 {
        return Err(Error::domain("s must be positive"));
    }
    if s == 1 {
        return Ok(g);
    }
    let f = factorize(g)?;
    f.factors().iter().try_fold(WideNat::ONE, |acc, &(p, e)| acc.checked_mul(ipow_checked(p, s * (e / s))?))
}
