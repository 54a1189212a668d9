//! Naive reference implementations shared by the integration tests. Nothing
//! here goes through the library's factorization-based code paths.
#![allow(dead_code)]

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Largest `l^s` dividing every entry, found by scanning `l` upward.
pub fn naive_gcd_s(xs: &[u64], s: u32) -> u64 {
    let g = xs.iter().fold(0, |g, &x| gcd(g, x));
    assert!(g > 0);
    let mut best = 1;
    let mut l = 1u64;
    while let Some(ls) = l.checked_pow(s) {
        if ls > g {
            break;
        }
        if g % ls == 0 {
            best = ls;
        }
        l += 1;
    }
    best
}

pub fn naive_klee(n: u64, s: u32) -> u64 {
    (1..=n).filter(|&m| naive_gcd_s(&[m, n], s) == 1).count() as u64
}

pub fn naive_phi(n: u64) -> u64 {
    (1..=n).filter(|&m| gcd(m, n) == 1).count() as u64
}

pub fn naive_divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn naive_tau_s(n: u64, s: u32) -> u64 {
    (1..=n).take_while(|l| l.pow(s) <= n).filter(|l| n.is_multiple_of(l.pow(s))).count() as u64
}

pub fn naive_sigma_ks(n: u64, k: u32, s: u32) -> u128 {
    (1..=n)
        .take_while(|l| l.pow(s) <= n)
        .filter(|l| n.is_multiple_of(l.pow(s)))
        .map(|l| (l.pow(s) as u128).pow(k))
        .sum()
}

pub fn naive_mobius(n: u64) -> i64 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Sieve of Eratosthenes over `0..=limit`.
pub fn eratosthenes(limit: usize) -> Vec<bool> {
    let mut is = vec![true; limit + 1];
    is[0] = false;
    if limit >= 1 {
        is[1] = false;
    }
    let mut i = 2;
    while i * i <= limit {
        if is[i] {
            let mut j = i * i;
            while j <= limit {
                is[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    is
}
