//! Brute-force evaluation of shifted generalized-gcd sums.

use crate::arithfn::{ModulusGcd, SParam};
use crate::error::{Error, Result};
use crate::factorint::gcd_u64;
use crate::par::{map_indexed, Exec};
use crate::wide::WideNat;

/// Value of an enumerated sum together with the number of tuples visited.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GcdSum {
    pub value: WideNat,
    pub terms: u128,
}

/// Reduces a (possibly negative) integer into `[0, modulus)`.
pub fn residue(x: i128, modulus: u64) -> u64 {
    x.rem_euclid(modulus as i128) as u64
}

/// Elements of `1..=modulus` relatively `s`-prime to `modulus`.
pub fn s_units(table: &ModulusGcd) -> Vec<u64> {
    (1..=table.modulus()).filter(|&m| table.is_coprime(m)).collect()
}

/// Enumerates
///
/// ```text
///   sum over m_1..m_k in [1, N] with (m_i, N)_s = 1, b_1..b_r in [1, N]
///       of (m_1 - a_1, ..., m_k - a_k, b_1, ..., b_r, N)_s
/// ```
///
/// where `N = modulus` and `k = shifts.len()`. Differences are taken mod `N`,
/// which leaves every gcd with `N` unchanged. Work is split on the leading
/// coordinate and partial sums are reduced in index order.
pub fn shifted_gcd_sum(
    modulus: u64,
    s: SParam,
    shifts: &[i64],
    free: u32,
    budget: u128,
    exec: Exec,
) -> Result<GcdSum> {
    if modulus == 0 {
        return Err(Error::domain("modulus must be positive"));
    }
    if modulus as u128 > budget {
        return Err(Error::BoundExceeded { required: modulus as u128, budget });
    }
    let table = ModulusGcd::new(modulus, s)?;
    let units = s_units(&table);

    let too_many = || Error::BoundExceeded { required: u128::MAX, budget };
    let terms = (units.len() as u128)
        .checked_pow(shifts.len() as u32)
        .and_then(|u| u.checked_mul((modulus as u128).checked_pow(free)?))
        .ok_or_else(too_many)?;
    if terms > budget {
        return Err(Error::BoundExceeded { required: terms, budget });
    }
    // Every summand is at most N, so this bounds the total.
    WideNat::new(terms.checked_mul(modulus as u128).ok_or(Error::Overflow)?)?;

    // Each coordinate only enters through its gcd with N.
    let mut coords: Vec<Vec<u64>> = shifts
        .iter()
        .map(|&a| units.iter().map(|&m| gcd_u64(residue(m as i128 - a as i128, modulus), modulus)).collect())
        .collect();
    let free_coord: Vec<u64> = (1..=modulus).map(|b| gcd_u64(b % modulus, modulus)).collect();
    coords.extend((0..free).map(|_| free_coord.clone()));

    let value = match coords.split_first() {
        None => table.of_divisor(modulus) as u128,
        Some((lead, rest)) => {
            let partials = map_indexed(exec, lead.len(), |i| walk(rest, gcd_u64(modulus, lead[i]), &table));
            partials.into_iter().sum()
        }
    };
    Ok(GcdSum { value: WideNat::new(value)?, terms })
}

fn walk(coords: &[Vec<u64>], g: u64, table: &ModulusGcd) -> u128 {
    match coords.split_first() {
        None => table.of_divisor(g) as u128,
        Some((head, [])) => head.iter().map(|&x| table.of_divisor(gcd_u64(g, x)) as u128).sum(),
        Some((head, rest)) => head.iter().map(|&x| walk(rest, gcd_u64(g, x), table)).sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: u32) -> SParam {
        SParam::new(v).unwrap()
    }

    #[test]
    fn menon_small() {
        let r = shifted_gcd_sum(6, s(1), &[1], 0, 1000, Exec::Sequential).unwrap();
        assert_eq!(r.value, WideNat::from(8u64));
        assert_eq!(r.terms, 2);
    }

    #[test]
    fn empty_tuple_is_modulus_part() {
        let r = shifted_gcd_sum(12, s(2), &[], 0, 1000, Exec::Sequential).unwrap();
        assert_eq!(r.value, WideNat::from(4u64));
        assert_eq!(r.terms, 1);
    }

    #[test]
    fn negative_shift_matches_positive_representative() {
        let a = shifted_gcd_sum(16, s(2), &[-15, 3], 1, 1 << 20, Exec::Sequential).unwrap();
        let b = shifted_gcd_sum(16, s(2), &[1, 3], 1, 1 << 20, Exec::Sequential).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn budget_is_enforced() {
        let err = shifted_gcd_sum(100, s(1), &[1], 2, 10_000, Exec::Sequential).unwrap_err();
        assert_eq!(err, Error::BoundExceeded { required: 400_000, budget: 10_000 });
        assert!(matches!(
            shifted_gcd_sum(1 << 40, s(1), &[1], 0, 1000, Exec::Sequential),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn exec_modes_agree() {
        let a = shifted_gcd_sum(36, s(2), &[1, 5], 1, 1 << 20, Exec::Sequential).unwrap();
        let b = shifted_gcd_sum(36, s(2), &[1, 5], 1, 1 << 20, Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
