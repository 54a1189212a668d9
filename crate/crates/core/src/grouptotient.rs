//! Element-order censuses of finite abelian groups `Z_{m_1} × ... × Z_{m_k}`
//! and the group version of Klee's function: `Φ_s(G)` counts elements whose
//! order `o` leaves an `s`-free cofactor `exp(G) / o`.

use std::collections::BTreeMap;

use crate::arithfn::{klee_phi, SParam};
use crate::error::{Error, Result};
use crate::factorint::{divisors_u64, factorize_u64, gcd_u64};
use crate::identities::{verify, IdentityInstance, VerificationReport, VerifyConfig};
use crate::par::{map_indexed, Exec};
use crate::wide::WideNat;

/// Direct sum of cyclic groups, in any presentation (not necessarily
/// invariant factors).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factor_orders: Vec<u64>,
    order: WideNat,
    exponent: u64,
}

impl AbelianGroup {
    pub fn new(factor_orders: Vec<u64>) -> Result<Self> {
        if factor_orders.is_empty() {
            return Err(Error::domain("a group needs at least one cyclic factor"));
        }
        if factor_orders.contains(&0) {
            return Err(Error::domain("cyclic factor orders must be positive"));
        }
        let mut order = WideNat::ONE;
        let mut exponent = 1u64;
        for &m in &factor_orders {
            order = order.checked_mul(WideNat::from(m))?;
            exponent = (exponent / gcd_u64(exponent, m)).checked_mul(m).ok_or(Error::Overflow)?;
        }
        Ok(AbelianGroup { factor_orders, order, exponent })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn factor_orders(&self) -> &[u64] {
        &self.factor_orders
    }

    pub fn order(&self) -> WideNat {
        self.order
    }

    /// Least common multiple of the factor orders.
    pub fn exponent(&self) -> WideNat {
        WideNat::from(self.exponent)
    }

    fn exponent_u64(&self) -> u64 {
        self.exponent
    }
}

/// Number of elements of each exact order. Keys are the divisors of the
/// exponent (orders that do not occur map to zero).
pub type OrderCensus = BTreeMap<u64, WideNat>;

/// Census from `#{x : o(x) | e} = Π gcd(e, m_i)` followed by Möbius
/// inversion over the divisor lattice of the exponent.
pub fn order_census(g: &AbelianGroup) -> Result<OrderCensus> {
    let exp = g.exponent_u64();
    let f = factorize_u64(exp)?;
    let divs = divisors_u64(&f)?;
    let mut counts = divs
        .iter()
        .map(|&e| {
            g.factor_orders
                .iter()
                .try_fold(WideNat::ONE, |acc, &m| acc.checked_mul(WideNat::from(gcd_u64(e, m))))
        })
        .collect::<Result<Vec<_>>>()?;
    let index = |d: u64| divs.binary_search(&d).expect("divisor of the exponent");
    for &(p, _) in f.factors() {
        let p = p.to_u64().expect("prime factor of a u64");
        // Descending, so each subtraction still sees the previous stage's value.
        for i in (0..divs.len()).rev() {
            if divs[i] % p == 0 {
                let below = counts[index(divs[i] / p)];
                counts[i] = counts[i].checked_sub(below)?;
            }
        }
    }
    Ok(divs.into_iter().zip(counts).collect())
}

fn element_order(digits: &[u64], orders: &[u64]) -> u64 {
    digits.iter().zip(orders).fold(1u64, |l, (&x, &m)| {
        let o = m / gcd_u64(x, m);
        l / gcd_u64(l, o) * o
    })
}

/// Census by enumerating every element and computing its order directly.
pub fn order_census_oracle(g: &AbelianGroup, budget: u128, exec: Exec) -> Result<OrderCensus> {
    if g.order.get() > budget {
        return Err(Error::BoundExceeded { required: g.order.get(), budget });
    }
    let divs = divisors_u64(&factorize_u64(g.exponent_u64())?)?;
    let (lead, rest) = g.factor_orders.split_first().expect("nonempty");
    let partials = map_indexed(exec, *lead as usize, |x0| {
        let mut local = vec![0u64; divs.len()];
        let mut digits = vec![0u64; g.factor_orders.len()];
        digits[0] = x0 as u64;
        loop {
            let o = element_order(&digits, &g.factor_orders);
            local[divs.binary_search(&o).expect("order divides exponent")] += 1;
            // Odometer over the remaining coordinates.
            let mut i = 0;
            loop {
                if i == rest.len() {
                    return local;
                }
                digits[i + 1] += 1;
                if digits[i + 1] < rest[i] {
                    break;
                }
                digits[i + 1] = 0;
                i += 1;
            }
        }
    });
    let mut totals = vec![0u64; divs.len()];
    for part in partials {
        for (t, c) in totals.iter_mut().zip(part) {
            *t += c;
        }
    }
    Ok(divs.into_iter().zip(totals.into_iter().map(WideNat::from)).collect())
}

/// Tărnăuceanu's `φ(G)`: the number of elements of order `exp(G)`.
pub fn tarnauceanu_phi(g: &AbelianGroup) -> Result<WideNat> {
    Ok(order_census(g)?[&g.exponent_u64()])
}

/// True iff every prime exponent of `n` is below `s`.
fn s_free_u64(n: u64, s: SParam) -> Result<bool> {
    Ok(factorize_u64(n)?.factors().iter().all(|&(_, e)| e < s.get()))
}

/// `Φ_s` from a census: the elements whose cofactor `exp / o` is `s`-free.
pub fn klee_phi_from_census(census: &OrderCensus, exponent: u64, s: SParam) -> Result<WideNat> {
    let mut acc = WideNat::ZERO;
    for (&order, &count) in census {
        if s_free_u64(exponent / order, s)? {
            acc = acc.checked_add(count)?;
        }
    }
    Ok(acc)
}

/// `Φ_s(G)`.
pub fn klee_phi_group(g: &AbelianGroup, s: SParam) -> Result<WideNat> {
    klee_phi_from_census(&order_census(g)?, g.exponent_u64(), s)
}

fn pairwise_coprime(ms: &[u64]) -> bool {
    ms.iter().enumerate().all(|(i, &a)| ms[i + 1..].iter().all(|&b| gcd_u64(a, b) == 1))
}

/// Both sides of the direct-product rules for `Φ_s`:
/// pairwise coprime orders give `Φ_s(Π m_i)`, and `s`-free orders give
/// `Π Φ_s(Z_{m_i})`. The left side is counted by enumerating the group.
/// Returns `(lhs, rhs, elements enumerated)`.
pub fn product_property_sides(factors: &[u64], s: SParam, budget: u128) -> Result<(WideNat, WideNat, u128)> {
    let g = AbelianGroup::new(factors.to_vec())?;
    let coprime = pairwise_coprime(factors);
    let mut s_free = true;
    for &m in factors {
        s_free &= s_free_u64(m, s)?;
    }
    let coprime_rhs = if coprime { Some(klee_phi(&factorize_u64(g.exponent_u64())?, s)?) } else { None };
    let s_free_rhs = if s_free {
        let mut acc = WideNat::ONE;
        for &m in factors {
            acc = acc.checked_mul(klee_phi_group(&AbelianGroup::cyclic(m)?, s)?)?;
        }
        Some(acc)
    } else {
        None
    };
    let rhs = match (coprime_rhs, s_free_rhs) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::internal(format!("product rules disagree: {a} vs {b}")))
        }
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => {
            return Err(Error::domain(
                "no product rule applies: factors are neither pairwise coprime nor all s-free",
            ))
        }
    };
    let census = order_census_oracle(&g, budget, Exec::Sequential)?;
    let lhs = klee_phi_from_census(&census, g.exponent_u64(), s)?;
    Ok((lhs, rhs, g.order.get()))
}

/// Checks `Φ_s(Z_m × Z_n)` against the coprime and `s`-free product rules.
pub fn check_product_properties(m: u64, n: u64, s: SParam) -> VerificationReport {
    check_kfold_product(&[m, n], s)
}

/// k-fold version of [`check_product_properties`].
pub fn check_kfold_product(factors: &[u64], s: SParam) -> VerificationReport {
    verify(&IdentityInstance::GroupProduct { factors: factors.to_vec(), s }, &VerifyConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithfn::euler_phi;

    fn w(v: u64) -> WideNat {
        WideNat::from(v)
    }

    fn s(v: u32) -> SParam {
        SParam::new(v).unwrap()
    }

    fn grp(fs: &[u64]) -> AbelianGroup {
        AbelianGroup::new(fs.to_vec()).unwrap()
    }

    #[test]
    fn exponents() {
        assert_eq!(grp(&[4, 6]).exponent(), w(12));
        assert_eq!(grp(&[17]).exponent(), w(17));
        assert_eq!(grp(&[2, 2]).exponent(), w(2));
        assert_eq!(grp(&[4, 6]).order(), w(24));
        assert!(AbelianGroup::new(vec![]).is_err());
        assert!(AbelianGroup::new(vec![3, 0]).is_err());
    }

    #[test]
    fn census_examples() {
        let c = order_census(&grp(&[2, 2])).unwrap();
        assert_eq!(c, BTreeMap::from([(1, w(1)), (2, w(3))]));
        for n in [1u64, 12, 30, 64] {
            let c = order_census(&grp(&[n])).unwrap();
            for (d, count) in c {
                assert_eq!(count, euler_phi(&factorize_u64(d).unwrap()).unwrap());
            }
        }
        let c = order_census(&grp(&[4, 6])).unwrap();
        let total = c.values().fold(WideNat::ZERO, |a, &b| a.checked_add(b).unwrap());
        assert_eq!(total, w(24));
        assert_eq!(c, order_census_oracle(&grp(&[4, 6]), 1000, Exec::Sequential).unwrap());
    }

    #[test]
    fn oracle_budget() {
        assert!(matches!(
            order_census_oracle(&grp(&[100, 100]), 9999, Exec::Sequential),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn totient_examples() {
        assert_eq!(tarnauceanu_phi(&grp(&[12])).unwrap(), w(4));
        assert_eq!(tarnauceanu_phi(&grp(&[2, 2])).unwrap(), w(3));
        assert_eq!(tarnauceanu_phi(&grp(&[4, 2])).unwrap(), w(4));
        assert_eq!(klee_phi_group(&grp(&[4]), s(2)).unwrap(), w(3));
        assert_eq!(klee_phi_group(&grp(&[2, 2]), s(2)).unwrap(), w(4));
        assert_eq!(klee_phi_group(&grp(&[12]), s(2)).unwrap(), w(9));
    }

    #[test]
    fn product_examples() {
        let r = check_product_properties(2, 3, s(2));
        assert!(r.matched);
        assert_eq!(r.lhs, Some(w(6)));
        let r = check_product_properties(1, 1, s(3));
        assert!(r.matched);
        assert_eq!(r.lhs, Some(w(1)));
        let r = check_product_properties(6, 10, s(2));
        assert!(r.matched);
        assert_eq!(r.lhs, Some(w(60)));
        let r = check_product_properties(4, 6, s(2));
        assert!(!r.matched);
        assert!(r.failure.is_some());
        assert!(check_kfold_product(&[6, 10, 15], s(2)).matched);
    }
}
