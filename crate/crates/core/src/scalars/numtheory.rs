//! Small integer number theory used by the cyclotomic layer.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd_u64(a, b) * b
    }
}

/// Prime factorization by trial division; `n` stays small (conductors, orders).
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u32) -> u32 {
    let mut phi = n as u64;
    for (p, _) in factor_u64(n as u64) {
        phi = phi / p * (p - 1);
    }
    phi as u32
}

pub fn divisors(n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 1u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Exact integer k-th root: returns r with r^k == n when it exists.
pub fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if k == 0 {
        return None;
    }
    if n.is_zero() {
        return Some(BigInt::zero());
    }
    if n.is_negative() {
        if k % 2 == 0 {
            return None;
        }
        return exact_root(&-n, k).map(|r| -r);
    }
    let r = n.nth_root(k);
    if num::pow::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// Trial-division factorization of a positive BigInt; gives up (None) past 10^6.
pub fn factor_bigint(n: &BigInt) -> Option<Vec<(u64, u32)>> {
    if !n.is_positive() {
        return None;
    }
    let mut n = n.clone();
    let mut out: Vec<(u64, u32)> = Vec::new();
    let limit = BigInt::from(1_000_000u64);
    let mut p = BigInt::from(2u64);
    while &p * &p <= n {
        if p > limit {
            return None;
        }
        if n.is_multiple_of(&p) {
            let mut e = 0u32;
            while n.is_multiple_of(&p) {
                n /= &p;
                e += 1;
            }
            let pu = u64::try_from(&p).ok()?;
            out.push((pu, e));
        }
        p += if p == BigInt::from(2u64) {
            BigInt::one()
        } else {
            BigInt::from(2u64)
        };
    }
    if n > BigInt::one() {
        let pu = u64::try_from(&n).ok()?;
        out.push((pu, 1));
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(8), 4);
        assert_eq!(euler_phi(120), 32);
    }

    #[test]
    fn exact_roots() {
        assert_eq!(exact_root(&BigInt::from(27), 3), Some(BigInt::from(3)));
        assert_eq!(exact_root(&BigInt::from(-8), 3), Some(BigInt::from(-2)));
        assert_eq!(exact_root(&BigInt::from(2), 2), None);
    }
}
