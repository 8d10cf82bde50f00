//! Exact arithmetic in cyclotomic fields Q(zeta_N).
//!
//! Elements are stored on the power basis 1, zeta, ..., zeta^(phi(N)-1) and
//! reduced modulo the N-th cyclotomic polynomial. Values carry their own
//! conductor; mixed-conductor arithmetic lifts both operands into the lcm
//! field (tables are cached per conductor). A value that is actually rational
//! is always normalized down to conductor 1, which keeps the common case —
//! plain rational arithmetic — on a one-coordinate fast path.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use super::numtheory::{divisors, euler_phi, exact_root, factor_bigint, lcm_u64};
use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Conductors past this are refused; every field the tool needs embeds in
/// Q(zeta_N) with N far below the cap.
pub const MAX_CONDUCTOR: u32 = 4096;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

struct CycTable {
    phi: usize,
    /// x^k reduced mod Phi_N, for k = 0 .. max_pow (inclusive).
    power_rows: Vec<Vec<Rational>>,
}

fn cyclotomic_poly(n: u32, cache: &mut HashMap<u32, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    let poly = if n == 1 {
        vec![BigInt::from(-1), BigInt::from(1)]
    } else {
        // (x^n - 1) / prod_{d | n, d < n} Phi_d
        let mut num = vec![BigInt::zero(); n as usize + 1];
        num[0] = BigInt::from(-1);
        num[n as usize] = BigInt::one();
        for d in divisors(n) {
            if d == n {
                continue;
            }
            let q = cyclotomic_poly(d, cache);
            num = exact_div_int(&num, &q);
        }
        num
    };
    cache.insert(n, poly.clone());
    poly
}

/// Exact division of integer polynomials (remainder must vanish).
fn exact_div_int(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(den[dd].is_one() || den[dd] == BigInt::from(-1));
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = rem[k + dd].clone() / den[dd].clone();
        quot[k] = c.clone();
        for j in 0..=dd {
            let t = &den[j] * &c;
            rem[k + j] -= t;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quot
}

fn build_table(n: u32) -> Arc<CycTable> {
    let mut cache = HashMap::new();
    let cp = cyclotomic_poly(n, &mut cache);
    let phi = cp.len() - 1;
    debug_assert_eq!(phi, euler_phi(n) as usize);
    let max_pow = std::cmp::max(2 * phi, n as usize) + 1;
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(max_pow + 1);
    for k in 0..=max_pow {
        if k < phi {
            let mut row = vec![Rational::zero(); phi];
            row[k] = Rational::one();
            rows.push(row);
        } else {
            // x^k = x * x^(k-1), reduced: shift then fold the overflow term
            // through x^phi = -(c_0 + c_1 x + ... + c_{phi-1} x^{phi-1}).
            let prev = &rows[k - 1];
            let mut row = vec![Rational::zero(); phi];
            for j in 1..phi {
                row[j] = prev[j - 1].clone();
            }
            let top = prev[phi - 1].clone();
            if !top.is_zero() {
                for j in 0..phi {
                    if !cp[j].is_zero() {
                        row[j] -= &top * Rational::from(cp[j].clone());
                    }
                }
            }
            rows.push(row);
        }
    }
    Arc::new(CycTable { phi, power_rows: rows })
}

fn table(n: u32) -> Arc<CycTable> {
    static TABLES: OnceLock<Mutex<HashMap<u32, Arc<CycTable>>>> = OnceLock::new();
    let m = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = m.lock().unwrap();
    guard.entry(n).or_insert_with(|| build_table(n)).clone()
}

/// An exact element of Q(zeta_conductor), reduced on the power basis.
#[derive(Clone)]
pub struct Cyclotomic {
    conductor: u32,
    coords: Vec<Rational>,
}

impl Cyclotomic {
    fn reduced(conductor: u32, coords: Vec<Rational>) -> Self {
        debug_assert_eq!(coords.len(), euler_phi(conductor) as usize);
        // A value that is in fact rational lives at conductor 1.
        if conductor > 1 && coords.iter().skip(1).all(|c| c.is_zero()) {
            return Cyclotomic {
                conductor: 1,
                coords: vec![coords.into_iter().next().unwrap()],
            };
        }
        Cyclotomic { conductor, coords }
    }

    pub fn zero() -> Self {
        Cyclotomic { conductor: 1, coords: vec![Rational::zero()] }
    }

    pub fn one() -> Self {
        Cyclotomic { conductor: 1, coords: vec![Rational::one()] }
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic { conductor: 1, coords: vec![r] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    /// zeta_N, the canonical primitive N-th root of unity.
    pub fn zeta(n: u32) -> Result<Self> {
        Self::zeta_pow(n, 1)
    }

    /// zeta_N^k.
    pub fn zeta_pow(n: u32, k: i64) -> Result<Self> {
        if n == 0 || n > MAX_CONDUCTOR {
            return Err(Error::ConductorMismatch(n, n));
        }
        let k = k.rem_euclid(n as i64) as usize;
        let t = table(n);
        Ok(Self::reduced(n, t.power_rows[k].clone()))
    }

    /// A primitive root of unity of the given order inside Q(zeta_conductor).
    pub fn root_of_unity(conductor: u32, order: u32) -> Result<Self> {
        if order == 0 || conductor % order != 0 {
            return Err(Error::OrderNotSupported { order, conductor });
        }
        Self::zeta_pow(conductor, (conductor / order) as i64)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coords[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.conductor == 1 {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    /// Coordinates of the value in Q(zeta_target), without re-normalizing.
    fn lift_coords(&self, target: u32) -> Result<Vec<Rational>> {
        if self.conductor == target {
            return Ok(self.coords.clone());
        }
        if target % self.conductor != 0 || target > MAX_CONDUCTOR {
            return Err(Error::ConductorMismatch(self.conductor, target));
        }
        let step = (target / self.conductor) as usize;
        let t = table(target);
        let mut coords = vec![Rational::zero(); t.phi];
        for (j, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &t.power_rows[j * step];
            for (i, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    coords[i] += c * r;
                }
            }
        }
        Ok(coords)
    }

    /// Re-express the value in Q(zeta_target); `conductor` must divide `target`.
    pub fn lift(&self, target: u32) -> Result<Cyclotomic> {
        Ok(Self::reduced(target, self.lift_coords(target)?))
    }

    /// Fixed-length coordinate vector in Q(zeta_target), for hashing and
    /// deterministic keys.
    pub fn coords_at(&self, target: u32) -> Result<Vec<Rational>> {
        self.lift_coords(target)
    }

    fn common(a: &Cyclotomic, b: &Cyclotomic) -> Result<(Vec<Rational>, Vec<Rational>, u32)> {
        let n = lcm_u64(a.conductor as u64, b.conductor as u64);
        if n > MAX_CONDUCTOR as u64 {
            return Err(Error::ConductorMismatch(a.conductor, b.conductor));
        }
        let n = n as u32;
        Ok((a.lift_coords(n)?, b.lift_coords(n)?, n))
    }

    pub fn checked_add(&self, rhs: &Cyclotomic) -> Result<Cyclotomic> {
        let (a, b, n) = Self::common(self, rhs)?;
        let coords = a.iter().zip(b.iter()).map(|(x, y)| x + y).collect();
        Ok(Self::reduced(n, coords))
    }

    pub fn checked_sub(&self, rhs: &Cyclotomic) -> Result<Cyclotomic> {
        let (a, b, n) = Self::common(self, rhs)?;
        let coords = a.iter().zip(b.iter()).map(|(x, y)| x - y).collect();
        Ok(Self::reduced(n, coords))
    }

    pub fn checked_mul(&self, rhs: &Cyclotomic) -> Result<Cyclotomic> {
        if self.is_zero() || rhs.is_zero() {
            return Ok(Cyclotomic::zero());
        }
        // Rational fast path.
        if self.conductor == 1 {
            let r = &self.coords[0];
            let coords = rhs.coords.iter().map(|c| c * r).collect();
            return Ok(Self::reduced(rhs.conductor, coords));
        }
        if rhs.conductor == 1 {
            return rhs.checked_mul(self);
        }
        let (a, b, n) = Self::common(self, rhs)?;
        let t = table(n);
        let phi = t.phi;
        let mut raw = vec![Rational::zero(); 2 * phi - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                raw[i + j] += x * y;
            }
        }
        let mut coords = vec![Rational::zero(); phi];
        for (k, c) in raw.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < phi {
                coords[k] += c;
            } else {
                let row = &t.power_rows[k];
                for (i, r) in row.iter().enumerate() {
                    if !r.is_zero() {
                        coords[i] += &c * r;
                    }
                }
            }
        }
        Ok(Self::reduced(n, coords))
    }

    pub fn checked_neg(&self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// Multiplicative inverse via extended Euclid in Q[x] mod Phi_N.
    pub fn inv(&self) -> Result<Cyclotomic> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.conductor == 1 {
            return Ok(Cyclotomic::from_rational(self.coords[0].recip()));
        }
        let n = self.conductor;
        let mut cache = HashMap::new();
        let cp: Vec<Rational> = cyclotomic_poly(n, &mut cache)
            .into_iter()
            .map(Rational::from)
            .collect();
        let a: Vec<Rational> = self.coords.clone();
        let inv = poly_modular_inverse(&a, &cp).ok_or(Error::DivisionByZero)?;
        let mut coords = inv;
        coords.resize(cp.len() - 1, Rational::zero());
        Ok(Self::reduced(n, coords))
    }

    pub fn checked_div(&self, rhs: &Cyclotomic) -> Result<Cyclotomic> {
        self.checked_mul(&rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Cyclotomic> {
        if e == 0 {
            return Ok(Cyclotomic::one());
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Cyclotomic::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.checked_mul(&b)?;
            }
            k >>= 1;
            if k > 0 {
                b = b.checked_mul(&b)?;
            }
        }
        Ok(acc)
    }

    /// Detect `self == r * zeta_N^k` for rational r; returns (r, k mod N).
    /// N is the value's own conductor (k = 0 when rational).
    pub fn as_rational_times_root(&self) -> Option<(Rational, u32)> {
        if let Some(r) = self.as_rational() {
            return Some((r.clone(), 0));
        }
        let n = self.conductor;
        for k in 0..n {
            let z = Cyclotomic::zeta_pow(n, -(k as i64)).ok()?;
            let c = self.checked_mul(&z).ok()?;
            if let Some(r) = c.as_rational() {
                return Some((r.clone(), k));
            }
        }
        None
    }

    /// Square root of a rational as a cyclotomic number (Gauss sums), when the
    /// radicand factors over small primes.
    pub fn sqrt_rational(r: &Rational) -> Option<Cyclotomic> {
        if r.is_zero() {
            return Some(Cyclotomic::zero());
        }
        let num = r.numer().clone();
        let den = r.denom().clone();
        // r = sign * (num*den) / den^2, so sqrt(r) = sqrt(sign * num*den) / den.
        let sign_neg = num.is_negative();
        let m = num.abs() * &den;
        let fac = factor_bigint(&m)?;
        let mut square = BigInt::one();
        let mut squarefree: Vec<u64> = Vec::new();
        for (p, e) in fac {
            square *= num::pow::pow(BigInt::from(p), (e / 2) as usize);
            if e % 2 == 1 {
                squarefree.push(p);
            }
        }
        let mut root = Cyclotomic::from_rational(Rational::new(square, den));
        for p in squarefree {
            root = root.checked_mul(&sqrt_squarefree_prime(p)?).ok()?;
        }
        if sign_neg {
            root = root.checked_mul(&Cyclotomic::zeta(4).ok()?).ok()?;
        }
        Some(root)
    }

    /// One m-th root of the value, when it is expressible in a cyclotomic
    /// field: works for r * zeta_N^k with r admitting an exact rational m-th
    /// root, plus the square-root fallback via Gauss sums.
    pub fn nth_root(&self, m: u32) -> Option<Cyclotomic> {
        if m == 0 {
            return None;
        }
        if m == 1 {
            return Some(self.clone());
        }
        if self.is_zero() {
            return Some(Cyclotomic::zero());
        }
        let (r, k) = self.as_rational_times_root()?;
        let n = self.conductor;
        let neg = r.is_negative();
        let rabs = if neg { -r.clone() } else { r.clone() };
        // Root of the (positive) rational part.
        let root_r = if let (Some(a), Some(b)) =
            (exact_root(rabs.numer(), m), exact_root(rabs.denom(), m))
        {
            Some(Cyclotomic::from_rational(Rational::new(a, b)))
        } else if m == 2 {
            Cyclotomic::sqrt_rational(&rabs)
        } else if m % 2 == 0 {
            // Try sqrt of an exact (m/2)-th root.
            exact_root(rabs.numer(), m / 2)
                .zip(exact_root(rabs.denom(), m / 2))
                .and_then(|(a, b)| Cyclotomic::sqrt_rational(&Rational::new(a, b)))
        } else {
            None
        }?;
        // zeta_N^k has m-th root zeta_{mN}^k; a leftover sign contributes zeta_{2m}.
        let nm = (n as u64).checked_mul(m as u64)?;
        if nm > MAX_CONDUCTOR as u64 {
            return None;
        }
        let zr = Cyclotomic::zeta_pow(nm as u32, k as i64).ok()?;
        let mut root = root_r.checked_mul(&zr).ok()?;
        if neg {
            root = root.checked_mul(&Cyclotomic::zeta(2 * m).ok()?).ok()?;
        }
        Some(root)
    }

    /// Stable key for hashing/sorting: conductor-lifted coordinates.
    pub fn sort_key(&self) -> String {
        format!("{}", self)
    }
}

/// sqrt(p) for squarefree prime p, via quadratic Gauss sums.
fn sqrt_squarefree_prime(p: u64) -> Option<Cyclotomic> {
    if p == 2 {
        // zeta_8 + zeta_8^7 = sqrt(2)
        let a = Cyclotomic::zeta_pow(8, 1).ok()?;
        let b = Cyclotomic::zeta_pow(8, 7).ok()?;
        return a.checked_add(&b).ok();
    }
    // g = sum_k legendre(k|p) zeta_p^k equals sqrt(p) for p = 1 mod 4
    // and i*sqrt(p) for p = 3 mod 4.
    if p as u32 > MAX_CONDUCTOR {
        return None;
    }
    let mut g = Cyclotomic::zero();
    for k in 1..p {
        let ls = legendre(k, p);
        let term = Cyclotomic::zeta_pow(p as u32, k as i64).ok()?;
        g = if ls == 1 {
            g.checked_add(&term).ok()?
        } else {
            g.checked_sub(&term).ok()?
        };
    }
    if p % 4 == 1 {
        Some(g)
    } else {
        // sqrt(p) = g / i
        let i = Cyclotomic::zeta(4).ok()?;
        g.checked_div(&i).ok()
    }
}

fn legendre(mut a: u64, p: u64) -> i32 {
    a %= p;
    let mut r = 1u64;
    let mut b = a;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

/// Inverse of `a` modulo `m` in Q[x] (both dense, ascending). None when not coprime.
fn poly_modular_inverse(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
    // Extended Euclid: r0 = m, r1 = a.
    let trim = |v: &mut Vec<Rational>| {
        while v.len() > 1 && v.last().unwrap().is_zero() {
            v.pop();
        }
    };
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0: Vec<Rational> = vec![Rational::zero()];
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let qs1 = poly_mul_q(&q, &s1);
        let mut s2 = poly_sub_q(&s0, &qs1);
        trim(&mut s2);
        r0 = r1;
        r1 = r;
        trim(&mut r1);
        s0 = s1;
        s1 = s2;
    }
    // r0 = gcd; must be a nonzero constant.
    if r0.len() != 1 || r0[0].is_zero() {
        return None;
    }
    let c = r0[0].recip();
    Some(s0.into_iter().map(|x| x * &c).collect())
}

fn poly_divrem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    if num.len() < den.len() {
        return (vec![Rational::zero()], rem);
    }
    let dn = num.len() - 1;
    let lead = den[dd].clone();
    let mut quot = vec![Rational::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = &rem[k + dd] / &lead;
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for j in 0..=dd {
            let t = &den[j] * &c;
            rem[k + j] -= t;
        }
    }
    while rem.len() > 1 && rem.last().unwrap().is_zero() {
        rem.pop();
    }
    (quot, rem)
}

fn poly_mul_q(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub_q(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coords == other.coords;
        }
        match Cyclotomic::common(self, other) {
            Ok((a, b, _)) => a == b,
            Err(_) => false,
        }
    }
}

impl Eq for Cyclotomic {}

impl std::ops::Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_add(rhs).expect("conductor overflow in add")
    }
}

impl std::ops::Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_sub(rhs).expect("conductor overflow in sub")
    }
}

impl std::ops::Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_mul(rhs).expect("conductor overflow in mul")
    }
}

impl std::ops::Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.checked_neg()
    }
}

impl std::ops::Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl std::ops::Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl std::ops::Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl std::ops::Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.checked_neg()
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                if k == 1 {
                    write!(f, "zeta({})", self.conductor)?;
                } else {
                    write!(f, "zeta({})^{}", self.conductor, k)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(n: u32) -> Cyclotomic {
        Cyclotomic::zeta(n).unwrap()
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = zeta(4);
        assert_eq!(&i * &i, Cyclotomic::from_int(-1));
    }

    #[test]
    fn omega_relation() {
        let w = zeta(3);
        let sum = &(&Cyclotomic::one() + &w) + &(&w * &w);
        assert!(sum.is_zero());
    }

    #[test]
    fn inverse_of_one_plus_i() {
        let i = zeta(4);
        let a = &Cyclotomic::one() + &i;
        let inv = a.inv().unwrap();
        // (1 - i)/2
        let expected = (&Cyclotomic::one() - &i)
            .checked_mul(&Cyclotomic::from_rational(rat(1, 2)))
            .unwrap();
        assert_eq!(inv, expected);
    }

    #[test]
    fn zeta8_fourth_power() {
        let z = zeta(8);
        assert_eq!(z.pow(4).unwrap(), Cyclotomic::from_int(-1));
    }

    #[test]
    fn root_of_unity_basic() {
        assert_eq!(Cyclotomic::root_of_unity(120, 1).unwrap(), Cyclotomic::one());
        assert_eq!(Cyclotomic::root_of_unity(120, 2).unwrap(), Cyclotomic::from_int(-1));
        assert!(Cyclotomic::root_of_unity(120, 7).is_err());
    }

    #[test]
    fn cyclotomic_polynomial_vanishes() {
        for n in [1u32, 2, 3, 4, 5, 6, 8, 12, 24, 120] {
            let mut cache = HashMap::new();
            let cp = cyclotomic_poly(n, &mut cache);
            let z = zeta(n);
            let mut acc = Cyclotomic::zero();
            for (k, c) in cp.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let t = z
                    .pow(k as i64)
                    .unwrap()
                    .checked_mul(&Cyclotomic::from_rational(Rational::from(c.clone())))
                    .unwrap();
                acc = acc.checked_add(&t).unwrap();
            }
            assert!(acc.is_zero(), "Phi_{} at zeta_{} != 0", n, n);
        }
    }

    #[test]
    fn mixed_conductor_arithmetic() {
        let i = zeta(4);
        let w = zeta(3);
        let prod = &i * &w; // zeta_12-territory
        assert_eq!(prod.pow(12).unwrap(), Cyclotomic::one());
        assert_eq!(&prod * &prod.inv().unwrap(), Cyclotomic::one());
    }

    #[test]
    fn sqrt_rationals() {
        for v in [2i64, 3, 5, -3, -1, 6, 8, 45] {
            let r = rat_int(v);
            let s = Cyclotomic::sqrt_rational(&r).unwrap();
            assert_eq!(&s * &s, Cyclotomic::from_rational(r), "sqrt({v})^2");
        }
        let half = rat(9, 4);
        let s = Cyclotomic::sqrt_rational(&half).unwrap();
        assert_eq!(s, Cyclotomic::from_rational(rat(3, 2)));
    }

    #[test]
    fn nth_roots() {
        // (-1)^(1/4) exists at conductor 8.
        let m1 = Cyclotomic::from_int(-1);
        let r = m1.nth_root(4).unwrap();
        assert_eq!(r.pow(4).unwrap(), m1);
        // 8^(1/3) = 2.
        let r = Cyclotomic::from_int(8).nth_root(3).unwrap();
        assert_eq!(r, Cyclotomic::from_int(2));
        // zeta_3 has a square root.
        let w = zeta(3);
        let r = w.nth_root(2).unwrap();
        assert_eq!(&r * &r, w);
    }

    #[test]
    fn rational_detection() {
        let z = zeta(8);
        let v = z.pow(2).unwrap(); // i, not rational
        assert!(!v.is_rational());
        let (r, k) = v.as_rational_times_root().unwrap();
        assert_eq!(r, rat_int(1));
        assert_eq!(k, 2);
    }
}
