//! Truncated Puiseux series with exact cyclotomic coefficients.
//!
//! A series is Σ_k coeffs[k] t^(lead + k/ram) + O(t^bound) with
//! bound = lead + len/ram; the local coordinate is t = z - p at a finite base
//! point and t = 1/z at infinity. Arithmetic tracks the minimum available
//! order, never inflating precision.

use std::fmt;

use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::funcfield::{Poly, ProjPoint, RatFunc};
use crate::scalars::numtheory::lcm_u64;
use crate::scalars::{Cyclotomic, Rational};

#[derive(Clone)]
pub struct PuiseuxSeries {
    base: ProjPoint,
    lead: Rational,
    ram: u32,
    coeffs: Vec<Cyclotomic>,
}

fn rat_usize(n: usize) -> Rational {
    Rational::from_integer(num::BigInt::from(n))
}

impl PuiseuxSeries {
    pub fn new(base: ProjPoint, lead: Rational, ram: u32, coeffs: Vec<Cyclotomic>) -> Self {
        assert!(ram >= 1);
        assert!(
            (lead.clone() * rat_usize(ram as usize)).is_integer(),
            "lead exponent must lie on the 1/ram grid"
        );
        let mut s = PuiseuxSeries { base, lead, ram, coeffs };
        s.normalize();
        s
    }

    /// The zero series, known to O(t^bound).
    pub fn zero(base: ProjPoint, bound: Rational, ram: u32) -> Self {
        PuiseuxSeries { base, lead: bound, ram, coeffs: Vec::new() }
    }

    /// An exact constant, carried to the requested bound.
    pub fn constant(base: ProjPoint, c: Cyclotomic, bound: usize) -> Self {
        let mut coeffs = vec![Cyclotomic::zero(); bound];
        if !coeffs.is_empty() {
            coeffs[0] = c;
        }
        PuiseuxSeries::new(base, Rational::zero(), 1, coeffs)
    }

    fn normalize(&mut self) {
        let strip = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len());
        if strip > 0 {
            self.coeffs.drain(..strip);
            self.lead += Rational::new(num::BigInt::from(strip), num::BigInt::from(self.ram));
        }
        // canonical zero: lead equals the bound, no coefficients
    }

    pub fn base(&self) -> &ProjPoint {
        &self.base
    }

    pub fn lead_exponent(&self) -> &Rational {
        &self.lead
    }

    pub fn ramification(&self) -> u32 {
        self.ram
    }

    pub fn coeffs(&self) -> &[Cyclotomic] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Everything below this exponent is known exactly.
    pub fn bound(&self) -> Rational {
        self.lead.clone() + Rational::new(num::BigInt::from(self.coeffs.len()), num::BigInt::from(self.ram))
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero_series(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<&Cyclotomic> {
        self.coeffs.first()
    }

    /// Coefficient at an exact exponent; None when at/after the bound.
    pub fn coeff_at(&self, e: &Rational) -> Option<Cyclotomic> {
        if *e >= self.bound() {
            return None;
        }
        if *e < self.lead {
            return Some(Cyclotomic::zero());
        }
        let idx = (e - &self.lead) * rat_usize(self.ram as usize);
        if !idx.is_integer() {
            return Some(Cyclotomic::zero());
        }
        let k = idx.to_integer().to_usize()?;
        Some(self.coeffs.get(k).cloned().unwrap_or_else(Cyclotomic::zero))
    }

    fn check_base(&self, rhs: &PuiseuxSeries) -> Result<()> {
        if self.base != rhs.base {
            return Err(Error::BasePointMismatch);
        }
        Ok(())
    }

    pub fn with_ram(&self, ram: u32) -> PuiseuxSeries {
        assert!(ram % self.ram == 0);
        let f = (ram / self.ram) as usize;
        if f == 1 {
            return self.clone();
        }
        let mut coeffs = vec![Cyclotomic::zero(); self.coeffs.len() * f];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * f] = c.clone();
        }
        PuiseuxSeries { base: self.base.clone(), lead: self.lead.clone(), ram, coeffs }
    }

    /// Drop any unnecessary ramification.
    pub fn reduce_ram(&self) -> PuiseuxSeries {
        if self.ram == 1 {
            return self.clone();
        }
        let mut g = self.ram as u64;
        // lead must stay on the coarser grid
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                g = num::integer::gcd(g, k as u64);
            }
            if g == 1 {
                return self.clone();
            }
        }
        // also constrain by the denominator of lead and the length
        let lead_num = self.lead.clone() * rat_usize(self.ram as usize);
        let li = lead_num.to_integer();
        let lead_abs: u64 = li.abs().to_u64().unwrap_or(0);
        if lead_abs > 0 {
            g = num::integer::gcd(g, lead_abs);
        }
        g = num::integer::gcd(g, self.coeffs.len() as u64);
        if g <= 1 {
            return self.clone();
        }
        let g = g as usize;
        let new_ram = self.ram / g as u32;
        let coeffs: Vec<Cyclotomic> = self.coeffs.iter().step_by(g).cloned().collect();
        PuiseuxSeries {
            base: self.base.clone(),
            lead: self.lead.clone(),
            ram: new_ram.max(1),
            coeffs,
        }
    }

    pub fn truncate_to(&self, bound: &Rational) -> PuiseuxSeries {
        if *bound >= self.bound() {
            return self.clone();
        }
        if *bound <= self.lead {
            return PuiseuxSeries::zero(self.base.clone(), bound.clone(), self.ram);
        }
        let span = (bound - &self.lead) * rat_usize(self.ram as usize);
        let k = span.ceil().to_integer().to_usize().unwrap();
        PuiseuxSeries::new(
            self.base.clone(),
            self.lead.clone(),
            self.ram,
            self.coeffs[..k.min(self.coeffs.len())].to_vec(),
        )
    }

    pub fn scale(&self, c: &Cyclotomic) -> PuiseuxSeries {
        if c.is_zero() {
            return PuiseuxSeries::zero(self.base.clone(), self.bound(), self.ram);
        }
        PuiseuxSeries::new(
            self.base.clone(),
            self.lead.clone(),
            self.ram,
            self.coeffs.iter().map(|x| x * c).collect(),
        )
    }

    pub fn neg(&self) -> PuiseuxSeries {
        self.scale(&Cyclotomic::from_int(-1))
    }

    /// Multiply by t^e.
    pub fn mul_tpow(&self, e: &Rational) -> PuiseuxSeries {
        let ram = lcm_u64(self.ram as u64, e.denom().to_u64().unwrap_or(1)) as u32;
        let mut s = self.with_ram(ram);
        s.lead += e;
        s
    }

    pub fn add(&self, rhs: &PuiseuxSeries) -> Result<PuiseuxSeries> {
        self.check_base(rhs)?;
        let ram = lcm_u64(self.ram as u64, rhs.ram as u64) as u32;
        let a = self.with_ram(ram);
        let b = rhs.with_ram(ram);
        let lead = a.lead.clone().min(b.lead.clone());
        let bound = a.bound().min(b.bound());
        if bound <= lead {
            return Ok(PuiseuxSeries::zero(self.base.clone(), bound, ram));
        }
        let len = ((bound.clone() - &lead) * rat_usize(ram as usize))
            .to_integer()
            .to_usize()
            .unwrap();
        let mut coeffs = vec![Cyclotomic::zero(); len];
        for (src, sign_src) in [(&a, true), (&b, true)] {
            let _ = sign_src;
            let off = ((src.lead.clone() - &lead) * rat_usize(ram as usize))
                .to_integer()
                .to_usize()
                .unwrap();
            for (k, c) in src.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let idx = off + k;
                if idx < len {
                    coeffs[idx] = &coeffs[idx] + c;
                }
            }
        }
        Ok(PuiseuxSeries::new(self.base.clone(), lead, ram, coeffs))
    }

    pub fn sub(&self, rhs: &PuiseuxSeries) -> Result<PuiseuxSeries> {
        self.add(&rhs.neg())
    }

    /// Add an exact constant without losing precision.
    pub fn add_const(&self, c: &Cyclotomic) -> PuiseuxSeries {
        if c.is_zero() {
            return self.clone();
        }
        let bound = self.bound();
        if bound <= Rational::zero() {
            // the constant is invisible at this precision
            return self.clone();
        }
        let lead = self.lead.clone().min(Rational::zero());
        let len = ((bound.clone() - &lead) * rat_usize(self.ram as usize))
            .to_integer()
            .to_usize()
            .unwrap();
        let mut coeffs = vec![Cyclotomic::zero(); len];
        let off0 = ((Rational::zero() - &lead) * rat_usize(self.ram as usize))
            .to_integer()
            .to_usize()
            .unwrap();
        coeffs[off0] = c.clone();
        let off = ((self.lead.clone() - &lead) * rat_usize(self.ram as usize))
            .to_integer()
            .to_usize()
            .unwrap();
        for (k, x) in self.coeffs.iter().enumerate() {
            if !x.is_zero() {
                coeffs[off + k] = &coeffs[off + k] + x;
            }
        }
        PuiseuxSeries::new(self.base.clone(), lead, self.ram, coeffs)
    }

    pub fn mul(&self, rhs: &PuiseuxSeries) -> Result<PuiseuxSeries> {
        self.check_base(rhs)?;
        let ram = lcm_u64(self.ram as u64, rhs.ram as u64) as u32;
        let a = self.with_ram(ram);
        let b = rhs.with_ram(ram);
        let lead = a.lead.clone() + &b.lead;
        let bound = (a.bound() + &b.lead).min(b.bound() + &a.lead);
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return Ok(PuiseuxSeries::zero(self.base.clone(), bound, ram));
        }
        let len = ((bound.clone() - &lead) * rat_usize(ram as usize))
            .to_integer()
            .to_usize()
            .unwrap();
        let mut coeffs = vec![Cyclotomic::zero(); len];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() || i >= len {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if y.is_zero() {
                    continue;
                }
                let t = x * y;
                coeffs[i + j] = &coeffs[i + j] + &t;
            }
        }
        Ok(PuiseuxSeries::new(self.base.clone(), lead, ram, coeffs))
    }

    pub fn pow_int(&self, e: u32) -> Result<PuiseuxSeries> {
        if e == 0 {
            let len = self.coeffs.len().max(1);
            return Ok(PuiseuxSeries::constant(
                self.base.clone(),
                Cyclotomic::one(),
                len,
            ));
        }
        let mut acc: Option<PuiseuxSeries> = None;
        let mut b = self.clone();
        let mut k = e;
        loop {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => b.clone(),
                    Some(a) => a.mul(&b)?,
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            b = b.mul(&b)?;
        }
        Ok(acc.unwrap())
    }

    /// Fractional power with an explicit (or automatically chosen) q-th root
    /// of the leading coefficient.
    pub fn pow_rational(
        &self,
        p: i64,
        q: u32,
        root: Option<&Cyclotomic>,
    ) -> Result<PuiseuxSeries> {
        assert!(q >= 1);
        let c0 = self.leading_coeff().ok_or(Error::NonUnitLeading)?.clone();
        let r = match root {
            Some(r) => {
                if r.pow(q as i64).map_err(|_| Error::NonUnitLeading)? != c0 {
                    return Err(Error::Unsupported(format!(
                        "supplied root {} is not a {}-th root of the leading coefficient {}",
                        r, q, c0
                    )));
                }
                r.clone()
            }
            None => c0.nth_root(q).ok_or(Error::NonUnitLeading)?,
        };
        let alpha = Rational::new(num::BigInt::from(p), num::BigInt::from(q));
        // unit part u with series = c0 t^lead (1 + u)
        let c0_inv = c0.inv().map_err(|_| Error::NonUnitLeading)?;
        let len = self.coeffs.len();
        let u: Vec<Cyclotomic> = self.coeffs.iter().map(|c| c * &c0_inv).collect();
        // y = (1+u)^alpha via m y_m = sum_{j>=1} u_j (alpha j - (m-j)) y_{m-j}
        let mut y = vec![Cyclotomic::zero(); len];
        y[0] = Cyclotomic::one();
        for m in 1..len {
            let mut acc = Cyclotomic::zero();
            for j in 1..=m {
                if u[j].is_zero() || y[m - j].is_zero() {
                    continue;
                }
                let w = alpha.clone() * rat_usize(j) - rat_usize(m - j);
                if w.is_zero() {
                    continue;
                }
                let term = &(&u[j] * &y[m - j]) * &Cyclotomic::from_rational(w);
                acc = &acc + &term;
            }
            y[m] = &acc * &Cyclotomic::from_rational(Rational::one() / rat_usize(m));
        }
        let rp = r.pow(p).map_err(|_| Error::NonUnitLeading)?;
        let coeffs: Vec<Cyclotomic> = y.iter().map(|c| c * &rp).collect();
        let new_lead = self.lead.clone() * alpha;
        let ram = lcm_u64(
            self.ram as u64,
            new_lead.denom().to_u64().unwrap_or(1),
        ) as u32;
        let mut s = PuiseuxSeries::new(self.base.clone(), new_lead, self.ram, coeffs);
        if ram != s.ram {
            s = s.with_ram(lcm_u64(s.ram as u64, ram as u64) as u32);
        }
        Ok(s)
    }

    pub fn inverse(&self) -> Result<PuiseuxSeries> {
        self.pow_rational(-1, 1, None)
    }

    pub fn div(&self, rhs: &PuiseuxSeries) -> Result<PuiseuxSeries> {
        self.mul(&rhs.inverse()?)
    }

    /// d/dt in the local coordinate.
    pub fn derivative_t(&self) -> PuiseuxSeries {
        let lead = self.lead.clone() - Rational::one();
        let coeffs: Vec<Cyclotomic> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let e = self.lead.clone() + Rational::new(num::BigInt::from(k), num::BigInt::from(self.ram));
                c * &Cyclotomic::from_rational(e)
            })
            .collect();
        PuiseuxSeries::new(self.base.clone(), lead, self.ram, coeffs)
    }

    /// d/dz: equals d/dt at finite base points, and -t^2 d/dt at infinity.
    pub fn derivative_z(&self) -> PuiseuxSeries {
        let dt = self.derivative_t();
        match self.base {
            ProjPoint::Infinity => dt.mul_tpow(&rat_usize(2)).neg(),
            _ => dt,
        }
    }

    /// Antiderivative in t with zero integration constant; errors when a
    /// t^(-1) term is present.
    pub fn antiderivative_t(&self) -> Result<PuiseuxSeries> {
        let minus_one = -Rational::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (k, c) in self.coeffs.iter().enumerate() {
            let e = self.lead.clone()
                + Rational::new(num::BigInt::from(k), num::BigInt::from(self.ram));
            if e == minus_one {
                if !c.is_zero() {
                    return Err(Error::LogarithmRequired);
                }
                coeffs.push(Cyclotomic::zero());
                continue;
            }
            let d = e + Rational::one();
            coeffs.push(c * &Cyclotomic::from_rational(d.recip()));
        }
        Ok(PuiseuxSeries::new(
            self.base.clone(),
            self.lead.clone() + Rational::one(),
            self.ram,
            coeffs,
        ))
    }

    /// exp of a series with strictly positive valuation.
    pub fn exp(&self) -> Result<PuiseuxSeries> {
        if self.coeffs.is_empty() {
            let mut len = ((self.bound()) * rat_usize(self.ram as usize))
                .floor()
                .to_integer()
                .to_usize()
                .unwrap_or(0);
            if len == 0 {
                len = 1;
            }
            return Ok(PuiseuxSeries::new(
                self.base.clone(),
                Rational::zero(),
                self.ram,
                {
                    let mut v = vec![Cyclotomic::zero(); len];
                    v[0] = Cyclotomic::one();
                    v
                },
            ));
        }
        if self.lead <= Rational::zero() {
            return Err(Error::Unsupported(
                "exp needs strictly positive valuation".into(),
            ));
        }
        // assemble g on the integer tau-grid starting at exponent 0
        let ram = self.ram;
        let bound_idx = (self.bound() * rat_usize(ram as usize))
            .to_integer()
            .to_usize()
            .unwrap();
        let off = (self.lead.clone() * rat_usize(ram as usize))
            .to_integer()
            .to_usize()
            .unwrap();
        let mut g = vec![Cyclotomic::zero(); bound_idx];
        for (k, c) in self.coeffs.iter().enumerate() {
            g[off + k] = c.clone();
        }
        // E' = g' E  =>  m E_m = sum_{j=1..m} j g_j E_{m-j}
        let mut e = vec![Cyclotomic::zero(); bound_idx];
        e[0] = Cyclotomic::one();
        for m in 1..bound_idx {
            let mut acc = Cyclotomic::zero();
            for j in 1..=m {
                if g[j].is_zero() || e[m - j].is_zero() {
                    continue;
                }
                let term = &(&g[j] * &e[m - j]) * &Cyclotomic::from_int(j as i64);
                acc = &acc + &term;
            }
            e[m] = &acc * &Cyclotomic::from_rational(Rational::one() / rat_usize(m));
        }
        Ok(PuiseuxSeries::new(self.base.clone(), Rational::zero(), ram, e))
    }

    /// Substitute another series (with valuation exactly 1) for the local
    /// coordinate; `root` selects the ram-th root of phi's leading
    /// coefficient when the series is ramified.
    pub fn compose(
        &self,
        phi: &PuiseuxSeries,
        root: Option<&Cyclotomic>,
    ) -> Result<PuiseuxSeries> {
        if phi.lead != Rational::one() {
            return Err(Error::Unsupported(
                "composition needs a map of valuation one".into(),
            ));
        }
        let psi = phi.pow_rational(1, self.ram, root)?;
        // value = psi^(lead*ram) * sum_k coeffs[k] psi^k (Horner)
        let mut acc = PuiseuxSeries::zero(psi.base().clone(), psi.bound(), psi.ram);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&psi)?.add_const(c);
        }
        let m0 = (self.lead.clone() * rat_usize(self.ram as usize)).to_integer();
        let m0i = m0.to_i64().unwrap();
        let shift = if m0i >= 0 {
            psi.pow_int(m0i as u32)?
        } else {
            psi.inverse()?.pow_int((-m0i) as u32)?
        };
        let out = acc.mul(&shift)?;
        // the result never knows more than the input did
        let self_relative = self.bound() - &self.lead;
        let cap = out.lead.clone().min(self.lead.clone()) + self_relative;
        Ok(out.truncate_to(&cap.min(out.bound())))
    }

    /// True when the two series agree on every coefficient below the smaller bound.
    pub fn agrees_with(&self, rhs: &PuiseuxSeries) -> bool {
        if self.base != rhs.base {
            return false;
        }
        match self.sub(rhs) {
            Ok(d) => d.is_zero_series(),
            Err(_) => false,
        }
    }

    pub fn max_conductor(&self) -> u32 {
        self.coeffs.iter().map(|c| c.conductor()).max().unwrap_or(1)
    }
}

/// A polynomial in the local coordinate, as an exact series up to `bound`.
pub fn poly_series(base: &ProjPoint, p: &Poly, bound: usize) -> PuiseuxSeries {
    let mut coeffs = vec![Cyclotomic::zero(); bound];
    for (k, c) in p.coeffs().iter().enumerate() {
        if k >= bound {
            break;
        }
        coeffs[k] = c.clone();
    }
    PuiseuxSeries::new(base.clone(), Rational::zero(), 1, coeffs)
}

/// Expansion of a rational function at a projective base point, with the
/// requested number of terms past the leading exponent... precisely: the
/// result's bound is at least `order` (absolute exponent).
pub fn expand_ratfunc(f: &RatFunc, base: &ProjPoint, order: i64) -> PuiseuxSeries {
    match base {
        ProjPoint::Infinity => {
            let g = f.invert_variable();
            let mut s = expand_ratfunc(&g, &ProjPoint::zero(), order);
            s = PuiseuxSeries::new(
                ProjPoint::Infinity,
                s.lead.clone(),
                s.ram,
                s.coeffs.clone(),
            );
            s
        }
        ProjPoint::Finite(p) => {
            if f.is_zero() {
                return PuiseuxSeries::zero(
                    base.clone(),
                    Rational::from_integer(num::BigInt::from(order)),
                    1,
                );
            }
            let num_t = f.num().shift(p);
            let den_t = f.den().shift(p);
            let v = den_t.val_at_zero().expect("nonzero denominator") as i64;
            let unit = Poly::new(den_t.coeffs()[v as usize..].to_vec());
            let work = (order + v + 1).max(1) as usize;
            let ns = poly_series(base, &num_t, work + f.num().degree().unwrap_or(0) + 1);
            let us = poly_series(base, &unit, work + unit.degree().unwrap_or(0) + 1)
                .truncate_to(&Rational::from_integer(num::BigInt::from(work as i64)));
            let inv = us.inverse().expect("unit part invertible");
            let prod = ns
                .truncate_to(&Rational::from_integer(num::BigInt::from(work as i64)))
                .mul(&inv)
                .unwrap();
            prod.mul_tpow(&Rational::from_integer(num::BigInt::from(-v)))
        }
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "O(t^({}))", self.bound());
        }
        let mut wrote = false;
        write!(f, "t^({}) * (", self.lead)?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            wrote = true;
            if k == 0 {
                write!(f, "{}", c)?;
            } else {
                let e = Rational::new(num::BigInt::from(k), num::BigInt::from(self.ram));
                if c.is_one() {
                    write!(f, "t^({})", e)?;
                } else {
                    write!(f, "({})*t^({})", c, e)?;
                }
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, ") + O(t^({}))", self.bound())
    }
}

impl fmt::Debug for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn at0() -> ProjPoint {
        ProjPoint::zero()
    }

    fn ints(v: &[i64]) -> Vec<Cyclotomic> {
        v.iter().map(|&n| Cyclotomic::from_int(n)).collect()
    }

    #[test]
    fn one_minus_t_squared() {
        let a = PuiseuxSeries::new(at0(), Rational::zero(), 1, ints(&[1, 1, 0, 0, 0]));
        let b = PuiseuxSeries::new(at0(), Rational::zero(), 1, ints(&[1, -1, 0, 0, 0]));
        let p = a.mul(&b).unwrap();
        assert_eq!(p.coeff_at(&rat(0, 1)).unwrap(), Cyclotomic::one());
        assert_eq!(p.coeff_at(&rat(1, 1)).unwrap(), Cyclotomic::zero());
        assert_eq!(p.coeff_at(&rat(2, 1)).unwrap(), Cyclotomic::from_int(-1));
    }

    #[test]
    fn binomial_sqrt() {
        // (1 - t^4)^(1/2) = 1 - t^4/2 - t^8/8 - ...
        let s = PuiseuxSeries::new(
            at0(),
            Rational::zero(),
            1,
            ints(&[1, 0, 0, 0, -1, 0, 0, 0, 0, 0]),
        );
        let r = s.pow_rational(1, 2, None).unwrap();
        assert_eq!(r.coeff_at(&rat(0, 1)).unwrap(), Cyclotomic::one());
        assert_eq!(
            r.coeff_at(&rat(4, 1)).unwrap(),
            Cyclotomic::from_rational(rat(-1, 2))
        );
        assert_eq!(
            r.coeff_at(&rat(8, 1)).unwrap(),
            Cyclotomic::from_rational(rat(-1, 8))
        );
        // square back
        let sq = r.mul(&r).unwrap();
        assert!(sq.sub(&s).unwrap().is_zero_series());
    }

    #[test]
    fn fractional_derivative() {
        // d/dt t^(3/2) = (3/2) t^(1/2)
        let s = PuiseuxSeries::new(at0(), rat(3, 2), 2, ints(&[1, 0, 0, 0]));
        let d = s.derivative_t();
        assert_eq!(*d.lead_exponent(), rat(1, 2));
        assert_eq!(
            d.leading_coeff().unwrap(),
            &Cyclotomic::from_rational(rat(3, 2))
        );
    }

    #[test]
    fn geometric_inverse() {
        // 1/(1 - t) = 1 + t + t^2 + ...
        let s = PuiseuxSeries::new(at0(), Rational::zero(), 1, ints(&[1, -1, 0, 0, 0, 0]));
        let inv = s.inverse().unwrap();
        for k in 0..5 {
            assert_eq!(inv.coeff_at(&rat(k, 1)).unwrap(), Cyclotomic::one());
        }
    }

    #[test]
    fn exp_series() {
        // exp(t) = sum t^k / k!
        let t = PuiseuxSeries::new(at0(), Rational::one(), 1, ints(&[1, 0, 0, 0, 0, 0]));
        let e = t.exp().unwrap();
        assert_eq!(
            e.coeff_at(&rat(3, 1)).unwrap(),
            Cyclotomic::from_rational(rat(1, 6))
        );
        assert_eq!(
            e.coeff_at(&rat(5, 1)).unwrap(),
            Cyclotomic::from_rational(rat(1, 120))
        );
    }

    #[test]
    fn expand_rational_function() {
        // 1/(1 - z) at 0
        let f = RatFunc::new(Poly::one(), Poly::from_ints(&[1, -1]));
        let s = expand_ratfunc(&f, &at0(), 6);
        for k in 0..5 {
            assert_eq!(s.coeff_at(&rat(k, 1)).unwrap(), Cyclotomic::one());
        }
        // z^2/(z-1) = z + 1 + 1/z + ...: in t = 1/z this is t^(-1)/(1 - t)
        let g = RatFunc::new(Poly::from_ints(&[0, 0, 1]), Poly::from_ints(&[-1, 1]));
        let s = expand_ratfunc(&g, &ProjPoint::Infinity, 4);
        assert_eq!(*s.lead_exponent(), rat(-1, 1));
        assert_eq!(s.coeff_at(&rat(-1, 1)).unwrap(), Cyclotomic::one());
        assert_eq!(s.coeff_at(&rat(0, 1)).unwrap(), Cyclotomic::one());
        assert_eq!(s.coeff_at(&rat(1, 1)).unwrap(), Cyclotomic::one());
    }

    #[test]
    fn antiderivative_and_log_detection() {
        let s = PuiseuxSeries::new(at0(), rat(-1, 1), 1, ints(&[1, 0, 0]));
        assert!(matches!(s.antiderivative_t(), Err(Error::LogarithmRequired)));
        let s = PuiseuxSeries::new(at0(), Rational::zero(), 1, ints(&[1, 1, 1]));
        let a = s.antiderivative_t().unwrap();
        assert_eq!(a.coeff_at(&rat(2, 1)).unwrap(), Cyclotomic::from_rational(rat(1, 2)));
    }

    #[test]
    fn composition_with_negation() {
        // y(t) = t + t^3 composed with phi = -t gives -t - t^3.
        let y = PuiseuxSeries::new(at0(), Rational::one(), 1, ints(&[1, 0, 1, 0, 0]));
        let phi = PuiseuxSeries::new(at0(), Rational::one(), 1, ints(&[-1, 0, 0, 0, 0]));
        let c = y.compose(&phi, None).unwrap();
        assert_eq!(c.coeff_at(&rat(1, 1)).unwrap(), Cyclotomic::from_int(-1));
        assert_eq!(c.coeff_at(&rat(3, 1)).unwrap(), Cyclotomic::from_int(-1));
    }

    #[test]
    fn precision_tracking() {
        let a = PuiseuxSeries::new(at0(), Rational::zero(), 1, ints(&[1, 2])); // O(t^2)
        let b = PuiseuxSeries::new(at0(), Rational::one(), 1, ints(&[1, 0, 0, 0])); // t + O(t^5)
        let p = a.mul(&b).unwrap();
        assert_eq!(p.bound(), rat(3, 1)); // min(2+1, 5+0)
        let s = a.add(&b).unwrap();
        assert_eq!(s.bound(), rat(2, 1));
    }
}
