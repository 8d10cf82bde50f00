//! Dense univariate polynomials over the cyclotomic field.

use std::fmt;

use crate::scalars::{Cyclotomic, Rational};

/// Coefficients ascending by degree; the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Cyclotomic>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Cyclotomic>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Cyclotomic::one())
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Poly::new(vec![c])
    }

    pub fn var() -> Self {
        Poly::new(vec![Cyclotomic::zero(), Cyclotomic::one()])
    }

    /// c * z^k
    pub fn monomial(c: Cyclotomic, k: usize) -> Self {
        let mut v = vec![Cyclotomic::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&n| Cyclotomic::from_int(n)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Cyclotomic] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Cyclotomic {
        self.coeffs.get(k).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    pub fn leading(&self) -> Option<&Cyclotomic> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => {
                let inv = l.inv().expect("nonzero leading");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Poly {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(&self.coeff(k) + &rhs.coeff(k));
        }
        Poly::new(out)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(&self.coeff(k) - &rhs.coeff(k));
        }
        Poly::new(out)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Cyclotomic::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let t = a * b;
                out[i + j] = &out[i + j] + &t;
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one();
        let mut b = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// Euclidean division: (quotient, remainder).
    pub fn divrem(&self, den: &Poly) -> (Poly, Poly) {
        assert!(!den.is_zero(), "division by zero polynomial");
        if self.coeffs.len() < den.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let dd = den.coeffs.len() - 1;
        let lead_inv = den.leading().unwrap().inv().expect("nonzero leading");
        let mut rem = self.coeffs.clone();
        let dn = rem.len() - 1;
        let mut quot = vec![Cyclotomic::zero(); dn - dd + 1];
        for k in (0..=dn - dd).rev() {
            if rem[k + dd].is_zero() {
                continue;
            }
            let c = &rem[k + dd] * &lead_inv;
            for j in 0..=dd {
                if den.coeffs[j].is_zero() {
                    continue;
                }
                let t = &den.coeffs[j] * &c;
                rem[k + j] = &rem[k + j] - &t;
            }
            quot[k] = c;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact division; None when the remainder is nonzero.
    pub fn exact_div(&self, den: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(den);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, rhs: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            // normalizing each remainder keeps coefficient growth in check
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &Cyclotomic::from_int(k as i64))
            .collect();
        Poly::new(out)
    }

    pub fn eval(&self, x: &Cyclotomic) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Shift the variable: p(z + c).
    pub fn shift(&self, c: &Cyclotomic) -> Poly {
        self.compose(&Poly::new(vec![c.clone(), Cyclotomic::one()]))
    }

    /// Reverse coefficients: z^deg * p(1/z).
    pub fn reverse(&self) -> Poly {
        let mut v = self.coeffs.clone();
        v.reverse();
        Poly::new(v)
    }

    /// Order of vanishing at 0 (number of trailing zero coefficients).
    pub fn val_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Largest conductor appearing among the coefficients.
    pub fn max_conductor(&self) -> u32 {
        self.coeffs.iter().map(|c| c.conductor()).max().unwrap_or(1)
    }

    pub fn all_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_rational())
    }

    pub fn rational_coeffs(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(|c| c.as_rational().cloned()).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if let Some(r) = c.as_rational() {
                if r < &Rational::from_integer(0.into()) {
                    ("-", Cyclotomic::from_rational(-r))
                } else {
                    ("+", c.clone())
                }
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let unit = mag.is_one();
            let simple = mag.is_rational();
            match (k, unit) {
                (0, _) => {
                    if simple {
                        write!(f, "{}", mag)?
                    } else {
                        write!(f, "({})", mag)?
                    }
                }
                (_, true) => {}
                (_, false) => {
                    if simple {
                        write!(f, "{}*", mag)?
                    } else {
                        write!(f, "({})*", mag)?
                    }
                }
            }
            if k == 1 {
                write!(f, "z")?;
            } else if k > 1 {
                write!(f, "z^{}", k)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_roundtrip() {
        let a = Poly::from_ints(&[1, 0, -3, 0, 1]);
        let b = Poly::from_ints(&[-1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
    }

    #[test]
    fn gcd_of_common_factor() {
        let f = Poly::from_ints(&[-1, 1]); // z - 1
        let a = f.mul(&Poly::from_ints(&[1, 1]));
        let b = f.mul(&Poly::from_ints(&[2, 0, 1]));
        assert_eq!(a.gcd(&b), f.monic());
    }

    #[test]
    fn compose_shift() {
        let p = Poly::from_ints(&[0, 0, 1]); // z^2
        let s = p.shift(&Cyclotomic::from_int(1)); // (z+1)^2
        assert_eq!(s, Poly::from_ints(&[1, 2, 1]));
    }
}
