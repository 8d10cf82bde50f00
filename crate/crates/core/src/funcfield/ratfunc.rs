//! Rational functions over the cyclotomic field, kept in reduced form
//! (monic denominator, coprime with the numerator).

use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{Cyclotomic, Rational};

use super::factor::{factor, Factor};
use super::point::ProjPoint;
use super::poly::Poly;

#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

/// Value of a rational function at a projective point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Finite(Cyclotomic),
    Infinite,
}

impl Value {
    pub fn finite(&self) -> Option<&Cyclotomic> {
        match self {
            Value::Finite(c) => Some(c),
            Value::Infinite => None,
        }
    }

    pub fn to_point(&self) -> ProjPoint {
        match self {
            Value::Finite(c) => ProjPoint::Finite(c.clone()),
            Value::Infinite => ProjPoint::Infinity,
        }
    }
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut rf = RatFunc { num, den };
        rf.reduce();
        rf
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Cyclotomic::from_int(n))
    }

    pub fn var() -> Self {
        Self::from_poly(Poly::var())
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_constant() && self.num == Poly::one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Cyclotomic> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        // Cancel powers of z first, they are ubiquitous and cheap.
        let vn = self.num.val_at_zero().unwrap_or(0);
        let vd = self.den.val_at_zero().unwrap_or(0);
        let v = vn.min(vd);
        if v > 0 {
            self.num = Poly::new(self.num.coeffs()[v..].to_vec());
            self.den = Poly::new(self.den.coeffs()[v..].to_vec());
        }
        if !self.den.is_constant() {
            let fac = factor(&self.den);
            let mut had_block = false;
            let mut new_den = Poly::constant(fac.unit.clone());
            for (f, mult) in &fac.factors {
                let q = match f {
                    Factor::Linear(r) => Poly::new(vec![-r, Cyclotomic::one()]),
                    Factor::Block(p) => {
                        had_block = true;
                        p.clone()
                    }
                };
                let mut remaining = *mult;
                while remaining > 0 {
                    if let Some(qt) = self.num.exact_div(&q) {
                        self.num = qt;
                        remaining -= 1;
                    } else {
                        break;
                    }
                }
                if remaining > 0 {
                    new_den = new_den.mul(&q.pow(remaining));
                }
            }
            self.den = new_den;
            if had_block && !self.den.is_constant() {
                // A block may share only part of its content with the numerator.
                let g = self.num.gcd(&self.den);
                if g.degree().unwrap_or(0) > 0 {
                    self.num = self.num.exact_div(&g).unwrap();
                    self.den = self.den.exact_div(&g).unwrap();
                }
            }
        }
        // Monic denominator.
        if let Some(l) = self.den.leading() {
            if !l.is_one() {
                let inv = l.inv().expect("nonzero leading");
                self.num = self.num.scale(&inv);
                self.den = self.den.scale(&inv);
            }
        }
    }

    pub fn add(&self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn sub(&self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(
            self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    pub fn div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::new(self.num.mul(&rhs.den), self.den.mul(&rhs.num)))
    }

    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::one().div(self)
    }

    pub fn scale(&self, c: &Cyclotomic) -> RatFunc {
        RatFunc::new(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, e: i64) -> Result<RatFunc> {
        if e == 0 {
            return Ok(RatFunc::one());
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFunc::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// d/dz by the quotient rule.
    pub fn derivative(&self) -> RatFunc {
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        RatFunc::new(n, self.den.mul(&self.den))
    }

    /// Substitute g for the variable.
    pub fn compose(&self, g: &RatFunc) -> RatFunc {
        let eval_poly = |p: &Poly| -> RatFunc {
            let mut acc = RatFunc::zero();
            for c in p.coeffs().iter().rev() {
                acc = acc.mul(g).add(&RatFunc::constant(c.clone()));
            }
            acc
        };
        let n = eval_poly(&self.num);
        let d = eval_poly(&self.den);
        n.div(&d).expect("composition denominator vanished identically")
    }

    /// Evaluate at a projective point; the infinite value is a legal result.
    pub fn eval_at(&self, p: &ProjPoint) -> Value {
        match p {
            ProjPoint::Finite(c) => {
                let dv = self.den.eval(c);
                if dv.is_zero() {
                    // reduced form: numerator cannot vanish simultaneously
                    Value::Infinite
                } else {
                    Value::Finite(self.num.eval(c).checked_div(&dv).unwrap())
                }
            }
            ProjPoint::Infinity => {
                let dn = self.num.degree();
                let dd = self.den.degree();
                match (dn, dd) {
                    (None, _) => Value::Finite(Cyclotomic::zero()),
                    (Some(a), Some(b)) if a < b => Value::Finite(Cyclotomic::zero()),
                    (Some(a), Some(b)) if a == b => Value::Finite(
                        self.num
                            .leading()
                            .unwrap()
                            .checked_div(self.den.leading().unwrap())
                            .unwrap(),
                    ),
                    _ => Value::Infinite,
                }
            }
        }
    }

    /// Order of vanishing at a projective point (negative at poles).
    pub fn ord_at(&self, p: &ProjPoint) -> i64 {
        if self.is_zero() {
            return i64::MAX;
        }
        match p {
            ProjPoint::Finite(c) => {
                let lin = Poly::new(vec![-c, Cyclotomic::one()]);
                self.ord_at_factor(&lin)
            }
            ProjPoint::Infinity => {
                (self.den.degree().unwrap_or(0) as i64) - (self.num.degree().unwrap_or(0) as i64)
            }
        }
    }

    /// Order of vanishing along an irreducible monic factor q.
    pub fn ord_at_factor(&self, q: &Poly) -> i64 {
        if self.is_zero() {
            return i64::MAX;
        }
        let vn = super::factor::factor_multiplicity(&self.num, q) as i64;
        if vn > 0 {
            return vn;
        }
        -(super::factor::factor_multiplicity(&self.den, q) as i64)
    }

    /// Substitute z -> 1/z (for analysis at infinity).
    pub fn invert_variable(&self) -> RatFunc {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let d = dn.max(dd);
        // f(1/z) = z^(d-dn) rev(num) / (z^(d-dd) rev(den))
        let n = self.num.reverse().mul(&Poly::monomial(Cyclotomic::one(), d - dn));
        let de = self.den.reverse().mul(&Poly::monomial(Cyclotomic::one(), d - dd));
        RatFunc::new(n, de)
    }

    pub fn max_conductor(&self) -> u32 {
        self.num.max_conductor().max(self.den.max_conductor())
    }

    pub fn all_rational(&self) -> bool {
        self.num.all_rational() && self.den.all_rational()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Build a rational function from rational coefficient lists (ascending).
pub fn ratfunc_from_rationals(num: &[Rational], den: &[Rational]) -> RatFunc {
    let n = Poly::new(num.iter().map(|r| Cyclotomic::from_rational(r.clone())).collect());
    let d = Poly::new(den.iter().map(|r| Cyclotomic::from_rational(r.clone())).collect());
    RatFunc::new(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zm1_over_zm1() -> RatFunc {
        // (z^2 - 1)/(z - 1)
        RatFunc::new(Poly::from_ints(&[-1, 0, 1]), Poly::from_ints(&[-1, 1]))
    }

    #[test]
    fn normalizes() {
        assert_eq!(zm1_over_zm1(), RatFunc::from_poly(Poly::from_ints(&[1, 1])));
    }

    #[test]
    fn derivative_of_quartic() {
        let f = RatFunc::from_poly(Poly::from_ints(&[-1, 0, 0, 0, 1]));
        assert_eq!(f.derivative(), RatFunc::from_poly(Poly::from_ints(&[0, 0, 0, 4])));
    }

    #[test]
    fn compose_inverse_square() {
        let f = RatFunc::new(Poly::one(), Poly::var()); // 1/z
        let g = RatFunc::from_poly(Poly::from_ints(&[0, 0, 1])); // z^2
        let h = f.compose(&g);
        assert_eq!(h, RatFunc::new(Poly::one(), Poly::from_ints(&[0, 0, 1])));
    }

    #[test]
    fn eval_at_points() {
        let f = RatFunc::new(Poly::from_ints(&[1, 1]), Poly::from_ints(&[-1, 1])); // (z+1)/(z-1)
        assert_eq!(
            f.eval_at(&ProjPoint::Infinity),
            Value::Finite(Cyclotomic::one())
        );
        assert_eq!(f.eval_at(&ProjPoint::from_int(1)), Value::Infinite);
        assert_eq!(
            f.eval_at(&ProjPoint::zero()),
            Value::Finite(Cyclotomic::from_int(-1))
        );
    }

    #[test]
    fn ord_and_inversion() {
        let f = RatFunc::new(Poly::from_ints(&[0, 0, 1]), Poly::from_ints(&[-1, 1])); // z^2/(z-1)
        assert_eq!(f.ord_at(&ProjPoint::zero()), 2);
        assert_eq!(f.ord_at(&ProjPoint::from_int(1)), -1);
        assert_eq!(f.ord_at(&ProjPoint::Infinity), -1);
        let g = f.invert_variable(); // (1/z^2)/( (1-z)/z ) = 1/(z(1-z))... checked via ord
        assert_eq!(g.ord_at(&ProjPoint::zero()), -1);
    }

    #[test]
    fn leibniz_spot() {
        let f = RatFunc::new(Poly::from_ints(&[1, 2]), Poly::from_ints(&[3, 0, 1]));
        let g = RatFunc::new(Poly::from_ints(&[0, 1, 5]), Poly::from_ints(&[-2, 1]));
        let lhs = f.mul(&g).derivative();
        let rhs = f.derivative().mul(&g).add(&f.mul(&g.derivative()));
        assert_eq!(lhs, rhs);
    }
}
