//! The quadratic function-field extension k(w), w^2 = p(z), with its
//! derivation w' = p'/(2w). Only one modulus is alive at a time per value;
//! mixed-modulus arithmetic is refused.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalars::Cyclotomic;

use super::poly::Poly;
use super::ratfunc::RatFunc;

/// a + b*w over C(z), with w^2 = modulus(z).
#[derive(Clone, PartialEq, Eq)]
pub struct QuadExt {
    pub a: RatFunc,
    pub b: RatFunc,
    modulus: Arc<Poly>,
}

impl QuadExt {
    pub fn new(a: RatFunc, b: RatFunc, modulus: Arc<Poly>) -> Self {
        QuadExt { a, b, modulus }
    }

    pub fn from_ratfunc(a: RatFunc, modulus: Arc<Poly>) -> Self {
        QuadExt { a, b: RatFunc::zero(), modulus }
    }

    pub fn w(modulus: Arc<Poly>) -> Self {
        QuadExt { a: RatFunc::zero(), b: RatFunc::one(), modulus }
    }

    pub fn zero(modulus: Arc<Poly>) -> Self {
        Self::from_ratfunc(RatFunc::zero(), modulus)
    }

    pub fn one(modulus: Arc<Poly>) -> Self {
        Self::from_ratfunc(RatFunc::one(), modulus)
    }

    pub fn modulus(&self) -> &Arc<Poly> {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_ratfunc(&self) -> Option<&RatFunc> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Pure-w part: self = b*w exactly.
    pub fn as_pure_w(&self) -> Option<&RatFunc> {
        if self.a.is_zero() {
            Some(&self.b)
        } else {
            None
        }
    }

    fn check(&self, rhs: &QuadExt) -> Result<()> {
        if self.modulus != rhs.modulus {
            return Err(Error::ModulusMismatch);
        }
        Ok(())
    }

    pub fn add(&self, rhs: &QuadExt) -> Result<QuadExt> {
        self.check(rhs)?;
        Ok(QuadExt::new(self.a.add(&rhs.a), self.b.add(&rhs.b), self.modulus.clone()))
    }

    pub fn sub(&self, rhs: &QuadExt) -> Result<QuadExt> {
        self.check(rhs)?;
        Ok(QuadExt::new(self.a.sub(&rhs.a), self.b.sub(&rhs.b), self.modulus.clone()))
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt::new(self.a.neg(), self.b.neg(), self.modulus.clone())
    }

    pub fn mul(&self, rhs: &QuadExt) -> Result<QuadExt> {
        self.check(rhs)?;
        let p = RatFunc::from_poly((*self.modulus).clone());
        // (a1 + b1 w)(a2 + b2 w) = a1 a2 + b1 b2 p + (a1 b2 + a2 b1) w
        let a = self.a.mul(&rhs.a).add(&self.b.mul(&rhs.b).mul(&p));
        let b = self.a.mul(&rhs.b).add(&self.b.mul(&rhs.a));
        Ok(QuadExt::new(a, b, self.modulus.clone()))
    }

    pub fn scale(&self, c: &Cyclotomic) -> QuadExt {
        QuadExt::new(self.a.scale(c), self.b.scale(c), self.modulus.clone())
    }

    pub fn inv(&self) -> Result<QuadExt> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = RatFunc::from_poly((*self.modulus).clone());
        // 1/(a + bw) = (a - bw)/(a^2 - b^2 p)
        let norm = self.a.mul(&self.a).sub(&self.b.mul(&self.b).mul(&p));
        if norm.is_zero() {
            // only possible when p is a square in C(z); our moduli are squarefree
            return Err(Error::DivisionByZero);
        }
        let ninv = norm.inv()?;
        Ok(QuadExt::new(self.a.mul(&ninv), self.b.neg().mul(&ninv), self.modulus.clone()))
    }

    pub fn div(&self, rhs: &QuadExt) -> Result<QuadExt> {
        self.mul(&rhs.inv()?)
    }

    /// d/dz, extended by w' = p'/(2w) = p' w / (2p).
    pub fn d_dz(&self) -> QuadExt {
        let p = RatFunc::from_poly((*self.modulus).clone());
        let pp = RatFunc::from_poly(self.modulus.derivative());
        // (a + b w)' = a' + (b' + b p'/(2p)) w
        let half = RatFunc::constant(Cyclotomic::from_rational(crate::scalars::rat(1, 2)));
        let b_term = self.b.derivative().add(&self.b.mul(&pp).mul(&half).div(&p).unwrap());
        QuadExt::new(self.a.derivative(), b_term, self.modulus.clone())
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "({})*w", self.b)
        } else {
            write!(f, "{} + ({})*w", self.a, self.b)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// The derivation v = direction * d/dz on k(w).
pub fn derivation(q: &QuadExt, direction: &QuadExt) -> Result<QuadExt> {
    if q.modulus() != direction.modulus() {
        return Err(Error::ModulusMismatch);
    }
    direction.mul(&q.d_dz())
}

/// A field automorphism of k(w) determined by z -> z_image (a Moebius-like
/// rational function) and w -> u(z) * w.
#[derive(Clone)]
pub struct QuadExtMorphism {
    pub z_image: RatFunc,
    pub w_factor: RatFunc,
    modulus: Arc<Poly>,
}

impl QuadExtMorphism {
    /// Validates (u w)^2 = p(z_image), i.e. u^2 p = p ∘ z_image.
    pub fn new(z_image: RatFunc, w_factor: RatFunc, modulus: Arc<Poly>) -> Result<Self> {
        let p = RatFunc::from_poly((*modulus).clone());
        let lhs = w_factor.mul(&w_factor).mul(&p);
        let rhs = p.compose(&z_image);
        if lhs != rhs {
            return Err(Error::Unsupported(format!(
                "w-image inconsistent with the modulus: ({})^2 * p != p({})",
                w_factor, z_image
            )));
        }
        Ok(QuadExtMorphism { z_image, w_factor, modulus })
    }

    pub fn apply(&self, q: &QuadExt) -> Result<QuadExt> {
        if q.modulus() != &self.modulus {
            return Err(Error::ModulusMismatch);
        }
        // a(z) + b(z) w  ->  a(m) + b(m) u w
        let a = q.a.compose(&self.z_image);
        let b = q.b.compose(&self.z_image).mul(&self.w_factor);
        Ok(QuadExt::new(a, b, self.modulus.clone()))
    }

    /// Inverse morphism; z_image must be a Moebius map.
    pub fn invert(&self) -> Result<QuadExtMorphism> {
        let m = super::moebius::MoebiusMap::from_ratfunc(&self.z_image)?;
        let minv = m.invert().as_ratfunc();
        // sigma^{-1}(w) = (1 / u(sigma^{-1} z)) w
        let u_at = self.w_factor.compose(&minv);
        let w_factor = u_at.inv()?;
        QuadExtMorphism::new(minv, w_factor, self.modulus.clone())
    }
}

/// Scale c with sigma_* v = c * v, when the pushforward of the derivation
/// v = direction * d/dz under sigma is again a multiple of v. Verified on the
/// generators z and w; None when the pushforward is not proportional to v.
pub fn pushforward_scale(
    sigma: &QuadExtMorphism,
    direction: &QuadExt,
) -> Result<Option<QuadExt>> {
    let modulus = direction.modulus().clone();
    let inv = sigma.invert()?;
    let z = QuadExt::from_ratfunc(RatFunc::var(), modulus.clone());
    let w = QuadExt::w(modulus.clone());

    let push = |f: &QuadExt| -> Result<QuadExt> {
        let pre = inv.apply(f)?;
        let der = derivation(&pre, direction)?;
        sigma.apply(&der)
    };

    let vz = derivation(&z, direction)?;
    let vw = derivation(&w, direction)?;
    let pz = push(&z)?;
    let pw = push(&w)?;

    if vz.is_zero() {
        return Err(Error::Unsupported("derivation kills z".into()));
    }
    let c = pz.div(&vz)?;
    let check = c.mul(&vw)?;
    if check == pw {
        Ok(Some(c))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn elliptic_modulus() -> Arc<Poly> {
        // w^2 = z^3 - z
        Arc::new(Poly::from_ints(&[0, -1, 0, 1]))
    }

    fn v(modulus: &Arc<Poly>) -> QuadExt {
        // v = 2w d/dz
        QuadExt::new(RatFunc::zero(), RatFunc::from_int(2), modulus.clone())
    }

    #[test]
    fn derivation_on_generators() {
        let m = elliptic_modulus();
        let vdir = v(&m);
        // v(w) = 2w w' = p' = 3z^2 - 1
        let w = QuadExt::w(m.clone());
        let vw = derivation(&w, &vdir).unwrap();
        assert_eq!(
            vw.as_ratfunc().unwrap(),
            &RatFunc::from_poly(Poly::from_ints(&[-1, 0, 3]))
        );
        // v(z) = 2w
        let z = QuadExt::from_ratfunc(RatFunc::var(), m.clone());
        let vz = derivation(&z, &vdir).unwrap();
        assert_eq!(vz.as_pure_w().unwrap(), &RatFunc::from_int(2));
    }

    #[test]
    fn squared_derivative_two_ways() {
        let m = elliptic_modulus();
        let w = QuadExt::w(m.clone());
        let w2 = w.mul(&w).unwrap();
        let lhs = w2.d_dz();
        let rhs = w.d_dz().mul(&w).unwrap().scale(&Cyclotomic::from_int(2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sigma_pushforward_is_minus_i() {
        // sigma: z -> -z, w -> i w on w^2 = z^3 - z gives sigma_* v = -i v.
        let m = elliptic_modulus();
        let i = Cyclotomic::zeta(4).unwrap();
        let sigma = QuadExtMorphism::new(
            RatFunc::from_poly(Poly::new(vec![Cyclotomic::zero(), Cyclotomic::from_int(-1)])),
            RatFunc::constant(i.clone()),
            m.clone(),
        )
        .unwrap();
        let c = pushforward_scale(&sigma, &v(&m)).unwrap().unwrap();
        let expected = QuadExt::from_ratfunc(RatFunc::constant(-&i), m);
        assert_eq!(c, expected);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = elliptic_modulus();
        let q = QuadExt::new(
            RatFunc::new(Poly::from_ints(&[1, 2]), Poly::from_ints(&[0, 0, 1])),
            RatFunc::from_poly(Poly::from_ints(&[3, 0, 1])),
            m,
        );
        let prod = q.mul(&q.inv().unwrap()).unwrap();
        assert!(prod.as_ratfunc().unwrap().is_one());
    }

    #[test]
    fn half_is_exact() {
        assert_eq!(rat(1, 2) + rat(1, 2), rat(1, 1));
    }
}
