//! Linear differential operators over the rational function field, with the
//! noncommutative composition rule D * f = f' + f * D.

use std::fmt;

use crate::error::{Error, Result};
use crate::funcfield::{Poly, RatFunc, RationalMap};
use crate::scalars::Cyclotomic;

/// Sum a_i D^i with rational-function coefficients, a_n != 0.
#[derive(Clone, PartialEq, Eq)]
pub struct DiffOp {
    coeffs: Vec<RatFunc>, // ascending: a_0 ... a_n
}

impl DiffOp {
    pub fn new(mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        assert!(!coeffs.is_empty(), "empty operator");
        assert!(
            coeffs.len() == 1 || !coeffs.last().unwrap().is_zero(),
            "zero leading coefficient"
        );
        DiffOp { coeffs }
    }

    /// The bare derivation D.
    pub fn derivation() -> Self {
        DiffOp::new(vec![RatFunc::zero(), RatFunc::one()])
    }

    /// D^n.
    pub fn derivation_power(n: usize) -> Self {
        let mut v = vec![RatFunc::zero(); n + 1];
        v[n] = RatFunc::one();
        DiffOp::new(v)
    }

    pub fn multiplication(f: RatFunc) -> Self {
        DiffOp { coeffs: vec![f] }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatFunc {
        self.coeffs.get(i).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, f: &RatFunc) -> DiffOp {
        DiffOp::new(self.coeffs.iter().map(|c| c.mul(f)).collect())
    }

    pub fn add(&self, rhs: &DiffOp) -> DiffOp {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k).add(&rhs.coeff(k)));
        }
        DiffOp::new(out)
    }

    pub fn sub(&self, rhs: &DiffOp) -> DiffOp {
        self.add(&rhs.scale(&RatFunc::from_int(-1)))
    }

    /// Apply to a rational function: sum a_i f^(i).
    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero();
        let mut der = f.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                der = der.derivative();
            }
            if !a.is_zero() {
                acc = acc.add(&a.mul(&der));
            }
        }
        acc
    }

    /// Operator composition: (self ∘ rhs)(y) = self(rhs(y)).
    pub fn compose(&self, rhs: &DiffOp) -> DiffOp {
        // D^i ∘ (b D^j) = sum_k C(i,k) b^(k) D^(i+j-k)
        let mut out = vec![RatFunc::zero(); self.order() + rhs.order() + 1];
        for (j, b) in rhs.coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            // derivatives of b, reused across i
            let mut b_ders = vec![b.clone()];
            for _ in 0..self.order() {
                b_ders.push(b_ders.last().unwrap().derivative());
            }
            for (i, a) in self.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let mut binom = num::BigInt::from(1);
                for k in 0..=i {
                    let c = RatFunc::constant(Cyclotomic::from_rational(
                        num::BigRational::from(binom.clone()),
                    ));
                    let term = a.mul(&c).mul(&b_ders[k]);
                    out[i + j - k] = out[i + j - k].add(&term);
                    // next binomial coefficient C(i, k+1)
                    binom = binom * num::BigInt::from((i - k) as i64)
                        / num::BigInt::from((k + 1) as i64);
                }
            }
        }
        DiffOp::new(out)
    }

    /// Substitute D -> D - g (solutions get multiplied by u with u'/u = g).
    pub fn gauge(&self, g: &RatFunc) -> DiffOp {
        let shifted = DiffOp::new(vec![g.neg(), RatFunc::one()]);
        let mut acc = DiffOp::multiplication(self.coeff(0));
        let mut power = DiffOp::multiplication(RatFunc::one());
        for i in 1..=self.order() {
            power = power.compose(&shifted);
            if !self.coeffs[i].is_zero() {
                acc = acc.add(&power.scale(&self.coeffs[i]));
            }
        }
        acc
    }

    /// Pull back along z = r(x): D_z -> (1/r') D_x, coefficients composed with r.
    pub fn pullback(&self, r: &RationalMap) -> Result<DiffOp> {
        let rp = r.derivative();
        if rp.is_zero() {
            return Err(Error::ConstantMap);
        }
        let t = DiffOp::new(vec![RatFunc::zero(), rp.inv()?]);
        let mut acc = DiffOp::multiplication(self.coeff(0).compose(r.value()));
        let mut power = DiffOp::multiplication(RatFunc::one());
        for i in 1..=self.order() {
            power = power.compose(&t);
            if !self.coeffs[i].is_zero() {
                acc = acc.add(&power.scale(&self.coeffs[i].compose(r.value())));
            }
        }
        Ok(acc)
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> DiffOp {
        let lead = self.coeffs.last().unwrap();
        let inv = lead.inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    /// Canonical form: cleared denominators, content-free polynomial
    /// coefficients, and the leading coefficient of the leading polynomial
    /// normalized to 1. Makes equality-up-to-left-factor a plain comparison.
    pub fn canonical(&self) -> DiffOp {
        // lcm of denominators
        let mut lcm = Poly::one();
        for c in &self.coeffs {
            let g = lcm.gcd(c.den());
            lcm = lcm.mul(&c.den().exact_div(&g).unwrap());
        }
        let mut polys: Vec<Poly> = self
            .coeffs
            .iter()
            .map(|c| c.num().mul(&lcm.exact_div(c.den()).unwrap()))
            .collect();
        // content
        let mut content = Poly::zero();
        for p in &polys {
            if p.is_zero() {
                continue;
            }
            content = if content.is_zero() { p.monic() } else { content.gcd(p) };
        }
        if content.degree().unwrap_or(0) > 0 {
            polys = polys
                .iter()
                .map(|p| if p.is_zero() { Poly::zero() } else { p.exact_div(&content).unwrap() })
                .collect();
        }
        // leading normalization
        let lead = polys.last().unwrap().leading().cloned().unwrap_or_else(Cyclotomic::one);
        let inv = lead.inv().expect("nonzero leading");
        let coeffs = polys.into_iter().map(|p| RatFunc::from_poly(p.scale(&inv))).collect();
        DiffOp::new(coeffs)
    }

    /// Do the two operators agree in canonical form?
    pub fn canonically_equal(&self, rhs: &DiffOp) -> bool {
        self.canonical() == rhs.canonical()
    }

    /// Left factor f with self = f * rhs coefficientwise, when it exists.
    pub fn proportional(&self, rhs: &DiffOp) -> Option<RatFunc> {
        if self.order() != rhs.order() {
            return None;
        }
        let mut factor: Option<RatFunc> = None;
        for (a, b) in self.coeffs.iter().zip(rhs.coeffs.iter()) {
            match (a.is_zero(), b.is_zero()) {
                (true, true) => continue,
                (true, false) | (false, true) => return None,
                (false, false) => {}
            }
            if factor.is_none() {
                factor = Some(a.div(b).unwrap());
            }
        }
        let f = factor?;
        for (a, b) in self.coeffs.iter().zip(rhs.coeffs.iter()) {
            if a.is_zero() {
                continue;
            }
            // cross-multiplied check avoids re-reducing big quotients
            if a != &f.mul(b) {
                return None;
            }
        }
        Some(f)
    }

    /// Gauge factor g with gauge(self, g) = rhs (up to a left factor), when it
    /// exists. The candidate comes from the subleading coefficients of the
    /// monic forms and is then verified.
    pub fn gauge_detect(&self, rhs: &DiffOp) -> Option<RatFunc> {
        let n = self.order();
        if n != rhs.order() || n == 0 {
            return None;
        }
        let a = self.monic();
        let b = rhs.monic();
        let n_rf = RatFunc::from_int(n as i64);
        // monic: subleading of gauge(self, g) is a_{n-1} - n g
        let g = a
            .coeff(n - 1)
            .sub(&b.coeff(n - 1))
            .div(&n_rf)
            .unwrap();
        let gauged = a.gauge(&g);
        if gauged.canonically_equal(&b) {
            Some(g)
        } else {
            None
        }
    }

    pub fn max_conductor(&self) -> u32 {
        self.coeffs.iter().map(|c| c.max_conductor()).max().unwrap_or(1)
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "({})", c)?;
            } else if c.is_one() {
                if i == 1 {
                    write!(f, "D")?;
                } else {
                    write!(f, "D^{}", i)?;
                }
            } else if i == 1 {
                write!(f, "({})*D", c)?;
            } else {
                write!(f, "({})*D^{}", c, i)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::poly::Poly;

    fn d() -> DiffOp {
        DiffOp::derivation()
    }

    fn z() -> RatFunc {
        RatFunc::var()
    }

    #[test]
    fn apply_second_derivative() {
        let l = DiffOp::derivation_power(2);
        let f = RatFunc::from_poly(Poly::from_ints(&[0, 0, 0, 1])); // z^3
        assert_eq!(l.apply(&f), RatFunc::from_poly(Poly::from_ints(&[0, 6])));
    }

    #[test]
    fn apply_kernel_member() {
        // (z D - 1)(z) = z*1 - z = 0
        let l = DiffOp::new(vec![RatFunc::from_int(-1), z()]);
        assert!(l.apply(&z()).is_zero());
    }

    #[test]
    fn compose_commutation_rule() {
        // D ∘ z = z D + 1
        let dz = d().compose(&DiffOp::multiplication(z()));
        let expected = DiffOp::new(vec![RatFunc::one(), z()]);
        assert_eq!(dz, expected);
    }

    #[test]
    fn compose_squares() {
        assert_eq!(d().compose(&d()), DiffOp::derivation_power(2));
    }

    #[test]
    fn compose_first_order_square() {
        // (D - 1/z)^2 = D^2 - (2/z) D + 2/z^2
        let g = RatFunc::new(Poly::one(), Poly::var());
        let l = DiffOp::new(vec![g.neg(), RatFunc::one()]);
        let sq = l.compose(&l);
        let two_over_z = RatFunc::new(Poly::from_ints(&[2]), Poly::var());
        let two_over_z2 = RatFunc::new(Poly::from_ints(&[2]), Poly::from_ints(&[0, 0, 1]));
        let expected = DiffOp::new(vec![two_over_z2, two_over_z.neg(), RatFunc::one()]);
        assert_eq!(sq, expected);
    }

    #[test]
    fn apply_compose_coherence() {
        let l1 = DiffOp::new(vec![z(), RatFunc::one()]);
        let l2 = DiffOp::new(vec![RatFunc::from_int(2), z(), RatFunc::one()]);
        let f = RatFunc::new(Poly::from_ints(&[1, 3]), Poly::from_ints(&[2, 0, 1]));
        let lhs = l1.compose(&l2).apply(&f);
        let rhs = l1.apply(&l2.apply(&f));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn pullback_identity() {
        let l = DiffOp::new(vec![z(), RatFunc::from_int(3), RatFunc::one()]);
        let p = l.pullback(&RationalMap::identity()).unwrap();
        assert!(p.canonically_equal(&l));
    }

    #[test]
    fn pullback_square_map() {
        // D^2 pulled back along z = x^2: solutions {1, x^2}; canonical x D^2 - D.
        let l = DiffOp::derivation_power(2);
        let r = RationalMap::new(RatFunc::from_poly(Poly::from_ints(&[0, 0, 1]))).unwrap();
        let p = l.pullback(&r).unwrap().canonical();
        let expected = DiffOp::new(vec![RatFunc::zero(), RatFunc::from_int(-1), z()]);
        assert_eq!(p, expected.canonical());
        assert!(p.apply(&RatFunc::one()).is_zero());
        assert!(p
            .apply(&RatFunc::from_poly(Poly::from_ints(&[0, 0, 1])))
            .is_zero());
    }

    #[test]
    fn gauge_basics() {
        let g = RatFunc::new(Poly::from_ints(&[1, 2]), Poly::from_ints(&[3, 1]));
        assert_eq!(d().gauge(&g), DiffOp::new(vec![g.neg(), RatFunc::one()]));
        let l = DiffOp::new(vec![z(), RatFunc::from_int(5), RatFunc::one()]);
        assert_eq!(l.gauge(&RatFunc::zero()), l);
    }

    #[test]
    fn gauge_composition_law() {
        let g = RatFunc::new(Poly::one(), Poly::var());
        let h = RatFunc::from_poly(Poly::from_ints(&[0, 2]));
        let l = DiffOp::new(vec![z(), RatFunc::one(), RatFunc::one()]);
        assert_eq!(l.gauge(&g).gauge(&h), l.gauge(&g.add(&h)));
    }

    #[test]
    fn gauge_solutions_multiply() {
        // L = D^2 - 2 D + ... with solution y; gauge by g: u y solves.
        // Use L = D^2 annihilating {1, z}; gauge by g = 1/z means u = z:
        // gauged operator must annihilate z and z^2.
        let g = RatFunc::new(Poly::one(), Poly::var());
        let l = DiffOp::derivation_power(2).gauge(&g);
        assert!(l.apply(&z()).is_zero());
        assert!(l
            .apply(&RatFunc::from_poly(Poly::from_ints(&[0, 0, 1])))
            .is_zero());
    }

    #[test]
    fn proportional_examples() {
        let l1 = DiffOp::new(vec![RatFunc::zero(), RatFunc::zero(), z()]);
        let l2 = DiffOp::derivation_power(2);
        assert_eq!(l1.proportional(&l2), Some(z()));
        let l3 = DiffOp::new(vec![z(), RatFunc::zero(), RatFunc::one()]);
        let z2 = RatFunc::from_poly(Poly::from_ints(&[0, 0, 1]));
        let l4 = DiffOp::new(vec![z2, RatFunc::zero(), RatFunc::one()]);
        assert_eq!(l3.proportional(&l4), None);
    }

    #[test]
    fn gauge_detect_roundtrip() {
        let l = DiffOp::new(vec![z(), RatFunc::from_int(1), RatFunc::one()]);
        assert_eq!(l.gauge_detect(&l), Some(RatFunc::zero()));
        let g = RatFunc::new(Poly::from_ints(&[1, 1]), Poly::from_ints(&[0, 1]));
        let gauged = l.gauge(&g);
        assert_eq!(l.gauge_detect(&gauged), Some(g));
    }

    #[test]
    fn canonical_clears_denominators() {
        // D^2 + (1/z) D: canonical z D^2 + D
        let l = DiffOp::new(vec![
            RatFunc::zero(),
            RatFunc::new(Poly::one(), Poly::var()),
            RatFunc::one(),
        ]);
        let c = l.canonical();
        assert_eq!(
            c,
            DiffOp::new(vec![RatFunc::zero(), RatFunc::one(), z()])
        );
    }
}
