//! Local series solutions: ordinary bases with unit-triangular initial
//! conditions and Frobenius solutions at regular singular points.

use num::{BigInt, ToPrimitive, Zero};

use crate::diffop::{invert_variable_op, DiffOp};
use crate::error::{Error, Result};
use crate::funcfield::{Poly, ProjPoint, RatFunc};
use crate::scalars::{Cyclotomic, Rational};

use super::puiseux::{expand_ratfunc, PuiseuxSeries};

/// The operator rewritten around a point: polynomial coefficients in the
/// local coordinate, organized by exponent shift: L(t^s) = sum_d Q_d(s) t^(s+d).
pub struct LocalOperator {
    base: ProjPoint,
    order: usize,
    /// shifts[k] = Q_{d_min + k}(s), indexed relative to the minimal shift.
    shifts: Vec<Poly>,
}

impl LocalOperator {
    pub fn at(l: &DiffOp, p: &ProjPoint) -> Result<LocalOperator> {
        let (local, polys): (ProjPoint, Vec<Poly>) = match p {
            ProjPoint::Infinity => {
                let li = invert_variable_op(l).canonical();
                let polys = li.coeffs().iter().map(|c| c.num().clone()).collect();
                (ProjPoint::Infinity, polys)
            }
            ProjPoint::Finite(c) => {
                let lc = l.canonical();
                let polys = lc.coeffs().iter().map(|a| a.num().shift(c)).collect();
                (p.clone(), polys)
            }
        };
        let n = polys.len() - 1;
        // assemble Q_d(s) = sum_i coeff(A_i, i + d) * fall(s, i)
        let mut d_min = i64::MAX;
        let mut d_max = i64::MIN;
        for (i, a) in polys.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let lo = a.val_at_zero().unwrap() as i64 - i as i64;
            let hi = a.degree().unwrap() as i64 - i as i64;
            d_min = d_min.min(lo);
            d_max = d_max.max(hi);
        }
        if d_min > d_max {
            return Err(Error::DomainMismatch("zero operator".into()));
        }
        let falls: Vec<Poly> = (0..=n).map(falling_factorial).collect();
        let mut shifts = vec![Poly::zero(); (d_max - d_min + 1) as usize];
        for (i, a) in polys.iter().enumerate() {
            for (j, c) in a.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let d = j as i64 - i as i64;
                let idx = (d - d_min) as usize;
                shifts[idx] = shifts[idx].add(&falls[i].scale(c));
            }
        }
        // trim empty leading shifts
        while shifts.first().is_some_and(|q| q.is_zero()) {
            shifts.remove(0);
            d_min += 1;
        }
        let _ = d_min;
        Ok(LocalOperator { base: local, order: n, shifts })
    }

    pub fn indicial(&self) -> &Poly {
        &self.shifts[0]
    }

    pub fn is_regular(&self) -> bool {
        self.indicial().degree().unwrap_or(0) == self.order
    }

    /// One Frobenius solution t^e (1 + ...) with K retained integer steps.
    /// Free coefficients at resonances are set to zero.
    pub fn frobenius(&self, e: &Rational, terms: usize) -> Result<PuiseuxSeries> {
        if !self.is_regular() {
            return Err(Error::IrregularSingularity(format!("{}", self.base)));
        }
        let ind = self.indicial();
        let e_c = Cyclotomic::from_rational(e.clone());
        if !ind.eval(&e_c).is_zero() {
            return Err(Error::Unsupported(format!(
                "{} is not an indicial root at {}",
                e, self.base
            )));
        }
        let mut c: Vec<Cyclotomic> = Vec::with_capacity(terms);
        c.push(Cyclotomic::one());
        for k in 1..terms {
            let mut rhs = Cyclotomic::zero();
            for (di, q) in self.shifts.iter().enumerate().skip(1) {
                if di as i64 > k as i64 {
                    break;
                }
                let j = k - di;
                if c[j].is_zero() || q.is_zero() {
                    continue;
                }
                let s = Cyclotomic::from_rational(
                    e.clone() + Rational::from_integer(BigInt::from(j)),
                );
                let t = &q.eval(&s) * &c[j];
                rhs = &rhs + &t;
            }
            let s = Cyclotomic::from_rational(e.clone() + Rational::from_integer(BigInt::from(k)));
            let denom = ind.eval(&s);
            if denom.is_zero() {
                if rhs.is_zero() {
                    c.push(Cyclotomic::zero());
                    continue;
                }
                return Err(Error::ResonanceObstruction(format!(
                    "{}",
                    e.clone() + Rational::from_integer(BigInt::from(k))
                )));
            }
            c.push(-&rhs.checked_div(&denom).unwrap());
        }
        let ram = e.denom().to_u32().unwrap_or(1).max(1);
        if ram == 1 {
            Ok(PuiseuxSeries::new(self.base.clone(), e.clone(), 1, c))
        } else {
            let mut coeffs = vec![Cyclotomic::zero(); terms * ram as usize];
            for (k, v) in c.into_iter().enumerate() {
                coeffs[k * ram as usize] = v;
            }
            Ok(PuiseuxSeries::new(self.base.clone(), e.clone(), ram, coeffs))
        }
    }
}

/// lambda (lambda-1) ... (lambda-i+1).
fn falling_factorial(i: usize) -> Poly {
    let mut p = Poly::one();
    for k in 0..i {
        p = p.mul(&Poly::new(vec![
            Cyclotomic::from_int(-(k as i64)),
            Cyclotomic::one(),
        ]));
    }
    p
}

/// Frobenius solution of L at p with exponent e, K retained steps.
pub fn frobenius(l: &DiffOp, p: &ProjPoint, e: &Rational, k: usize) -> Result<PuiseuxSeries> {
    LocalOperator::at(l, p)?.frobenius(e, k)
}

/// Ordinary-point solution basis with unit-triangular initial conditions:
/// solution j has leading term t^(j-1) and zero coefficients below t^n
/// elsewhere. Each series carries K retained steps.
pub fn ordinary_basis_solutions(
    l: &DiffOp,
    p: &ProjPoint,
    k: usize,
) -> Result<Vec<PuiseuxSeries>> {
    let local = LocalOperator::at(l, p)?;
    // ordinary <=> indicial polynomial is exactly fall(s, n)
    let n = local.order;
    if !local.is_regular() || local.indicial().monic() != falling_factorial(n) {
        return Err(Error::SingularBasePoint);
    }
    // additionally the point must not be singular at all: the indicial test
    // above can pass at a genuine singularity only with exponents 0..n-1,
    // in which case frobenius recursions below still build a valid basis
    // whenever no obstruction occurs; a true obstruction surfaces as an error.
    (0..n)
        .map(|j| local.frobenius(&Rational::from_integer(BigInt::from(j)), k))
        .collect()
}

/// Apply an operator to a series by expanding its coefficients at the base
/// point; this is the residual oracle, independent of the solver recursion.
pub fn apply_to_series(l: &DiffOp, y: &PuiseuxSeries) -> PuiseuxSeries {
    let base = y.base().clone();
    let mut der = y.clone();
    let mut acc: Option<PuiseuxSeries> = None;
    // generous expansion order for the exact rational coefficients
    let y_bound_ceil = y.bound().ceil().to_integer().to_i64().unwrap_or(0);
    let y_lead_floor = y
        .lead_exponent()
        .floor()
        .to_integer()
        .to_i64()
        .unwrap_or(0)
        .min(0);
    let order = y_bound_ceil + y_lead_floor.abs() + l.order() as i64 + 8;
    for (i, a) in l.coeffs().iter().enumerate() {
        if i > 0 {
            der = der.derivative_z();
        }
        if a.is_zero() {
            continue;
        }
        let a_s = expand_ratfunc(a, &base, order);
        let term = a_s.mul(&der).unwrap();
        acc = Some(match acc {
            None => term,
            Some(s) => s.add(&term).unwrap(),
        });
    }
    acc.unwrap_or_else(|| PuiseuxSeries::zero(base, Rational::zero(), 1))
}

/// Minimal residual bound the caller may demand after applying an order-n
/// operator to a series of the given bound.
pub fn residual_target(y: &PuiseuxSeries, l: &DiffOp) -> Rational {
    y.bound() - Rational::from_integer(BigInt::from(l.order() as i64))
}

/// Check L(y) = 0 to at least the stated exponent.
pub fn is_solution_to(l: &DiffOp, y: &PuiseuxSeries, to: &Rational) -> bool {
    let r = apply_to_series(l, y);
    r.is_zero_series() && r.bound() >= *to
}

/// Expand a rational function with explicit positive valuation requirement
/// removed; small convenience used by scenario code.
pub fn ratfunc_series(f: &RatFunc, base: &ProjPoint, order: i64) -> PuiseuxSeries {
    expand_ratfunc(f, base, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn basis_of_second_derivative() {
        let l = DiffOp::derivation_power(2);
        let sols = ordinary_basis_solutions(&l, &ProjPoint::zero(), 5).unwrap();
        assert_eq!(sols.len(), 2);
        // {1, t}
        assert_eq!(sols[0].coeff_at(&rat(0, 1)).unwrap(), Cyclotomic::one());
        for k in 1..5 {
            assert!(sols[0].coeff_at(&rat(k, 1)).unwrap().is_zero());
        }
        assert_eq!(*sols[1].lead_exponent(), rat(1, 1));
        assert_eq!(sols[1].coeff_at(&rat(1, 1)).unwrap(), Cyclotomic::one());
    }

    #[test]
    fn airy_recursion_and_residual() {
        // y'' = z y
        let l = DiffOp::new(vec![RatFunc::var().neg(), RatFunc::zero(), RatFunc::one()]);
        let sols = ordinary_basis_solutions(&l, &ProjPoint::zero(), 24).unwrap();
        for y in &sols {
            let r = apply_to_series(&l, y);
            assert!(r.is_zero_series(), "residual {:?}", r);
            assert!(r.bound() >= rat(20, 1));
        }
        // Airy series: y1 = 1 + z^3/6 + ...
        assert_eq!(
            sols[0].coeff_at(&rat(3, 1)).unwrap(),
            Cyclotomic::from_rational(rat(1, 6))
        );
    }

    #[test]
    fn frobenius_constant_solution() {
        // z y'' = 0 at 0 with exponent 0 -> the constant series 1.
        let l = DiffOp::new(vec![RatFunc::zero(), RatFunc::zero(), RatFunc::var()]);
        let s = frobenius(&l, &ProjPoint::zero(), &rat(0, 1), 5).unwrap();
        assert_eq!(s.coeff_at(&rat(0, 1)).unwrap(), Cyclotomic::one());
        for k in 1..5 {
            assert!(s.coeff_at(&rat(k, 1)).unwrap().is_zero());
        }
    }

    #[test]
    fn frobenius_half_exponent() {
        // Euler operator with exponents 1/2, -1/2: 4z^2 y'' + 4z y' - y = 0.
        let z2 = RatFunc::from_poly(Poly::from_ints(&[0, 0, 4]));
        let z1 = RatFunc::from_poly(Poly::from_ints(&[0, 4]));
        let l = DiffOp::new(vec![RatFunc::from_int(-1), z1, z2]);
        let s = frobenius(&l, &ProjPoint::zero(), &rat(1, 2), 6).unwrap();
        assert_eq!(*s.lead_exponent(), rat(1, 2));
        let r = apply_to_series(&l, &s);
        assert!(r.is_zero_series());
    }

    #[test]
    fn singular_base_rejected() {
        // z D - 1 annihilates z; 0 is regular singular with exponent 1.
        let l = DiffOp::new(vec![RatFunc::from_int(-1), RatFunc::var()]);
        assert!(matches!(
            ordinary_basis_solutions(&l, &ProjPoint::zero(), 5),
            Err(Error::SingularBasePoint)
        ));
    }

    #[test]
    fn irregular_rejected() {
        // z^3 y'' + y = 0 at 0 is irregular.
        let z3 = RatFunc::from_poly(Poly::from_ints(&[0, 0, 0, 1]));
        let l = DiffOp::new(vec![RatFunc::one(), RatFunc::zero(), z3]);
        assert!(frobenius(&l, &ProjPoint::zero(), &rat(0, 1), 5).is_err());
    }
}
