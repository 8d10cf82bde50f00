//! Singular points, the Fuchs regularity test, and indicial exponents.

use std::fmt;

use num::{BigInt, Signed, Zero};

use crate::error::{Error, Result};
use crate::funcfield::factor::{factor, factor_multiplicity, Factor};
use crate::funcfield::{Poly, ProjPoint, RatFunc, RationalMap};
use crate::scalars::{Cyclotomic, Rational};

use super::op::DiffOp;

#[derive(Clone, PartialEq, Eq)]
pub enum Locus {
    Point(ProjPoint),
    /// An unresolved irreducible denominator factor.
    Block(Poly),
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Locus::Point(p) => write!(f, "{}", p),
            Locus::Block(p) => write!(f, "roots of {}", p),
        }
    }
}

impl fmt::Debug for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[derive(Clone)]
pub struct SingularPoint {
    pub locus: Locus,
    pub regular: bool,
    /// Indicial roots, counted with multiplicity; empty when not computed
    /// (blocks, irregular points, irrational exponents).
    pub exponents: Vec<Rational>,
}

impl SingularPoint {
    pub fn point(&self) -> Option<&ProjPoint> {
        match &self.locus {
            Locus::Point(p) => Some(p),
            Locus::Block(_) => None,
        }
    }
}

impl fmt::Debug for SingularPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({}{})",
            self.locus,
            if self.regular { "regular" } else { "irregular" },
            if self.exponents.is_empty() {
                String::new()
            } else {
                format!(
                    ", exponents {}",
                    self.exponents
                        .iter()
                        .map(|e| e.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            }
        )
    }
}

/// All singular points of the operator, infinity included (analyzed through
/// the substitution z = 1/t).
pub fn singular_points(l: &DiffOp) -> Vec<SingularPoint> {
    let lc = l.canonical();
    let mut out = Vec::new();

    let lead = lc.coeffs().last().unwrap().num().clone();
    if !lead.is_constant() {
        let fac = factor(&lead);
        for (f, _) in &fac.factors {
            match f {
                Factor::Linear(root) => {
                    let p = ProjPoint::Finite(root.clone());
                    let regular = is_regular_at_point(&lc, &p);
                    let exponents = if regular {
                        exponents_at(l, &p).unwrap_or_default()
                    } else {
                        Vec::new()
                    };
                    out.push(SingularPoint { locus: Locus::Point(p), regular, exponents });
                }
                Factor::Block(q) => {
                    let regular = is_regular_at_factor(&lc, q);
                    out.push(SingularPoint {
                        locus: Locus::Block(q.clone()),
                        regular,
                        exponents: Vec::new(),
                    });
                }
            }
        }
    }

    // infinity via z = 1/t
    let at_inf = invert_variable_op(l);
    let lc_inf = at_inf.canonical();
    let zero = ProjPoint::zero();
    if point_is_singular(&lc_inf, &zero) {
        let regular = is_regular_at_point(&lc_inf, &zero);
        let exponents = if regular {
            exponents_at(&at_inf, &zero).unwrap_or_default()
        } else {
            Vec::new()
        };
        out.push(SingularPoint {
            locus: Locus::Point(ProjPoint::Infinity),
            regular,
            exponents,
        });
    }

    out.sort_by_key(|sp| match &sp.locus {
        Locus::Point(p) => (0u8, p.sort_key()),
        Locus::Block(q) => (2u8, (0, format!("{}", q))),
    });
    out
}

/// The operator rewritten in the coordinate t = 1/z.
pub fn invert_variable_op(l: &DiffOp) -> DiffOp {
    let inv = RationalMap::new(RatFunc::new(Poly::one(), Poly::var())).unwrap();
    l.pullback(&inv).expect("1/t is non-constant")
}

fn point_is_singular(canonical: &DiffOp, p: &ProjPoint) -> bool {
    let ProjPoint::Finite(c) = p else {
        unreachable!("finite points only")
    };
    canonical
        .coeffs()
        .last()
        .unwrap()
        .num()
        .eval(c)
        .is_zero()
}

fn is_regular_at_point(canonical: &DiffOp, p: &ProjPoint) -> bool {
    let ProjPoint::Finite(c) = p else { return false };
    let lin = Poly::new(vec![-c, Cyclotomic::one()]);
    is_regular_at_factor(canonical, &lin)
}

fn is_regular_at_factor(canonical: &DiffOp, q: &Poly) -> bool {
    let n = canonical.order();
    let lead = canonical.coeffs().last().unwrap().num();
    let m_n = factor_multiplicity(lead, q) as i64;
    for i in 0..n {
        let a = &canonical.coeffs()[i];
        if a.is_zero() {
            continue;
        }
        let m_i = factor_multiplicity(a.num(), q) as i64;
        if m_i - m_n < i as i64 - n as i64 {
            return false;
        }
    }
    true
}

/// The n indicial roots at a regular-singular or ordinary point, as rationals.
pub fn exponents_at(l: &DiffOp, p: &ProjPoint) -> Result<Vec<Rational>> {
    match p {
        ProjPoint::Infinity => exponents_at(&invert_variable_op(l), &ProjPoint::zero()),
        ProjPoint::Finite(c) => {
            let lc = l.canonical();
            let indicial = indicial_polynomial(&lc, c)?;
            rational_roots_with_multiplicity(&indicial)
                .ok_or_else(|| Error::IrrationalExponent(format!("{}", p)))
        }
    }
}

/// Indicial polynomial at a finite point, as a polynomial in the exponent.
fn indicial_polynomial(canonical: &DiffOp, at: &Cyclotomic) -> Result<Poly> {
    let n = canonical.order();
    let lin = Poly::new(vec![-at, Cyclotomic::one()]);
    // strip (z - at)-powers: A_i = lin^{m_i} U_i with U_i(at) != 0
    let strip = |p: &Poly| -> (i64, Cyclotomic) {
        let mut w = p.clone();
        let mut m = 0i64;
        loop {
            match w.exact_div(&lin) {
                Some(next) if !w.is_zero() => {
                    w = next;
                    m += 1;
                }
                _ => break,
            }
        }
        (m, w.eval(at))
    };
    let lead = canonical.coeffs().last().unwrap().num();
    let (m_n, u_n) = strip(lead);
    let mut indicial = Poly::zero();
    for i in 0..=n {
        let a = &canonical.coeffs()[i];
        if a.is_zero() {
            continue;
        }
        let (m_i, u_i) = strip(a.num());
        let v = m_i - m_n; // ord of a_i/a_n
        let want = i as i64 - n as i64;
        if v < want {
            return Err(Error::IrregularSingularity(format!("{}", at)));
        }
        if v == want {
            let c = u_i.checked_div(&u_n).unwrap();
            indicial = indicial.add(&falling_factorial(i).scale(&c));
        }
    }
    Ok(indicial)
}

/// lambda (lambda-1) ... (lambda-i+1) as a polynomial in lambda.
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

/// All roots of a cyclotomic-coefficient polynomial when they are rational,
/// with multiplicity; None when any root is irrational.
pub fn rational_roots_with_multiplicity(p: &Poly) -> Option<Vec<Rational>> {
    if p.is_zero() {
        return None;
    }
    let deg = p.degree().unwrap_or(0);
    if deg == 0 {
        return Some(Vec::new());
    }
    let candidates = rational_root_candidates(p)?;
    let mut roots = Vec::new();
    let mut work = p.monic();
    'outer: while work.degree().unwrap_or(0) > 0 {
        for r in &candidates {
            let c = Cyclotomic::from_rational(r.clone());
            if work.eval(&c).is_zero() {
                let lin = Poly::new(vec![-&c, Cyclotomic::one()]);
                work = work.exact_div(&lin).unwrap();
                roots.push(r.clone());
                continue 'outer;
            }
        }
        return None; // leftover factor has no rational root
    }
    roots.sort();
    Some(roots)
}

/// Rational-root candidates: from the polynomial itself when its coefficients
/// are rational, otherwise from its first nonzero coordinate polynomial on the
/// cyclotomic power basis (any rational root kills every coordinate).
fn rational_root_candidates(p: &Poly) -> Option<Vec<Rational>> {
    let coord_poly: Vec<Rational> = if let Some(c) = p.rational_coeffs() {
        c
    } else {
        let n = p.max_conductor();
        let lifted: Vec<Vec<Rational>> = p
            .coeffs()
            .iter()
            .map(|c| c.lift(n).unwrap().coords().to_vec())
            .collect();
        let width = lifted.iter().map(|v| v.len()).max().unwrap_or(1);
        let mut chosen: Option<Vec<Rational>> = None;
        for idx in 0..width {
            let cand: Vec<Rational> = lifted
                .iter()
                .map(|v| v.get(idx).cloned().unwrap_or_else(Rational::zero))
                .collect();
            if cand.iter().any(|c| !c.is_zero()) {
                chosen = Some(cand);
                break;
            }
        }
        chosen?
    };
    // clear to integers
    let mut lcm = BigInt::from(1);
    for c in &coord_poly {
        let d = c.denom();
        let g = num::Integer::gcd(&lcm, d);
        lcm = &lcm / &g * d;
    }
    let ints: Vec<BigInt> = coord_poly.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let nz_low = ints.iter().position(|c| !c.is_zero())?;
    let a0 = ints[nz_low].clone();
    let an = ints.iter().rev().find(|c| !c.is_zero())?.clone();
    let ps = crate::funcfield::factor_divisors(&a0.abs())?;
    let qs = crate::funcfield::factor_divisors(&an.abs())?;
    let mut out = vec![Rational::zero()];
    for pn in &ps {
        for qd in &qs {
            out.push(Rational::new(pn.clone(), qd.clone()));
            out.push(Rational::new(-pn.clone(), qd.clone()));
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn bare_second_derivative_singular_only_at_infinity() {
        let l = DiffOp::derivation_power(2);
        let sp = singular_points(&l);
        assert_eq!(sp.len(), 1);
        assert_eq!(sp[0].locus, Locus::Point(ProjPoint::Infinity));
        assert!(sp[0].regular);
        assert_eq!(sp[0].exponents, vec![rat(-1, 1), rat(0, 1)]);
    }

    #[test]
    fn ordinary_point_exponents() {
        let l = DiffOp::new(vec![
            RatFunc::from_poly(Poly::from_ints(&[1, 2])),
            RatFunc::one(),
            RatFunc::one(),
            RatFunc::one(),
        ]);
        let e = exponents_at(&l, &ProjPoint::from_int(3)).unwrap();
        assert_eq!(e, vec![rat(0, 1), rat(1, 1), rat(2, 1)]);
    }

    #[test]
    fn euler_operator_exponents() {
        // z^2 D^2 + z D - 1: exponents at 0 are +-1.
        let z2 = RatFunc::from_poly(Poly::from_ints(&[0, 0, 1]));
        let z = RatFunc::var();
        let l = DiffOp::new(vec![RatFunc::from_int(-1), z, z2]);
        let e = exponents_at(&l, &ProjPoint::zero()).unwrap();
        assert_eq!(e, vec![rat(-1, 1), rat(1, 1)]);
    }

    #[test]
    fn irregular_detection() {
        // z^3 y'' + y = 0 is irregular at 0.
        let z3 = RatFunc::from_poly(Poly::from_ints(&[0, 0, 0, 1]));
        let l = DiffOp::new(vec![RatFunc::one(), RatFunc::zero(), z3]);
        let sp = singular_points(&l);
        let origin = sp
            .iter()
            .find(|s| matches!(&s.locus, Locus::Point(p) if *p == ProjPoint::zero()))
            .unwrap();
        assert!(!origin.regular);
        assert!(exponents_at(&l, &ProjPoint::zero()).is_err());
    }
}
