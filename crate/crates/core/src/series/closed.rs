//! Closed-form series: products of rational functions raised to rational
//! powers times the exponential of an antiderivative.

use num::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::funcfield::{ProjPoint, QuadExt, RatFunc};
use crate::scalars::{Cyclotomic, Rational};

use super::puiseux::{expand_ratfunc, poly_series, PuiseuxSeries};

/// One fractional-power atom: base^(num/den), with an optional explicit
/// den-th root of the base's leading series coefficient (the branch choice).
#[derive(Clone)]
pub struct PowerAtom {
    pub base: RatFunc,
    pub num: i64,
    pub den: u32,
    pub branch: Option<Cyclotomic>,
}

impl PowerAtom {
    pub fn eval(&self, at: &ProjPoint, order: i64) -> Result<PuiseuxSeries> {
        let s = expand_ratfunc(&self.base, at, order);
        s.pow_rational(self.num, self.den, self.branch.as_ref())
    }
}

/// The integrand of the exponential part.
#[derive(Clone)]
pub enum Integrand {
    Rational(RatFunc),
    /// scale * base^(num/den)
    Power {
        scale: Cyclotomic,
        atom: PowerAtom,
    },
    /// a(z) + b(z) w expanded with a chosen square root of the modulus series.
    Quad {
        value: QuadExt,
        w_branch: Option<Cyclotomic>,
    },
}

impl Integrand {
    fn eval(&self, at: &ProjPoint, order: i64) -> Result<PuiseuxSeries> {
        match self {
            Integrand::Rational(f) => Ok(expand_ratfunc(f, at, order)),
            Integrand::Power { scale, atom } => Ok(atom.eval(at, order)?.scale(scale)),
            Integrand::Quad { value, w_branch } => {
                let a = expand_ratfunc(&value.a, at, order);
                if value.b.is_zero() {
                    return Ok(a);
                }
                let p = RatFunc::from_poly((**value.modulus()).clone());
                let ps = expand_ratfunc(&p, at, order);
                let w = ps.pow_rational(1, 2, w_branch.as_ref())?;
                let b = expand_ratfunc(&value.b, at, order);
                a.add(&b.mul(&w)?)
            }
        }
    }
}

/// recipe = prod atoms * exp(integral of the integrand), expanded at a point.
#[derive(Clone, Default)]
pub struct Recipe {
    pub factors: Vec<PowerAtom>,
    pub exp_integrand: Option<Integrand>,
}

/// Expand a closed form at the given point; `order` is the absolute exponent
/// bound requested for the intermediate expansions.
pub fn closed_form_series(
    recipe: &Recipe,
    at: &ProjPoint,
    order: i64,
) -> Result<PuiseuxSeries> {
    let mut acc: Option<PuiseuxSeries> = None;
    for atom in &recipe.factors {
        let s = atom.eval(at, order)?;
        acc = Some(match acc {
            None => s,
            Some(a) => a.mul(&s)?,
        });
    }
    if let Some(integrand) = &recipe.exp_integrand {
        let g = integrand.eval(at, order)?;
        let anti = g.antiderivative_t()?;
        if anti.lead_exponent() <= &Rational::zero() && !anti.is_zero_series() {
            return Err(Error::Unsupported(
                "antiderivative has nonpositive valuation; exponential part is not a power series"
                    .into(),
            ));
        }
        let e = anti.exp()?;
        acc = Some(match acc {
            None => e,
            Some(a) => a.mul(&e)?,
        });
    }
    acc.ok_or_else(|| Error::Unsupported("empty closed-form recipe".into()))
}

/// Expand sqrt of a polynomial's series, for quadratic-extension data.
pub fn sqrt_poly_series(
    p: &crate::funcfield::Poly,
    at: &ProjPoint,
    order: i64,
    branch: Option<&Cyclotomic>,
) -> Result<PuiseuxSeries> {
    let s = poly_series(at, p, order.max(1) as usize);
    let shifted = match at {
        ProjPoint::Finite(c) if !c.is_zero() => poly_series(at, &p.shift(c), order.max(1) as usize),
        ProjPoint::Infinity => {
            let f = RatFunc::from_poly(p.clone());
            expand_ratfunc(&f, at, order)
        }
        _ => s,
    };
    shifted.pow_rational(1, 2, branch)
}

/// Requested order helper: smallest i64 at or above the rational.
pub fn order_ceil(r: &Rational) -> i64 {
    r.ceil().to_integer().to_i64().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::Poly;
    use crate::scalars::rat;

    #[test]
    fn binomial_recipe() {
        // (1 - z)^(1/2) at 0
        let recipe = Recipe {
            factors: vec![PowerAtom {
                base: RatFunc::from_poly(Poly::from_ints(&[1, -1])),
                num: 1,
                den: 2,
                branch: None,
            }],
            exp_integrand: None,
        };
        let s = closed_form_series(&recipe, &ProjPoint::zero(), 10).unwrap();
        assert_eq!(s.coeff_at(&rat(1, 1)).unwrap(), Cyclotomic::from_rational(rat(-1, 2)));
        assert_eq!(s.coeff_at(&rat(2, 1)).unwrap(), Cyclotomic::from_rational(rat(-1, 8)));
    }

    #[test]
    fn exp_of_unit_integrand() {
        // exp(int 1 dt) = sum t^k/k!
        let recipe = Recipe {
            factors: vec![],
            exp_integrand: Some(Integrand::Rational(RatFunc::one())),
        };
        let s = closed_form_series(&recipe, &ProjPoint::zero(), 12).unwrap();
        assert_eq!(s.coeff_at(&rat(4, 1)).unwrap(), Cyclotomic::from_rational(rat(1, 24)));
    }

    #[test]
    fn log_required() {
        // exp(int dz/z) needs a logarithm
        let recipe = Recipe {
            factors: vec![],
            exp_integrand: Some(Integrand::Rational(RatFunc::new(
                Poly::one(),
                Poly::var(),
            ))),
        };
        assert!(matches!(
            closed_form_series(&recipe, &ProjPoint::zero(), 10),
            Err(Error::LogarithmRequired)
        ));
    }
}
