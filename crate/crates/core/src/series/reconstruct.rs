//! Rational reconstruction: deciding whether a truncated series is the
//! expansion of a rational function, by an exact Pade fit verified on every
//! retained coefficient.

use num::{BigInt, ToPrimitive};

use crate::error::{Error, Result};
use crate::funcfield::{Poly, ProjPoint, RatFunc};
use crate::linalg;
use crate::scalars::{Cyclotomic, Rational};

use super::puiseux::{expand_ratfunc, PuiseuxSeries};

/// Reconstruct a rational function from a series with integer exponents.
/// deg_num/deg_den bound the degrees in the local coordinate; at least
/// deg_num + deg_den + 1 + margin coefficients must be available, and the
/// result must reproduce every retained coefficient. Returns the function in
/// the global variable z.
pub fn rational_reconstruct(
    s: &PuiseuxSeries,
    deg_num: usize,
    deg_den: usize,
    margin: usize,
) -> Result<Option<RatFunc>> {
    let reduced = s.reduce_ram();
    if reduced.ramification() != 1 {
        // fractional exponents cannot come from a rational function
        return Ok(None);
    }
    let lead = reduced.lead_exponent().clone();
    if !lead.is_integer() {
        return Ok(None);
    }
    let lead_i = lead.to_integer().to_i64().unwrap();
    let bound_i = reduced.bound().to_integer().to_i64().unwrap();
    let available = (bound_i - lead_i.min(0)) as usize;
    let need = deg_num + deg_den + 1 + margin;
    if available < need {
        return Err(Error::InsufficientOrder { need, have: available });
    }
    // Unknowns: D_0..D_deg_den, N_0..N_deg_num with D*s - N = 0. The fit uses
    // the first deg_num + deg_den + 1 conditions; every remaining retained
    // coefficient is checked by re-expansion below.
    let cols = deg_den + 1 + deg_num + 1;
    let lo = lead_i.min(0);
    let hi = (lo + (deg_num + deg_den + 1) as i64 + 1).min(bound_i);
    let mut m = vec![vec![Cyclotomic::zero(); cols]; (hi - lo) as usize];
    for (r, k) in (lo..hi).enumerate() {
        for j in 0..=deg_den {
            // coefficient of t^k in D_j t^j * s
            let e = Rational::from_integer(BigInt::from(k - j as i64));
            if let Some(c) = reduced.coeff_at(&e) {
                m[r][j] = c;
            }
        }
        if (0..=deg_num as i64).contains(&k) {
            m[r][deg_den + 1 + k as usize] = Cyclotomic::from_int(-1);
        }
    }
    let ns = linalg::null_space(&m);
    for v in ns {
        let den = Poly::new(v[..=deg_den].to_vec());
        if den.is_zero() {
            continue;
        }
        let num = Poly::new(v[deg_den + 1..].to_vec());
        let f_local = RatFunc::new(num, den);
        // verify against everything we know
        let expansion = expand_ratfunc(&f_local, &ProjPoint::zero(), bound_i + 1);
        let mut ok = true;
        let mut k = lead_i.min(expansion.lead_exponent().floor().to_integer().to_i64().unwrap_or(lead_i));
        while k < bound_i {
            let e = Rational::from_integer(BigInt::from(k));
            let a = reduced.coeff_at(&e).unwrap_or_else(Cyclotomic::zero);
            let b = expansion.coeff_at(&e).unwrap_or_else(Cyclotomic::zero);
            if a != b {
                ok = false;
                break;
            }
            k += 1;
        }
        if ok {
            return Ok(Some(localize_to_global(&f_local, s.base())));
        }
    }
    Ok(None)
}

/// Rewrite a function of the local coordinate t as a function of z.
fn localize_to_global(f_local: &RatFunc, base: &ProjPoint) -> RatFunc {
    match base {
        ProjPoint::Infinity => f_local.invert_variable(),
        ProjPoint::Finite(p) => {
            if p.is_zero() {
                return f_local.clone();
            }
            // t = z - p
            let shift = -p;
            RatFunc::new(f_local.num().shift(&shift), f_local.den().shift(&shift))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;
    use num::{One, Zero};

    fn at0() -> ProjPoint {
        ProjPoint::zero()
    }

    #[test]
    fn reconstruct_geometric() {
        let s = PuiseuxSeries::new(
            at0(),
            Rational::zero(),
            1,
            vec![Cyclotomic::one(); 30],
        );
        let f = rational_reconstruct(&s, 4, 4, 8).unwrap().unwrap();
        assert_eq!(f, RatFunc::new(Poly::one(), Poly::from_ints(&[1, -1])));
    }

    #[test]
    fn reject_exponential() {
        // sum t^k / k! is not rational
        let mut c = Vec::new();
        let mut f = Rational::one();
        for k in 0..30u64 {
            if k > 0 {
                f = f / Rational::from_integer(BigInt::from(k));
            }
            c.push(Cyclotomic::from_rational(f.clone()));
        }
        let s = PuiseuxSeries::new(at0(), Rational::zero(), 1, c);
        assert!(rational_reconstruct(&s, 5, 5, 8).unwrap().is_none());
    }

    #[test]
    fn insufficient_order() {
        let s = PuiseuxSeries::new(at0(), Rational::zero(), 1, vec![Cyclotomic::one(); 5]);
        assert!(matches!(
            rational_reconstruct(&s, 4, 4, 8),
            Err(Error::InsufficientOrder { .. })
        ));
    }

    #[test]
    fn reconstruct_with_pole() {
        // 1/(t^2 (1-t)) has lead -2
        let f = RatFunc::new(Poly::one(), Poly::from_ints(&[0, 0, 1]).mul(&Poly::from_ints(&[1, -1])));
        let s = expand_ratfunc(&f, &at0(), 25);
        assert_eq!(*s.lead_exponent(), rat(-2, 1));
        let g = rational_reconstruct(&s, 3, 5, 6).unwrap().unwrap();
        assert_eq!(g, f);
    }

    #[test]
    fn reconstruct_at_other_base() {
        // expansion of 1/z at base 1, reconstructed back to 1/z
        let f = RatFunc::new(Poly::one(), Poly::var());
        let base = ProjPoint::from_int(1);
        let s = expand_ratfunc(&f, &base, 25);
        let g = rational_reconstruct(&s, 3, 3, 6).unwrap().unwrap();
        assert_eq!(g, f);
    }

    #[test]
    fn reconstruct_at_infinity() {
        let f = RatFunc::new(Poly::from_ints(&[1, 0, 1]), Poly::from_ints(&[-1, 1]));
        let s = expand_ratfunc(&f, &ProjPoint::Infinity, 25);
        let g = rational_reconstruct(&s, 4, 4, 6).unwrap().unwrap();
        assert_eq!(g, f);
    }
}
