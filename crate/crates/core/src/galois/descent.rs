//! Descent certificates: is the upstairs operator the pullback of the
//! downstairs one along a rational covering, up to a gauge transform?

use crate::diffop::DiffOp;
use crate::error::Result;
use crate::funcfield::{RatFunc, RationalMap};

#[derive(Clone)]
pub struct DescentCertificate {
    pub upstairs: DiffOp,
    pub map: RationalMap,
    pub gauge: RatFunc,
    pub downstairs: DiffOp,
    pub verdict: bool,
    /// Monic difference pullback - upstairs when the verdict is false.
    pub residual: Option<DiffOp>,
}

pub fn verify_descent(
    upstairs: &DiffOp,
    map: &RationalMap,
    downstairs: &DiffOp,
) -> Result<DescentCertificate> {
    let pulled = downstairs.pullback(map)?;
    match pulled.gauge_detect(upstairs) {
        Some(g) => Ok(DescentCertificate {
            upstairs: upstairs.clone(),
            map: map.clone(),
            gauge: g,
            downstairs: downstairs.clone(),
            verdict: true,
            residual: None,
        }),
        None => {
            let residual = pulled.monic().sub(&upstairs.monic());
            Ok(DescentCertificate {
                upstairs: upstairs.clone(),
                map: map.clone(),
                gauge: RatFunc::zero(),
                downstairs: downstairs.clone(),
                verdict: false,
                residual: Some(residual),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::Poly;

    #[test]
    fn identity_descent() {
        let l = DiffOp::new(vec![
            RatFunc::from_poly(Poly::from_ints(&[1, 1])),
            RatFunc::one(),
            RatFunc::one(),
        ]);
        let cert = verify_descent(&l, &RationalMap::identity(), &l).unwrap();
        assert!(cert.verdict);
        assert!(cert.gauge.is_zero());
    }

    #[test]
    fn square_map_descent_with_gauge() {
        // downstairs D^2 (solutions 1, x); upstairs = gauge of its pullback.
        let down = DiffOp::derivation_power(2);
        let r = RationalMap::new(RatFunc::from_poly(Poly::from_ints(&[0, 0, 1]))).unwrap();
        let pulled = down.pullback(&r).unwrap();
        let g = RatFunc::new(Poly::from_ints(&[1]), Poly::from_ints(&[2, 1]));
        let up = pulled.gauge(&g);
        let cert = verify_descent(&up, &r, &down).unwrap();
        assert!(cert.verdict);
        assert_eq!(cert.gauge, g);
    }

    #[test]
    fn failed_descent_reports_residual() {
        let down = DiffOp::derivation_power(2);
        let up = DiffOp::new(vec![RatFunc::var(), RatFunc::zero(), RatFunc::one()]);
        let cert = verify_descent(&up, &RationalMap::identity(), &down).unwrap();
        assert!(!cert.verdict);
        assert!(cert.residual.is_some());
    }
}
