//! Operators over the quadratic extension k(w) in a derivation v = q(z,w) d/dz,
//! and their rewrite into plain d/dz form when the coefficients allow it.

use crate::error::{Error, Result};
use crate::funcfield::{QuadExt, RatFunc};

use super::op::DiffOp;

/// Sum a_i v^i with QuadExt coefficients, v = direction * d/dz.
#[derive(Clone)]
pub struct QuadDiffOp {
    pub coeffs: Vec<QuadExt>, // ascending: a_0 ... a_n
    pub direction: QuadExt,
}

impl QuadDiffOp {
    pub fn new(coeffs: Vec<QuadExt>, direction: QuadExt) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::DomainMismatch("empty operator".into()));
        }
        for c in &coeffs {
            if c.modulus() != direction.modulus() {
                return Err(Error::ModulusMismatch);
            }
        }
        Ok(QuadDiffOp { coeffs, direction })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Apply to an element of k(w): sum a_i v^i(f).
    pub fn apply(&self, f: &QuadExt) -> Result<QuadExt> {
        let mut acc = QuadExt::zero(self.direction.modulus().clone());
        let mut der = f.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                der = self.direction.mul(&der.d_dz())?;
            }
            if !a.is_zero() {
                acc = acc.add(&a.mul(&der)?)?;
            }
        }
        Ok(acc)
    }

    /// Expand into d/dz form: coefficients of d^j for j = 0..order.
    pub fn expand_in_dz(&self) -> Result<Vec<QuadExt>> {
        let modulus = self.direction.modulus().clone();
        let n = self.order();
        let mut out = vec![QuadExt::zero(modulus.clone()); n + 1];
        out[0] = out[0].add(&self.coeffs[0])?;
        // power = v^i as a vector of d/dz coefficients
        let mut power = vec![QuadExt::one(modulus.clone())];
        for i in 1..=n {
            // v ∘ (sum c_j d^j) = direction * (sum c_j' d^j + c_j d^(j+1))
            let mut next = vec![QuadExt::zero(modulus.clone()); power.len() + 1];
            for (j, c) in power.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let dc = self.direction.mul(&c.d_dz())?;
                next[j] = next[j].add(&dc)?;
                let shift = self.direction.mul(c)?;
                next[j + 1] = next[j + 1].add(&shift)?;
            }
            power = next;
            if self.coeffs[i].is_zero() {
                continue;
            }
            for (j, c) in power.iter().enumerate() {
                if !c.is_zero() {
                    out[j] = out[j].add(&self.coeffs[i].mul(c)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Rewrite as a rational-coefficient operator in d/dz: every expanded
    /// coefficient must be rational or a pure w-multiple, with one common
    /// parity; the shared w-power is factored out.
    pub fn rewrite_rational(&self) -> Result<RewriteOutcome> {
        let expanded = self.expand_in_dz()?;
        let modulus = self.direction.modulus().clone();
        let p = RatFunc::from_poly((*modulus).clone());
        let mut parity: Option<bool> = None; // true = pure w
        for c in &expanded {
            if c.is_zero() {
                continue;
            }
            let this = if c.is_rational() {
                false
            } else if c.as_pure_w().is_some() {
                true
            } else {
                return Err(Error::NotRationalizable(format!(
                    "mixed coefficient {} has both rational and w parts",
                    c
                )));
            };
            match parity {
                None => parity = Some(this),
                Some(prev) if prev != this => {
                    return Err(Error::NotRationalizable(
                        "coefficients do not share a w-parity".into(),
                    ))
                }
                _ => {}
            }
        }
        let w_parity = parity.unwrap_or(false);
        let coeffs: Vec<RatFunc> = expanded
            .iter()
            .map(|c| {
                if c.is_zero() {
                    RatFunc::zero()
                } else if w_parity {
                    // c = beta * w, and (beta w) * w = beta p, so beta = c*w/p.
                    c.as_pure_w().unwrap().clone()
                } else {
                    c.as_ratfunc().unwrap().clone()
                }
            })
            .collect();
        let _ = p;
        Ok(RewriteOutcome { operator: DiffOp::new(coeffs), w_parity })
    }
}

pub struct RewriteOutcome {
    pub operator: DiffOp,
    /// true when the common factor w was removed.
    pub w_parity: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::Poly;
    use std::sync::Arc;

    fn modulus() -> Arc<Poly> {
        Arc::new(Poly::from_ints(&[0, -1, 0, 1])) // z^3 - z
    }

    fn two_w(m: &Arc<Poly>) -> QuadExt {
        QuadExt::new(RatFunc::zero(), RatFunc::from_int(2), m.clone())
    }

    #[test]
    fn rewrite_v_itself() {
        let m = modulus();
        let l = QuadDiffOp::new(
            vec![QuadExt::zero(m.clone()), QuadExt::one(m.clone())],
            two_w(&m),
        )
        .unwrap();
        let out = l.rewrite_rational().unwrap();
        assert!(out.w_parity);
        // 2w d/dz, factor w: 2 d/dz, proportional to D
        let d = DiffOp::derivation();
        assert!(out.operator.proportional(&d).is_some());
    }

    #[test]
    fn rewrite_v_squared() {
        // v^2 = 4(z^3 - z) D^2 + 2(3z^2 - 1) D
        let m = modulus();
        let l = QuadDiffOp::new(
            vec![
                QuadExt::zero(m.clone()),
                QuadExt::zero(m.clone()),
                QuadExt::one(m.clone()),
            ],
            two_w(&m),
        )
        .unwrap();
        let out = l.rewrite_rational().unwrap();
        assert!(!out.w_parity);
        let expected = DiffOp::new(vec![
            RatFunc::zero(),
            RatFunc::from_poly(Poly::from_ints(&[-2, 0, 6])),
            RatFunc::from_poly(Poly::from_ints(&[0, -4, 0, 4])),
        ]);
        assert_eq!(out.operator, expected);
    }

    #[test]
    fn mixed_parity_fails() {
        // v + 1 mixes parities after expansion.
        let m = modulus();
        let l = QuadDiffOp::new(
            vec![QuadExt::one(m.clone()), QuadExt::one(m.clone())],
            two_w(&m),
        )
        .unwrap();
        assert!(matches!(
            l.rewrite_rational(),
            Err(Error::NotRationalizable(_))
        ));
    }
}
