//! Presentation of the field generated by quotients of dual first integrals
//! of equal degree, with the basic/standard classification tests.

use std::collections::BTreeMap;

use num::Integer;

use crate::error::{Error, Result};
use crate::funcfield::RatFunc;
use crate::scalars::Cyclotomic;
use crate::series::DualFirstIntegral;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Basic,
    StandardCandidate,
    Undetermined,
}

#[derive(Clone, Debug)]
pub struct RatioGenerator {
    pub value: RatFunc,
    pub i: usize,
    pub j: usize,
    pub mi: u64,
    pub mj: u64,
}

#[derive(Clone)]
pub struct KNablaPresentation {
    pub integrals: Vec<DualFirstIntegral>,
    pub ratio_generators: Vec<RatioGenerator>,
    pub witness_value: Option<RatFunc>,
    pub classification: Classification,
    /// Index of an integral whose value is a nonzero constant (so that 1 is a
    /// dual first integral after scaling), if any.
    pub constant_integral: Option<usize>,
    pub notes: Vec<String>,
}

/// A degree-matched rational expression in named integrals:
/// numerator / denominator, each a sum of coefficient * product-of-powers.
#[derive(Clone, Debug)]
pub struct WitnessExpr {
    pub num: Vec<(Cyclotomic, Vec<(String, u32)>)>,
    pub den: Vec<(Cyclotomic, Vec<(String, u32)>)>,
}

impl WitnessExpr {
    fn term_degree(
        term: &[(String, u32)],
        degrees: &BTreeMap<String, usize>,
    ) -> Result<usize> {
        let mut d = 0usize;
        for (name, pow) in term {
            let deg = degrees
                .get(name)
                .ok_or_else(|| Error::DegreeMismatch(format!("unknown integral {}", name)))?;
            d += deg * (*pow as usize);
        }
        Ok(d)
    }

    fn eval_side(
        side: &[(Cyclotomic, Vec<(String, u32)>)],
        values: &BTreeMap<String, RatFunc>,
    ) -> Result<RatFunc> {
        let mut acc = RatFunc::zero();
        for (c, term) in side {
            let mut t = RatFunc::constant(c.clone());
            for (name, pow) in term {
                let v = values
                    .get(name)
                    .ok_or_else(|| Error::DegreeMismatch(format!("unknown integral {}", name)))?;
                t = t.mul(&v.pow(*pow as i64)?);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Check degree matching and evaluate through the integral values.
    pub fn evaluate(
        &self,
        named: &BTreeMap<String, (RatFunc, usize)>,
    ) -> Result<RatFunc> {
        let degrees: BTreeMap<String, usize> =
            named.iter().map(|(k, (_, d))| (k.clone(), *d)).collect();
        let values: BTreeMap<String, RatFunc> =
            named.iter().map(|(k, (v, _))| (k.clone(), v.clone())).collect();
        let mut num_deg: Option<usize> = None;
        for (_, term) in &self.num {
            let d = Self::term_degree(term, &degrees)?;
            if *num_deg.get_or_insert(d) != d {
                return Err(Error::DegreeMismatch(
                    "witness numerator terms have mixed degree".into(),
                ));
            }
        }
        let mut den_deg: Option<usize> = None;
        for (_, term) in &self.den {
            let d = Self::term_degree(term, &degrees)?;
            if *den_deg.get_or_insert(d) != d {
                return Err(Error::DegreeMismatch(
                    "witness denominator terms have mixed degree".into(),
                ));
            }
        }
        if num_deg != den_deg {
            return Err(Error::DegreeMismatch(format!(
                "witness degrees differ: {:?} vs {:?}",
                num_deg, den_deg
            )));
        }
        let n = Self::eval_side(&self.num, &values)?;
        let d = Self::eval_side(&self.den, &values)?;
        n.div(&d)
    }
}

/// Assemble the ratio generators f_i^{m_i} / f_j^{m_j} (m minimal with
/// m_i n_i = m_j n_j), run the constant-integral test, and classify.
pub fn knabla_presentation(
    integrals: &[DualFirstIntegral],
    witness: Option<(&WitnessExpr, &BTreeMap<String, (RatFunc, usize)>)>,
) -> Result<KNablaPresentation> {
    if integrals.is_empty() {
        return Err(Error::ArityMismatch);
    }
    let mut ratio_generators = Vec::new();
    for i in 0..integrals.len() {
        for j in 0..integrals.len() {
            if i == j {
                continue;
            }
            if integrals[j].value.is_zero() {
                continue;
            }
            let ni = integrals[i].degree as u64;
            let nj = integrals[j].degree as u64;
            if ni == 0 || nj == 0 {
                continue;
            }
            let l = ni.lcm(&nj);
            let (mi, mj) = (l / ni, l / nj);
            // emit each unordered pair once, from the lower index
            if i > j {
                continue;
            }
            let value = integrals[i]
                .value
                .pow(mi as i64)?
                .div(&integrals[j].value.pow(mj as i64)?)?;
            // degree-matching holds by construction
            debug_assert_eq!(mi * ni, mj * nj);
            ratio_generators.push(RatioGenerator { value, i, j, mi, mj });
        }
    }
    let constant_integral = integrals.iter().position(|it| {
        !it.value.is_zero() && it.value.is_constant()
    });
    let mut notes = Vec::new();
    let witness_value = match witness {
        Some((expr, named)) => Some(expr.evaluate(named)?),
        None => None,
    };
    let classification = if witness_value
        .as_ref()
        .is_some_and(|v| *v == RatFunc::var())
    {
        notes.push("witness evaluates exactly to the coordinate z".into());
        Classification::Basic
    } else if constant_integral.is_some() {
        notes.push(
            "1 is a dual first integral: the base field is Galois over the generated field \
             with abelian Galois group"
                .into(),
        );
        Classification::StandardCandidate
    } else {
        Classification::Undetermined
    };
    if witness_value.is_some() && classification != Classification::Basic {
        notes.push("witness did not evaluate to z".into());
    }
    Ok(KNablaPresentation {
        integrals: integrals.to_vec(),
        ratio_generators,
        witness_value,
        classification,
        constant_integral,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::Poly;
    use crate::groups::{HomogPoly, VarSet};

    fn integral(value: RatFunc, degree: usize) -> DualFirstIntegral {
        DualFirstIntegral {
            poly: HomogPoly::zero(VarSet::Named(vec!["x".into()])),
            value,
            degree,
        }
    }

    #[test]
    fn single_integral_is_undetermined() {
        let one = integral(RatFunc::from_poly(Poly::from_ints(&[0, 0, 1])), 4);
        let p = knabla_presentation(&[one], None).unwrap();
        assert!(p.ratio_generators.is_empty());
        assert_eq!(p.classification, Classification::Undetermined);
    }

    #[test]
    fn degree_matching_powers() {
        // degrees 2 and 4: m = (2, 1)
        let a = integral(RatFunc::from_poly(Poly::from_ints(&[0, 1])), 2); // z
        let b = integral(RatFunc::from_poly(Poly::from_ints(&[0, 0, 0, 1])), 4); // z^3
        let p = knabla_presentation(&[a, b], None).unwrap();
        assert_eq!(p.ratio_generators.len(), 1);
        let g = &p.ratio_generators[0];
        assert_eq!((g.mi, g.mj), (2, 1));
        // z^2 / z^3 = 1/z
        assert_eq!(
            g.value,
            RatFunc::new(Poly::one(), Poly::var())
        );
    }

    #[test]
    fn constant_integral_gives_standard_candidate() {
        let a = integral(RatFunc::from_int(-2), 2);
        let b = integral(RatFunc::from_poly(Poly::from_ints(&[0, 0, 0, 1])), 4);
        let p = knabla_presentation(&[a, b], None).unwrap();
        assert_eq!(p.classification, Classification::StandardCandidate);
        assert_eq!(p.constant_integral, Some(0));
    }
}
