//! Lifts of Moebius symmetries to the solution fibers: the constant matrix C
//! and the rational fiber transform F with F * S = (S ∘ sigma) * C on series.

use num::{ToPrimitive, Zero};

use crate::diffop::{LinearSystem, Side};
use crate::error::{Error, Result};
use crate::funcfield::{MoebiusMap, ProjPoint, RatFunc};
use crate::groups::{fixes_ideal, FiniteMatrixGroup, GroupElement, HomogPoly};
use crate::linalg::{self, Matrix};
use crate::scalars::{Cyclotomic, Rational};
use crate::series::{
    expand_ratfunc, invert_matrix_series, mat_mul, rational_reconstruct, PuiseuxSeries,
    SeriesMatrix, SolutionMatrix,
};

use super::symmetry::{Lift, LiftStatus, SymmetryRecord};

/// Expansion of sigma around a fixed point, as a valuation-one series in the
/// local coordinate.
pub fn local_map_series(
    sigma: &MoebiusMap,
    q: &ProjPoint,
    order: i64,
) -> Result<PuiseuxSeries> {
    if sigma.apply(q) != *q {
        return Err(Error::Unsupported(format!(
            "{} does not fix the expansion point {}",
            sigma, q
        )));
    }
    match q {
        ProjPoint::Finite(c) => {
            // phi(t) = sigma(c + t) - c
            let r = sigma.as_ratfunc();
            let shifted = RatFunc::new(r.num().shift(c), r.den().shift(c));
            let s = expand_ratfunc(&shifted, &ProjPoint::zero(), order);
            let phi = s.add_const(&-c);
            // rebase to q
            Ok(PuiseuxSeries::new(
                q.clone(),
                phi.lead_exponent().clone(),
                phi.ramification(),
                phi.coeffs().to_vec(),
            ))
        }
        ProjPoint::Infinity => {
            // t = 1/z; the conjugated map inv ∘ sigma ∘ inv fixes 0
            let inv = MoebiusMap::new(
                Cyclotomic::zero(),
                Cyclotomic::one(),
                Cyclotomic::one(),
                Cyclotomic::zero(),
            )?;
            let conj = inv.compose(&sigma.compose(&inv));
            let s = expand_ratfunc(&conj.as_ratfunc(), &ProjPoint::zero(), order);
            Ok(PuiseuxSeries::new(
                ProjPoint::Infinity,
                s.lead_exponent().clone(),
                s.ramification(),
                s.coeffs().to_vec(),
            ))
        }
    }
}

/// Chain-rule matrix B with (y ∘ sigma)^(i) = sum_k B[i][k] * y^(k)(sigma(z)):
/// B[0] = e_0, B[i+1][k] = B[i][k]' + sigma' * B[i][k-1].
pub fn chain_rule_matrix(sigma: &MoebiusMap, n: usize) -> Vec<Vec<RatFunc>> {
    let sp = sigma.derivative();
    let mut rows: Vec<Vec<RatFunc>> = Vec::with_capacity(n);
    let mut row0 = vec![RatFunc::zero(); n];
    row0[0] = RatFunc::one();
    rows.push(row0);
    for i in 1..n {
        let prev = &rows[i - 1];
        let mut row = vec![RatFunc::zero(); n];
        for k in 0..n {
            let mut v = prev[k].derivative();
            if k > 0 {
                v = v.add(&sp.mul(&prev[k - 1]));
            }
            row[k] = v;
        }
        rows.push(row);
    }
    rows
}

fn ratfunc_matrix_series(
    m: &[Vec<RatFunc>],
    base: &ProjPoint,
    order: i64,
) -> SeriesMatrix {
    m.iter()
        .map(|row| row.iter().map(|f| expand_ratfunc(f, base, order)).collect())
        .collect()
}

fn const_matrix_series(m: &Matrix, base: &ProjPoint, order: usize) -> SeriesMatrix {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|c| PuiseuxSeries::constant(base.clone(), c.clone(), order))
                .collect()
        })
        .collect()
}

/// Extract the constant part of a series matrix, requiring every entry to be
/// constant to its available order.
fn constants_of(m: &SeriesMatrix) -> Result<Matrix> {
    let mut out = Vec::with_capacity(m.len());
    for row in m {
        let mut r = Vec::with_capacity(row.len());
        for e in row {
            let c = e
                .coeff_at(&Rational::zero())
                .unwrap_or_else(Cyclotomic::zero);
            let rest = e.add_const(&-&c);
            if !rest.is_zero_series() {
                return Err(Error::Unsupported(format!(
                    "matrix entry is not constant: {}",
                    e
                )));
            }
            r.push(c);
        }
        out.push(r);
    }
    Ok(out)
}

/// Entrywise composition of a solution matrix with the local expansion of a
/// symmetry fixing the base point.
pub fn compose_matrix(
    s: &SolutionMatrix,
    phi: &PuiseuxSeries,
    branch: Option<&Cyclotomic>,
) -> Result<SeriesMatrix> {
    let mut out = Vec::with_capacity(s.dimension());
    for row in s.entries() {
        let mut r = Vec::with_capacity(row.len());
        for e in row {
            r.push(e.compose(phi, branch)?);
        }
        out.push(r);
    }
    Ok(out)
}

pub struct LiftBounds {
    pub deg_num: usize,
    pub deg_den: usize,
    pub margin: usize,
}

impl Default for LiftBounds {
    fn default() -> Self {
        LiftBounds { deg_num: 10, deg_den: 10, margin: 6 }
    }
}

/// Compute the lift of a verified symmetry from a local solution basis at a
/// sigma-fixed expansion point: C from the series linear solve, F by rational
/// reconstruction of (S∘sigma) C S^{-1}. Reconstruction failure is reported in
/// the lift status rather than as a hard error.
pub fn compute_lift(
    rec: &SymmetryRecord,
    basis: &SolutionMatrix,
    bounds: &LiftBounds,
) -> Result<SymmetryRecord> {
    let q = basis.base().clone();
    let n = basis.dimension();
    if rec.map.is_identity() {
        let id = linalg::identity(n);
        let fiber = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() })
                    .collect()
            })
            .collect();
        return Ok(SymmetryRecord {
            map: rec.map.clone(),
            factor: rec.factor.clone(),
            lift: Some(Lift { constants: id, fiber }),
            lift_status: LiftStatus::Computed,
        });
    }
    // resonance precondition: exponents pairwise distinct mod 1 is the
    // caller's responsibility for singular bases; ordinary bases are fine.
    let order = series_order(basis) + 4;
    let phi = local_map_series(&rec.map, &q, order)?;
    let s_sigma = compose_matrix(basis, &phi, None)?;
    let b = chain_rule_matrix(&rec.map, n);
    let b_series = ratfunc_matrix_series(&b, &q, order);
    let s_inv = basis.invert()?;
    // C0 = S^{-1} B (S∘sigma), constant by theory; C = C0^{-1}
    let c0_series = mat_mul(&s_inv, &mat_mul(&b_series, &s_sigma)?)?;
    let c0 = constants_of(&c0_series)?;
    let c = linalg::invert(&c0).ok_or_else(|| {
        Error::Unsupported("constant matrix of the composed basis is singular".into())
    })?;
    let c_series = const_matrix_series(&c, &q, 4.max(order as usize));
    let f_series = mat_mul(&mat_mul(&s_sigma, &c_series)?, &s_inv)?;
    // reconstruct every entry of F
    let mut fiber: Vec<Vec<RatFunc>> = Vec::with_capacity(n);
    for row in &f_series {
        let mut r = Vec::with_capacity(n);
        for e in row {
            match rational_reconstruct(e, bounds.deg_num, bounds.deg_den, bounds.margin) {
                Ok(Some(f)) => r.push(f),
                Ok(None) => {
                    return Ok(SymmetryRecord {
                        map: rec.map.clone(),
                        factor: rec.factor.clone(),
                        lift: None,
                        lift_status: LiftStatus::Unavailable(
                            "fiber transform did not reconstruct rationally".into(),
                        ),
                    })
                }
                Err(e) => {
                    return Ok(SymmetryRecord {
                        map: rec.map.clone(),
                        factor: rec.factor.clone(),
                        lift: None,
                        lift_status: LiftStatus::Unavailable(format!(
                            "reconstruction failed: {}",
                            e
                        )),
                    })
                }
            }
        }
        fiber.push(r);
    }
    // verify the defining identity F S = (S∘sigma) C on series
    let f_expanded = ratfunc_matrix_series(&fiber, &q, order);
    let lhs = mat_mul(&f_expanded, basis.entries())?;
    let rhs = mat_mul(&s_sigma, &c_series)?;
    for (lr, rr) in lhs.iter().zip(rhs.iter()) {
        for (le, re) in lr.iter().zip(rr.iter()) {
            if !le.agrees_with(re) {
                return Err(Error::Unsupported(
                    "lift identity failed after reconstruction".into(),
                ));
            }
        }
    }
    Ok(SymmetryRecord {
        map: rec.map.clone(),
        factor: rec.factor.clone(),
        lift: Some(Lift { constants: c, fiber }),
        lift_status: LiftStatus::Computed,
    })
}

fn series_order(s: &SolutionMatrix) -> i64 {
    s.entries()
        .iter()
        .flatten()
        .map(|e| e.bound())
        .min()
        .map(|b| b.floor().to_integer().to_i64().unwrap_or(16))
        .unwrap_or(16)
}

/// Verify a user-supplied lift F (and optional C) against a fundamental
/// series matrix of a first-order system: (S∘sigma) C = F S must hold with C
/// constant; when C is not supplied it is solved for and returned.
pub fn verify_system_lift(
    sys: &LinearSystem,
    s: &SeriesMatrix,
    base: &ProjPoint,
    sigma: &MoebiusMap,
    fiber: &Matrix,
) -> Result<Matrix> {
    if sys.side != Side::Solution {
        return Err(Error::Unsupported("lift verification needs a solution-side system".into()));
    }
    // S must actually solve the system
    let res = crate::series::system_residual(s, sys, base)?;
    for row in &res {
        for e in row {
            if !e.is_zero_series() {
                return Err(Error::Unsupported(format!(
                    "supplied matrix does not solve the system: residual {}",
                    e
                )));
            }
        }
    }
    let order = s
        .iter()
        .flatten()
        .map(|e| e.bound())
        .min()
        .unwrap()
        .floor()
        .to_integer()
        .to_i64()
        .unwrap_or(16)
        + 4;
    let phi = local_map_series(sigma, base, order)?;
    let mut s_sigma = Vec::with_capacity(s.len());
    for row in s {
        let mut r = Vec::with_capacity(row.len());
        for e in row {
            r.push(e.compose(&phi, None)?);
        }
        s_sigma.push(r);
    }
    let f_series = const_matrix_series(fiber, base, order.unsigned_abs() as usize);
    let fs = mat_mul(&f_series, s)?;
    let s_sigma_inv = invert_matrix_series(&s_sigma)?;
    let c_series = mat_mul(&s_sigma_inv, &fs)?;
    constants_of(&c_series)
}

/// Group data a lift can be checked against.
pub enum SymmetryGroupData<'a> {
    Finite(&'a FiniteMatrixGroup),
    /// D-infinity inside SL_2: the torus diag(l, 1/l) and the rotation
    /// antidiag(1, -1).
    InfiniteDihedral,
}

/// Membership of a lambda-monomial 2x2 matrix in D-infinity (as a family).
fn in_dinf(elem: &GroupElement) -> bool {
    if elem.dimension() != 2 || !elem.is_monomial_matrix() {
        return false;
    }
    let e = elem.entries();
    let mono = |entry: &crate::groups::LaurentEntry| entry.iter().next().map(|(k, c)| (*k, c.clone()));
    if let (Some((e1, c1)), Some((e2, c2))) = (mono(&e[0][0]), mono(&e[1][1])) {
        if e[0][1].is_empty() && e[1][0].is_empty() {
            // diag(c1 l^e1, c2 l^e2) in the torus family iff e1 = -e2, c1 c2 = 1
            return e1 == -e2 && (&c1 * &c2).is_one();
        }
    }
    if let (Some((e1, c1)), Some((e2, c2))) = (mono(&e[0][1]), mono(&e[1][0])) {
        if e[0][0].is_empty() && e[1][1].is_empty() {
            // antidiag(v, -1/v): product of the two entries is -1
            let p = &c1 * &c2;
            return e1 == -e2 && p == Cyclotomic::from_int(-1);
        }
    }
    false
}

/// Lemma-6.1-style check: the lift constants must conjugate the Galois group
/// to itself and fix the ideal of relations.
pub fn lift_normalizes(
    rec: &SymmetryRecord,
    group: &SymmetryGroupData,
    relations: &[HomogPoly],
    degree_cap: usize,
) -> Result<bool> {
    let lift = rec.lift.as_ref().ok_or(Error::MissingLift)?;
    let c = &lift.constants;
    match group {
        SymmetryGroupData::Finite(g) => {
            let cinv = linalg::invert(c)
                .ok_or_else(|| Error::Unsupported("singular lift constants".into()))?;
            for gen in g.generators() {
                let conj = linalg::mat_mul(&linalg::mat_mul(c, gen), &cinv);
                if !g.contains(&conj) {
                    return Ok(false);
                }
            }
        }
        SymmetryGroupData::InfiniteDihedral => {
            if c.len() != 2 {
                return Err(Error::ArityMismatch);
            }
            let torus = GroupElement::new(vec![
                vec![
                    crate::groups::entry_monomial(Cyclotomic::one(), 1),
                    Default::default(),
                ],
                vec![
                    Default::default(),
                    crate::groups::entry_monomial(Cyclotomic::one(), -1),
                ],
            ])?;
            let rot = GroupElement::from_const(&vec![
                vec![Cyclotomic::zero(), Cyclotomic::one()],
                vec![Cyclotomic::from_int(-1), Cyclotomic::zero()],
            ]);
            for gen in [torus, rot] {
                if !in_dinf(&gen.conjugate_by(c)?) {
                    return Ok(false);
                }
            }
        }
    }
    if !relations.is_empty() {
        let ge = GroupElement::from_const(c);
        if !fixes_ideal(&ge, relations, degree_cap)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exponents pairwise distinct modulo 1 (the non-resonance condition for
/// lift matching at a singular fixed point).
pub fn non_resonant_exponents(exps: &[Rational]) -> bool {
    for (i, a) in exps.iter().enumerate() {
        for b in exps.iter().skip(i + 1) {
            if (a - b).is_integer() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffop::DiffOp;
    use crate::funcfield::Poly;
    use crate::galois::symmetry::verify_symmetry;
    use crate::series::ordinary_basis;

    #[test]
    fn identity_lift_is_identity() {
        let l = DiffOp::derivation_power(2);
        let basis = ordinary_basis(&l, &ProjPoint::zero(), 12).unwrap();
        let rec = verify_symmetry(&l, &MoebiusMap::identity()).unwrap();
        let lifted = compute_lift(&rec, &basis, &LiftBounds::default()).unwrap();
        assert_eq!(lifted.lift_status, LiftStatus::Computed);
        let lift = lifted.lift.unwrap();
        assert_eq!(lift.constants, linalg::identity(2));
    }

    #[test]
    fn even_operator_lift_under_negation() {
        // y'' - z^2 y is even: z -> -z is a symmetry; compute its lift at 0.
        let z2 = RatFunc::from_poly(Poly::from_ints(&[0, 0, -1]));
        let l = DiffOp::new(vec![z2, RatFunc::zero(), RatFunc::one()]);
        let neg = MoebiusMap::new(
            Cyclotomic::from_int(-1),
            Cyclotomic::zero(),
            Cyclotomic::zero(),
            Cyclotomic::one(),
        )
        .unwrap();
        let rec = verify_symmetry(&l, &neg).unwrap();
        assert!(rec.factor.is_one());
        let basis = ordinary_basis(&l, &ProjPoint::zero(), 40).unwrap();
        let lifted = compute_lift(&rec, &basis, &LiftBounds::default()).unwrap();
        assert_eq!(lifted.lift_status, LiftStatus::Computed);
        let lift = lifted.lift.unwrap();
        // the unit-triangular basis has y1 even, y2 odd: C = diag(1, -1),
        // F = diag(1, -1).
        let expected = vec![
            vec![Cyclotomic::one(), Cyclotomic::zero()],
            vec![Cyclotomic::zero(), Cyclotomic::from_int(-1)],
        ];
        assert_eq!(lift.constants, expected);
        assert_eq!(lift.fiber[0][0], RatFunc::one());
        assert_eq!(lift.fiber[1][1], RatFunc::from_int(-1));
        assert!(lift.fiber[0][1].is_zero());
    }

    #[test]
    fn non_resonance_check() {
        use crate::scalars::rat;
        assert!(non_resonant_exponents(&[rat(0, 1), rat(1, 2), rat(1, 3)]));
        assert!(!non_resonant_exponents(&[rat(1, 2), rat(5, 2)]));
    }
}
