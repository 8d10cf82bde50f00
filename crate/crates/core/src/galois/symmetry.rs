//! Moebius symmetry detection for scalar operators: candidate generation from
//! singular data, verification through pullback, and group assembly.

use num::{BigInt, Zero};

use crate::diffop::{singular_points, DiffOp, Locus, SingularPoint};
use crate::error::{Error, Result};
use crate::funcfield::{factor, MoebiusMap, Poly, ProjPoint, RatFunc, RationalMap};
use crate::linalg::Matrix;
use crate::scalars::{Cyclotomic, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftStatus {
    Computed,
    UserVerified,
    Unavailable(String),
}

/// A computed lift: the constant matrix relating the composed basis to the
/// original one, and the rational fiber transform.
#[derive(Clone, Debug)]
pub struct Lift {
    pub constants: Matrix,
    pub fiber: Vec<Vec<RatFunc>>,
}

#[derive(Clone, Debug)]
pub struct SymmetryRecord {
    pub map: MoebiusMap,
    pub factor: RatFunc,
    pub lift: Option<Lift>,
    pub lift_status: LiftStatus,
}

/// Point data used to match singular points under candidate maps.
#[derive(Clone, PartialEq, Eq, Debug)]
struct PointData {
    regular: bool,
    exponents: Vec<Rational>,
}

fn data_of(sp: &SingularPoint) -> PointData {
    let mut exps = sp.exponents.clone();
    exps.sort();
    PointData { regular: sp.regular, exponents: exps }
}

pub struct CandidateSet {
    pub candidates: Vec<MoebiusMap>,
    pub warnings: Vec<String>,
}

/// All Moebius maps permuting the singular set with matching
/// (regularity, exponent-multiset) data. With fewer than three resolved
/// points, only the coordinate involutions stabilizing the set are returned,
/// with a warning.
pub fn moebius_candidates(sing: &[SingularPoint]) -> Result<CandidateSet> {
    let resolved: Vec<(&ProjPoint, PointData)> = sing
        .iter()
        .filter_map(|sp| sp.point().map(|p| (p, data_of(sp))))
        .collect();
    let blocks: Vec<(&Poly, bool, usize)> = sing
        .iter()
        .filter_map(|sp| match &sp.locus {
            Locus::Block(q) => Some((q, sp.regular, q.degree().unwrap_or(0))),
            Locus::Point(_) => None,
        })
        .collect();

    let mut warnings = Vec::new();
    if resolved.len() < 3 {
        warnings.push(format!(
            "only {} resolved singular points: the Moebius stabilizer is a positive-dimensional \
             family; returning the subgroup generated by coordinate involutions",
            resolved.len()
        ));
        let minus = MoebiusMap::new(
            Cyclotomic::from_int(-1),
            Cyclotomic::zero(),
            Cyclotomic::zero(),
            Cyclotomic::one(),
        )?;
        let inv = MoebiusMap::new(
            Cyclotomic::zero(),
            Cyclotomic::one(),
            Cyclotomic::one(),
            Cyclotomic::zero(),
        )?;
        let mut cands = vec![MoebiusMap::identity()];
        for m in [minus.clone(), inv.clone(), minus.compose(&inv)] {
            if stabilizes(&m, &resolved, &blocks) {
                cands.push(m);
            }
        }
        cands.sort_by_key(|m| m.sort_key());
        cands.dedup();
        return Ok(CandidateSet { candidates: cands, warnings });
    }

    let src: [&(&ProjPoint, PointData); 3] = [&resolved[0], &resolved[1], &resolved[2]];
    let src_pts = [src[0].0.clone(), src[1].0.clone(), src[2].0.clone()];
    let mut out: Vec<MoebiusMap> = Vec::new();
    for a in &resolved {
        if a.1 != src[0].1 {
            continue;
        }
        for b in &resolved {
            if b.0 == a.0 || b.1 != src[1].1 {
                continue;
            }
            for c in &resolved {
                if c.0 == a.0 || c.0 == b.0 || c.1 != src[2].1 {
                    continue;
                }
                let dst = [a.0.clone(), b.0.clone(), c.0.clone()];
                let Ok(m) = MoebiusMap::from_triples(&src_pts, &dst) else {
                    continue;
                };
                if stabilizes(&m, &resolved, &blocks) {
                    out.push(m);
                }
            }
        }
    }
    out.sort_by_key(|m| m.sort_key());
    out.dedup();
    Ok(CandidateSet { candidates: out, warnings })
}

fn stabilizes(
    m: &MoebiusMap,
    resolved: &[(&ProjPoint, PointData)],
    blocks: &[(&Poly, bool, usize)],
) -> bool {
    for (p, data) in resolved {
        let image = m.apply(p);
        let Some((_, idata)) = resolved.iter().find(|(q, _)| **q == image) else {
            return false;
        };
        if idata != data {
            return false;
        }
    }
    for (q, regular, deg) in blocks {
        let t = transport_block(q, m);
        let matched = blocks
            .iter()
            .any(|(q2, r2, d2)| r2 == regular && d2 == deg && **q2 == t);
        if !matched {
            return false;
        }
    }
    true
}

/// Numerator of q(m(x)) cleared by the denominator power, monic.
fn transport_block(q: &Poly, m: &MoebiusMap) -> Poly {
    let (a, b, c, d) = m.entries();
    let num = Poly::new(vec![b.clone(), a.clone()]);
    let den = Poly::new(vec![d.clone(), c.clone()]);
    let deg = q.degree().unwrap_or(0);
    let mut acc = Poly::zero();
    for (k, qc) in q.coeffs().iter().enumerate() {
        if qc.is_zero() {
            continue;
        }
        let term = num.pow(k).mul(&den.pow(deg - k)).scale(qc);
        acc = acc.add(&term);
    }
    if acc.is_zero() {
        acc
    } else {
        acc.monic()
    }
}

/// Does sigma satisfy pullback(L, sigma) = f * L? Returns the record.
pub fn verify_symmetry(l: &DiffOp, m: &MoebiusMap) -> Option<SymmetryRecord> {
    let r = RationalMap::from_moebius(m);
    let pulled = l.pullback(&r).ok()?;
    let factor = pulled.proportional(l)?;
    Some(SymmetryRecord {
        map: m.clone(),
        factor,
        lift: None,
        lift_status: LiftStatus::Unavailable("not attempted".into()),
    })
}

pub struct SymmetryGroup {
    pub records: Vec<SymmetryRecord>,
    pub candidates: usize,
    pub warnings: Vec<String>,
}

/// Candidate generation, verification, and a closure sanity check.
pub fn symmetry_group(l: &DiffOp) -> Result<SymmetryGroup> {
    let sing = singular_points(l);
    let cands = moebius_candidates(&sing)?;
    let mut records: Vec<SymmetryRecord> = Vec::new();
    for m in &cands.candidates {
        if let Some(rec) = verify_symmetry(l, m) {
            records.push(rec);
        }
    }
    if !records.iter().any(|r| r.map.is_identity()) {
        if let Some(rec) = verify_symmetry(l, &MoebiusMap::identity()) {
            records.push(rec);
        }
    }
    // group closure: accepted maps must be closed under composition
    let keys: std::collections::HashSet<String> =
        records.iter().map(|r| r.map.sort_key()).collect();
    for a in &records {
        for b in &records {
            let c = a.map.compose(&b.map);
            if !keys.contains(&c.sort_key()) {
                return Err(Error::ClosureViolation(format!(
                    "composition of accepted symmetries {} and {} is not accepted",
                    a.map, b.map
                )));
            }
        }
    }
    records.sort_by_key(|r| r.map.sort_key());
    Ok(SymmetryGroup {
        records,
        candidates: cands.candidates.len(),
        warnings: cands.warnings,
    })
}

/// Fixed points of a Moebius map on the projective line.
pub fn fixed_points(m: &MoebiusMap) -> Vec<ProjPoint> {
    if m.is_identity() {
        return Vec::new();
    }
    let (a, b, c, d) = m.entries();
    let mut out = Vec::new();
    // c x^2 + (d - a) x - b = 0
    let p = Poly::new(vec![-b, d - a, c.clone()]);
    if !p.is_zero() {
        for (r, _) in factor(&p).roots() {
            out.push(ProjPoint::Finite(r));
        }
    }
    if c.is_zero() {
        out.push(ProjPoint::Infinity);
    }
    out.sort_by_key(|p| p.sort_key());
    out.dedup();
    out
}

/// Symmetry test for a diagonal first-order system Y' = diag(a_1..a_n) Y:
/// sigma is a symmetry iff for some permutation pi, each
/// sigma' * a_i(sigma) - a_pi(i) is a logarithmic derivative of a rational
/// function. Returns the permutation on success.
pub fn diagonal_system_symmetry(
    diag: &[RatFunc],
    m: &MoebiusMap,
) -> Result<Option<Vec<usize>>> {
    let n = diag.len();
    let sp = m.derivative();
    let r = m.as_ratfunc();
    let transported: Vec<RatFunc> = diag.iter().map(|a| sp.mul(&a.compose(&r))).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let ok = (0..n).all(|i| {
            let d = transported[i].sub(&diag[perm[i]]);
            is_log_derivative(&d)
        });
        if ok {
            return Ok(Some(perm));
        }
        if !next_permutation(&mut perm) {
            return Ok(None);
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Is f the logarithmic derivative u'/u of a rational function u? Holds iff
/// every pole of f is simple with integer residue and f vanishes at infinity.
pub fn is_log_derivative(f: &RatFunc) -> bool {
    if f.is_zero() {
        return true;
    }
    // u'/u vanishes at infinity: numerator degree < denominator degree
    if f.num().degree().unwrap_or(0) >= f.den().degree().unwrap_or(0) {
        return false;
    }
    let fac = factor(f.den());
    if !fac.fully_split() {
        return false;
    }
    let dprime = f.den().derivative();
    for (root, mult) in fac.roots() {
        if mult != 1 {
            return false;
        }
        // residue = num(root)/den'(root)
        let res = f
            .num()
            .eval(&root)
            .checked_div(&dprime.eval(&root))
            .expect("simple pole");
        let Some(r) = res.as_rational() else {
            return false;
        };
        if !r.is_integer() {
            return false;
        }
        let _ = BigInt::zero();
    }
    true
}

/// Cocycle check data: the factor of a composition against the product of
/// composed factors, up to the canonical scalar.
pub fn composed_factor_exists(l: &DiffOp, a: &MoebiusMap, b: &MoebiusMap) -> bool {
    let c = a.compose(b);
    verify_symmetry(l, &c).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::poly::Poly;

    fn moebius(a: i64, b: i64, c: i64, d: i64) -> MoebiusMap {
        MoebiusMap::new(
            Cyclotomic::from_int(a),
            Cyclotomic::from_int(b),
            Cyclotomic::from_int(c),
            Cyclotomic::from_int(d),
        )
        .unwrap()
    }

    #[test]
    fn log_derivative_detection() {
        // (z (z-1))'/(z(z-1)) = (2z-1)/(z^2-z)
        let u = RatFunc::from_poly(Poly::from_ints(&[0, -1, 1]));
        let f = u.derivative().div(&u).unwrap();
        assert!(is_log_derivative(&f));
        // 1/z^2 is not
        let g = RatFunc::new(Poly::one(), Poly::from_ints(&[0, 0, 1]));
        assert!(!is_log_derivative(&g));
        // (1/2)/z is not (non-integer residue)
        let h = RatFunc::new(
            Poly::constant(Cyclotomic::from_rational(crate::scalars::rat(1, 2))),
            Poly::var(),
        );
        assert!(!is_log_derivative(&h));
    }

    #[test]
    fn fixed_points_of_negation() {
        let m = moebius(-1, 0, 0, 1);
        let pts = fixed_points(&m);
        assert!(pts.contains(&ProjPoint::zero()));
        assert!(pts.contains(&ProjPoint::Infinity));
    }

    #[test]
    fn candidate_generation_distinct_data() {
        // an operator with three singular points of pairwise different data
        // gives only the identity
        // L = z(z-1) D^2 + ... use exponent-distinct construction instead:
        // just fabricate singular data records.
        use crate::diffop::SingularPoint;
        let mk = |p: ProjPoint, exps: &[(i64, i64)]| SingularPoint {
            locus: Locus::Point(p),
            regular: true,
            exponents: exps
                .iter()
                .map(|&(n, d)| crate::scalars::rat(n, d))
                .collect(),
        };
        let sing = vec![
            mk(ProjPoint::zero(), &[(0, 1), (1, 2)]),
            mk(ProjPoint::from_int(1), &[(0, 1), (1, 3)]),
            mk(ProjPoint::Infinity, &[(0, 1), (1, 5)]),
        ];
        let c = moebius_candidates(&sing).unwrap();
        assert_eq!(c.candidates.len(), 1);
        assert!(c.candidates[0].is_identity());
    }

    #[test]
    fn diagonal_system_case() {
        // Y' = diag(2z, 1/z + 2z) Y is symmetric under z -> -z only
        // (among the coordinate involutions).
        let a1 = RatFunc::from_poly(Poly::from_ints(&[0, 2]));
        let a2 = RatFunc::new(Poly::one(), Poly::var())
            .add(&RatFunc::from_poly(Poly::from_ints(&[0, 2])));
        let diag = vec![a1, a2];
        let neg = moebius(-1, 0, 0, 1);
        assert!(diagonal_system_symmetry(&diag, &neg).unwrap().is_some());
        let inv = moebius(0, 1, 1, 0);
        assert!(diagonal_system_symmetry(&diag, &inv).unwrap().is_none());
        let minus_inv = moebius(0, -1, 1, 0);
        assert!(diagonal_system_symmetry(&diag, &minus_inv).unwrap().is_none());
        let id = MoebiusMap::identity();
        assert!(diagonal_system_symmetry(&diag, &id).unwrap().is_some());
    }
}
