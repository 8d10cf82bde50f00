//! Shared machinery for the verification runners.

use std::collections::BTreeMap;

use fano_core::error::{Error, Result};
use fano_core::funcfield::{MoebiusMap, ProjPoint, RatFunc};
use fano_core::galois::SymmetryRecord;
use fano_core::groups::{monomials, HomogPoly, VarSet};
use fano_core::linalg;
use fano_core::scalars::{Cyclotomic, Rational};
use fano_core::series::{relation_space, PuiseuxSeries, RelationSpace};

use crate::parser::{parse_moebius, parse_ratfunc, ParsedPoly};

pub fn perr(e: impl std::fmt::Display) -> Error {
    Error::Unsupported(e.to_string())
}

/// Evaluate a named-variable polynomial with constant coefficients through a
/// map of rational-function values.
pub fn eval_named_over_values(
    p: &ParsedPoly,
    values: &BTreeMap<String, RatFunc>,
) -> Result<RatFunc> {
    let VarSet::Named(labels) = &p.vars else {
        return Err(Error::ArityMismatch);
    };
    let mut acc = RatFunc::zero();
    for (exps, coeff) in &p.terms {
        let mut term = coeff.clone();
        for (idx, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let v = values
                .get(&labels[idx])
                .ok_or_else(|| Error::Unsupported(format!("missing value for {}", labels[idx])))?;
            term = term.mul(&v.pow(e as i64)?);
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Expand a named-variable polynomial whose names stand for matrix-variable
/// polynomials (the invariant definitions).
pub fn expand_named_into_matrix_vars(
    p: &ParsedPoly,
    defs: &BTreeMap<String, HomogPoly>,
) -> Result<HomogPoly> {
    let VarSet::Named(labels) = &p.vars else {
        return Err(Error::ArityMismatch);
    };
    let any = defs
        .values()
        .next()
        .ok_or_else(|| Error::Unsupported("no invariant definitions".into()))?;
    let target_vars = any.vars().clone();
    let mut acc = HomogPoly::zero(target_vars.clone());
    for (exps, coeff) in &p.terms {
        let c = coeff
            .as_constant()
            .ok_or_else(|| Error::Unsupported("matrix-variable expansion needs constant coefficients".into()))?;
        let mut term = HomogPoly::monomial(
            target_vars.clone(),
            vec![0; target_vars.len()],
            c,
        );
        for (idx, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let def = defs
                .get(&labels[idx])
                .ok_or_else(|| Error::Unsupported(format!("missing invariant {}", labels[idx])))?;
            term = term.mul(&def.pow(e as usize)?)?;
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// Convert a ParsedPoly with constant coefficients into witness-side terms.
pub fn witness_side(p: &ParsedPoly) -> Result<Vec<(Cyclotomic, Vec<(String, u32)>)>> {
    let VarSet::Named(labels) = &p.vars else {
        return Err(Error::ArityMismatch);
    };
    let mut out = Vec::new();
    for (exps, coeff) in &p.terms {
        let c = coeff
            .as_constant()
            .ok_or_else(|| Error::Unsupported("witness coefficients must be constant".into()))?;
        let term: Vec<(String, u32)> = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (labels[i].clone(), e as u32))
            .collect();
        out.push((c, term));
    }
    Ok(out)
}

/// Compare a set of symmetry records against expected map strings.
pub fn maps_match(records: &[SymmetryRecord], expected: &[String], var: &str) -> Result<bool> {
    let mut got: Vec<String> = records.iter().map(|r| r.map.sort_key()).collect();
    got.sort();
    let mut want = Vec::new();
    for s in expected {
        let m = parse_moebius(s, var).map_err(perr)?;
        want.push(m.sort_key());
    }
    want.sort();
    want.dedup();
    Ok(got == want)
}

/// Multiset of element orders of a finite set of Moebius maps (must be closed).
pub fn moebius_order_profile(maps: &[MoebiusMap]) -> Vec<usize> {
    let mut profile: Vec<usize> = maps
        .iter()
        .map(|m| {
            let mut pow = m.clone();
            let mut ord = 1;
            while !pow.is_identity() {
                pow = pow.compose(m);
                ord += 1;
                if ord > maps.len() + 1 {
                    break;
                }
            }
            ord
        })
        .collect();
    profile.sort_unstable();
    profile
}

/// Parse an expected rational-function string.
pub fn expected_ratfunc(text: &str, var: &str) -> Result<RatFunc> {
    parse_ratfunc(text, var).map_err(perr)
}

pub struct RescaleOutcome {
    pub scales: Vec<(String, Cyclotomic)>,
    pub space: RelationSpace,
}

/// Does the relation space contain the target polynomial after rescaling the
/// named solutions by constants? Searches a small candidate set (rationals
/// times a fourth root of unity), trying the identity rescale first. Returns
/// the successful scales.
pub fn contains_after_rescale(
    named: &[(String, PuiseuxSeries)],
    target: &HomogPoly,
    degree: usize,
    surplus: usize,
) -> Result<Option<RescaleOutcome>> {
    let space = relation_space(named, degree, surplus)?;
    if space.basis.is_empty() {
        return Ok(None);
    }
    let nvars = named.len();
    let monos = monomials(nvars, degree);
    // coordinates of the null space basis
    let mut basis_rows: Vec<Vec<Cyclotomic>> = Vec::new();
    for b in &space.basis {
        basis_rows.push(b.coords_over(&monos).ok_or(Error::ArityMismatch)?);
    }
    let target_coords = target.coords_over(&monos).ok_or(Error::ArityMismatch)?;
    let base_rank = linalg::rank(&basis_rows);

    let mut candidates: Vec<Cyclotomic> = Vec::new();
    let i = Cyclotomic::zeta(4)?;
    for mag in [1i64, 2, 3, 4, 8, 9, 27, 81] {
        for num_den in [(mag, 1i64), (1, mag)] {
            let r = Cyclotomic::from_rational(Rational::new(
                num_den.0.into(),
                num_den.1.into(),
            ));
            for unit in [Cyclotomic::one(), -&Cyclotomic::one(), i.clone(), -&i] {
                let v = &r * &unit;
                if !candidates.contains(&v) {
                    candidates.push(v);
                }
            }
        }
    }

    // the target vector after rescale: coefficient of monomial e gets
    // multiplied by prod scale_k^(e_k)
    let check = |scales: &[Cyclotomic]| -> bool {
        let mut v = Vec::with_capacity(target_coords.len());
        for (e, c) in monos.iter().zip(target_coords.iter()) {
            let mut x = c.clone();
            if !x.is_zero() {
                for (k, &p) in e.iter().enumerate() {
                    if p > 0 {
                        x = &x * &scales[k].pow(p as i64).unwrap();
                    }
                }
            }
            v.push(x);
        }
        let mut rows = basis_rows.clone();
        rows.push(v);
        linalg::rank(&rows) == base_rank
    };

    // identity first
    let ones = vec![Cyclotomic::one(); nvars];
    if check(&ones) {
        return Ok(Some(RescaleOutcome {
            scales: named
                .iter()
                .map(|(l, _)| (l.clone(), Cyclotomic::one()))
                .collect(),
            space,
        }));
    }
    if nvars == 3 {
        // fix the first scale to 1: containment in a linear space is
        // invariant under global scaling of the target
        for b in &candidates {
            for c in &candidates {
                let scales = vec![Cyclotomic::one(), b.clone(), c.clone()];
                if check(&scales) {
                    return Ok(Some(RescaleOutcome {
                        scales: named
                            .iter()
                            .zip(scales.iter())
                            .map(|((l, _), s)| (l.clone(), s.clone()))
                            .collect(),
                        space,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Verify that a relation holds exactly on rescaled solutions: the target
/// evaluated at (scale_k * solution_k) is the zero series.
pub fn relation_holds_on_rescaled(
    named: &[(String, PuiseuxSeries)],
    scales: &[(String, Cyclotomic)],
    target: &HomogPoly,
) -> Result<bool> {
    let rescaled: Vec<(String, PuiseuxSeries)> = named
        .iter()
        .map(|(l, s)| {
            let scale = scales
                .iter()
                .find(|(k, _)| k == l)
                .map(|(_, v)| v.clone())
                .unwrap_or_else(Cyclotomic::one);
            (l.clone(), s.scale(&scale))
        })
        .collect();
    let v = fano_core::series::eval_on_named(target, &rescaled)?;
    Ok(v.is_zero_series())
}

/// Pretty exponent list.
pub fn exponents_string(exps: &[Rational]) -> String {
    exps.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")
}

/// Parse a projective point from text ("inf" or a constant expression).
pub fn parse_point(text: &str) -> Result<ProjPoint> {
    if text == "inf" {
        return Ok(ProjPoint::Infinity);
    }
    let c = crate::parser::parse_constant(text).map_err(perr)?;
    Ok(ProjPoint::Finite(c))
}
