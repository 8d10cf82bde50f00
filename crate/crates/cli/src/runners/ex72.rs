//! Verification of the order-two reversible equation with infinite dihedral
//! Galois group: closed-form solutions, the invariant table, the basic
//! witness, the printed relations (one of which is a confirmed discrepancy),
//! invariance of the relation ideal, and the symmetry lift.

use std::collections::BTreeMap;

use fano_core::error::Result;
use fano_core::funcfield::{ProjPoint, RatFunc};
use fano_core::galois::{
    compute_lift, knabla_presentation, lift_normalizes, symmetry_group, Classification,
    LiftBounds, LiftStatus, SymmetryGroupData, WitnessExpr,
};
use fano_core::groups::{fixes_ideal, GroupElement, HomogPoly, VarSet, DEFAULT_DEGREE_CAP};
use fano_core::scalars::Cyclotomic;
use fano_core::series::{
    apply_to_series, closed_form_series, dual_first_integral, eval_invariant, Integrand,
    PowerAtom, PuiseuxSeries, Recipe, SolutionMatrix,
};

use crate::groupdata::{bundled as groups_bundled, load_group_str};
use crate::parser::{parse_operator, parse_poly, parse_ratfunc};
use crate::report::{CheckRecord, Report, Status};
use crate::runners::common::*;
use crate::scenario::Scenario;

pub struct Ex72Outcome {
    pub report: Report,
    pub values: BTreeMap<String, RatFunc>,
    pub verified_relations: Vec<HomogPoly>,
}

/// Build the two closed-form solutions for one choice of the quartic-root
/// branch beta (beta^4 = -1); the square root driving the exponential part is
/// coupled as beta^2.
pub fn closed_forms(
    base: &RatFunc,
    order: i64,
    beta: &Cyclotomic,
) -> Result<(PuiseuxSeries, PuiseuxSeries)> {
    let beta2 = beta.pow(2)?;
    let quartic = PowerAtom {
        base: base.clone(),
        num: 1,
        den: 4,
        branch: Some(beta.clone()),
    };
    let integrand = PowerAtom {
        base: base.clone(),
        num: -1,
        den: 2,
        branch: Some(beta2),
    };
    let at0 = ProjPoint::zero();
    let y1 = closed_form_series(
        &Recipe {
            factors: vec![quartic.clone()],
            exp_integrand: Some(Integrand::Power {
                scale: Cyclotomic::one(),
                atom: integrand.clone(),
            }),
        },
        &at0,
        order,
    )?;
    let y2 = closed_form_series(
        &Recipe {
            factors: vec![quartic],
            exp_integrand: Some(Integrand::Power {
                scale: Cyclotomic::from_int(-1),
                atom: integrand,
            }),
        },
        &at0,
        order,
    )?;
    Ok((y1, y2))
}

pub fn run(order_override: Option<usize>) -> Result<Ex72Outcome> {
    let sc = Scenario::bundled("7.2")?;
    let var = sc.variable.clone();
    let order = order_override.or(sc.order).unwrap_or(60);
    let mut report = Report::new(&sc.name);
    report.scope_note(
        "the exact sequence of the main theorem is exercised here only through the symmetry, \
         lift and invariance checks; the full Galois-theoretic statement is out of desk scope",
    );

    let l = parse_operator(sc.operator_text("L")?, &var).map_err(perr)?;
    let l_printed = parse_operator(sc.operator_text("L_printed")?, &var).map_err(perr)?;
    let base = parse_ratfunc("z^4 - 1", &var).map_err(perr)?;

    // the two quartic-root branches: zeta_8 and zeta_8 * i
    let beta1 = Cyclotomic::zeta(8)?;
    let beta2 = &beta1 * &Cyclotomic::zeta(4)?;
    let mvars = VarSet::Matrix(2);

    let mut per_branch_values: Vec<BTreeMap<String, RatFunc>> = Vec::new();
    let mut defs: BTreeMap<String, HomogPoly> = BTreeMap::new();
    let mut degrees: BTreeMap<String, usize> = BTreeMap::new();
    let mut first_matrix: Option<SolutionMatrix> = None;
    let mut invariant_series: Vec<(String, PuiseuxSeries)> = Vec::new();

    for (bi, beta) in [beta1.clone(), beta2.clone()].iter().enumerate() {
        let (y1, y2) = closed_forms(&base, order as i64 + 8, beta)?;
        // criterion: the solutions solve the equation to the stated order
        for (name, y) in [("Y1", &y1), ("Y2", &y2)] {
            let res = apply_to_series(&l, y);
            let ok = res.is_zero_series()
                && res.bound() >= fano_core::scalars::rat(order as i64, 1);
            report.push(
                CheckRecord::new(
                    format!("branch {}: L({}) = 0 mod t^{}", bi + 1, name, order),
                    if ok { Status::Pass } else { Status::Fail },
                )
                .with_order(format!("{}", res.bound())),
            );
        }
        let s = SolutionMatrix::from_solutions(
            ProjPoint::zero(),
            vec![y1.clone(), y2.clone()],
            None,
        )?;
        let mut values = BTreeMap::new();
        for (name, spec) in &sc.invariants {
            let pp = parse_poly(&spec.poly, &mvars, &var).map_err(perr)?;
            let hp = pp
                .as_homog()
                .ok_or_else(|| perr("invariant coefficients must be constant"))?;
            if bi == 0 {
                let series = eval_invariant(&hp, &s)?;
                invariant_series.push((name.clone(), series));
            }
            let integral = dual_first_integral(&hp, &s, 12, 12, 10)?;
            let expected = expected_ratfunc(&spec.expected, &var)?;
            match integral {
                Some(df) if df.value == expected => {
                    report.push(
                        CheckRecord::pass(format!("branch {}: invariant {}", bi + 1, name))
                            .with_value("value", df.value.to_string()),
                    );
                    values.insert(name.clone(), df.value);
                }
                Some(df) => {
                    report.push(
                        CheckRecord::fail(
                            format!("branch {}: invariant {}", bi + 1, name),
                            format!("got {}, expected {}", df.value, expected),
                        ),
                    );
                    values.insert(name.clone(), df.value);
                }
                None => {
                    report.push(CheckRecord::fail(
                        format!("branch {}: invariant {}", bi + 1, name),
                        "evaluation did not reconstruct to a rational function",
                    ));
                }
            }
            if bi == 0 {
                degrees.insert(name.clone(), hp.degree().unwrap_or(0));
                defs.insert(name.clone(), hp);
            }
        }
        per_branch_values.push(values);
        if bi == 0 {
            first_matrix = Some(s);
        }
    }

    // printed-equation discrepancy: the closed forms do not satisfy the
    // operator with the printed denominator 1 + z^4
    {
        let (y1, _) = closed_forms(&base, 24, &beta1)?;
        let res = apply_to_series(&l_printed, &y1);
        report.push(
            CheckRecord::new(
                "printed equation denominator (flagged)",
                if res.is_zero_series() {
                    Status::Fail
                } else {
                    Status::FlaggedDiscrepancy
                },
            )
            .with_value("printed residual lead exponent", format!("{}", res.lead_exponent()))
            .with_note(
                "the printed denominator 1 + z^4 contradicts the printed solutions; their \
                 logarithmic derivative satisfies y'' = ((z^4 - 3z^2 - 1)/(z^4 - 1)^2) y, \
                 which is the operator verified here",
            ),
        );
    }

    let branch_independent = per_branch_values.len() == 2
        && per_branch_values[0] == per_branch_values[1];
    report.push(CheckRecord::new(
        "both quartic-root branches give the same seven values",
        if branch_independent { Status::Pass } else { Status::Fail },
    ));
    let values = per_branch_values.into_iter().next().unwrap_or_default();
    let s = first_matrix.expect("first branch matrix");

    // basic witness
    if let Some(w) = &sc.witness {
        let named: BTreeMap<String, (RatFunc, usize)> = values
            .iter()
            .map(|(k, v)| (k.clone(), (v.clone(), *degrees.get(k).unwrap_or(&0))))
            .collect();
        let nvars = VarSet::Named(values.keys().cloned().collect());
        let wnum = witness_side(&parse_poly(&w.num, &nvars, &var).map_err(perr)?)?;
        let wden = witness_side(&parse_poly(&w.den, &nvars, &var).map_err(perr)?)?;
        let wexpr = WitnessExpr { num: wnum, den: wden };
        // assemble the dual first integrals for the presentation
        let integrals: Vec<fano_core::series::DualFirstIntegral> = values
            .iter()
            .map(|(k, v)| fano_core::series::DualFirstIntegral {
                poly: defs.get(k).unwrap().clone(),
                value: v.clone(),
                degree: *degrees.get(k).unwrap(),
            })
            .collect();
        let pres = knabla_presentation(&integrals, Some((&wexpr, &named)))?;
        let expected = expected_ratfunc(&w.expected, &var)?;
        let ok = pres.witness_value.as_ref() == Some(&expected)
            && pres.classification == Classification::Basic;
        report.push(
            CheckRecord::new(
                "basic witness (4*X41 + X21^2)/(2*X44) = z",
                if ok { Status::Pass } else { Status::Fail },
            )
            .with_value(
                "witness",
                pres.witness_value
                    .as_ref()
                    .map(|v| v.to_string())
                    .unwrap_or_else(|| "<none>".into()),
            )
            .with_value("classification", format!("{:?}", pres.classification))
            .with_note("the constant-integral test also passes (X21 has constant value -2)"),
        );
        report.push(CheckRecord::pass("ratio generators emitted").with_value(
            "count",
            pres.ratio_generators.len().to_string(),
        ));
    }

    // printed relations: five vanish, the fourth is a confirmed discrepancy
    let nvars = VarSet::Named(values.keys().cloned().collect());
    let mut verified_relations: Vec<HomogPoly> = Vec::new();
    for (ri, rel) in sc.relations.iter().enumerate() {
        let pp = parse_poly(&rel.poly, &nvars, &var).map_err(perr)?;
        let value = eval_named_over_values(&pp, &values)?;
        let expanded = expand_named_into_matrix_vars(&pp, &defs)?;
        // series route: evaluate the relation on the invariant series
        let hp = pp
            .as_homog()
            .ok_or_else(|| perr("relation coefficients must be constant"))?;
        let series_value = fano_core::series::eval_on_named(&hp, &invariant_series)?;
        if rel.flagged {
            let expected = expected_ratfunc(&rel.expected, &var)?;
            let matches = value == expected && !value.is_zero();
            report.push(
                CheckRecord::new(
                    format!("printed relation {} (flagged)", ri + 1),
                    if matches {
                        Status::FlaggedDiscrepancy
                    } else {
                        Status::Fail
                    },
                )
                .with_value("computed", value.to_string())
                .with_note(
                    "the printed generator does not vanish on the solutions; \
                     the computed value is recorded as a confirmed discrepancy",
                ),
            );
        } else {
            let ok = value.is_zero() && series_value.is_zero_series();
            report.push(
                CheckRecord::new(
                    format!("printed relation {} vanishes", ri + 1),
                    if ok { Status::Pass } else { Status::Fail },
                )
                .with_order(format!("{}", series_value.bound())),
            );
            if ok {
                verified_relations.push(expanded);
            }
        }
    }

    // invariance of the verified relations under the lambda-torus, the
    // rotation, and diag(1, -1)
    let dinf = load_group_str(groups_bundled::DINF)?;
    let mut invariance_ok = true;
    for (name, elem) in dinf
        .torus
        .iter()
        .map(|t| ("lambda-torus", t.clone()))
        .chain(dinf.generator_matrices.iter().enumerate().map(|(k, m)| {
            (
                if k == 0 { "antidiagonal rotation" } else { "diag(1,-1)" },
                GroupElement::from_const(m),
            )
        }))
    {
        let ok = fixes_ideal(&elem, &verified_relations, DEFAULT_DEGREE_CAP)?;
        invariance_ok &= ok;
        report.push(CheckRecord::new(
            format!("relation ideal fixed by {}", name),
            if ok { Status::Pass } else { Status::Fail },
        ));
    }
    let _ = invariance_ok;

    // symmetry group and lift
    let sym = symmetry_group(&l)?;
    let ok = maps_match(&sym.records, &sc.symmetries, &var)?;
    report.push(
        CheckRecord::new(
            "symmetry group is {z, -z}",
            if ok { Status::Pass } else { Status::Fail },
        )
        .with_value("count", sym.records.len().to_string()),
    );
    if let Some(rec) = sym.records.iter().find(|r| !r.map.is_identity()) {
        let factor_one = rec.factor.is_one();
        report.push(CheckRecord::new(
            "factor of z -> -z equals 1",
            if factor_one { Status::Pass } else { Status::Fail },
        ));
        let lifted = compute_lift(rec, &s, &LiftBounds::default())?;
        let status_ok = lifted.lift_status == LiftStatus::Computed;
        report.push(
            CheckRecord::new(
                "lift of z -> -z computed from the closed-form basis",
                if status_ok { Status::Pass } else { Status::Fail },
            )
            .with_note(format!("lift status: {:?}", lifted.lift_status)),
        );
        if status_ok {
            let normalizes = lift_normalizes(
                &lifted,
                &SymmetryGroupData::InfiniteDihedral,
                &verified_relations,
                DEFAULT_DEGREE_CAP,
            )?;
            report.push(CheckRecord::new(
                "lift constants normalize the dihedral group and fix the relations",
                if normalizes { Status::Pass } else { Status::Fail },
            ));
        }
    }

    Ok(Ex72Outcome { report, values, verified_relations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dbg_wronskian() {
        use fano_core::funcfield::ProjPoint;
        use fano_core::scalars::Cyclotomic;
        use fano_core::series::{dual_first_integral, eval_invariant, SolutionMatrix};
        use fano_core::groups::{HomogPoly, VarSet};
        use crate::parser::{parse_poly, parse_ratfunc};
        let base = parse_ratfunc("z^4 - 1", "z").unwrap();
        let beta = Cyclotomic::zeta(8).unwrap();
        let (y1, y2) = crate::runners::ex72::closed_forms(&base, 30, &beta).unwrap();
        println!("y1 = {}", y1);
        println!("y2 lead = {} coeff {:?}", y2.lead_exponent(), y2.leading_coeff());
        let s = SolutionMatrix::from_solutions(ProjPoint::zero(), vec![y1, y2], None).unwrap();
        let vars = VarSet::Matrix(2);
        let w = parse_poly("X11*X22 - X12*X21", &vars, "z").unwrap().as_homog().unwrap();
        let val = eval_invariant(&w, &s).unwrap();
        println!("wronskian series = {}", val);
        let l = crate::parser::parse_operator("y'' - ((z^4 - 3*z^2 - 1)/(1 + z^4))*y", "z").unwrap();
        let (y1b, _) = crate::runners::ex72::closed_forms(&base, 30, &beta).unwrap();
        println!("y1 bound = {}", y1b.bound());
        let r = fano_core::series::apply_to_series(&l, &y1b);
        println!("residual zero={} bound={} lead={} first coeffs={:?}", r.is_zero_series(), r.bound(), r.lead_exponent(), &r.coeffs()[..r.len().min(4)]);
        let df = dual_first_integral(&w, &s, 6, 6, 6).unwrap();
        println!("reconstructed: {:?}", df.map(|d| d.value.to_string()));
        let x41 = parse_poly("(X11*X21)^2", &vars, "z").unwrap().as_homog().unwrap();
        let v41 = eval_invariant(&x41, &s).unwrap();
        println!("x41 head: lead {} first coeffs {:?}", v41.lead_exponent(), &v41.coeffs()[..6.min(v41.len())]);
    }


    #[test]
    fn example_72_quick() {
        let out = run(Some(34)).unwrap();
        for c in &out.report.checks {
            println!("{:?} {}", c.status, c.name);
            for n in &c.notes { println!("   note: {}", n); }
            for (k, v) in &c.values { println!("   {} = {}", k, v); }
        }
        assert!(out.report.ok(), "7.2 quick report has failures");
    }

    #[test]
    #[ignore]
    fn example_72_full_run() {
        let out = run(Some(60)).unwrap();
        println!("{}", out.report.to_text());
        assert!(out.report.ok(), "7.2 report has failures");
        assert_eq!(out.verified_relations.len(), 5);
        assert_eq!(out.values.len(), 7);
        let flagged = out
            .report
            .checks
            .iter()
            .filter(|c| c.status == crate::report::Status::FlaggedDiscrepancy)
            .count();
        assert_eq!(flagged, 2);
    }
}
