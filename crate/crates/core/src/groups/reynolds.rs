//! Reynolds averaging: exact invariant spaces of finite matrix groups.

use crate::error::Result;
use crate::linalg;
use crate::scalars::{Cyclotomic, Rational};

use super::group::FiniteMatrixGroup;
use super::homogpoly::{monomials, HomogPoly, VarSet};

/// Average a polynomial over the group: (1/|G|) sum_g P^g.
pub fn reynolds_average(g: &FiniteMatrixGroup, p: &HomogPoly) -> Result<HomogPoly> {
    let mut acc = HomogPoly::zero(p.vars().clone());
    for m in g.elements() {
        acc = acc.add(&p.transform(m)?)?;
    }
    let scale = Cyclotomic::from_rational(
        Rational::new(1.into(), num::BigInt::from(g.order() as i64)),
    );
    Ok(acc.scale(&scale))
}

/// Basis of the degree-d invariants of the group acting on n named solution
/// variables, by averaging monomials and reducing to a basis. Every output is
/// verified fixed by every generator.
pub fn reynolds_invariants(g: &FiniteMatrixGroup, degree: usize) -> Result<Vec<HomogPoly>> {
    let n = g.dimension();
    let labels: Vec<String> = (1..=n).map(|i| format!("v{}", i)).collect();
    let vars = VarSet::Named(labels);
    let monos = monomials(n, degree);
    let mut rows: Vec<Vec<Cyclotomic>> = Vec::new();
    let mut polys: Vec<HomogPoly> = Vec::new();
    for e in &monos {
        let m = HomogPoly::monomial(vars.clone(), e.clone(), Cyclotomic::one());
        let avg = reynolds_average(g, &m)?;
        if avg.is_zero() {
            continue;
        }
        let coords = avg.coords_over(&monos).expect("degree preserved");
        rows.push(coords);
        polys.push(avg);
    }
    // reduce: keep rows that increase the rank
    let mut basis_rows: Vec<Vec<Cyclotomic>> = Vec::new();
    let mut basis: Vec<HomogPoly> = Vec::new();
    for (row, poly) in rows.into_iter().zip(polys.into_iter()) {
        let r0 = linalg::rank(&basis_rows);
        basis_rows.push(row);
        if linalg::rank(&basis_rows) == r0 {
            basis_rows.pop();
        } else {
            basis.push(poly.normalized());
        }
    }
    // verify invariance under every generator
    for p in &basis {
        for gen in g.generators() {
            debug_assert_eq!(&p.transform(gen)?, p, "Reynolds output not invariant");
        }
    }
    Ok(basis)
}

/// Dimension of the degree-d invariant space.
pub fn invariant_dimension(g: &FiniteMatrixGroup, degree: usize) -> Result<usize> {
    Ok(reynolds_invariants(g, degree)?.len())
}

/// Rank of a quadratic form given as a degree-2 polynomial in n variables.
pub fn quadratic_form_rank(p: &HomogPoly) -> Option<usize> {
    if p.degree() != Some(2) {
        return None;
    }
    let n = p.vars().len();
    let mut m = vec![vec![Cyclotomic::zero(); n]; n];
    let half = Cyclotomic::from_rational(Rational::new(1.into(), 2.into()));
    for (e, c) in p.terms() {
        let idx: Vec<usize> = e
            .iter()
            .enumerate()
            .flat_map(|(i, &x)| std::iter::repeat(i).take(x as usize))
            .collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            m[i][i] = &m[i][i] + c;
        } else {
            let h = c * &half;
            m[i][j] = &m[i][j] + &h;
            m[j][i] = &m[j][i] + &h;
        }
    }
    Some(linalg::rank(&m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn cyc2() -> FiniteMatrixGroup {
        // <diag(-1, -1)> acting on 2 variables
        let m: Matrix = vec![
            vec![Cyclotomic::from_int(-1), Cyclotomic::zero()],
            vec![Cyclotomic::zero(), Cyclotomic::from_int(-1)],
        ];
        FiniteMatrixGroup::closure(&[m], 10, false).unwrap()
    }

    #[test]
    fn trivial_group_all_monomials() {
        let id: Matrix = crate::linalg::identity(2);
        let g = FiniteMatrixGroup::closure(&[id], 10, false).unwrap();
        let inv = reynolds_invariants(&g, 3).unwrap();
        assert_eq!(inv.len(), 4); // all degree-3 monomials in 2 vars
    }

    #[test]
    fn odd_degrees_die_under_minus_identity() {
        let g = cyc2();
        assert_eq!(invariant_dimension(&g, 3).unwrap(), 0);
        assert_eq!(invariant_dimension(&g, 2).unwrap(), 3);
    }

    #[test]
    fn projector_idempotent() {
        let g = cyc2();
        let invs = reynolds_invariants(&g, 2).unwrap();
        for p in &invs {
            let again = reynolds_average(&g, p).unwrap();
            assert_eq!(&again, p);
        }
    }

    #[test]
    fn rank_of_conic() {
        // xy - z^2 has rank 3
        let vars = VarSet::Named(vec!["X".into(), "Y".into(), "Z".into()]);
        let xy = HomogPoly::var(vars.clone(), 0)
            .mul(&HomogPoly::var(vars.clone(), 1))
            .unwrap();
        let z2 = HomogPoly::var(vars.clone(), 2)
            .mul(&HomogPoly::var(vars, 2))
            .unwrap();
        let p = xy.sub(&z2).unwrap();
        assert_eq!(quadratic_form_rank(&p), Some(3));
    }
}
