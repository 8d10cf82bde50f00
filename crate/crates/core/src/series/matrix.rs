//! Matrices of series: solution matrices (rows are z-derivatives), system
//! fundamental matrices, and exact truncated inversion.

use num::{BigInt, ToPrimitive, Zero};

use crate::diffop::{DiffOp, LinearSystem, Side};
use crate::error::{Error, Result};
use crate::funcfield::ProjPoint;
use crate::scalars::{Cyclotomic, Rational};

use super::puiseux::{expand_ratfunc, PuiseuxSeries};
use super::solve::ordinary_basis_solutions;

pub type SeriesMatrix = Vec<Vec<PuiseuxSeries>>;

/// Multiply two series matrices.
pub fn mat_mul(a: &SeriesMatrix, b: &SeriesMatrix) -> Result<SeriesMatrix> {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(m);
        for j in 0..m {
            let mut acc: Option<PuiseuxSeries> = None;
            for l in 0..k {
                let t = a[i][l].mul(&b[l][j])?;
                acc = Some(match acc {
                    None => t,
                    Some(s) => s.add(&t)?,
                });
            }
            row.push(acc.unwrap());
        }
        out.push(row);
    }
    Ok(out)
}

/// Does the matrix equal the identity to its available order?
pub fn is_identity(m: &SeriesMatrix) -> bool {
    for (i, row) in m.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let want = if i == j { Cyclotomic::one() } else { Cyclotomic::zero() };
            let diff = e.add_const(&-&want);
            if !diff.is_zero_series() {
                return false;
            }
        }
    }
    true
}

/// Determinant by cofactor expansion (desk-scale dimensions).
pub fn determinant(m: &SeriesMatrix) -> Result<PuiseuxSeries> {
    let n = m.len();
    match n {
        1 => Ok(m[0][0].clone()),
        2 => m[0][0].mul(&m[1][1])?.sub(&m[0][1].mul(&m[1][0])?),
        3 => {
            let mut acc: Option<PuiseuxSeries> = None;
            for j in 0..3 {
                let minor = m[1][(j + 1) % 3].mul(&m[2][(j + 2) % 3])?
                    .sub(&m[1][(j + 2) % 3].mul(&m[2][(j + 1) % 3])?)?;
                let term = m[0][j].mul(&minor)?;
                acc = Some(match acc {
                    None => term,
                    Some(s) => s.add(&term)?,
                });
            }
            Ok(acc.unwrap())
        }
        _ => Err(Error::Unsupported(format!("determinant of {}x{} series matrix", n, n))),
    }
}

/// Inverse via the adjugate; requires the truncated determinant to have an
/// invertible leading term.
pub fn invert_matrix_series(m: &SeriesMatrix) -> Result<SeriesMatrix> {
    let n = m.len();
    let det = determinant(m)?;
    if det.is_zero_series() {
        return Err(Error::SingularLeadingTerm);
    }
    let det_inv = det.inverse().map_err(|_| Error::SingularLeadingTerm)?;
    match n {
        1 => Ok(vec![vec![det_inv]]),
        2 => {
            let a = &m[0][0];
            let b = &m[0][1];
            let c = &m[1][0];
            let d = &m[1][1];
            Ok(vec![
                vec![d.mul(&det_inv)?, b.neg().mul(&det_inv)?],
                vec![c.neg().mul(&det_inv)?, a.mul(&det_inv)?],
            ])
        }
        3 => {
            let mut adj = vec![vec![PuiseuxSeries::zero(
                m[0][0].base().clone(),
                Rational::zero(),
                1,
            ); 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    // cofactor C_ij, transposed into adj[j][i]
                    let r = [(i + 1) % 3, (i + 2) % 3];
                    let c = [(j + 1) % 3, (j + 2) % 3];
                    let minor = m[r[0]][c[0]].mul(&m[r[1]][c[1]])?
                        .sub(&m[r[0]][c[1]].mul(&m[r[1]][c[0]])?)?;
                    adj[j][i] = minor.mul(&det_inv)?;
                }
            }
            Ok(adj)
        }
        _ => Err(Error::Unsupported(format!("inverse of {}x{} series matrix", n, n))),
    }
}

/// An n x n fundamental solution matrix: column j is a solution, row i its
/// (i)-th derivative with respect to the global variable z.
#[derive(Clone)]
pub struct SolutionMatrix {
    base: ProjPoint,
    entries: SeriesMatrix,
    labels: Option<Vec<String>>,
}

impl SolutionMatrix {
    /// Build from the solutions themselves (row 0), differentiating for the
    /// remaining rows.
    pub fn from_solutions(
        base: ProjPoint,
        solutions: Vec<PuiseuxSeries>,
        labels: Option<Vec<String>>,
    ) -> Result<SolutionMatrix> {
        let n = solutions.len();
        if n == 0 {
            return Err(Error::ArityMismatch);
        }
        let mut entries: SeriesMatrix = vec![solutions];
        for i in 1..n {
            let prev = &entries[i - 1];
            let row: Vec<PuiseuxSeries> = prev.iter().map(|s| s.derivative_z()).collect();
            entries.push(row);
        }
        Ok(SolutionMatrix { base, entries, labels })
    }

    /// Wrap a raw matrix (used when entries are system components rather than
    /// derivatives of a scalar solution).
    pub fn from_entries(
        base: ProjPoint,
        entries: SeriesMatrix,
        labels: Option<Vec<String>>,
    ) -> SolutionMatrix {
        SolutionMatrix { base, entries, labels }
    }

    pub fn base(&self) -> &ProjPoint {
        &self.base
    }

    pub fn dimension(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &SeriesMatrix {
        &self.entries
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn entry(&self, i: usize, j: usize) -> &PuiseuxSeries {
        &self.entries[i][j]
    }

    pub fn column(&self, j: usize) -> Vec<PuiseuxSeries> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn invert(&self) -> Result<SeriesMatrix> {
        invert_matrix_series(&self.entries)
    }

    pub fn determinant(&self) -> Result<PuiseuxSeries> {
        determinant(&self.entries)
    }
}

/// Unit-triangular ordinary basis as a solution matrix.
pub fn ordinary_basis(l: &DiffOp, p: &ProjPoint, k: usize) -> Result<SolutionMatrix> {
    let sols = ordinary_basis_solutions(l, p, k)?;
    SolutionMatrix::from_solutions(p.clone(), sols, None)
}

/// Expand the system matrix entries at a base point.
pub fn system_series(a: &LinearSystem, base: &ProjPoint, order: i64) -> SeriesMatrix {
    a.matrix
        .iter()
        .map(|row| row.iter().map(|f| expand_ratfunc(f, base, order)).collect())
        .collect()
}

/// Residual S' - A S (solution side) or S' + S A (integral side) of a series
/// matrix against a linear system.
pub fn system_residual(s: &SeriesMatrix, sys: &LinearSystem, base: &ProjPoint) -> Result<SeriesMatrix> {
    let n = sys.dimension();
    let order = s
        .iter()
        .flatten()
        .map(|e| e.bound())
        .min()
        .unwrap_or_else(Rational::zero)
        .ceil()
        .to_integer()
        .to_i64()
        .unwrap_or(0)
        .abs()
        + 8;
    let a = system_series(sys, base, order);
    let ds: SeriesMatrix = s
        .iter()
        .map(|row| row.iter().map(|e| e.derivative_z()).collect())
        .collect();
    let prod = match sys.side {
        Side::Solution => mat_mul(&a, s)?,
        Side::Integral => mat_mul(s, &a)?,
    };
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            row.push(ds[i][j].sub(&prod[i][j])?);
        }
        out.push(row);
    }
    Ok(out)
}

/// Fundamental matrix of Y' = AY at an ordinary point of the system, with
/// unit initial conditions, K retained steps.
pub fn system_fundamental_matrix(
    sys: &LinearSystem,
    base: &ProjPoint,
    k: usize,
) -> Result<SeriesMatrix> {
    if sys.side != Side::Solution {
        return Err(Error::Unsupported("fundamental matrix needs a solution-side system".into()));
    }
    let n = sys.dimension();
    let a = system_series(sys, base, k as i64 + 2);
    // reject singular base points
    for row in &a {
        for e in row {
            if e.lead_exponent() < &Rational::zero() && !e.is_zero_series() {
                return Err(Error::SingularBasePoint);
            }
        }
    }
    // coefficient recursion: c_{m+1} = (1/(m+1)) sum_{j<=m} A_j c_{m-j}
    let mut cols: SeriesMatrix = Vec::new();
    for col in 0..n {
        let mut coeffs: Vec<Vec<Cyclotomic>> = vec![vec![Cyclotomic::zero(); n]; k];
        coeffs[0][col] = Cyclotomic::one();
        for m in 0..k - 1 {
            let mut nxt = vec![Cyclotomic::zero(); n];
            for j in 0..=m {
                for r in 0..n {
                    for c in 0..n {
                        let aj = a[r][c].coeff_at(&Rational::from_integer(BigInt::from(j)));
                        let Some(aj) = aj else { continue };
                        if aj.is_zero() || coeffs[m - j][c].is_zero() {
                            continue;
                        }
                        let t = &aj * &coeffs[m - j][c];
                        nxt[r] = &nxt[r] + &t;
                    }
                }
            }
            let inv = Cyclotomic::from_rational(Rational::new(
                BigInt::from(1),
                BigInt::from(m as i64 + 1),
            ));
            for r in 0..n {
                coeffs[m + 1][r] = &nxt[r] * &inv;
            }
        }
        let mut colvec = Vec::with_capacity(n);
        for r in 0..n {
            let cs: Vec<Cyclotomic> = (0..k).map(|m| coeffs[m][r].clone()).collect();
            colvec.push(PuiseuxSeries::new(base.clone(), Rational::zero(), 1, cs));
        }
        cols.push(colvec);
    }
    // transpose columns into the matrix layout
    let mut out = vec![Vec::with_capacity(n); n];
    for r in 0..n {
        for col in cols.iter() {
            out[r].push(col[r].clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::{Poly, RatFunc};
    use crate::scalars::rat;

    fn at0() -> ProjPoint {
        ProjPoint::zero()
    }

    #[test]
    fn invert_identity_plus_nilpotent() {
        // (I + tN)^{-1} = I - tN for N = [[0,1],[0,0]]
        let z = |b: i64| {
            PuiseuxSeries::new(
                at0(),
                Rational::zero(),
                1,
                (0..6)
                    .map(|k| {
                        if k == 0 {
                            Cyclotomic::from_int(b)
                        } else {
                            Cyclotomic::zero()
                        }
                    })
                    .collect(),
            )
        };
        let t = PuiseuxSeries::new(
            at0(),
            Rational::zero(),
            1,
            vec![
                Cyclotomic::zero(),
                Cyclotomic::one(),
                Cyclotomic::zero(),
                Cyclotomic::zero(),
                Cyclotomic::zero(),
                Cyclotomic::zero(),
            ],
        );
        let m: SeriesMatrix = vec![vec![z(1), t.clone()], vec![z(0), z(1)]];
        let inv = invert_matrix_series(&m).unwrap();
        let prod = mat_mul(&m, &inv).unwrap();
        assert!(is_identity(&prod));
        assert_eq!(inv[0][1].coeff_at(&rat(1, 1)).unwrap(), Cyclotomic::from_int(-1));
    }

    #[test]
    fn companion_integral_identity() {
        // For L = D^2 - z (Airy-like), S the ordinary basis at 0:
        // (S^{-1})' = -S^{-1} A with A = companion(L).
        let l = DiffOp::new(vec![RatFunc::var().neg(), RatFunc::zero(), RatFunc::one()]);
        let s = ordinary_basis(&l, &at0(), 18).unwrap();
        let sinv = s.invert().unwrap();
        let sys = LinearSystem::companion(&l).adjoint(); // integral side, matrix -A
        let res = system_residual(&sinv, &sys, &at0()).unwrap();
        for row in &res {
            for e in row {
                assert!(e.is_zero_series(), "residual {:?}", e);
            }
        }
        // and S S^{-1} = I
        let prod = mat_mul(s.entries(), &sinv).unwrap();
        assert!(is_identity(&prod));
    }

    #[test]
    fn fundamental_matrix_of_constant_system() {
        // Y' = [[0,1],[0,0]] Y has fundamental matrix [[1, t],[0,1]].
        let a = LinearSystem::new(
            vec![
                vec![RatFunc::zero(), RatFunc::one()],
                vec![RatFunc::zero(), RatFunc::zero()],
            ],
            Side::Solution,
        );
        let m = system_fundamental_matrix(&a, &at0(), 6).unwrap();
        assert_eq!(m[0][1].coeff_at(&rat(1, 1)).unwrap(), Cyclotomic::one());
        assert!(m[1][0].is_zero_series());
        let res = system_residual(&m, &a, &at0()).unwrap();
        for row in &res {
            for e in row {
                assert!(e.is_zero_series());
            }
        }
    }

    #[test]
    fn poly_helper() {
        let p = Poly::from_ints(&[1, 2, 3]);
        let s = super::super::poly_series(&at0(), &p, 5);
        assert_eq!(s.coeff_at(&rat(2, 1)).unwrap(), Cyclotomic::from_int(3));
    }
}
