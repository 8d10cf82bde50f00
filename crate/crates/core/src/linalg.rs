//! Exact dense linear algebra over the cyclotomic field.

use crate::scalars::Cyclotomic;

pub type Matrix = Vec<Vec<Cyclotomic>>;

/// Reduced row echelon form in place; returns pivot column indices.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot invertible");
        for j in c..cols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut c = m.clone();
    rref(&mut c).len()
}

/// Basis of the right null space of `m` (each vector has length = #cols).
pub fn null_space(m: &Matrix) -> Vec<Vec<Cyclotomic>> {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut red = m.clone();
    let pivots = rref(&mut red);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Cyclotomic::zero(); cols];
        v[free] = Cyclotomic::one();
        for (r, &pc) in pivots.iter().enumerate() {
            if !red[r][free].is_zero() {
                v[pc] = -&red[r][free];
            }
        }
        basis.push(v);
    }
    basis
}

/// Solve m * x = b; None when inconsistent or underdetermined (first solution
/// with free variables set to zero is fine for our uses, so underdetermined
/// systems still return the canonical solution).
pub fn solve(m: &Matrix, b: &[Cyclotomic]) -> Option<Vec<Cyclotomic>> {
    if m.is_empty() {
        return if b.iter().all(|x| x.is_zero()) { Some(Vec::new()) } else { None };
    }
    let cols = m[0].len();
    let mut aug: Matrix = m
        .iter()
        .zip(b.iter())
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    // Inconsistent if a pivot lands in the augmented column.
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Cyclotomic::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][cols].clone();
    }
    Some(x)
}

/// Matrix inverse over the field; None when singular.
pub fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { Cyclotomic::one() } else { Cyclotomic::zero() });
            }
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = b[0].len();
    let mut out = vec![vec![Cyclotomic::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if b[l][j].is_zero() {
                    continue;
                }
                let t = &a[i][l] * &b[l][j];
                out[i][j] = &out[i][j] + &t;
            }
        }
    }
    out
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Cyclotomic::one() } else { Cyclotomic::zero() })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat_int;

    fn c(n: i64) -> Cyclotomic {
        Cyclotomic::from_rational(rat_int(n))
    }

    #[test]
    fn solve_and_invert() {
        let m = vec![vec![c(2), c(1)], vec![c(1), c(1)]];
        let inv = invert(&m).unwrap();
        let prod = mat_mul(&m, &inv);
        assert_eq!(prod, identity(2));
        let x = solve(&m, &[c(3), c(2)]).unwrap();
        assert_eq!(x, vec![c(1), c(1)]);
    }

    #[test]
    fn null_space_dim() {
        let m = vec![vec![c(1), c(2), c(3)], vec![c(2), c(4), c(6)]];
        let ns = null_space(&m);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &m {
                let mut acc = Cyclotomic::zero();
                for (a, b) in row.iter().zip(v.iter()) {
                    acc = &acc + &(a * b);
                }
                assert!(acc.is_zero());
            }
        }
    }
}
