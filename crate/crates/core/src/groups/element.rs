//! Group elements: square matrices whose entries are Laurent polynomials in a
//! formal torus parameter lambda. Parameter-free elements are the finite part;
//! lambda-elements only participate in invariance checks.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalars::Cyclotomic;

/// Entry: sparse Laurent polynomial in lambda.
pub type LaurentEntry = BTreeMap<i64, Cyclotomic>;

#[derive(Clone, PartialEq, Eq)]
pub struct GroupElement {
    entries: Vec<Vec<LaurentEntry>>,
}

fn entry_from_const(c: Cyclotomic) -> LaurentEntry {
    let mut m = BTreeMap::new();
    if !c.is_zero() {
        m.insert(0, c);
    }
    m
}

pub fn entry_monomial(c: Cyclotomic, e: i64) -> LaurentEntry {
    let mut m = BTreeMap::new();
    if !c.is_zero() {
        m.insert(e, c);
    }
    m
}

impl GroupElement {
    pub fn new(entries: Vec<Vec<LaurentEntry>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(Error::ArityMismatch);
        }
        Ok(GroupElement { entries })
    }

    pub fn from_const(m: &Matrix) -> Self {
        GroupElement {
            entries: m
                .iter()
                .map(|row| row.iter().map(|c| entry_from_const(c.clone())).collect())
                .collect(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &Vec<Vec<LaurentEntry>> {
        &self.entries
    }

    pub fn is_constant(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .all(|e| e.keys().all(|&k| k == 0))
    }

    pub fn to_const(&self) -> Option<Matrix> {
        if !self.is_constant() {
            return None;
        }
        Some(
            self.entries
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|e| e.get(&0).cloned().unwrap_or_else(Cyclotomic::zero))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn mul(&self, rhs: &GroupElement) -> Result<GroupElement> {
        let n = self.dimension();
        if rhs.dimension() != n {
            return Err(Error::ArityMismatch);
        }
        let mut out = vec![vec![LaurentEntry::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = LaurentEntry::new();
                for k in 0..n {
                    for (ea, ca) in &self.entries[i][k] {
                        for (eb, cb) in &rhs.entries[k][j] {
                            let e = ea + eb;
                            let c = ca * cb;
                            let slot = acc.entry(e).or_insert_with(Cyclotomic::zero);
                            *slot = &*slot + &c;
                        }
                    }
                }
                acc.retain(|_, c| !c.is_zero());
                out[i][j] = acc;
            }
        }
        GroupElement::new(out)
    }

    /// Is every entry a single Laurent monomial with exactly one nonzero entry
    /// per row and column (a monomial matrix)?
    pub fn is_monomial_matrix(&self) -> bool {
        let n = self.dimension();
        let mut row_counts = vec![0usize; n];
        let mut col_counts = vec![0usize; n];
        for i in 0..n {
            for j in 0..n {
                let e = &self.entries[i][j];
                if e.is_empty() {
                    continue;
                }
                if e.len() > 1 {
                    return false;
                }
                row_counts[i] += 1;
                col_counts[j] += 1;
            }
        }
        row_counts.iter().all(|&c| c == 1) && col_counts.iter().all(|&c| c == 1)
    }

    /// Inverse: general for constant matrices, pattern-based for monomial ones.
    pub fn invert(&self) -> Result<GroupElement> {
        if let Some(m) = self.to_const() {
            let inv = crate::linalg::invert(&m)
                .ok_or_else(|| Error::Unsupported("singular matrix".into()))?;
            return Ok(GroupElement::from_const(&inv));
        }
        if !self.is_monomial_matrix() {
            return Err(Error::Unsupported(
                "inverse of a non-monomial lambda matrix".into(),
            ));
        }
        let n = self.dimension();
        let mut out = vec![vec![LaurentEntry::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                if let Some((e, c)) = self.entries[i][j].iter().next() {
                    out[j][i] = entry_monomial(c.inv()?, -e);
                }
            }
        }
        GroupElement::new(out)
    }

    /// Conjugate by a constant matrix: c * self * c^{-1}.
    pub fn conjugate_by(&self, c: &Matrix) -> Result<GroupElement> {
        let cg = GroupElement::from_const(c);
        let cinv = GroupElement::from_const(
            &crate::linalg::invert(c).ok_or_else(|| Error::Unsupported("singular matrix".into()))?,
        );
        cg.mul(self)?.mul(&cinv)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row
                .iter()
                .map(|e| {
                    if e.is_empty() {
                        "0".to_string()
                    } else {
                        e.iter()
                            .map(|(k, c)| match k {
                                0 => format!("{}", c),
                                1 => format!("({})*lambda", c),
                                _ => format!("({})*lambda^{}", c, k),
                            })
                            .collect::<Vec<_>>()
                            .join(" + ")
                    }
                })
                .collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus() -> GroupElement {
        // diag(lambda, lambda^-1)
        GroupElement::new(vec![
            vec![entry_monomial(Cyclotomic::one(), 1), LaurentEntry::new()],
            vec![LaurentEntry::new(), entry_monomial(Cyclotomic::one(), -1)],
        ])
        .unwrap()
    }

    #[test]
    fn torus_inverse() {
        let t = torus();
        let prod = t.mul(&t.invert().unwrap()).unwrap();
        let id = GroupElement::from_const(&crate::linalg::identity(2));
        assert_eq!(prod, id);
    }

    #[test]
    fn antidiag_conjugation_flips_torus() {
        let t = torus();
        let swap = vec![
            vec![Cyclotomic::zero(), Cyclotomic::one()],
            vec![Cyclotomic::from_int(-1), Cyclotomic::zero()],
        ];
        let conj = t.conjugate_by(&swap).unwrap();
        // diag(lambda^-1, lambda)
        let expected = GroupElement::new(vec![
            vec![entry_monomial(Cyclotomic::one(), -1), LaurentEntry::new()],
            vec![LaurentEntry::new(), entry_monomial(Cyclotomic::one(), 1)],
        ])
        .unwrap();
        assert_eq!(conj, expected);
    }
}
