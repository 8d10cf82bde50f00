//! Homogeneous polynomials in solution-matrix indeterminates X_j^i or in
//! named solution labels, with exact cyclotomic coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::Cyclotomic;

/// Which variables the polynomial lives in.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum VarSet {
    /// The n*n matrix variables X_j^i: index = (i-1)*n + (j-1), where i is
    /// the derivative row and j the solution column.
    Matrix(usize),
    /// Named solution labels.
    Named(Vec<String>),
}

impl VarSet {
    pub fn len(&self) -> usize {
        match self {
            VarSet::Matrix(n) => n * n,
            VarSet::Named(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn var_name(&self, idx: usize) -> String {
        match self {
            VarSet::Matrix(n) => {
                let i = idx / n + 1;
                let j = idx % n + 1;
                format!("X{}{}", i, j)
            }
            VarSet::Named(v) => v[idx].clone(),
        }
    }
}

/// Exponent vector keyed monomial map; all terms share one total degree.
#[derive(Clone, PartialEq, Eq)]
pub struct HomogPoly {
    vars: VarSet,
    terms: BTreeMap<Vec<u16>, Cyclotomic>,
}

impl HomogPoly {
    pub fn zero(vars: VarSet) -> Self {
        HomogPoly { vars, terms: BTreeMap::new() }
    }

    pub fn monomial(vars: VarSet, exps: Vec<u16>, coeff: Cyclotomic) -> Self {
        assert_eq!(exps.len(), vars.len());
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        HomogPoly { vars, terms }
    }

    /// A single variable.
    pub fn var(vars: VarSet, idx: usize) -> Self {
        let mut exps = vec![0u16; vars.len()];
        exps[idx] = 1;
        Self::monomial(vars, exps, Cyclotomic::one())
    }

    /// Matrix variable X_j^i (1-based indices; i = derivative row).
    pub fn matrix_var(n: usize, i: usize, j: usize) -> Self {
        assert!((1..=n).contains(&i) && (1..=n).contains(&j));
        Self::var(VarSet::Matrix(n), (i - 1) * n + (j - 1))
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u16>, Cyclotomic> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .next()
            .map(|e| e.iter().map(|&x| x as usize).sum())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self
            .terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum::<usize>());
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    fn check_vars(&self, rhs: &HomogPoly) -> Result<()> {
        if self.vars != rhs.vars {
            return Err(Error::ArityMismatch);
        }
        Ok(())
    }

    pub fn add(&self, rhs: &HomogPoly) -> Result<HomogPoly> {
        self.check_vars(rhs)?;
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            let entry = terms.entry(e.clone()).or_insert_with(Cyclotomic::zero);
            *entry = &*entry + c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        Ok(HomogPoly { vars: self.vars.clone(), terms })
    }

    pub fn sub(&self, rhs: &HomogPoly) -> Result<HomogPoly> {
        self.add(&rhs.scale(&Cyclotomic::from_int(-1)))
    }

    pub fn scale(&self, c: &Cyclotomic) -> HomogPoly {
        if c.is_zero() {
            return HomogPoly::zero(self.vars.clone());
        }
        HomogPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &HomogPoly) -> Result<HomogPoly> {
        self.check_vars(rhs)?;
        let mut terms: BTreeMap<Vec<u16>, Cyclotomic> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u16> = ea.iter().zip(eb.iter()).map(|(a, b)| a + b).collect();
                let c = ca * cb;
                let entry = terms.entry(e).or_insert_with(Cyclotomic::zero);
                *entry = &*entry + &c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(HomogPoly { vars: self.vars.clone(), terms })
    }

    pub fn pow(&self, e: usize) -> Result<HomogPoly> {
        let mut acc = HomogPoly::monomial(
            self.vars.clone(),
            vec![0; self.vars.len()],
            Cyclotomic::one(),
        );
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Substitute a linear form for each variable: images[k] is the list of
    /// (variable index, coefficient) pairs replacing variable k.
    pub fn substitute_linear(&self, images: &[Vec<(usize, Cyclotomic)>]) -> Result<HomogPoly> {
        let nvars = self.vars.len();
        if images.len() != nvars {
            return Err(Error::ArityMismatch);
        }
        let mut out = HomogPoly::zero(self.vars.clone());
        for (exps, coeff) in &self.terms {
            let mut term = HomogPoly::monomial(
                self.vars.clone(),
                vec![0; nvars],
                coeff.clone(),
            );
            for (var, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let mut lin = HomogPoly::zero(self.vars.clone());
                for (idx, c) in &images[var] {
                    lin = lin.add(&HomogPoly::var(self.vars.clone(), *idx).scale(c))?;
                }
                let lp = lin.pow(e as usize)?;
                term = term.mul(&lp)?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Right action of a matrix g on the solution index: X_j^i -> X_l^i g[l][j]
    /// (same action on named labels regarded as one row).
    pub fn transform(&self, g: &[Vec<Cyclotomic>]) -> Result<HomogPoly> {
        let images = self.action_images(g)?;
        self.substitute_linear(&images)
    }

    fn action_images(&self, g: &[Vec<Cyclotomic>]) -> Result<Vec<Vec<(usize, Cyclotomic)>>> {
        let n = g.len();
        match &self.vars {
            VarSet::Matrix(dim) => {
                if *dim != n {
                    return Err(Error::ArityMismatch);
                }
                let mut images = Vec::with_capacity(n * n);
                for idx in 0..n * n {
                    let i = idx / n; // derivative row (0-based)
                    let j = idx % n; // solution column (0-based)
                    let mut img = Vec::new();
                    for l in 0..n {
                        if !g[l][j].is_zero() {
                            img.push((i * n + l, g[l][j].clone()));
                        }
                    }
                    images.push(img);
                }
                Ok(images)
            }
            VarSet::Named(labels) => {
                if labels.len() != n {
                    return Err(Error::ArityMismatch);
                }
                let mut images = Vec::with_capacity(n);
                for j in 0..n {
                    let mut img = Vec::new();
                    for l in 0..n {
                        if !g[l][j].is_zero() {
                            img.push((l, g[l][j].clone()));
                        }
                    }
                    images.push(img);
                }
                Ok(images)
            }
        }
    }

    /// Coefficient vector over the monomial basis of the given degree.
    pub fn coords_over(&self, monomials: &[Vec<u16>]) -> Option<Vec<Cyclotomic>> {
        let index: std::collections::HashMap<&Vec<u16>, usize> =
            monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut v = vec![Cyclotomic::zero(); monomials.len()];
        for (e, c) in &self.terms {
            let i = index.get(e)?;
            v[*i] = c.clone();
        }
        Some(v)
    }

    /// Normalize so the first (BTreeMap-order) term has coefficient 1.
    pub fn normalized(&self) -> HomogPoly {
        match self.terms.values().next() {
            None => self.clone(),
            Some(c) => self.scale(&c.inv().expect("nonzero leading term")),
        }
    }
}

/// All exponent vectors of the given degree over `nvars` variables, in
/// lexicographic order.
pub fn monomials(nvars: usize, degree: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    fn rec(out: &mut Vec<Vec<u16>>, cur: &mut Vec<u16>, pos: usize, left: usize) {
        if pos + 1 == cur.len() {
            cur[pos] = left as u16;
            out.push(cur.clone());
            cur[pos] = 0;
            return;
        }
        for take in (0..=left).rev() {
            cur[pos] = take as u16;
            rec(out, cur, pos + 1, left - take);
        }
        cur[pos] = 0;
    }
    if nvars == 0 {
        return out;
    }
    rec(&mut out, &mut cur, 0, degree);
    out
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    let v = self.vars.var_name(i);
                    if x == 1 {
                        v
                    } else {
                        format!("{}^{}", v, x)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "({})", c)?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({})*{}", c, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(3, 3).len(), 10);
        assert_eq!(monomials(4, 2).len(), 10);
        assert_eq!(monomials(2, 4).len(), 5);
    }

    #[test]
    fn wronskian_transform() {
        // W = X11 X22 - X12 X21 transforms by det(g) under the column action.
        let n = 2;
        let w = HomogPoly::matrix_var(n, 1, 1)
            .mul(&HomogPoly::matrix_var(n, 2, 2))
            .unwrap()
            .sub(
                &HomogPoly::matrix_var(n, 1, 2)
                    .mul(&HomogPoly::matrix_var(n, 2, 1))
                    .unwrap(),
            )
            .unwrap();
        let g = vec![
            vec![Cyclotomic::from_int(2), Cyclotomic::from_int(1)],
            vec![Cyclotomic::from_int(1), Cyclotomic::from_int(1)],
        ];
        let tw = w.transform(&g).unwrap();
        // det = 1
        assert_eq!(tw, w);
        let g2 = vec![
            vec![Cyclotomic::from_int(3), Cyclotomic::zero()],
            vec![Cyclotomic::zero(), Cyclotomic::from_int(2)],
        ];
        let tw2 = w.transform(&g2).unwrap();
        assert_eq!(tw2, w.scale(&Cyclotomic::from_int(6)));
    }

    #[test]
    fn homogeneity() {
        let n = 2;
        let p = HomogPoly::matrix_var(n, 1, 1)
            .mul(&HomogPoly::matrix_var(n, 1, 2))
            .unwrap();
        assert!(p.is_homogeneous());
        assert_eq!(p.degree(), Some(2));
    }
}
