//! Enumerated finite matrix groups: closure, centers, normalizers,
//! projectivization, and quotient structure queries.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{identity, invert, mat_mul, Matrix};
use crate::scalars::numtheory::lcm_u64;
use crate::scalars::Rational;

type Key = Vec<Rational>;

#[derive(Clone)]
pub struct FiniteMatrixGroup {
    dim: usize,
    projective: bool,
    key_conductor: u32,
    generators: Vec<Matrix>,
    elements: Vec<Matrix>,
    index: HashMap<Key, usize>,
}

fn max_conductor(m: &Matrix) -> u32 {
    m.iter()
        .flatten()
        .map(|c| c.conductor())
        .max()
        .unwrap_or(1)
}

/// Scale so the first nonzero entry (row-major) is 1.
pub fn projective_normalize(m: &Matrix) -> Matrix {
    let pivot = m
        .iter()
        .flatten()
        .find(|c| !c.is_zero())
        .cloned()
        .expect("nonzero matrix");
    let inv = pivot.inv().expect("invertible entry");
    m.iter()
        .map(|row| row.iter().map(|c| c * &inv).collect())
        .collect()
}

impl FiniteMatrixGroup {
    /// Breadth-first closure of parameter-free generators; errors when the
    /// enumeration exceeds `bound`. With `projective` set, elements are
    /// compared and stored up to scalar.
    pub fn closure(generators: &[Matrix], bound: usize, projective: bool) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::ArityMismatch);
        }
        let dim = generators[0].len();
        for g in generators {
            if g.len() != dim || g.iter().any(|r| r.len() != dim) {
                return Err(Error::ArityMismatch);
            }
            if invert(g).is_none() {
                return Err(Error::Unsupported("singular generator".into()));
            }
        }
        let mut key_conductor = 1u64;
        for g in generators {
            key_conductor = lcm_u64(key_conductor, max_conductor(g) as u64);
        }
        let key_conductor = key_conductor as u32;

        let norm = |m: &Matrix| -> Matrix {
            if projective {
                projective_normalize(m)
            } else {
                m.clone()
            }
        };
        let gens: Vec<Matrix> = generators.iter().map(&norm).collect();

        let mut group = FiniteMatrixGroup {
            dim,
            projective,
            key_conductor,
            generators: gens.clone(),
            elements: Vec::new(),
            index: HashMap::new(),
        };
        let e = norm(&identity(dim));
        group.push(e);
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            for g in &gens {
                let prod = norm(&mat_mul(&group.elements[i], g));
                let key = group.key_of(&prod)?;
                if !group.index.contains_key(&key) {
                    if group.elements.len() >= bound {
                        return Err(Error::BoundExceeded(bound));
                    }
                    group.index.insert(key, group.elements.len());
                    group.elements.push(prod);
                    frontier.push(group.elements.len() - 1);
                }
            }
        }
        Ok(group)
    }

    fn push(&mut self, m: Matrix) {
        let key = self.key_of(&m).expect("key conductor covers the group");
        self.index.insert(key, self.elements.len());
        self.elements.push(m);
    }

    fn key_of(&self, m: &Matrix) -> Result<Key> {
        let mut key = Vec::with_capacity(self.dim * self.dim);
        for row in m {
            for c in row {
                key.extend(c.coords_at(self.key_conductor)?);
            }
        }
        Ok(key)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    fn normalize(&self, m: &Matrix) -> Matrix {
        if self.projective {
            projective_normalize(m)
        } else {
            m.clone()
        }
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        let n = self.normalize(m);
        let big = lcm_u64(self.key_conductor as u64, max_conductor(&n) as u64);
        if big as u32 != self.key_conductor {
            // re-key at the larger conductor
            return self.elements.iter().any(|e| {
                self.keys_match(e, &n, big as u32)
            });
        }
        match self.key_of(&n) {
            Ok(k) => self.index.contains_key(&k),
            Err(_) => false,
        }
    }

    fn keys_match(&self, a: &Matrix, b: &Matrix, conductor: u32) -> bool {
        for (ra, rb) in a.iter().zip(b.iter()) {
            for (ca, cb) in ra.iter().zip(rb.iter()) {
                match (ca.coords_at(conductor), cb.coords_at(conductor)) {
                    (Ok(x), Ok(y)) if x == y => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// Group product of two member matrices (normalized in projective mode).
    pub fn product(&self, a: &Matrix, b: &Matrix) -> Matrix {
        self.normalize(&mat_mul(a, b))
    }

    pub fn inverse(&self, a: &Matrix) -> Matrix {
        self.normalize(&invert(a).expect("group element invertible"))
    }

    /// Center: the members commuting with every generator.
    pub fn center(&self) -> Vec<Matrix> {
        self.elements
            .iter()
            .filter(|m| {
                self.generators.iter().all(|g| {
                    self.normalize(&mat_mul(m, g)) == self.normalize(&mat_mul(g, m))
                })
            })
            .cloned()
            .collect()
    }

    /// All members of `self` lie in `h`.
    pub fn is_subgroup_of(&self, h: &FiniteMatrixGroup) -> bool {
        self.projective == h.projective && self.elements.iter().all(|m| h.contains(m))
    }

    /// Is `self` normal inside `h`? (self must be a subgroup of h.)
    pub fn is_normal_in(&self, h: &FiniteMatrixGroup) -> Result<bool> {
        if !self.is_subgroup_of(h) {
            return Err(Error::NotASubgroup);
        }
        for x in h.elements() {
            let xinv = h.inverse(x);
            for g in &self.generators {
                let conj = h.product(&h.product(x, g), &xinv);
                if !self.contains(&conj) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The normalizer of `self` inside `h`, as an enumerated subgroup of h.
    pub fn normalizer_in(&self, h: &FiniteMatrixGroup) -> Result<FiniteMatrixGroup> {
        if !self.is_subgroup_of(h) {
            return Err(Error::NotASubgroup);
        }
        let members: Vec<Matrix> = h
            .elements()
            .iter()
            .filter(|x| {
                let xinv = h.inverse(x);
                self.generators.iter().all(|g| {
                    let conj = h.product(&h.product(x, g), &xinv);
                    self.contains(&conj)
                })
            })
            .cloned()
            .collect();
        let mut grp = FiniteMatrixGroup {
            dim: h.dim,
            projective: h.projective,
            key_conductor: h.key_conductor,
            generators: members.clone(),
            elements: Vec::new(),
            index: HashMap::new(),
        };
        for m in members {
            grp.push(m);
        }
        Ok(grp)
    }

    /// Quotient by the scalar matrices present in the group.
    pub fn projectivize(&self) -> FiniteMatrixGroup {
        let mut grp = FiniteMatrixGroup {
            dim: self.dim,
            projective: true,
            key_conductor: self.key_conductor,
            generators: self.generators.iter().map(projective_normalize).collect(),
            elements: Vec::new(),
            index: HashMap::new(),
        };
        for m in &self.elements {
            let n = projective_normalize(m);
            if let Ok(k) = grp.key_of(&n) {
                if !grp.index.contains_key(&k) {
                    grp.index.insert(k, grp.elements.len());
                    grp.elements.push(n);
                }
            }
        }
        grp
    }

    /// |h| / |self|, requiring self normal in h.
    pub fn quotient_order(&self, h: &FiniteMatrixGroup) -> Result<usize> {
        if !self.is_normal_in(h)? {
            return Err(Error::NotASubgroup);
        }
        if h.order() % self.order() != 0 {
            return Err(Error::InconsistentData(format!(
                "|H| = {} not divisible by |G| = {}",
                h.order(),
                self.order()
            )));
        }
        Ok(h.order() / self.order())
    }

    /// Is h/self cyclic? Decided on coset representatives.
    pub fn is_cyclic_quotient(&self, h: &FiniteMatrixGroup) -> Result<bool> {
        let idx = self.quotient_order(h)?;
        if idx == 1 {
            return Ok(true);
        }
        // coset id: the set of member keys, canonicalized by the minimum
        let coset_id = |x: &Matrix| -> String {
            let mut keys: Vec<String> = self
                .elements
                .iter()
                .map(|g| format!("{:?}", h.key_of(&h.product(x, g)).unwrap()))
                .collect();
            keys.sort();
            keys.into_iter().next().unwrap()
        };
        for x in h.elements() {
            // order of the coset [x] in the quotient
            let mut pow = x.clone();
            let mut ord = 1usize;
            while !self.contains(&pow) {
                pow = h.product(&pow, x);
                ord += 1;
                if ord > idx {
                    break;
                }
            }
            if ord == idx {
                return Ok(true);
            }
            let _ = coset_id;
        }
        Ok(false)
    }

    /// Multiset of element orders (diagnostic for isomorphism-type checks).
    pub fn order_profile(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .elements
            .iter()
            .map(|m| {
                let mut pow = m.clone();
                let mut ord = 1usize;
                let id = self.normalize(&identity(self.dim));
                while pow != id {
                    pow = self.product(&pow, m);
                    ord += 1;
                    if ord > self.order() {
                        break;
                    }
                }
                ord
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Closure invariant: multiplying the element set by itself adds nothing.
    pub fn is_closed(&self) -> bool {
        for a in &self.elements {
            for g in &self.generators {
                if !self.contains(&self.product(a, g)) {
                    return false;
                }
            }
        }
        true
    }
}

impl std::fmt::Debug for FiniteMatrixGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FiniteMatrixGroup(dim {}, order {}{})",
            self.dim,
            self.order(),
            if self.projective { ", projective" } else { "" }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Cyclotomic;

    fn diag(a: i64, b: i64) -> Matrix {
        vec![
            vec![Cyclotomic::from_int(a), Cyclotomic::zero()],
            vec![Cyclotomic::zero(), Cyclotomic::from_int(b)],
        ]
    }

    #[test]
    fn order_two_group() {
        let g = FiniteMatrixGroup::closure(&[diag(1, -1)], 10, false).unwrap();
        assert_eq!(g.order(), 2);
        assert!(g.is_closed());
    }

    #[test]
    fn abelian_center_is_everything() {
        let g = FiniteMatrixGroup::closure(&[diag(1, -1), diag(-1, 1)], 10, false).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.center().len(), 4);
    }

    #[test]
    fn bound_exceeded() {
        let g = FiniteMatrixGroup::closure(&[diag(1, -1), diag(-1, 1)], 3, false);
        assert!(matches!(g, Err(Error::BoundExceeded(3))));
    }

    #[test]
    fn cyclic_quotient_of_klein_four() {
        let v4 = FiniteMatrixGroup::closure(&[diag(1, -1), diag(-1, 1)], 10, false).unwrap();
        let sub = FiniteMatrixGroup::closure(&[diag(1, -1)], 10, false).unwrap();
        assert!(sub.is_normal_in(&v4).unwrap());
        assert_eq!(sub.quotient_order(&v4).unwrap(), 2);
        assert!(sub.is_cyclic_quotient(&v4).unwrap());
    }

    #[test]
    fn projectivize_kills_scalars() {
        let g = FiniteMatrixGroup::closure(&[diag(-1, -1), diag(1, -1)], 10, false).unwrap();
        assert_eq!(g.order(), 4);
        let p = g.projectivize();
        assert_eq!(p.order(), 2);
    }
}
