//! Root finding over the cyclotomic field.
//!
//! Coverage is deliberately modest: linear factors with roots among rationals
//! or roots of unity (found by scanning), binomials z^m - c with
//! cyclotomic-expressible roots, and quadratics via the discriminant. Whatever
//! resists these methods is carried as an opaque factor block, which keeps
//! every caller total.

use num::{Signed, Zero};

use crate::scalars::numtheory::lcm_u64;
use crate::scalars::{Cyclotomic, Rational, MAX_CONDUCTOR};

use super::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    /// z - root
    Linear(Cyclotomic),
    /// A monic polynomial this layer could not split further.
    Block(Poly),
}

#[derive(Clone, Debug)]
pub struct Factorization {
    pub unit: Cyclotomic,
    pub factors: Vec<(Factor, usize)>,
}

impl Factorization {
    pub fn roots(&self) -> Vec<(Cyclotomic, usize)> {
        self.factors
            .iter()
            .filter_map(|(f, m)| match f {
                Factor::Linear(r) => Some((r.clone(), *m)),
                Factor::Block(_) => None,
            })
            .collect()
    }

    pub fn blocks(&self) -> Vec<(Poly, usize)> {
        self.factors
            .iter()
            .filter_map(|(f, m)| match f {
                Factor::Block(p) => Some((p.clone(), *m)),
                Factor::Linear(_) => None,
            })
            .collect()
    }

    pub fn fully_split(&self) -> bool {
        self.factors.iter().all(|(f, _)| matches!(f, Factor::Linear(_)))
    }
}

/// Factor a nonzero polynomial into linear factors and blocks.
pub fn factor(p: &Poly) -> Factorization {
    assert!(!p.is_zero(), "cannot factor the zero polynomial");
    let unit = p.leading().unwrap().clone();
    let mut work = p.monic();
    let mut factors: Vec<(Factor, usize)> = Vec::new();

    if let Some(v) = work.val_at_zero() {
        if v > 0 {
            factors.push((Factor::Linear(Cyclotomic::zero()), v));
            let shifted = Poly::new(work.coeffs()[v..].to_vec());
            work = shifted;
        }
    }

    loop {
        if work.degree().unwrap_or(0) == 0 {
            break;
        }
        if let Some(root) = find_one_root(&work) {
            let lin = Poly::new(vec![-&root, Cyclotomic::one()]);
            let mut mult = 0usize;
            while let Some(q) = work.exact_div(&lin) {
                work = q;
                mult += 1;
            }
            debug_assert!(mult > 0);
            push_factor(&mut factors, Factor::Linear(root), mult);
            continue;
        }
        // Nothing splits further.
        push_factor(&mut factors, Factor::Block(work.clone()), 1);
        break;
    }

    sort_factors(&mut factors);
    Factorization { unit, factors }
}

fn push_factor(factors: &mut Vec<(Factor, usize)>, f: Factor, mult: usize) {
    if let Some(entry) = factors.iter_mut().find(|(g, _)| *g == f) {
        entry.1 += mult;
    } else {
        factors.push((f, mult));
    }
}

fn sort_factors(factors: &mut [(Factor, usize)]) {
    factors.sort_by_key(|(f, _)| match f {
        Factor::Linear(r) => (0u8, r.sort_key()),
        Factor::Block(p) => (1u8, format!("{}", p)),
    });
}

fn find_one_root(p: &Poly) -> Option<Cyclotomic> {
    debug_assert!(p.is_monic());
    let deg = p.degree()?;
    if deg == 0 {
        return None;
    }
    if deg == 1 {
        return Some(-&p.coeff(0));
    }
    if let Some(r) = scan_unity_roots(p) {
        return Some(r);
    }
    if let Some(r) = rational_roots(p) {
        return Some(r);
    }
    if deg == 2 {
        if let Some(r) = quadratic_root(p) {
            return Some(r);
        }
    }
    if is_binomial(p) {
        if let Some(r) = binomial_root(p) {
            return Some(r);
        }
    }
    None
}

fn is_binomial(p: &Poly) -> bool {
    let deg = p.degree().unwrap_or(0);
    deg >= 2
        && p.coeffs()
            .iter()
            .enumerate()
            .all(|(k, c)| c.is_zero() || k == 0 || k == deg)
        && !p.coeff(0).is_zero()
}

/// Scan candidate roots of unity (and their negatives are included since
/// -1 is a root of unity).
fn scan_unity_roots(p: &Poly) -> Option<Cyclotomic> {
    let base = lcm_u64(120, p.max_conductor() as u64);
    let n = if base <= MAX_CONDUCTOR as u64 {
        base as u32
    } else {
        p.max_conductor()
    };
    for k in 0..n {
        let z = Cyclotomic::zeta_pow(n, k as i64).ok()?;
        if p.eval(&z).is_zero() {
            return Some(z);
        }
    }
    None
}

fn rational_roots(p: &Poly) -> Option<Cyclotomic> {
    let coeffs = p.rational_coeffs()?;
    // Clear to integers.
    let mut lcm = num::BigInt::from(1);
    for c in &coeffs {
        let d = c.denom();
        let g = num::Integer::gcd(&lcm, d);
        lcm = &lcm / &g * d;
    }
    let ints: Vec<num::BigInt> = coeffs.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let a0 = ints.first()?.clone();
    let an = ints.last()?.clone();
    if a0.is_zero() {
        return Some(Cyclotomic::zero());
    }
    let ps = small_divisors(&a0.abs())?;
    let qs = small_divisors(&an.abs())?;
    for pnum in &ps {
        for qden in &qs {
            for sign in [1i64, -1] {
                let cand = Rational::new(pnum * num::BigInt::from(sign), qden.clone());
                let c = Cyclotomic::from_rational(cand);
                if p.eval(&c).is_zero() {
                    return Some(c);
                }
            }
        }
    }
    None
}

/// Divisor list, giving up when the number is too big to enumerate cheaply.
pub fn small_divisors(n: &num::BigInt) -> Option<Vec<num::BigInt>> {
    let fac = crate::scalars::numtheory::factor_bigint(n)?;
    let mut divs = vec![num::BigInt::from(1)];
    for (pr, e) in fac {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = num::BigInt::from(1);
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= num::BigInt::from(pr);
            }
        }
        divs = next;
        if divs.len() > 512 {
            return None;
        }
    }
    Some(divs)
}

fn quadratic_root(p: &Poly) -> Option<Cyclotomic> {
    // monic: z^2 + bz + c
    let b = p.coeff(1);
    let c = p.coeff(0);
    let disc = &(&b * &b) - &(&Cyclotomic::from_int(4) * &c);
    let sqrt = if let Some(r) = disc.as_rational() {
        Cyclotomic::sqrt_rational(r)?
    } else {
        disc.nth_root(2)?
    };
    let half = Cyclotomic::from_rational(crate::scalars::rat(1, 2));
    Some(&(&(-&b) + &sqrt) * &half)
}

fn binomial_root(p: &Poly) -> Option<Cyclotomic> {
    let deg = p.degree()?;
    let c = -&p.coeff(0);
    let root = c.nth_root(deg as u32)?;
    if p.eval(&root).is_zero() {
        Some(root)
    } else {
        None
    }
}

/// Multiplicity of a monic factor q in p (0 when q does not divide p).
pub fn factor_multiplicity(p: &Poly, q: &Poly) -> usize {
    let mut work = p.clone();
    let mut m = 0;
    while let Some(next) = work.exact_div(q) {
        work = next;
        m += 1;
        if work.is_constant() {
            break;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn eighth_roots_of_unity() {
        // 1 + z^4 splits into four primitive 8th roots of unity.
        let p = Poly::from_ints(&[1, 0, 0, 0, 1]);
        let f = factor(&p);
        assert!(f.fully_split());
        let roots = f.roots();
        assert_eq!(roots.iter().map(|(_, m)| m).sum::<usize>(), 4);
        for (r, _) in roots {
            assert_eq!(r.pow(8).unwrap(), Cyclotomic::one());
            assert_eq!(r.pow(4).unwrap(), Cyclotomic::from_int(-1));
        }
    }

    #[test]
    fn sixth_roots_from_quadratic() {
        // x^2 - x + 1 has the primitive 6th roots of unity.
        let p = Poly::from_ints(&[1, -1, 1]);
        let f = factor(&p);
        assert!(f.fully_split());
        for (r, _) in f.roots() {
            assert_eq!(r.pow(6).unwrap(), Cyclotomic::one());
            assert!(r.pow(2).unwrap() != Cyclotomic::one());
            assert!(r.pow(3).unwrap() != Cyclotomic::one());
        }
    }

    #[test]
    fn multiplicities() {
        // z^2 (z-1)^3
        let p = Poly::from_ints(&[0, 0, 1]).mul(&Poly::from_ints(&[-1, 1]).pow(3));
        let f = factor(&p);
        let mut roots = f.roots();
        roots.sort_by_key(|(r, _)| r.sort_key());
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().any(|(r, m)| r.is_zero() && *m == 2));
        assert!(roots.iter().any(|(r, m)| r.is_one() && *m == 3));
    }

    #[test]
    fn golden_quadratic() {
        // z^2 - z - 1 needs sqrt(5).
        let p = Poly::from_ints(&[-1, -1, 1]);
        let f = factor(&p);
        assert!(f.fully_split());
        for (r, _) in f.roots() {
            let v = &(&r * &r) - &(&r + &Cyclotomic::one());
            assert!(v.is_zero());
        }
    }

    #[test]
    fn stubborn_block() {
        // z^5 - 2 has no cyclotomic roots.
        let p = Poly::new(vec![
            Cyclotomic::from_int(-2),
            Cyclotomic::zero(),
            Cyclotomic::zero(),
            Cyclotomic::zero(),
            Cyclotomic::zero(),
            Cyclotomic::one(),
        ]);
        let f = factor(&p);
        assert_eq!(f.blocks().len(), 1);
        assert!(f.roots().is_empty());
    }

    #[test]
    fn rational_root_search() {
        // (2z - 3)(z + 5)
        let p = Poly::new(vec![
            Cyclotomic::from_int(-15),
            Cyclotomic::from_int(7),
            Cyclotomic::from_int(2),
        ]);
        let f = factor(&p);
        assert!(f.fully_split());
        let roots: Vec<_> = f.roots().into_iter().map(|(r, _)| r).collect();
        assert!(roots.contains(&Cyclotomic::from_rational(rat(3, 2))));
        assert!(roots.contains(&Cyclotomic::from_int(-5)));
        assert_eq!(f.unit, Cyclotomic::from_int(2));
    }
}
