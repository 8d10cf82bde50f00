//! Moebius transformations of the projective line, in a scale-canonical form
//! (the first nonzero entry of (a, b, c, d) equals 1).

use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::Cyclotomic;

use super::point::ProjPoint;
use super::poly::Poly;
use super::ratfunc::RatFunc;

#[derive(Clone, PartialEq, Eq)]
pub struct MoebiusMap {
    a: Cyclotomic,
    b: Cyclotomic,
    c: Cyclotomic,
    d: Cyclotomic,
}

impl MoebiusMap {
    pub fn new(a: Cyclotomic, b: Cyclotomic, c: Cyclotomic, d: Cyclotomic) -> Result<Self> {
        let det = &(&a * &d) - &(&b * &c);
        if det.is_zero() {
            return Err(Error::DegenerateTriple);
        }
        let mut m = MoebiusMap { a, b, c, d };
        m.canonicalize();
        Ok(m)
    }

    fn canonicalize(&mut self) {
        let first = [&self.a, &self.b, &self.c, &self.d]
            .into_iter()
            .find(|x| !x.is_zero())
            .cloned()
            .expect("nonzero map");
        let inv = first.inv().unwrap();
        self.a = &self.a * &inv;
        self.b = &self.b * &inv;
        self.c = &self.c * &inv;
        self.d = &self.d * &inv;
    }

    pub fn identity() -> Self {
        MoebiusMap {
            a: Cyclotomic::one(),
            b: Cyclotomic::zero(),
            c: Cyclotomic::zero(),
            d: Cyclotomic::one(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn entries(&self) -> (&Cyclotomic, &Cyclotomic, &Cyclotomic, &Cyclotomic) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    pub fn compose(&self, rhs: &MoebiusMap) -> MoebiusMap {
        // (self ∘ rhs)(x) = self(rhs(x)): matrix product self * rhs.
        let a = &(&self.a * &rhs.a) + &(&self.b * &rhs.c);
        let b = &(&self.a * &rhs.b) + &(&self.b * &rhs.d);
        let c = &(&self.c * &rhs.a) + &(&self.d * &rhs.c);
        let d = &(&self.c * &rhs.b) + &(&self.d * &rhs.d);
        MoebiusMap::new(a, b, c, d).expect("composition of invertible maps")
    }

    pub fn invert(&self) -> MoebiusMap {
        MoebiusMap::new(
            self.d.clone(),
            -&self.b,
            -&self.c,
            self.a.clone(),
        )
        .expect("inverse of invertible map")
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        match p {
            ProjPoint::Finite(x) => {
                let num = &(&self.a * x) + &self.b;
                let den = &(&self.c * x) + &self.d;
                if den.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(num.checked_div(&den).unwrap())
                }
            }
            ProjPoint::Infinity => {
                if self.c.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(self.a.checked_div(&self.c).unwrap())
                }
            }
        }
    }

    pub fn as_ratfunc(&self) -> RatFunc {
        RatFunc::new(
            Poly::new(vec![self.b.clone(), self.a.clone()]),
            Poly::new(vec![self.d.clone(), self.c.clone()]),
        )
    }

    /// d/dx of the map as a rational function.
    pub fn derivative(&self) -> RatFunc {
        self.as_ratfunc().derivative()
    }

    /// Recognize a degree-one rational function as a Moebius map.
    pub fn from_ratfunc(f: &RatFunc) -> Result<Self> {
        let dn = f.num().degree().unwrap_or(0);
        let dd = f.den().degree().unwrap_or(0);
        if dn > 1 || dd > 1 || f.is_constant() {
            return Err(Error::Unsupported(format!("not a Moebius map: {}", f)));
        }
        MoebiusMap::new(f.num().coeff(1), f.num().coeff(0), f.den().coeff(1), f.den().coeff(0))
    }

    /// The unique map sending an ordered triple of distinct points to another.
    pub fn from_triples(src: &[ProjPoint; 3], dst: &[ProjPoint; 3]) -> Result<Self> {
        for pts in [src, dst] {
            if pts[0] == pts[1] || pts[0] == pts[2] || pts[1] == pts[2] {
                return Err(Error::DegenerateTriple);
            }
        }
        let to_standard = |p: &[ProjPoint; 3]| -> Result<MoebiusMap> {
            // map sending (p0, p1, p2) -> (0, 1, inf):
            //   x -> ((x - p0)(p1 - p2)) / ((x - p2)(p1 - p0))
            // with the usual limits when one point is infinite.
            match (&p[0], &p[1], &p[2]) {
                (ProjPoint::Infinity, ProjPoint::Finite(q1), ProjPoint::Finite(q2)) => {
                    // x -> (q1 - q2)/(x - q2)
                    MoebiusMap::new(Cyclotomic::zero(), q1 - q2, Cyclotomic::one(), -q2)
                }
                (ProjPoint::Finite(q0), ProjPoint::Infinity, ProjPoint::Finite(q2)) => {
                    // x -> (x - q0)/(x - q2)
                    MoebiusMap::new(Cyclotomic::one(), -q0, Cyclotomic::one(), -q2)
                }
                (ProjPoint::Finite(q0), ProjPoint::Finite(q1), ProjPoint::Infinity) => {
                    // x -> (x - q0)/(q1 - q0)
                    MoebiusMap::new(Cyclotomic::one(), -q0, Cyclotomic::zero(), q1 - q0)
                }
                (ProjPoint::Finite(q0), ProjPoint::Finite(q1), ProjPoint::Finite(q2)) => {
                    let a = q1 - q2;
                    let b = -&(q0 * &a);
                    let c = q1 - q0;
                    let d = -&(q2 * &c);
                    MoebiusMap::new(a, b, c, d)
                }
                _ => Err(Error::DegenerateTriple),
            }
        };
        let ms = to_standard(src)?;
        let md = to_standard(dst)?;
        let map = md.invert().compose(&ms);
        // applying the result must reproduce dst exactly
        for (s, d) in src.iter().zip(dst.iter()) {
            if map.apply(s) != *d {
                return Err(Error::DegenerateTriple);
            }
        }
        Ok(map)
    }

    pub fn sort_key(&self) -> String {
        format!("{}", self)
    }
}

impl fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_ratfunc())
    }
}

impl fmt::Debug for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A non-constant rational function regarded as a finite covering of the line.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMap {
    value: RatFunc,
}

impl RationalMap {
    pub fn new(value: RatFunc) -> Result<Self> {
        if value.is_constant() {
            return Err(Error::ConstantMap);
        }
        Ok(RationalMap { value })
    }

    pub fn identity() -> Self {
        RationalMap { value: RatFunc::var() }
    }

    pub fn from_moebius(m: &MoebiusMap) -> Self {
        RationalMap { value: m.as_ratfunc() }
    }

    pub fn value(&self) -> &RatFunc {
        &self.value
    }

    pub fn degree(&self) -> usize {
        self.value
            .num()
            .degree()
            .unwrap_or(0)
            .max(self.value.den().degree().unwrap_or(0))
    }

    pub fn derivative(&self) -> RatFunc {
        self.value.derivative()
    }

    pub fn compose(&self, inner: &RationalMap) -> RationalMap {
        RationalMap { value: self.value.compose(&inner.value) }
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv_map() -> MoebiusMap {
        // x -> 1/x
        MoebiusMap::new(
            Cyclotomic::zero(),
            Cyclotomic::one(),
            Cyclotomic::one(),
            Cyclotomic::zero(),
        )
        .unwrap()
    }

    #[test]
    fn inversion_squares_to_identity() {
        assert!(inv_map().compose(&inv_map()).is_identity());
    }

    #[test]
    fn apply_at_infinity() {
        // x -> (x+1)/(x-1) sends infinity to 1
        let m = MoebiusMap::new(
            Cyclotomic::one(),
            Cyclotomic::one(),
            Cyclotomic::one(),
            Cyclotomic::from_int(-1),
        )
        .unwrap();
        assert_eq!(m.apply(&ProjPoint::Infinity), ProjPoint::from_int(1));
    }

    #[test]
    fn negation_permutes_standard_points() {
        let m = MoebiusMap::new(
            Cyclotomic::from_int(-1),
            Cyclotomic::zero(),
            Cyclotomic::zero(),
            Cyclotomic::one(),
        )
        .unwrap();
        let pts = [
            ProjPoint::zero(),
            ProjPoint::from_int(1),
            ProjPoint::from_int(-1),
            ProjPoint::Infinity,
        ];
        let images: Vec<_> = pts.iter().map(|p| m.apply(p)).collect();
        assert_eq!(images[0], ProjPoint::zero());
        assert_eq!(images[1], ProjPoint::from_int(-1));
        assert_eq!(images[2], ProjPoint::from_int(1));
        assert_eq!(images[3], ProjPoint::Infinity);
    }

    #[test]
    fn triples() {
        let zero = ProjPoint::zero();
        let one = ProjPoint::from_int(1);
        let inf = ProjPoint::Infinity;
        let id = MoebiusMap::from_triples(
            &[zero.clone(), one.clone(), inf.clone()],
            &[zero.clone(), one.clone(), inf.clone()],
        )
        .unwrap();
        assert!(id.is_identity());

        let swap = MoebiusMap::from_triples(
            &[zero.clone(), one.clone(), inf.clone()],
            &[inf.clone(), one.clone(), zero.clone()],
        )
        .unwrap();
        assert_eq!(swap, inv_map());

        let m = MoebiusMap::from_triples(
            &[zero.clone(), one.clone(), inf.clone()],
            &[one.clone(), zero.clone(), inf.clone()],
        )
        .unwrap();
        // x -> 1 - x
        assert_eq!(m.apply(&zero), one);
        assert_eq!(m.apply(&one), zero);
        assert_eq!(m.apply(&inf), inf);

        let err = MoebiusMap::from_triples(
            &[zero.clone(), zero.clone(), inf.clone()],
            &[zero, one, inf],
        );
        assert!(err.is_err());
    }
}
