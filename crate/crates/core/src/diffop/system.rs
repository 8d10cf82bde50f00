//! First-order n x n systems: the companion form of a scalar operator and
//! the adjoint (integral-side) system.

use std::fmt;

use crate::funcfield::RatFunc;

use super::op::DiffOp;

/// Which equation the matrix encodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Y' = A Y on column solution vectors.
    Solution,
    /// X' = X M on row first-integral vectors.
    Integral,
}

#[derive(Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub matrix: Vec<Vec<RatFunc>>,
    pub side: Side,
}

impl LinearSystem {
    pub fn new(matrix: Vec<Vec<RatFunc>>, side: Side) -> Self {
        let n = matrix.len();
        assert!(matrix.iter().all(|r| r.len() == n), "system matrix must be square");
        LinearSystem { matrix, side }
    }

    pub fn dimension(&self) -> usize {
        self.matrix.len()
    }

    /// Companion system of a scalar operator: Y = (y, y', ..., y^(n-1)).
    pub fn companion(l: &DiffOp) -> Self {
        let n = l.order();
        let monic = l.monic();
        let mut m = vec![vec![RatFunc::zero(); n]; n];
        for i in 0..n.saturating_sub(1) {
            m[i][i + 1] = RatFunc::one();
        }
        for j in 0..n {
            m[n - 1][j] = monic.coeff(j).neg();
        }
        LinearSystem::new(m, Side::Solution)
    }

    /// The adjoint system for linear first integrals: X(-A) = X'.
    pub fn adjoint(&self) -> Self {
        let m = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|c| c.neg()).collect())
            .collect();
        LinearSystem::new(
            m,
            match self.side {
                Side::Solution => Side::Integral,
                Side::Integral => Side::Solution,
            },
        )
    }
}

impl fmt::Debug for LinearSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:?} system:", self.side)?;
        for row in &self.matrix {
            writeln!(
                f,
                "  [{}]",
                row.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn companion_of_second_derivative() {
        let l = DiffOp::derivation_power(2);
        let sys = LinearSystem::companion(&l);
        assert_eq!(sys.matrix[0][1], RatFunc::one());
        assert!(sys.matrix[0][0].is_zero());
        assert!(sys.matrix[1][0].is_zero());
        assert!(sys.matrix[1][1].is_zero());
    }

    #[test]
    fn adjoint_is_an_involution() {
        let l = DiffOp::new(vec![RatFunc::from_int(1), RatFunc::var(), RatFunc::one()]);
        let sys = LinearSystem::companion(&l);
        let back = sys.adjoint().adjoint();
        assert_eq!(back, sys);
        assert_eq!(sys.adjoint().side, Side::Integral);
    }
}
