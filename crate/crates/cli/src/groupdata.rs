//! Curated group data files: JSON with generator matrices as constant
//! expression strings. The data is validated by the test suite (closure
//! orders, invariant dimensions), never trusted.

use serde::Deserialize;

use fano_core::error::{Error, Result};
use fano_core::groups::{entry_monomial, FiniteMatrixGroup, GroupElement, LaurentEntry};
use fano_core::linalg::Matrix;
use fano_core::scalars::Cyclotomic;

use crate::parser::{parse_constant, parse_expr, Expr};

#[derive(Deserialize, Clone)]
pub struct GroupFile {
    pub name: String,
    pub provenance: String,
    pub dimension: usize,
    #[serde(default)]
    pub projective: bool,
    #[serde(default = "default_build")]
    pub build: String,
    #[serde(default)]
    pub generators: Vec<Vec<Vec<String>>>,
    /// lambda-parametrized generators (never enumerated).
    #[serde(default)]
    pub torus_generators: Vec<Vec<Vec<String>>>,
    #[serde(default = "default_bound")]
    pub bound: usize,
}

fn default_build() -> String {
    "plain".into()
}

fn default_bound() -> usize {
    10_000
}

fn parse_matrix(rows: &[Vec<String>]) -> Result<Matrix> {
    rows.iter()
        .map(|row| {
            row.iter()
                .map(|s| {
                    parse_constant(s).map_err(|e| Error::Unsupported(format!("{}: {}", s, e)))
                })
                .collect()
        })
        .collect()
}

/// Entry grammar for torus generators: a constant, optionally times
/// lambda^k (k any integer), e.g. "lambda", "2*lambda^-1", "-lambda".
fn parse_lambda_entry(text: &str) -> Result<LaurentEntry> {
    fn walk(e: &Expr) -> Result<(Cyclotomic, i64)> {
        match e {
            Expr::Ident(name) if name == "lambda" => Ok((Cyclotomic::one(), 1)),
            Expr::Pow(a, b) => {
                if let Expr::Ident(name) = a.as_ref() {
                    if name == "lambda" {
                        let k = match b.as_ref() {
                            Expr::Int(n) => num::ToPrimitive::to_i64(n),
                            Expr::Neg(inner) => match inner.as_ref() {
                                Expr::Int(n) => num::ToPrimitive::to_i64(n).map(|v| -v),
                                _ => None,
                            },
                            _ => None,
                        }
                        .ok_or_else(|| Error::Unsupported("lambda exponent".into()))?;
                        return Ok((Cyclotomic::one(), k));
                    }
                }
                Err(Error::Unsupported("unsupported power".into()))
            }
            Expr::Neg(a) => {
                let (c, k) = walk(a)?;
                Ok((-&c, k))
            }
            Expr::Mul(a, b) => {
                let (ca, ka) = walk(a)?;
                let (cb, kb) = walk(b)?;
                Ok((&ca * &cb, ka + kb))
            }
            other => {
                let c = crate::parser::eval_constant(other)
                    .map_err(|e| Error::Unsupported(e.to_string()))?;
                Ok((c, 0))
            }
        }
    }
    let ast = parse_expr(text).map_err(|e| Error::Unsupported(e.to_string()))?;
    let (c, k) = walk(&ast)?;
    Ok(entry_monomial(c, k))
}

pub fn parse_torus_matrix(rows: &[Vec<String>]) -> Result<GroupElement> {
    let entries: Result<Vec<Vec<LaurentEntry>>> = rows
        .iter()
        .map(|row| row.iter().map(|s| parse_lambda_entry(s)).collect())
        .collect();
    GroupElement::new(entries?)
}

/// Symmetric square of a 2x2 matrix on the basis (x^2, xy, y^2), matching the
/// column action on variables.
pub fn symmetric_square(g: &Matrix) -> Matrix {
    let (a, b, c, d) = (&g[0][0], &g[0][1], &g[1][0], &g[1][1]);
    let two = Cyclotomic::from_int(2);
    vec![
        vec![a * a, a * b, b * b],
        vec![&two * &(a * c), &(a * d) + &(b * c), &two * &(b * d)],
        vec![c * c, c * d, d * d],
    ]
}

pub struct LoadedGroup {
    pub file: GroupFile,
    pub generator_matrices: Vec<Matrix>,
    pub torus: Vec<GroupElement>,
}

impl LoadedGroup {
    pub fn enumerate(&self) -> Result<FiniteMatrixGroup> {
        FiniteMatrixGroup::closure(
            &self.generator_matrices,
            self.file.bound,
            self.file.projective,
        )
    }
}

pub fn load_group_str(json: &str) -> Result<LoadedGroup> {
    let file: GroupFile =
        serde_json::from_str(json).map_err(|e| Error::Unsupported(format!("group json: {}", e)))?;
    if file.provenance.trim().is_empty() {
        return Err(Error::Unsupported(
            "group data files must carry a provenance note".into(),
        ));
    }
    let mut generator_matrices = Vec::new();
    for g in &file.generators {
        let m = parse_matrix(g)?;
        let m = match file.build.as_str() {
            "plain" => m,
            "symmetric_square" => {
                if m.len() != 2 {
                    return Err(Error::Unsupported(
                        "symmetric_square build expects 2x2 generators".into(),
                    ));
                }
                symmetric_square(&m)
            }
            other => {
                return Err(Error::Unsupported(format!("unknown build mode {}", other)))
            }
        };
        if m.len() != file.dimension {
            return Err(Error::Unsupported(format!(
                "generator dimension {} does not match declared {}",
                m.len(),
                file.dimension
            )));
        }
        generator_matrices.push(m);
    }
    let torus: Result<Vec<GroupElement>> = file
        .torus_generators
        .iter()
        .map(|rows| parse_torus_matrix(rows))
        .collect();
    Ok(LoadedGroup { file, generator_matrices, torus: torus? })
}

/// The bundled data files.
pub mod bundled {
    pub const G27: &str = include_str!("../data/groups/g27.json");
    pub const F36_LIFT: &str = include_str!("../data/groups/f36_lift.json");
    pub const G54: &str = include_str!("../data/groups/g54.json");
    pub const A5_SYM2: &str = include_str!("../data/groups/a5_sym2.json");
    pub const DINF: &str = include_str!("../data/groups/dinf.json");

    pub fn by_name(name: &str) -> Option<&'static str> {
        match name {
            "g27" | "g27.json" => Some(G27),
            "f36_lift" | "f36_lift.json" => Some(F36_LIFT),
            "g54" | "g54.json" => Some(G54),
            "a5_sym2" | "a5_sym2.json" => Some(A5_SYM2),
            "dinf" | "dinf.json" => Some(DINF),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curated_closure_orders() {
        let g27 = load_group_str(bundled::G27).unwrap().enumerate().unwrap();
        assert_eq!(g27.order(), 27);
        assert_eq!(g27.center().len(), 3);
        assert_eq!(g27.projectivize().order(), 9);

        let f36 = load_group_str(bundled::F36_LIFT).unwrap().enumerate().unwrap();
        assert_eq!(f36.order(), 36);

        let g54 = load_group_str(bundled::G54).unwrap().enumerate().unwrap();
        assert_eq!(g54.order(), 54);

        let a5 = load_group_str(bundled::A5_SYM2).unwrap().enumerate().unwrap();
        assert_eq!(a5.order(), 60);
    }

    #[test]
    fn dinf_data_loads() {
        let d = load_group_str(bundled::DINF).unwrap();
        assert_eq!(d.torus.len(), 1);
        assert_eq!(d.generator_matrices.len(), 2);
    }
}

#[cfg(test)]
mod structure_tests {
    use super::*;
    use fano_core::groups::{invariant_dimension, quadratic_form_rank, reynolds_invariants};

    #[test]
    fn projective_heisenberg_inside_f36() {
        let g27 = load_group_str(bundled::G27).unwrap().enumerate().unwrap();
        let pg27 = g27.projectivize();
        let f36 = load_group_str(bundled::F36_LIFT).unwrap().enumerate().unwrap();
        assert!(pg27.is_subgroup_of(&f36), "PG27 not inside F36");
        assert!(pg27.is_normal_in(&f36).unwrap());
        assert_eq!(pg27.quotient_order(&f36).unwrap(), 4);
        assert!(pg27.is_cyclic_quotient(&f36).unwrap());
    }

    #[test]
    fn invariant_dimensions() {
        let g27 = load_group_str(bundled::G27).unwrap().enumerate().unwrap();
        assert_eq!(invariant_dimension(&g27, 3).unwrap(), 2);
        let a5 = load_group_str(bundled::A5_SYM2).unwrap().enumerate().unwrap();
        let inv = reynolds_invariants(&a5, 2).unwrap();
        assert_eq!(inv.len(), 1);
        assert_eq!(quadratic_form_rank(&inv[0]), Some(3));
    }
}
