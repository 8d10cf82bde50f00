//! Exact-sequence order checks relating the center, the group, the
//! normalizer-induced automorphisms and the symmetry group.

use crate::error::{Error, Result};

use super::group::FiniteMatrixGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SequenceMode {
    /// 1 -> Z(G) -> G -> F -> Sym -> 1 with ker(G -> F) = Z(G):
    /// exact order arithmetic demands |G|/|Z(G)| = |F|/|Sym|.
    CenterQuotient,
    /// G abelian (Z(G) = G): the middle group contains G itself as the kernel
    /// of F -> Sym, so |F| = |G| * |Sym|.
    Inclusion,
}

#[derive(Clone, Debug)]
pub struct ExactSequenceReport {
    pub orders: (usize, usize, usize, usize),
    pub mode: SequenceMode,
    pub order_exact: bool,
    pub normality: Option<bool>,
    pub quotient_order: Option<usize>,
    pub quotient_cyclic: Option<bool>,
    pub exact: bool,
    pub notes: Vec<String>,
}

/// Arithmetic mode: verify the order bookkeeping only (and say so).
pub fn exact_sequence_orders(
    zg: usize,
    g: usize,
    f: usize,
    sym: usize,
) -> Result<ExactSequenceReport> {
    if zg == 0 || g == 0 || f == 0 || sym == 0 {
        return Err(Error::InconsistentData("zero group order".into()));
    }
    let mut notes = vec!["order arithmetic only (no maps supplied)".to_string()];
    let (mode, order_exact) = if zg == g {
        let ok = f == g.saturating_mul(sym);
        notes.push(format!(
            "abelian case: require |F| = |G|*|Sym|: {} = {}*{}",
            f, g, sym
        ));
        (SequenceMode::Inclusion, ok)
    } else {
        let ok = g % zg == 0 && f % sym == 0 && g / zg == f / sym;
        notes.push(format!(
            "require |G|/|Z(G)| = |F|/|Sym|: {}/{} = {}/{}",
            g, zg, f, sym
        ));
        (SequenceMode::CenterQuotient, ok)
    };
    Ok(ExactSequenceReport {
        orders: (zg, g, f, sym),
        mode,
        order_exact,
        normality: None,
        quotient_order: None,
        quotient_cyclic: None,
        exact: order_exact,
        notes,
    })
}

/// Group mode: the inner image (projectivization of G) sits inside F; verify
/// order arithmetic, normality of the image, and the quotient structure.
pub fn exact_sequence_groups(
    g: &FiniteMatrixGroup,
    f: &FiniteMatrixGroup,
    sym_order: usize,
) -> Result<ExactSequenceReport> {
    let zg = g.center().len();
    let inner = g.projectivize();
    let mut report = exact_sequence_orders(zg, g.order(), f.order(), sym_order)?;
    report
        .notes
        .push(format!("inner image order {}", inner.order()));
    if inner.order() * zg != g.order() {
        report.notes.push(
            "warning: |G/Z(G)| does not match the projectivization order".to_string(),
        );
    }
    let normal = inner.is_normal_in(f)?;
    report.normality = Some(normal);
    if normal {
        let q = inner.quotient_order(f)?;
        report.quotient_order = Some(q);
        report.quotient_cyclic = Some(inner.is_cyclic_quotient(f)?);
        report.notes.push(format!(
            "quotient F / inner has order {}{}",
            q,
            if report.quotient_cyclic == Some(true) {
                ", cyclic"
            } else {
                ""
            }
        ));
        report.exact = report.order_exact && q == sym_order;
    } else {
        report.exact = false;
    }
    report.notes[0] = "verified on enumerated groups".to_string();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_order_arithmetic() {
        let r = exact_sequence_orders(3, 27, 36, 4).unwrap();
        assert!(r.exact);
        assert_eq!(r.mode, SequenceMode::CenterQuotient);
    }

    #[test]
    fn number_field_case() {
        let r = exact_sequence_orders(4, 4, 8, 2).unwrap();
        assert!(r.exact);
        assert_eq!(r.mode, SequenceMode::Inclusion);
    }

    #[test]
    fn degenerate_trivial_symmetry() {
        // (zg, g, g/zg, 1): exact iff F has order |G|/|Z|.
        let r = exact_sequence_orders(2, 8, 4, 1).unwrap();
        assert!(r.exact);
        let r = exact_sequence_orders(2, 8, 6, 1).unwrap();
        assert!(!r.exact);
    }

    #[test]
    fn inconsistent_rejected() {
        assert!(exact_sequence_orders(0, 1, 1, 1).is_err());
    }
}
