//! The central element Q defined by μ^R(Q·y) = D⁻¹ Σ_j d(j) tr_{V_j}(G⁻¹·y).

use super::element::Elem;
use super::integrals::IntegralSet;
use super::{HopfAlgebra, HopfError};
use crate::linalg::solve_sparse;
use crate::scalar::Cyclo;
use crate::zoo::IrrepCatalog;

/// A central element together with its verified properties.
#[derive(Clone, Debug)]
pub struct CentralElement {
    pub value: Elem,
    pub is_central: bool,
    pub is_antipode_invariant: bool,
}

impl CentralElement {
    /// Wraps an element after checking centrality and S-invariance.
    pub fn new(h: &HopfAlgebra, value: Elem) -> CentralElement {
        let is_central = h
            .generators()
            .iter()
            .all(|a| h.mul(a, &value) == h.mul(&value, a));
        let is_antipode_invariant = h.antipode(&value) == value;
        CentralElement {
            value,
            is_central,
            is_antipode_invariant,
        }
    }

    pub fn is_one(&self, h: &HopfAlgebra) -> bool {
        self.value == h.one()
    }
}

/// The right-hand side y ↦ D⁻¹ Σ_j d(j) tr_{V_j}(G⁻¹·y) as a linear form.
///
/// The right integral satisfies μ^R(xy) = μ^R(S²(y)x), and y ↦ tr(G⁻¹y) has the same
/// twist, so this is the weighted trace that μ^R(Q·-) can match. The quantum
/// dimensions d(j) = tr_{V_j}(G) are unchanged since V_j and V_j^∨ have equal d.
pub fn semisimple_form(h: &HopfAlgebra, cat: &IrrepCatalog) -> Vec<Cyclo> {
    let g = match h.balancing() {
        Some(g) => h.inverse(g).expect("balancing element is invertible"),
        None => h.one(),
    };
    let d_inv = cat.global_dim().inv().expect("global dimension is nonzero");
    (0..h.dim())
        .map(|y| {
            let gy = h.mul(&g, &Elem::basis(y));
            let mut acc = Cyclo::zero();
            for entry in cat.entries() {
                let t = entry.trace(&gy);
                if !t.is_zero() {
                    acc += &(&entry.qdim * &t);
                }
            }
            &acc * &d_inv
        })
        .collect()
}

/// Solves for Q; fails when the bilinear form (a, b) ↦ μ^R(ab) is degenerate or
/// the solution is not central.
pub fn compute_q(
    h: &HopfAlgebra,
    cat: &IrrepCatalog,
    ints: &IntegralSet,
) -> Result<CentralElement, HopfError> {
    let n = h.dim();
    let rhs = semisimple_form(h, cat);
    // Row y: Σ_i Q_i μ^R(b_i b_y) = rhs_y.
    let mut gram = crate::linalg::Matrix::zeros(n, n);
    for y in 0..n {
        for i in 0..n {
            gram[(y, i)] = h.mul_basis(i, y).pair(&ints.mu_right);
        }
    }
    if gram.rank() != n {
        return Err(HopfError::Degenerate(
            "the form (a,b) ↦ μ^R(ab) is degenerate".into(),
        ));
    }
    let eqs = (0..n).map(|y| {
        let row: Vec<(usize, Cyclo)> = gram
            .row(y)
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        (row, rhs[y].clone())
    });
    let q =
        solve_sparse(n, eqs).ok_or_else(|| HopfError::Degenerate("no solution for Q".into()))?;
    let ce = CentralElement::new(h, Elem::from_dense(&q));
    if !ce.is_central {
        return Err(HopfError::Identity {
            identity: "Q central".into(),
            witness: "catalog inconsistency".into(),
        });
    }
    Ok(ce)
}
