//! Left and right integrals μ^L, μ^R ∈ A* and the cointegral λ ∈ A.

use serde::Serialize;

use super::element::Elem;
use super::{HopfAlgebra, HopfError};
use crate::linalg::Echelon;
use crate::scalar::Cyclo;

#[derive(Clone, Debug)]
pub struct IntegralSet {
    pub mu_left: Vec<Cyclo>,
    pub mu_right: Vec<Cyclo>,
    pub lambda: Elem,
    /// μ^R(λ) = 1 holds exactly.
    pub normalized: bool,
    /// λ is also a right cointegral and is central.
    pub lambda_two_sided_central: bool,
}

/// Summary of the solution spaces, for reports.
#[derive(Clone, Debug, Serialize)]
pub struct IntegralDims {
    pub left_integral: usize,
    pub right_integral: usize,
    pub cointegral: usize,
}

impl IntegralSet {
    pub fn mu_right(&self, x: &Elem) -> Cyclo {
        x.pair(&self.mu_right)
    }

    /// Rescales μ ↦ s·μ and λ ↦ λ/s, preserving μ^R(λ) = 1.
    pub fn rescaled(&self, s: &Cyclo) -> IntegralSet {
        let si = s.inv().expect("integral rescaling by zero");
        IntegralSet {
            mu_left: self.mu_left.iter().map(|c| c * s).collect(),
            mu_right: self.mu_right.iter().map(|c| c * s).collect(),
            lambda: self.lambda.scale(&si),
            ..self.clone()
        }
    }
}

/// Kernel dimensions of the three defining systems.
pub fn integral_dimensions(h: &HopfAlgebra) -> IntegralDims {
    IntegralDims {
        left_integral: integral_system(h, true).kernel().len(),
        right_integral: integral_system(h, false).kernel().len(),
        cointegral: cointegral_system(h).kernel().len(),
    }
}

/// Rows of (id⊗μ)Δ(y) = μ(y)·1 (left) or (μ⊗id)Δ(y) = μ(y)·1 (right), over all y.
fn integral_system(h: &HopfAlgebra, left: bool) -> Echelon {
    let n = h.dim();
    let one = h.one();
    let mut ech = Echelon::new(n);
    for y in 0..n {
        let mut rows: Vec<Vec<(usize, Cyclo)>> = vec![Vec::new(); n];
        for (a, b, c) in h.comul_basis(y) {
            let (out, var) = if left { (*a, *b) } else { (*b, *a) };
            rows[out].push((var, c.clone()));
        }
        for (k, u) in one.terms() {
            rows[*k].push((y, -u));
        }
        for r in rows {
            let e = Elem::from_terms(r);
            if !e.is_zero() {
                ech.insert(e.terms());
            }
        }
    }
    ech
}

/// Rows of a·λ = ε(a)·λ over the generators.
fn cointegral_system(h: &HopfAlgebra) -> Echelon {
    let n = h.dim();
    let mut ech = Echelon::new(n);
    for a in h.generators() {
        let ea = h.counit(a);
        let mut rows: Vec<Vec<(usize, Cyclo)>> = vec![Vec::new(); n];
        for j in 0..n {
            let col = h.mul(a, &Elem::basis(j));
            for (k, c) in col.terms() {
                rows[*k].push((j, c.clone()));
            }
            if !ea.is_zero() {
                rows[j].push((j, -&ea));
            }
        }
        for r in rows {
            let e = Elem::from_terms(r);
            if !e.is_zero() {
                ech.insert(e.terms());
            }
        }
    }
    ech
}

fn unique(ech: Echelon, what: &str) -> Result<Vec<Cyclo>, HopfError> {
    let mut k = ech.kernel();
    if k.len() != 1 {
        return Err(HopfError::NotOneDimensional {
            what: what.into(),
            dim: k.len(),
        });
    }
    Ok(k.pop().expect("one kernel vector"))
}

/// Solves for μ^L, μ^R, λ, checks each space is one-dimensional, and scales λ so that
/// μ^R(λ) = 1.
pub fn solve_integrals(h: &HopfAlgebra) -> Result<IntegralSet, HopfError> {
    let mu_left = unique(integral_system(h, true), "left integrals")?;
    let mu_right = unique(integral_system(h, false), "right integrals")?;
    let lam = Elem::from_dense(&unique(cointegral_system(h), "cointegrals")?);
    let pairing = lam.pair(&mu_right);
    let inv = pairing
        .inv()
        .map_err(|_| HopfError::Degenerate("right integral vanishes on the cointegral".into()))?;
    let lambda = lam.scale(&inv);
    let normalized = lambda.pair(&mu_right).is_one();
    let two_sided = h.generators().iter().all(|a| {
        let right = h.mul(&lambda, a) == lambda.scale(&h.counit(a));
        let central = h.mul(&lambda, a) == h.mul(a, &lambda);
        right && central
    });
    Ok(IntegralSet {
        mu_left,
        mu_right,
        lambda,
        normalized,
        lambda_two_sided_central: two_sided,
    })
}
