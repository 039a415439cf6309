//! Ribbon data derived from R and G: u, û, g, v, the monodromy M = R₂₁R and the
//! pairing element ω, plus modularity, the center, and adjoint invariance.

use serde::Serialize;

use super::certify::{balancing_and_ribbon_checks, CertReport};
use super::element::Elem;
use super::integrals::IntegralSet;
use super::tensor::TensorElement;
use super::{HopfAlgebra, HopfError};
use crate::linalg::{Echelon, Matrix};

/// Derived ribbon elements of a balanced quasitriangular Hopf algebra.
#[derive(Clone, Debug)]
pub struct RibbonData {
    /// Minimal-length decomposition R = Σ_k e_k ⊗ f_k.
    pub r_factors: Vec<(Elem, Elem)>,
    /// The inverse R⁻¹ = (S⊗id)R, in the same factorized form.
    pub r_inv_factors: Vec<(Elem, Elem)>,
    pub u: Elem,
    pub u_hat: Elem,
    pub g: Elem,
    pub v: Elem,
    pub v_inv: Elem,
    pub balancing: Elem,
    pub balancing_inv: Elem,
    /// M = R₂₁R = Σ f_i e_j ⊗ e_i f_j.
    pub monodromy: TensorElement,
    /// ω = (id⊗S)(M).
    pub omega: TensorElement,
}

/// Factors an arity-2 tensor as Σ_k e_k ⊗ f_k with the minimal number of terms.
pub fn factor_r(r: &TensorElement, n: usize) -> Vec<(Elem, Elem)> {
    let mut rows: Vec<Vec<(usize, crate::scalar::Cyclo)>> = vec![Vec::new(); n];
    for (k, c) in r.terms() {
        rows[k[0]].push((k[1], c.clone()));
    }
    let mut ech = Echelon::new(n);
    for row in &rows {
        ech.insert(row);
    }
    // Row i of the coefficient matrix equals Σ_k R[i][pivot_k] · (echelon row k).
    ech.rows()
        .iter()
        .map(|er| {
            let p = er[0].0;
            let left = Elem::from_terms(rows.iter().enumerate().filter_map(|(i, row)| {
                row.iter()
                    .find(|(j, _)| *j == p)
                    .map(|(_, c)| (i, c.clone()))
            }));
            let right = Elem::from_terms(er.iter().cloned());
            (left, right)
        })
        .collect()
}

/// Computes the ribbon elements without verifying the ribbon identities.
pub(crate) fn ribbon_elements(h: &HopfAlgebra) -> Result<RibbonData, HopfError> {
    let r = h
        .r_matrix()
        .ok_or_else(|| HopfError::Missing("R-matrix".into()))?;
    let gb = h
        .balancing()
        .ok_or_else(|| HopfError::Missing("balancing element".into()))?
        .clone();
    let n = h.dim();
    let r_factors = factor_r(r, n);
    let r_inv_factors: Vec<(Elem, Elem)> = r_factors
        .iter()
        .map(|(e, f)| (h.antipode(e), f.clone()))
        .collect();
    let mut u = Elem::zero();
    for (e, f) in &r_factors {
        u = u.add(&h.mul(&h.antipode(f), e));
    }
    let su_inv = h
        .inverse(&h.antipode(&u))
        .ok_or_else(|| HopfError::Degenerate("S(u) is not invertible".into()))?;
    let g = h.mul(&u, &su_inv);
    let balancing_inv = h
        .inverse(&gb)
        .ok_or_else(|| HopfError::Degenerate("G is not invertible".into()))?;
    let v = h.mul(&u, &balancing_inv);
    let v_inv = h
        .inverse(&v)
        .ok_or_else(|| HopfError::Degenerate("v is not invertible".into()))?;
    let mut monodromy = TensorElement::zero(2);
    for (ei, fi) in &r_factors {
        for (ej, fj) in &r_factors {
            let a = h.mul(fi, ej);
            if a.is_zero() {
                continue;
            }
            let b = h.mul(ei, fj);
            monodromy.add_assign(&TensorElement::pure(&[&a, &b]));
        }
    }
    let omega = h.map_leg(&monodromy, 1, |x| h.antipode(x));
    Ok(RibbonData {
        r_factors,
        r_inv_factors,
        u,
        u_hat: su_inv,
        g,
        v,
        v_inv,
        balancing: gb,
        balancing_inv,
        monodromy,
        omega,
    })
}

/// Computes the ribbon data and verifies G² = g, Ad(G) = S², and the identities for v.
pub fn derive_ribbon_data(h: &HopfAlgebra) -> Result<RibbonData, HopfError> {
    let rd = ribbon_elements(h)?;
    let mut rep = CertReport::empty(h);
    balancing_and_ribbon_checks(h, &mut rep);
    if let Some(c) = rep.failures().first() {
        return Err(HopfError::Identity {
            identity: c.name.clone(),
            witness: c.witness.clone().unwrap_or_default(),
        });
    }
    Ok(rd)
}

/// Result of the modularity test.
#[derive(Clone, Debug, Serialize)]
pub struct Modularity {
    pub modular: bool,
    pub rank: usize,
    /// Whether (id⊗μ^R)(ω) is a nonzero multiple of λ, when integrals were supplied.
    pub integral_criterion: Option<bool>,
}

/// Rank of ω as an n×n matrix and, when integrals are known, the criterion
/// (id⊗μ^R)(ω) ∈ k^×·λ.
pub fn check_modularity(
    h: &HopfAlgebra,
    rd: &RibbonData,
    integrals: Option<&IntegralSet>,
) -> Modularity {
    let n = h.dim();
    let rank = rd.omega.to_matrix(n).rank();
    let integral_criterion = integrals.map(|ints| {
        let x = rd.omega.contract_leg(1, &ints.mu_right).to_elem();
        proportional(&x, &ints.lambda).is_some_and(|c| !c.is_zero())
    });
    Modularity {
        modular: rank == n,
        rank,
        integral_criterion,
    }
}

/// Finds c with x = c·y.
pub fn proportional(x: &Elem, y: &Elem) -> Option<crate::scalar::Cyclo> {
    let (i, yc) = y.terms().first()?;
    let c = x.coeff(*i).div_ref(yc).ok()?;
    (y.scale(&c) == *x).then_some(c)
}

/// Basis of the center: the common kernel of x ↦ ax − xa over the generators.
pub fn center_basis(h: &HopfAlgebra) -> Vec<Elem> {
    let n = h.dim();
    let mut ech = Echelon::new(n);
    for a in h.generators() {
        let mut rows: Vec<Vec<(usize, crate::scalar::Cyclo)>> = vec![Vec::new(); n];
        for j in 0..n {
            let c = h.commutator(a, &Elem::basis(j));
            for (k, x) in c.terms() {
                rows[*k].push((j, x.clone()));
            }
        }
        for r in rows.iter().filter(|r| !r.is_empty()) {
            ech.insert(r);
        }
    }
    ech.kernel().iter().map(|v| Elem::from_dense(v)).collect()
}

/// True iff X ∈ A^{⊗N} commutes with Δ^{(N-1)}(a) for every generator a, which is
/// equivalent to invariance under the N-fold adjoint action.
pub fn coadjoint_invariance_check(x: &TensorElement, h: &HopfAlgebra) -> bool {
    let k = x.arity();
    if k == 0 {
        return true;
    }
    h.generators().iter().all(|a| {
        let d = h.comul_iter(a, k);
        h.tensor_mul(&d, x) == h.tensor_mul(x, &d)
    })
}

/// Matrix of ω with rows indexed by the first leg.
pub fn omega_matrix(h: &HopfAlgebra, rd: &RibbonData) -> Matrix {
    rd.omega.to_matrix(h.dim())
}
