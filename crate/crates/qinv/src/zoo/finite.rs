//! Group algebras k[G] and Drinfeld doubles D(G) of finite groups.

use super::group::FiniteGroupTable;
use crate::hopf::{Elem, HopfAlgebra, HopfData, TensorElement};
use crate::scalar::Cyclo;

/// k[G] with Δ(g) = g⊗g, S(g) = g⁻¹, R = 1⊗1 and G = 1.
pub fn group_algebra(g: &FiniteGroupTable) -> HopfAlgebra {
    let n = g.order();
    let e = g.identity;
    let mut r = TensorElement::zero(2);
    r.add_term(&[e, e], Cyclo::one());
    HopfAlgebra::new(HopfData {
        name: format!("group:{}", g.name),
        labels: g.labels.clone(),
        mul: (0..n)
            .flat_map(|a| (0..n).map(move |b| Elem::basis(g.m(a, b))))
            .collect(),
        unit: Elem::basis(e),
        comul: (0..n).map(|a| vec![(a, a, Cyclo::one())]).collect(),
        counit: vec![Cyclo::one(); n],
        antipode: (0..n).map(|a| Elem::basis(g.inv[a])).collect(),
        r_matrix: Some(r),
        balancing: Some(Elem::basis(e)),
        generators: None,
    })
    .expect("group algebra data is well formed")
}

/// Basis index of δ_g·x in D(G).
pub fn double_index(g: &FiniteGroupTable, delta: usize, x: usize) -> usize {
    delta * g.order() + x
}

/// D(G) on the basis δ_g·x with
/// (δ_g x)(δ_h y) = [g = x h x⁻¹] δ_g xy,
/// Δ(δ_g x) = Σ_{g₁g₂ = g} δ_{g₁}x ⊗ δ_{g₂}x, ε(δ_g x) = [g = e],
/// S(δ_g x) = δ_{x⁻¹g⁻¹x} x⁻¹, R = Σ_g δ_g ⊗ g, and G = 1.
pub fn drinfeld_double(g: &FiniteGroupTable) -> HopfAlgebra {
    let n = g.order();
    let e = g.identity;
    let idx = |d: usize, x: usize| double_index(g, d, x);
    let dim = n * n;
    let mut labels = Vec::with_capacity(dim);
    for d in 0..n {
        for x in 0..n {
            labels.push(format!("d[{}]{}", g.labels[d], g.labels[x]));
        }
    }
    let mut mul = Vec::with_capacity(dim * dim);
    for d1 in 0..n {
        for x in 0..n {
            for d2 in 0..n {
                for y in 0..n {
                    mul.push(if d1 == g.conj(x, d2) {
                        Elem::basis(idx(d1, g.m(x, y)))
                    } else {
                        Elem::zero()
                    });
                }
            }
        }
    }
    let unit = Elem::from_terms((0..n).map(|d| (idx(d, e), Cyclo::one())));
    let mut comul = Vec::with_capacity(dim);
    let mut counit = Vec::with_capacity(dim);
    let mut antipode = Vec::with_capacity(dim);
    for d in 0..n {
        for x in 0..n {
            let terms = (0..n)
                .map(|g1| (idx(g1, x), idx(g.m(g.inv[g1], d), x), Cyclo::one()))
                .collect();
            comul.push(terms);
            counit.push(if d == e { Cyclo::one() } else { Cyclo::zero() });
            let xi = g.inv[x];
            antipode.push(Elem::basis(idx(g.conj(xi, g.inv[d]), xi)));
        }
    }
    let mut r = TensorElement::zero(2);
    for d in 0..n {
        for h in 0..n {
            r.add_term(&[idx(d, e), idx(h, d)], Cyclo::one());
        }
    }
    HopfAlgebra::new(HopfData {
        name: format!("double:{}", g.name),
        labels,
        mul,
        unit: unit.clone(),
        comul,
        counit,
        antipode,
        r_matrix: Some(r),
        balancing: Some(unit),
        generators: None,
    })
    .expect("double data is well formed")
}
