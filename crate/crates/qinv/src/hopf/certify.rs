//! Exact verification of the Hopf, quasitriangular, and ribbon axioms.
//!
//! Identities that are multiplicative in one argument (associativity, Δ and ε being
//! algebra maps, R intertwining Δ with Δ^op, centrality) are checked on the declared
//! generators against every basis element, together with a check that the generators
//! really generate A. Everything else is checked on the full basis.

use serde::Serialize;

use super::element::Elem;
use super::ribbon::{ribbon_elements, RibbonData};
use super::tensor::TensorElement;
use super::HopfAlgebra;
use crate::linalg::Echelon;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertReport {
    pub algebra: String,
    pub dim: usize,
    pub checks: Vec<CheckResult>,
}

impl CertReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub(crate) fn empty(h: &HopfAlgebra) -> CertReport {
        CertReport {
            algebra: h.name().to_string(),
            dim: h.dim(),
            checks: Vec::new(),
        }
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &str, witness: Option<String>) {
        self.checks.push(CheckResult {
            name: name.into(),
            passed: witness.is_none(),
            witness,
        });
    }
}

/// Runs every applicable axiom check.
pub fn certify_hopf(h: &HopfAlgebra) -> CertReport {
    let mut rep = CertReport {
        algebra: h.name().to_string(),
        dim: h.dim(),
        checks: Vec::new(),
    };
    let n = h.dim();
    let lab = |i: usize| h.label_of(i).to_string();
    let gl = |g: &Elem| h.show(g);
    let one = h.one();

    rep.push("generators_generate", check_generation(h));

    rep.push(
        "associativity",
        first_failure(
            h.generators()
                .iter()
                .flat_map(|a| (0..n).flat_map(move |x| (0..n).map(move |y| (a, x, y)))),
            |&(a, x, y)| {
                let bx = Elem::basis(x);
                let by = Elem::basis(y);
                let l = h.mul(a, h.mul_basis(x, y));
                let r = h.mul(&h.mul(a, &bx), &by);
                (l != r).then(|| format!("({}, {}, {})", gl(a), lab(x), lab(y)))
            },
        ),
    );

    rep.push(
        "unit",
        first_failure(0..n, |&x| {
            let bx = Elem::basis(x);
            (h.mul(&one, &bx) != bx || h.mul(&bx, &one) != bx).then(|| lab(x))
        }),
    );

    rep.push(
        "coassociativity",
        first_failure(0..n, |&x| {
            let d = h.comul(&Elem::basis(x));
            let l = d.tensor_split(h, 0);
            let r = d.tensor_split(h, 1);
            (l != r).then(|| lab(x))
        }),
    );

    rep.push(
        "counit",
        first_failure(0..n, |&x| {
            let bx = Elem::basis(x);
            let d = h.comul(&bx);
            let left = Elem::from_terms(d.terms().map(|(k, c)| (k[1], c * &h.counit_form()[k[0]])));
            let right =
                Elem::from_terms(d.terms().map(|(k, c)| (k[0], c * &h.counit_form()[k[1]])));
            (left != bx || right != bx).then(|| lab(x))
        }),
    );

    rep.push(
        "comultiplication_multiplicative",
        first_failure(
            h.generators()
                .iter()
                .flat_map(|a| (0..n).map(move |x| (a, x))),
            |&(a, x)| {
                let bx = Elem::basis(x);
                let l = h.comul(&h.mul(a, &bx));
                let r = h.tensor_mul(&h.comul(a), &h.comul(&bx));
                (l != r).then(|| format!("({}, {})", gl(a), lab(x)))
            },
        ),
    );

    rep.push(
        "counit_multiplicative",
        first_failure(
            h.generators()
                .iter()
                .flat_map(|a| (0..n).map(move |x| (a, x))),
            |&(a, x)| {
                let bx = Elem::basis(x);
                (h.counit(&h.mul(a, &bx)) != &h.counit(a) * &h.counit(&bx))
                    .then(|| format!("({}, {})", gl(a), lab(x)))
            },
        ),
    );

    rep.push("unit_grouplike", {
        let ok = h.comul(&one) == TensorElement::pure(&[&one, &one]) && h.counit(&one).is_one();
        (!ok).then(|| "1".to_string())
    });

    rep.push(
        "antipode",
        first_failure(0..n, |&x| {
            let bx = Elem::basis(x);
            let d = h.comul(&bx);
            let mut l = Elem::zero();
            let mut r = Elem::zero();
            for (k, c) in d.terms() {
                l = l.add(&h.mul(h.antipode_basis(k[0]), &Elem::basis(k[1])).scale(c));
                r = r.add(&h.mul(&Elem::basis(k[0]), h.antipode_basis(k[1])).scale(c));
            }
            let e = one.scale(&h.counit(&bx));
            (l != e || r != e).then(|| lab(x))
        }),
    );

    if let Some(r) = h.r_matrix() {
        rep.push(
            "r_intertwines_coproduct",
            first_failure(h.generators().iter(), |&a| {
                let d = h.comul(a);
                let l = h.tensor_mul(r, &d);
                let rr = h.tensor_mul(&d.permute(&[1, 0]), r);
                (l != rr).then(|| gl(a))
            }),
        );
        let (r13, r23, r12) = (
            lift3(r, 0, 2, &one),
            lift3(r, 1, 2, &one),
            lift3(r, 0, 1, &one),
        );
        rep.push("triangle_coproduct_first_leg", {
            let l = r.tensor_split(h, 0);
            (l != h.tensor_mul(&r13, &r23)).then(|| "R".to_string())
        });
        rep.push("triangle_coproduct_second_leg", {
            let l = r.tensor_split(h, 1);
            (l != h.tensor_mul(&r13, &r12)).then(|| "R".to_string())
        });
        rep.push("r_inverse_via_antipode", {
            let sr = h.map_leg(r, 0, |x| h.antipode(x));
            let p = h.tensor_mul(r, &sr);
            (p != TensorElement::pure(&[&one, &one])).then(|| "R·(S⊗id)R".to_string())
        });
    }

    balancing_and_ribbon_checks(h, &mut rep);
    rep
}

/// Checks on G and on the derived ribbon element v.
pub(crate) fn balancing_and_ribbon_checks(h: &HopfAlgebra, rep: &mut CertReport) {
    let n = h.dim();
    let lab = |i: usize| h.label_of(i).to_string();
    let one = h.one();
    if let Some(g) = h.balancing() {
        rep.push(
            "balancing_grouplike",
            (h.comul(g) != TensorElement::pure(&[g, g])).then(|| "Δ(G)".to_string()),
        );
        rep.push(
            "balancing_antipode",
            (h.mul(&h.antipode(g), g) != one).then(|| "S(G)·G".to_string()),
        );
        match h.inverse(g) {
            None => rep.push("balancing_invertible", Some("G".to_string())),
            Some(gi) => rep.push(
                "balancing_implements_antipode_squared",
                first_failure(0..n, |&x| {
                    let bx = Elem::basis(x);
                    let s2 = h.antipode_pow(&bx, 2);
                    (s2 != h.mul(&h.mul(g, &bx), &gi)).then(|| lab(x))
                }),
            ),
        }
    }

    if h.r_matrix().is_some() && h.balancing().is_some() {
        match ribbon_elements(h) {
            Err(e) => rep.push("ribbon_elements", Some(e.to_string())),
            Ok(rd) => ribbon_checks(h, &rd, rep),
        }
    }
}

fn ribbon_checks(h: &HopfAlgebra, rd: &RibbonData, rep: &mut CertReport) {
    let g = h.balancing().expect("balancing present");
    rep.push(
        "balancing_squares_to_g",
        (h.mul(g, g) != rd.g).then(|| "G²".to_string()),
    );
    rep.push(
        "ribbon_central",
        first_failure(h.generators().iter(), |&a| {
            (h.mul(a, &rd.v) != h.mul(&rd.v, a)).then(|| h.show(a))
        }),
    );
    rep.push(
        "ribbon_antipode_invariant",
        (h.antipode(&rd.v) != rd.v).then(|| "S(v)".to_string()),
    );
    rep.push(
        "ribbon_counit",
        (!h.counit(&rd.v).is_one()).then(|| "ε(v)".to_string()),
    );
    rep.push("ribbon_monodromy", {
        let l = h.tensor_mul(&rd.monodromy, &h.comul(&rd.v));
        (l != TensorElement::pure(&[&rd.v, &rd.v])).then(|| "M·Δ(v)".to_string())
    });
}

/// Places a 2-tensor on legs (a, b) of A^{⊗3}, with `one` on the remaining leg.
fn lift3(r: &TensorElement, a: usize, b: usize, one: &Elem) -> TensorElement {
    let mut out = TensorElement::zero(3);
    let c = 3 - a - b;
    for (k, v) in r.terms() {
        for (u, w) in one.terms() {
            let mut idx = [0usize; 3];
            idx[a] = k[0];
            idx[b] = k[1];
            idx[c] = *u;
            out.add_term(&idx, v * w);
        }
    }
    out
}

impl TensorElement {
    /// Applies Δ to leg `leg`, producing a tensor of arity one higher.
    pub fn tensor_split(&self, h: &HopfAlgebra, leg: usize) -> TensorElement {
        let mut out = TensorElement::zero(self.arity() + 1);
        for (k, c) in self.terms() {
            for (a, b, d) in h.comul_basis(k[leg]) {
                let mut nk: Vec<usize> = Vec::with_capacity(k.len() + 1);
                nk.extend_from_slice(&k[..leg]);
                nk.push(*a);
                nk.push(*b);
                nk.extend_from_slice(&k[leg + 1..]);
                out.add_term(&nk, c * d);
            }
        }
        out
    }
}

fn first_failure<T, I: IntoIterator<Item = T>>(
    it: I,
    f: impl Fn(&T) -> Option<String>,
) -> Option<String> {
    it.into_iter().find_map(|t| f(&t))
}

/// Checks that the declared generators (with 1) generate A as an algebra.
fn check_generation(h: &HopfAlgebra) -> Option<String> {
    let n = h.dim();
    let mut ech = Echelon::new(n);
    let mut queue = vec![h.one()];
    ech.insert(h.one().terms());
    while let Some(x) = queue.pop() {
        for a in h.generators() {
            let y = h.mul(a, &x);
            if ech.insert(y.terms()) {
                queue.push(y);
            }
        }
    }
    (ech.rank() != n).then(|| format!("span of generators has dimension {} < {}", ech.rank(), n))
}
