//! Catalogs of irreducible representations with nonzero quantum dimension.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::group::FiniteGroupTable;
use super::uqsl2::{pbw, qint};
use super::ZooError;
use crate::hopf::{Elem, HopfAlgebra};
use crate::linalg::Matrix;
use crate::scalar::{sqrt_rational, Cyclo};

/// A finite-dimensional representation given by the action of every basis element.
#[derive(Clone, Debug)]
pub struct Representation {
    pub label: String,
    pub dim: usize,
    action: Vec<Matrix>,
}

impl Representation {
    pub fn new(label: impl Into<String>, dim: usize, action: Vec<Matrix>) -> Representation {
        Representation {
            label: label.into(),
            dim,
            action,
        }
    }

    /// The left regular representation.
    pub fn regular(h: &HopfAlgebra) -> Representation {
        let n = h.dim();
        let action = (0..n)
            .map(|b| {
                let mut m = Matrix::zeros(n, n);
                for (j, col) in h.left_mul_columns(&Elem::basis(b)).into_iter().enumerate() {
                    for (i, c) in col.terms() {
                        m[(*i, j)] = c.clone();
                    }
                }
                m
            })
            .collect();
        Representation::new("regular", n, action)
    }

    pub fn action(&self, basis: usize) -> &Matrix {
        &self.action[basis]
    }

    pub fn rho(&self, x: &Elem) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, c) in x.terms() {
            m = m.add(&self.action[*i].scale(c));
        }
        m
    }

    pub fn trace(&self, x: &Elem) -> Cyclo {
        let mut t = Cyclo::zero();
        for (i, c) in x.terms() {
            let tr = self.action[*i].trace();
            if !tr.is_zero() {
                t += &(&tr * c);
            }
        }
        t
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, o: &Representation) -> Representation {
        let d = self.dim + o.dim;
        let action = self
            .action
            .iter()
            .zip(&o.action)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(d, d);
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        m[(i, j)] = a[(i, j)].clone();
                    }
                }
                for i in 0..o.dim {
                    for j in 0..o.dim {
                        m[(self.dim + i, self.dim + j)] = b[(i, j)].clone();
                    }
                }
                m
            })
            .collect();
        Representation {
            label: format!("{}+{}", self.label, o.label),
            dim: d,
            action,
        }
    }

    /// Checks ρ(a)ρ(b) = ρ(ab) for generators a and all basis b, and ρ(1) = id.
    pub fn is_homomorphism(&self, h: &HopfAlgebra) -> bool {
        if self.action.len() != h.dim() || self.rho(&h.one()) != Matrix::identity(self.dim) {
            return false;
        }
        h.generators().iter().all(|a| {
            let ra = self.rho(a);
            (0..h.dim()).all(|b| ra.mul(&self.action[b]) == self.rho(&h.mul(a, &Elem::basis(b))))
        })
    }
}

/// A catalog entry: an irreducible representation with its quantum dimension.
#[derive(Clone, Debug)]
pub struct Irrep {
    pub rep: Representation,
    pub qdim: Cyclo,
}

impl std::ops::Deref for Irrep {
    type Target = Representation;
    fn deref(&self) -> &Representation {
        &self.rep
    }
}

#[derive(Clone, Debug)]
pub struct IrrepCatalog {
    entries: Vec<Irrep>,
    dual: Vec<usize>,
    global_dim_sq: Cyclo,
    global_dim: Cyclo,
}

impl IrrepCatalog {
    /// Assembles and verifies a catalog: homomorphism property, d(j) ≠ 0, entry 0
    /// trivial, duals resolved by characters, d(j) = d(j∨), Σ d(j)² = D².
    pub fn build(
        h: &HopfAlgebra,
        reps: Vec<Representation>,
        global_dim: Cyclo,
    ) -> Result<IrrepCatalog, ZooError> {
        let g = h.balancing().cloned().unwrap_or_else(|| h.one());
        let mut entries = Vec::with_capacity(reps.len());
        for rep in reps {
            if !rep.is_homomorphism(h) {
                return Err(ZooError::Catalog(format!(
                    "{} is not a representation",
                    rep.label
                )));
            }
            let qdim = rep.trace(&g);
            if qdim.is_zero() {
                return Err(ZooError::Catalog(format!(
                    "{} has zero quantum dimension",
                    rep.label
                )));
            }
            entries.push(Irrep { rep, qdim });
        }
        let trivial = entries.first().is_some_and(|e| {
            e.dim == 1 && (0..h.dim()).all(|b| e.action[b][(0, 0)] == h.counit_form()[b])
        });
        if !trivial {
            return Err(ZooError::Catalog(
                "entry 0 must be the trivial representation".into(),
            ));
        }
        // Character of the dual: b ↦ tr ρ(S(b)).
        let chars: Vec<Vec<Cyclo>> = entries
            .iter()
            .map(|e| (0..h.dim()).map(|b| e.trace(&Elem::basis(b))).collect())
            .collect();
        let mut dual = Vec::with_capacity(entries.len());
        for e in &entries {
            let dchar: Vec<Cyclo> = (0..h.dim()).map(|b| e.trace(h.antipode_basis(b))).collect();
            match chars.iter().position(|c| *c == dchar) {
                Some(j) => dual.push(j),
                None => return Err(ZooError::Catalog(format!("no dual found for {}", e.label))),
            }
        }
        for (j, e) in entries.iter().enumerate() {
            if e.qdim != entries[dual[j]].qdim {
                return Err(ZooError::Catalog(format!(
                    "d({}) differs from its dual",
                    e.label
                )));
            }
        }
        let mut d2 = Cyclo::zero();
        for e in &entries {
            d2 += &(&e.qdim * &e.qdim);
        }
        if &global_dim * &global_dim != d2 {
            return Err(ZooError::Catalog(
                "chosen D does not square to Σ d(j)²".into(),
            ));
        }
        Ok(IrrepCatalog {
            entries,
            dual,
            global_dim_sq: d2,
            global_dim,
        })
    }

    pub fn entries(&self) -> &[Irrep] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn dual_of(&self, j: usize) -> usize {
        self.dual[j]
    }

    pub fn global_dim(&self) -> &Cyclo {
        &self.global_dim
    }

    pub fn global_dim_sq(&self) -> &Cyclo {
        &self.global_dim_sq
    }

    pub fn qdims(&self) -> Vec<Cyclo> {
        self.entries.iter().map(|e| e.qdim.clone()).collect()
    }
}

fn sqrt_int(n: i64) -> Cyclo {
    sqrt_rational(&BigRational::from_integer(BigInt::from(n))).expect("small square root")
}

/// Irreducible matrix representations of a cyclic group or S₃, one matrix per element.
pub fn group_irreps(g: &FiniteGroupTable) -> Result<Vec<(String, Vec<Matrix>)>, ZooError> {
    let n = g.order();
    if let Some(gen) = (0..n).find(|&x| g.element_order(x) == n) {
        let mut exps = vec![0usize; n];
        let mut cur = g.identity;
        for m in 0..n {
            exps[cur] = m;
            cur = g.m(cur, gen);
        }
        return Ok((0..n)
            .map(|k| {
                let mats = (0..n)
                    .map(|x| {
                        Matrix::from_rows(vec![vec![Cyclo::zeta_pow(
                            n as u32,
                            (k * exps[x]) as i64,
                        )]])
                    })
                    .collect();
                (format!("chi{k}"), mats)
            })
            .collect());
    }
    if g.name == "S3" && *g == FiniteGroupTable::s3() {
        let one = |c: i64| Matrix::from_rows(vec![vec![Cyclo::from_i64(c)]]);
        let trivial = (0..6).map(|_| one(1)).collect();
        let sign = (0..6)
            .map(|x| one(if (1..=3).contains(&x) { -1 } else { 1 }))
            .collect();
        // Standard representation on {x : Σx = 0} with basis e0−e1, e1−e2.
        let standard = (0..6)
            .map(|x| {
                let s = FiniteGroupTable::s3_permutation(x);
                let image = |a: usize, b: usize| {
                    let mut w = [0i64; 3];
                    w[s[a]] += 1;
                    w[s[b]] -= 1;
                    (w[0], -w[2])
                };
                let (a1, b1) = image(0, 1);
                let (a2, b2) = image(1, 2);
                Matrix::from_rows(vec![
                    vec![Cyclo::from_i64(a1), Cyclo::from_i64(a2)],
                    vec![Cyclo::from_i64(b1), Cyclo::from_i64(b2)],
                ])
            })
            .collect();
        return Ok(vec![
            ("trivial".into(), trivial),
            ("sign".into(), sign),
            ("standard".into(), standard),
        ]);
    }
    Err(ZooError::Unsupported(format!(
        "no built-in irreducibles for group {}",
        g.name
    )))
}

/// Catalog of k[G] for cyclic G or S₃; D = √|G|.
pub fn group_algebra_catalog(
    h: &HopfAlgebra,
    g: &FiniteGroupTable,
) -> Result<IrrepCatalog, ZooError> {
    let reps = group_irreps(g)?
        .into_iter()
        .map(|(label, mats)| {
            let d = mats[0].nrows();
            Representation::new(label, d, mats)
        })
        .collect();
    IrrepCatalog::build(h, reps, sqrt_int(g.order() as i64))
}

/// Subgroup table on the listed elements, plus the map from subgroup index to group index.
fn subgroup(g: &FiniteGroupTable, elems: &[usize]) -> FiniteGroupTable {
    if elems.len() == g.order() {
        return g.clone();
    }
    let pos = |x: usize| {
        elems
            .iter()
            .position(|&y| y == x)
            .expect("subgroup is closed")
    };
    let labels = elems.iter().map(|&x| g.labels[x].clone()).collect();
    let mul = elems
        .iter()
        .map(|&a| elems.iter().map(|&b| pos(g.m(a, b))).collect())
        .collect();
    FiniteGroupTable::from_table(&format!("C({})", g.name), labels, mul)
        .expect("centralizer is a group")
}

/// Catalog of D(G): representations induced from irreducibles of centralizers,
/// indexed by (conjugacy class, centralizer irrep); D = |G|.
pub fn double_catalog(h: &HopfAlgebra, g: &FiniteGroupTable) -> Result<IrrepCatalog, ZooError> {
    let n = g.order();
    let mut reps = vec![];
    for a in g.class_representatives() {
        let cent = g.centralizer(a);
        let sub = subgroup(g, &cent);
        let sub_pos = |x: usize| cent.iter().position(|&y| y == x);
        // coset representatives of G / C(a)
        let mut cosets: Vec<usize> = Vec::new();
        let mut covered = vec![false; n];
        for t in 0..n {
            if covered[t] {
                continue;
            }
            cosets.push(t);
            for &c in &cent {
                covered[g.m(t, c)] = true;
            }
        }
        let m = cosets.len();
        let class_elem: Vec<usize> = cosets.iter().map(|&t| g.conj(t, a)).collect();
        for (plabel, pmats) in group_irreps(&sub)? {
            let dp = pmats[0].nrows();
            let dim = m * dp;
            let group_action: Vec<Matrix> = (0..n)
                .map(|x| {
                    let mut mat = Matrix::zeros(dim, dim);
                    for (i, &ti) in cosets.iter().enumerate() {
                        let y = g.m(x, ti);
                        let (j, c) = cosets
                            .iter()
                            .enumerate()
                            .find_map(|(j, &tj)| sub_pos(g.m(g.inv[tj], y)).map(|c| (j, c)))
                            .expect("cosets cover G");
                        for r in 0..dp {
                            for s in 0..dp {
                                mat[(j * dp + r, i * dp + s)] = pmats[c][(r, s)].clone();
                            }
                        }
                    }
                    mat
                })
                .collect();
            let mut action = Vec::with_capacity(n * n);
            for d in 0..n {
                let mut proj = Matrix::zeros(dim, dim);
                for (i, &ce) in class_elem.iter().enumerate() {
                    if ce == d {
                        for r in 0..dp {
                            proj[(i * dp + r, i * dp + r)] = Cyclo::one();
                        }
                    }
                }
                for x in 0..n {
                    action.push(proj.mul(&group_action[x]));
                }
            }
            reps.push(Representation::new(
                format!("({},{})", g.labels[a], plabel),
                dim,
                action,
            ));
        }
    }
    IrrepCatalog::build(h, reps, Cyclo::from_i64(n as i64))
}

/// Catalog of u_q(sl₂): the modules V_j of dimension j = 1..p−1 with
/// K v_i = q^{j−1−2i} v_i, F v_i = v_{i+1}, E v_i = [i][j−i] v_{i−1};
/// D = √(−2p)/(q − q⁻¹).
pub fn uq_sl2_catalog(h: &HopfAlgebra, p: usize) -> Result<IrrepCatalog, ZooError> {
    let pu = p as u32;
    let mut reps = Vec::new();
    for j in 1..p {
        let mut e = Matrix::zeros(j, j);
        let mut f = Matrix::zeros(j, j);
        let mut k = Matrix::zeros(j, j);
        for i in 0..j {
            k[(i, i)] = Cyclo::zeta_pow(pu, j as i64 - 1 - 2 * i as i64);
            if i + 1 < j {
                f[(i + 1, i)] = Cyclo::one();
            }
            if i > 0 {
                e[(i - 1, i)] = qint(pu, i as i64) * qint(pu, (j - i) as i64);
            }
        }
        let mut action = vec![Matrix::zeros(j, j); p * p * p];
        let mut ea = Matrix::identity(j);
        for a in 0..p {
            let mut fb = ea.clone();
            for b in 0..p {
                let mut kc = fb.clone();
                for c in 0..p {
                    action[pbw(p, a, b, c)] = kc.clone();
                    kc = kc.mul(&k);
                }
                fb = fb.mul(&f);
            }
            ea = ea.mul(&e);
        }
        reps.push(Representation::new(format!("V{j}"), j, action));
    }
    let qq = Cyclo::zeta_pow(pu, 1) - Cyclo::zeta_pow(pu, -1);
    let d = sqrt_int(-2 * p as i64).div_ref(&qq).expect("q − q⁻¹ ≠ 0");
    IrrepCatalog::build(h, reps, d)
}

/// The one-entry catalog of the one-dimensional Hopf algebra.
pub fn trivial_catalog(h: &HopfAlgebra) -> Result<IrrepCatalog, ZooError> {
    let rep = Representation::new("trivial", 1, vec![Matrix::identity(1)]);
    IrrepCatalog::build(h, vec![rep], Cyclo::one())
}
