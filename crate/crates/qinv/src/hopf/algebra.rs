//! Structure-constant presentation of a finite-dimensional Hopf algebra.

use serde_json::{json, Value};

use super::element::{Accum, Elem};
use super::tensor::{MultiIndex, TensorElement};
use super::HopfError;
use crate::linalg::solve_sparse;
use crate::scalar::Cyclo;

/// A finite-dimensional Hopf algebra with optional quasitriangular structure `R`
/// and balancing element `G`.
#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    name: String,
    dim: usize,
    labels: Vec<String>,
    mul: Vec<Elem>,
    unit: Elem,
    comul: Vec<Vec<(usize, usize, Cyclo)>>,
    counit: Vec<Cyclo>,
    antipode: Vec<Elem>,
    r_matrix: Option<TensorElement>,
    balancing: Option<Elem>,
    generators: Vec<Elem>,
}

/// Raw structure data used to assemble a [`HopfAlgebra`].
#[derive(Clone, Debug)]
pub struct HopfData {
    pub name: String,
    pub labels: Vec<String>,
    /// `mul[i * dim + j]` is the product of basis elements i and j.
    pub mul: Vec<Elem>,
    pub unit: Elem,
    pub comul: Vec<Vec<(usize, usize, Cyclo)>>,
    pub counit: Vec<Cyclo>,
    pub antipode: Vec<Elem>,
    pub r_matrix: Option<TensorElement>,
    pub balancing: Option<Elem>,
    /// Algebra generators; `None` means "every basis element".
    pub generators: Option<Vec<Elem>>,
}

impl HopfAlgebra {
    pub fn new(d: HopfData) -> Result<HopfAlgebra, HopfError> {
        let n = d.labels.len();
        let bad = |what: &str| {
            Err(HopfError::Malformed(format!(
                "{what} does not match dimension {n}"
            )))
        };
        if n == 0 {
            return Err(HopfError::Malformed("dimension must be positive".into()));
        }
        if d.mul.len() != n * n {
            return bad("multiplication table");
        }
        if d.comul.len() != n {
            return bad("comultiplication table");
        }
        if d.counit.len() != n {
            return bad("counit");
        }
        if d.antipode.len() != n {
            return bad("antipode");
        }
        let in_range = |e: &Elem| e.terms().iter().all(|(i, _)| *i < n);
        if !d.mul.iter().all(in_range) || !d.antipode.iter().all(in_range) || !in_range(&d.unit) {
            return Err(HopfError::Malformed("basis index out of range".into()));
        }
        if !d
            .comul
            .iter()
            .all(|t| t.iter().all(|(i, j, _)| *i < n && *j < n))
        {
            return Err(HopfError::Malformed(
                "basis index out of range in comultiplication".into(),
            ));
        }
        if let Some(r) = &d.r_matrix {
            if r.arity() != 2 || r.terms().any(|(k, _)| k.iter().any(|&i| i >= n)) {
                return Err(HopfError::Malformed(
                    "R-matrix must be a 2-tensor over the basis".into(),
                ));
            }
        }
        if let Some(g) = &d.balancing {
            if !in_range(g) {
                return Err(HopfError::Malformed(
                    "balancing element out of range".into(),
                ));
            }
        }
        let generators = d
            .generators
            .unwrap_or_else(|| (0..n).map(Elem::basis).collect());
        Ok(HopfAlgebra {
            name: d.name,
            dim: n,
            labels: d.labels,
            mul: d.mul,
            unit: d.unit,
            comul: d.comul,
            counit: d.counit,
            antipode: d.antipode,
            r_matrix: d.r_matrix,
            balancing: d.balancing,
            generators,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn one(&self) -> Elem {
        self.unit.clone()
    }

    pub fn counit_form(&self) -> &[Cyclo] {
        &self.counit
    }

    pub fn r_matrix(&self) -> Option<&TensorElement> {
        self.r_matrix.as_ref()
    }

    pub fn balancing(&self) -> Option<&Elem> {
        self.balancing.as_ref()
    }

    /// Returns a copy with the antipode replaced; used to build negative test cases.
    pub fn with_antipode(&self, antipode: Vec<Elem>) -> HopfAlgebra {
        HopfAlgebra {
            antipode,
            ..self.clone()
        }
    }

    pub fn with_r_matrix(&self, r: TensorElement) -> HopfAlgebra {
        HopfAlgebra {
            r_matrix: Some(r),
            ..self.clone()
        }
    }

    pub fn with_balancing(&self, g: Elem) -> HopfAlgebra {
        HopfAlgebra {
            balancing: Some(g),
            ..self.clone()
        }
    }

    /// The co-opposite algebra: Δ^op, S⁻¹, R₂₁ and G⁻¹. S⁻¹ is computed as
    /// x ↦ S(G⁻¹xG), so a balancing element is required.
    pub fn co_opposite(&self, name: &str) -> Result<HopfAlgebra, HopfError> {
        let g = self
            .balancing
            .clone()
            .ok_or_else(|| HopfError::Missing("balancing element".into()))?;
        let gi = self
            .inverse(&g)
            .ok_or_else(|| HopfError::Degenerate("G is not invertible".into()))?;
        let antipode = (0..self.dim)
            .map(|i| self.antipode(&self.mul(&self.mul(&gi, &Elem::basis(i)), &g)))
            .collect();
        let comul = self
            .comul
            .iter()
            .map(|t| t.iter().map(|(a, b, c)| (*b, *a, c.clone())).collect())
            .collect();
        Ok(HopfAlgebra {
            name: name.to_string(),
            comul,
            antipode,
            r_matrix: self.r_matrix.as_ref().map(|r| r.permute(&[1, 0])),
            balancing: Some(gi),
            ..self.clone()
        })
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &Elem {
        &self.mul[i * self.dim + j]
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::zero();
        }
        let mut acc = Accum::new(self.dim);
        for (i, x) in a.terms() {
            for (j, y) in b.terms() {
                let p = self.mul_basis(*i, *j);
                if !p.is_zero() {
                    acc.add_scaled(p, &(x * y));
                }
            }
        }
        acc.take()
    }

    /// Product of a sequence of elements, left to right.
    pub fn mul_all<'a>(&self, xs: impl IntoIterator<Item = &'a Elem>) -> Elem {
        xs.into_iter().fold(self.one(), |acc, x| self.mul(&acc, x))
    }

    pub fn pow(&self, x: &Elem, e: u32) -> Elem {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, x))
    }

    pub fn commutator(&self, a: &Elem, b: &Elem) -> Elem {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    pub fn comul_basis(&self, i: usize) -> &[(usize, usize, Cyclo)] {
        &self.comul[i]
    }

    pub fn comul(&self, x: &Elem) -> TensorElement {
        let mut out = TensorElement::zero(2);
        for (i, c) in x.terms() {
            for (a, b, d) in &self.comul[*i] {
                out.add_term(&[*a, *b], c * d);
            }
        }
        out
    }

    /// Iterated coproduct Δ^{(m-1)}: A → A^{⊗m}, splitting the last leg each time.
    /// m = 0 gives the counit as a scalar tensor.
    pub fn comul_iter(&self, x: &Elem, m: usize) -> TensorElement {
        if m == 0 {
            return TensorElement::scalar(self.counit(x));
        }
        let mut t = TensorElement::from_elem(x);
        for k in 1..m {
            let mut next = TensorElement::zero(k + 1);
            for (idx, c) in t.terms() {
                let last = idx[k - 1];
                for (a, b, d) in &self.comul[last] {
                    let mut ni: MultiIndex = idx.clone();
                    ni[k - 1] = *a;
                    ni.push(*b);
                    next.add_term(&ni, c * d);
                }
            }
            t = next;
        }
        t
    }

    pub fn counit(&self, x: &Elem) -> Cyclo {
        x.pair(&self.counit)
    }

    pub fn antipode_basis(&self, i: usize) -> &Elem {
        &self.antipode[i]
    }

    pub fn antipode(&self, x: &Elem) -> Elem {
        let mut acc = Accum::new(self.dim);
        for (i, c) in x.terms() {
            acc.add_scaled(&self.antipode[*i], c);
        }
        acc.take()
    }

    /// S^k for k ≥ 0.
    pub fn antipode_pow(&self, x: &Elem, k: u32) -> Elem {
        (0..k).fold(x.clone(), |acc, _| self.antipode(&acc))
    }

    /// Leg-wise product of two tensors of equal arity in A^{⊗k}.
    pub fn tensor_mul(&self, a: &TensorElement, b: &TensorElement) -> TensorElement {
        assert_eq!(a.arity(), b.arity(), "tensor arity mismatch");
        let k = a.arity();
        let mut out = TensorElement::zero(k);
        let mut idx: Vec<usize> = vec![0; k];
        for (ia, x) in a.terms() {
            for (ib, y) in b.terms() {
                let legs: Vec<&Elem> = (0..k).map(|l| self.mul_basis(ia[l], ib[l])).collect();
                if legs.iter().any(|e| e.is_zero()) {
                    continue;
                }
                let c = x * y;
                expand(&legs, 0, &mut idx, c, &mut out);
            }
        }
        out
    }

    /// Applies the same element-level map to one leg.
    pub fn map_leg(
        &self,
        t: &TensorElement,
        leg: usize,
        f: impl Fn(&Elem) -> Elem,
    ) -> TensorElement {
        t.map_leg(leg, |i| f(&Elem::basis(i)))
    }

    /// Multiplicative inverse, or `None` when x is not invertible.
    pub fn inverse(&self, x: &Elem) -> Option<Elem> {
        // Solve x·y = 1 column by column: (x·y)_k = Σ_j y_j (x·b_j)_k.
        let n = self.dim;
        let cols: Vec<Elem> = (0..n).map(|j| self.mul(x, &Elem::basis(j))).collect();
        let mut rows: Vec<Vec<(usize, Cyclo)>> = vec![Vec::new(); n];
        for (j, col) in cols.iter().enumerate() {
            for (k, c) in col.terms() {
                rows[*k].push((j, c.clone()));
            }
        }
        let eqs = rows
            .into_iter()
            .enumerate()
            .map(|(k, r)| (r, self.unit.coeff(k)));
        let y = Elem::from_dense(&solve_sparse(n, eqs)?);
        (self.mul(&y, x) == self.unit).then_some(y)
    }

    /// Matrix of left multiplication by x (columns are images of basis vectors).
    pub fn left_mul_columns(&self, x: &Elem) -> Vec<Elem> {
        (0..self.dim)
            .map(|j| self.mul(x, &Elem::basis(j)))
            .collect()
    }

    pub fn label_of(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Human-readable rendering of an element.
    pub fn show(&self, x: &Elem) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.terms()
            .iter()
            .map(|(i, c)| format!("({})·{}", c, self.labels[*i]))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// JSON form with exact scalars.
    pub fn to_json(&self) -> Value {
        let mut mul = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.mul_basis(i, j).terms() {
                    mul.push(json!([i, j, k, c.to_json()]));
                }
            }
        }
        let mut comul = Vec::new();
        for (i, t) in self.comul.iter().enumerate() {
            for (a, b, c) in t {
                comul.push(json!([i, a, b, c.to_json()]));
            }
        }
        let mut antipode = Vec::new();
        for (i, e) in self.antipode.iter().enumerate() {
            for (j, c) in e.terms() {
                antipode.push(json!([i, j, c.to_json()]));
            }
        }
        let dense =
            |e: &Elem| -> Vec<Value> { e.to_dense(self.dim).iter().map(|c| c.to_json()).collect() };
        let mut v = json!({
            "name": self.name,
            "dim": self.dim,
            "labels": self.labels,
            "mul": mul,
            "unit": dense(&self.unit),
            "comul": comul,
            "counit": self.counit.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "antipode": antipode,
        });
        if let Some(r) = &self.r_matrix {
            v["R"] = Value::Array(
                r.to_triples()
                    .into_iter()
                    .map(|(i, j, c)| json!([i, j, c.to_json()]))
                    .collect(),
            );
        }
        if let Some(g) = &self.balancing {
            v["G"] = Value::Array(dense(g));
        }
        v
    }

    /// Parses the JSON form produced by [`HopfAlgebra::to_json`].
    pub fn from_json(v: &Value) -> Result<HopfAlgebra, HopfError> {
        let err = |m: &str| HopfError::Malformed(m.to_string());
        let dim = v["dim"].as_u64().ok_or_else(|| err("missing dim"))? as usize;
        let labels: Vec<String> = match v.get("labels") {
            Some(l) => serde_json::from_value(l.clone()).map_err(|e| err(&e.to_string()))?,
            None => (0..dim).map(|i| format!("b{i}")).collect(),
        };
        if labels.len() != dim {
            return Err(err("labels length differs from dim"));
        }
        let scalar = |x: &Value| -> Result<Cyclo, HopfError> {
            serde_json::from_value(x.clone())
                .map_err(|e| HopfError::Malformed(format!("scalar: {e}")))
        };
        let idx = |x: &Value| -> Result<usize, HopfError> {
            let i = x
                .as_u64()
                .ok_or_else(|| err("index must be a non-negative integer"))?
                as usize;
            if i >= dim {
                return Err(err("index out of range"));
            }
            Ok(i)
        };
        let arr = |key: &str| -> Result<Vec<Value>, HopfError> {
            v[key]
                .as_array()
                .cloned()
                .ok_or_else(|| HopfError::Malformed(format!("missing array {key}")))
        };
        let mut mul_terms: Vec<Vec<(usize, Cyclo)>> = vec![Vec::new(); dim * dim];
        for t in arr("mul")? {
            let t = t.as_array().ok_or_else(|| err("mul entry"))?;
            if t.len() != 4 {
                return Err(err("mul entries are [i,j,k,scalar]"));
            }
            mul_terms[idx(&t[0])? * dim + idx(&t[1])?].push((idx(&t[2])?, scalar(&t[3])?));
        }
        let mut comul: Vec<Vec<(usize, usize, Cyclo)>> = vec![Vec::new(); dim];
        for t in arr("comul")? {
            let t = t.as_array().ok_or_else(|| err("comul entry"))?;
            if t.len() != 4 {
                return Err(err("comul entries are [i,j,k,scalar]"));
            }
            comul[idx(&t[0])?].push((idx(&t[1])?, idx(&t[2])?, scalar(&t[3])?));
        }
        let counit: Vec<Cyclo> = arr("counit")?
            .iter()
            .map(scalar)
            .collect::<Result<_, _>>()?;
        let mut ant: Vec<Vec<(usize, Cyclo)>> = vec![Vec::new(); dim];
        for t in arr("antipode")? {
            let t = t.as_array().ok_or_else(|| err("antipode entry"))?;
            if t.len() != 3 {
                return Err(err("antipode entries are [i,j,scalar]"));
            }
            ant[idx(&t[0])?].push((idx(&t[1])?, scalar(&t[2])?));
        }
        let dense_elem = |x: &Value| -> Result<Elem, HopfError> {
            let a = x.as_array().ok_or_else(|| err("vector expected"))?;
            if a.len() != dim {
                return Err(err("vector length differs from dim"));
            }
            Ok(Elem::from_dense(
                &a.iter().map(scalar).collect::<Result<Vec<_>, _>>()?,
            ))
        };
        let unit = match v.get("unit") {
            Some(u) => dense_elem(u)?,
            None => Elem::basis(0),
        };
        let r_matrix = match v.get("R") {
            Some(Value::Array(terms)) => {
                let mut r = TensorElement::zero(2);
                for t in terms {
                    let t = t.as_array().ok_or_else(|| err("R entry"))?;
                    if t.len() != 3 {
                        return Err(err("R entries are [i,j,scalar]"));
                    }
                    r.add_term(&[idx(&t[0])?, idx(&t[1])?], scalar(&t[2])?);
                }
                Some(r)
            }
            _ => None,
        };
        let balancing = match v.get("G") {
            Some(g) if !g.is_null() => Some(dense_elem(g)?),
            _ => None,
        };
        HopfAlgebra::new(HopfData {
            name: v
                .get("name")
                .and_then(|x| x.as_str())
                .unwrap_or("custom")
                .to_string(),
            labels,
            mul: mul_terms.into_iter().map(Elem::from_terms).collect(),
            unit,
            comul,
            counit,
            antipode: ant.into_iter().map(Elem::from_terms).collect(),
            r_matrix,
            balancing,
            generators: None,
        })
    }
}

fn expand(legs: &[&Elem], pos: usize, idx: &mut Vec<usize>, c: Cyclo, out: &mut TensorElement) {
    if pos == legs.len() {
        out.add_term(idx, c);
        return;
    }
    for (i, x) in legs[pos].terms() {
        idx[pos] = *i;
        expand(legs, pos + 1, idx, &c * x, out);
    }
}
