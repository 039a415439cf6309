//! Sparse elements of A^{⊗k}.

use std::collections::BTreeMap;

use smallvec::SmallVec;

use super::element::Elem;
use crate::scalar::Cyclo;

pub type MultiIndex = SmallVec<[usize; 4]>;

/// Sparse element of A^{⊗k}, keyed by lexicographically ordered multi-indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorElement {
    arity: usize,
    terms: BTreeMap<MultiIndex, Cyclo>,
}

impl TensorElement {
    pub fn zero(arity: usize) -> TensorElement {
        TensorElement {
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// The scalar 1 viewed as an element of A^{⊗0}.
    pub fn scalar(c: Cyclo) -> TensorElement {
        let mut t = TensorElement::zero(0);
        t.add_term(&[], c);
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Cyclo)> {
        self.terms.iter()
    }

    pub fn coeff(&self, idx: &[usize]) -> Cyclo {
        self.terms.get(idx).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, idx: &[usize], c: Cyclo) {
        assert_eq!(idx.len(), self.arity, "tensor arity mismatch");
        if c.is_zero() {
            return;
        }
        let key: MultiIndex = idx.iter().copied().collect();
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, o: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn add_assign(&mut self, o: &TensorElement) {
        assert_eq!(self.arity, o.arity);
        for (k, v) in &o.terms {
            self.add_term(k, v.clone());
        }
    }

    pub fn scale(&self, s: &Cyclo) -> TensorElement {
        let mut out = TensorElement::zero(self.arity);
        if s.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.terms.insert(k.clone(), v * s);
        }
        out
    }

    pub fn sub(&self, o: &TensorElement) -> TensorElement {
        self.add(&o.scale(&Cyclo::from_i64(-1)))
    }

    /// Pure tensor x₁ ⊗ … ⊗ x_k.
    pub fn pure(legs: &[&Elem]) -> TensorElement {
        let mut out = TensorElement::zero(legs.len());
        let mut idx: Vec<usize> = vec![0; legs.len()];
        fn rec(
            legs: &[&Elem],
            pos: usize,
            idx: &mut Vec<usize>,
            c: Cyclo,
            out: &mut TensorElement,
        ) {
            if pos == legs.len() {
                out.add_term(idx, c);
                return;
            }
            for (i, x) in legs[pos].terms() {
                idx[pos] = *i;
                rec(legs, pos + 1, idx, &c * x, out);
            }
        }
        rec(legs, 0, &mut idx, Cyclo::one(), &mut out);
        out
    }

    /// Tensor product self ⊗ other.
    pub fn tensor(&self, o: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(self.arity + o.arity);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let mut k = a.clone();
                k.extend(b.iter().copied());
                out.add_term(&k, x * y);
            }
        }
        out
    }

    /// Reorders legs: leg `perm[i]` of the input becomes leg `i` of the output.
    pub fn permute(&self, perm: &[usize]) -> TensorElement {
        assert_eq!(perm.len(), self.arity);
        let mut out = TensorElement::zero(self.arity);
        for (k, v) in &self.terms {
            let nk: MultiIndex = perm.iter().map(|&p| k[p]).collect();
            out.terms.insert(nk, v.clone());
        }
        out
    }

    /// Applies a linear map to one leg.
    pub fn map_leg(&self, leg: usize, f: impl Fn(usize) -> Elem) -> TensorElement {
        let mut out = TensorElement::zero(self.arity);
        for (k, v) in &self.terms {
            for (j, c) in f(k[leg]).terms() {
                let mut nk = k.clone();
                nk[leg] = *j;
                out.add_term(&nk, v * c);
            }
        }
        out
    }

    /// Contracts one leg with a linear form, reducing the arity by one.
    pub fn contract_leg(&self, leg: usize, form: &[Cyclo]) -> TensorElement {
        let mut out = TensorElement::zero(self.arity - 1);
        for (k, v) in &self.terms {
            let f = &form[k[leg]];
            if f.is_zero() {
                continue;
            }
            let mut nk = k.clone();
            nk.remove(leg);
            out.add_term(&nk, v * f);
        }
        out
    }

    /// Applies the same form to every leg.
    pub fn evaluate_all(&self, form: &[Cyclo]) -> Cyclo {
        let mut acc = Cyclo::zero();
        for (k, v) in &self.terms {
            let mut t = v.clone();
            for &i in k.iter() {
                if t.is_zero() {
                    break;
                }
                t = &t * &form[i];
            }
            acc += &t;
        }
        acc
    }

    /// Views an arity-1 tensor as an element.
    pub fn to_elem(&self) -> Elem {
        assert_eq!(self.arity, 1);
        Elem::from_terms(self.terms.iter().map(|(k, v)| (k[0], v.clone())))
    }

    pub fn from_elem(e: &Elem) -> TensorElement {
        let mut out = TensorElement::zero(1);
        for (i, c) in e.terms() {
            out.add_term(&[*i], c.clone());
        }
        out
    }

    /// Arity-2 tensor as a list of (i, j, coefficient).
    pub fn to_triples(&self) -> Vec<(usize, usize, Cyclo)> {
        assert_eq!(self.arity, 2);
        self.terms
            .iter()
            .map(|(k, v)| (k[0], k[1], v.clone()))
            .collect()
    }

    pub fn from_triples(t: &[(usize, usize, Cyclo)]) -> TensorElement {
        let mut out = TensorElement::zero(2);
        for (i, j, c) in t {
            out.add_term(&[*i, *j], c.clone());
        }
        out
    }

    /// Coefficient matrix of an arity-2 tensor (rows: first leg).
    pub fn to_matrix(&self, n: usize) -> crate::linalg::Matrix {
        assert_eq!(self.arity, 2);
        let mut m = crate::linalg::Matrix::zeros(n, n);
        for (k, v) in &self.terms {
            m[(k[0], k[1])] = v.clone();
        }
        m
    }
}
