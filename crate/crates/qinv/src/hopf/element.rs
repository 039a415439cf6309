//! Sparse elements of an algebra in a fixed basis, plus a dense scratch accumulator.

use crate::scalar::Cyclo;

/// An algebra element: strictly increasing basis indices with nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Elem {
    terms: Vec<(usize, Cyclo)>,
}

impl Elem {
    pub fn zero() -> Elem {
        Elem { terms: Vec::new() }
    }

    pub fn basis(i: usize) -> Elem {
        Elem {
            terms: vec![(i, Cyclo::one())],
        }
    }

    pub fn monomial(i: usize, c: Cyclo) -> Elem {
        if c.is_zero() {
            Elem::zero()
        } else {
            Elem {
                terms: vec![(i, c)],
            }
        }
    }

    /// Builds an element from arbitrary (index, coefficient) pairs, merging repeats.
    pub fn from_terms(it: impl IntoIterator<Item = (usize, Cyclo)>) -> Elem {
        let mut v: Vec<(usize, Cyclo)> = it.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(usize, Cyclo)> = Vec::with_capacity(v.len());
        for (i, c) in v {
            match out.last_mut() {
                Some((j, d)) if *j == i => *d += &c,
                _ => out.push((i, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Elem { terms: out }
    }

    pub fn from_dense(v: &[Cyclo]) -> Elem {
        Elem {
            terms: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<Cyclo> {
        let mut v = vec![Cyclo::zero(); n];
        for (i, c) in &self.terms {
            v[*i] = c.clone();
        }
        v
    }

    pub fn terms(&self) -> &[(usize, Cyclo)] {
        &self.terms
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

    pub fn coeff(&self, i: usize) -> Cyclo {
        match self.terms.binary_search_by_key(&i, |t| t.0) {
            Ok(p) => self.terms[p].1.clone(),
            Err(_) => Cyclo::zero(),
        }
    }

    pub fn scale(&self, s: &Cyclo) -> Elem {
        if s.is_zero() {
            return Elem::zero();
        }
        Elem {
            terms: self.terms.iter().map(|(i, c)| (*i, c * s)).collect(),
        }
    }

    pub fn neg(&self) -> Elem {
        Elem {
            terms: self.terms.iter().map(|(i, c)| (*i, -c)).collect(),
        }
    }

    pub fn add(&self, o: &Elem) -> Elem {
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ka = a.get(i).map_or(usize::MAX, |t| t.0);
            let kb = b.get(j).map_or(usize::MAX, |t| t.0);
            if ka < kb {
                out.push(a[i].clone());
                i += 1;
            } else if kb < ka {
                out.push(b[j].clone());
                j += 1;
            } else {
                let s = &a[i].1 + &b[j].1;
                if !s.is_zero() {
                    out.push((ka, s));
                }
                i += 1;
                j += 1;
            }
        }
        Elem { terms: out }
    }

    pub fn sub(&self, o: &Elem) -> Elem {
        self.add(&o.neg())
    }

    /// Pairing with a linear form given by its coefficients on the basis.
    pub fn pair(&self, form: &[Cyclo]) -> Cyclo {
        let mut acc = Cyclo::zero();
        for (i, c) in &self.terms {
            if !form[*i].is_zero() {
                acc += &(c * &form[*i]);
            }
        }
        acc
    }
}

/// Dense accumulator for repeated `+=` of sparse contributions.
pub struct Accum {
    vals: Vec<Cyclo>,
    touched: Vec<usize>,
    mark: Vec<bool>,
}

impl Accum {
    pub fn new(n: usize) -> Accum {
        Accum {
            vals: vec![Cyclo::zero(); n],
            touched: Vec::new(),
            mark: vec![false; n],
        }
    }

    #[inline]
    pub fn add(&mut self, i: usize, c: &Cyclo) {
        if !self.mark[i] {
            self.mark[i] = true;
            self.touched.push(i);
            self.vals[i] = c.clone();
        } else {
            self.vals[i] += c;
        }
    }

    pub fn add_scaled(&mut self, e: &Elem, s: &Cyclo) {
        for (i, c) in e.terms() {
            let t = c * s;
            self.add(*i, &t);
        }
    }

    /// Drains the accumulator into a sparse element and resets it.
    pub fn take(&mut self) -> Elem {
        self.touched.sort_unstable();
        let mut terms = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.mark[i] = false;
            let v = std::mem::take(&mut self.vals[i]);
            if !v.is_zero() {
                terms.push((i, v));
            }
        }
        self.touched.clear();
        Elem { terms }
    }
}
