//! The genus-one mapping class group action on the algebra and on its center.
//!
//! T*(x) = v·x and S*(x) = Σ ω′ μ^R(x ω″). A mapping class word acts on the
//! center by composing the letter matrices in the order written, so the last
//! letter acts first. The lens space of a word ψ has invariant ε(ψ(1)), and with
//! this order L(k,1) is the word `S T^k`: since (ε⊗id)(ω) = 1 its value is
//! μ^R(v^k), the raw value of the k-framed unknot.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::context::AlgebraContext;
use crate::hopf::{center_basis, Elem};
use crate::linalg::{solve_sparse, Matrix};
use crate::scalar::Cyclo;
use crate::QinvError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Letter {
    S,
    SInv,
    T,
    TInv,
}

/// A word in S^{±1}, T^{±1}, written left to right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MappingClassWord(pub Vec<Letter>);

impl MappingClassWord {
    pub fn identity() -> MappingClassWord {
        MappingClassWord(Vec::new())
    }

    /// The word S·T^k presenting L(k,1).
    pub fn lens(k: i64) -> MappingClassWord {
        let t = if k >= 0 { Letter::T } else { Letter::TInv };
        let mut w = vec![Letter::S];
        w.extend(std::iter::repeat_n(t, k.unsigned_abs() as usize));
        MappingClassWord(w)
    }
}

impl FromStr for MappingClassWord {
    type Err = QinvError;

    /// Parses tokens such as `S T^3 S^-1`; whitespace between tokens is optional.
    fn from_str(s: &str) -> Result<MappingClassWord, QinvError> {
        let bad = || QinvError::Engine(format!("malformed mapping class word {s:?}"));
        let mut out = Vec::new();
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut i = 0;
        while i < chars.len() {
            let gen = chars[i];
            if gen != 'S' && gen != 'T' {
                return Err(bad());
            }
            i += 1;
            let mut exp: i64 = 1;
            if i < chars.len() && chars[i] == '^' {
                let start = i + 1;
                let mut end = start;
                if end < chars.len() && chars[end] == '-' {
                    end += 1;
                }
                while end < chars.len() && chars[end].is_ascii_digit() {
                    end += 1;
                }
                exp = chars[start..end]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| bad())?;
                i = end;
            }
            let letter = match (gen, exp >= 0) {
                ('S', true) => Letter::S,
                ('S', false) => Letter::SInv,
                ('T', true) => Letter::T,
                _ => Letter::TInv,
            };
            out.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
        }
        Ok(MappingClassWord(out))
    }
}

impl fmt::Display for MappingClassWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self
            .0
            .iter()
            .map(|l| match l {
                Letter::S => "S",
                Letter::SInv => "S^-1",
                Letter::T => "T",
                Letter::TInv => "T^-1",
            })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

pub struct TorusRep {
    /// Matrices on the algebra, columns are images of basis elements.
    pub t_star: Matrix,
    pub s_star: Matrix,
    pub center: Vec<Elem>,
    /// Restrictions to the center, in `center` coordinates.
    pub t_z: Matrix,
    pub s_z: Matrix,
    /// The unit and the counit in center coordinates.
    pub unit: Vec<Cyclo>,
    pub counit: Vec<Cyclo>,
    /// S*(1) = c·λ.
    pub s_star_one: Option<Cyclo>,
    /// sZ is invertible.
    pub modular: bool,
}

fn coordinates(center: &[Elem], n: usize, x: &Elem) -> Option<Vec<Cyclo>> {
    let mut rows: Vec<Vec<(usize, Cyclo)>> = vec![Vec::new(); n];
    for (k, z) in center.iter().enumerate() {
        for (i, c) in z.terms() {
            rows[*i].push((k, c.clone()));
        }
    }
    let xd = x.to_dense(n);
    let sol = solve_sparse(center.len(), rows.into_iter().zip(xd))?;
    Some(sol)
}

fn matrix_of(n: usize, columns: &[Elem]) -> Matrix {
    let mut m = Matrix::zeros(n, columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (i, c) in col.terms() {
            m[(*i, j)] = c.clone();
        }
    }
    m
}

pub fn build_torus_rep(ctx: &AlgebraContext) -> Result<TorusRep, QinvError> {
    let h = &ctx.h;
    let n = h.dim();
    let mu = &ctx.ints.mu_right;
    let omega: Vec<(usize, usize, Cyclo)> = ctx.rd.omega.to_triples();
    let t_of = |x: &Elem| h.mul(&ctx.rd.v, x);
    let s_of = |x: &Elem| {
        let mut acc = crate::hopf::Accum::new(n);
        for (i, j, c) in &omega {
            let m = h.mul(x, &Elem::basis(*j)).pair(mu);
            if !m.is_zero() {
                acc.add(*i, &(c * &m));
            }
        }
        acc.take()
    };
    let t_cols: Vec<Elem> = (0..n).map(|k| t_of(&Elem::basis(k))).collect();
    let s_cols: Vec<Elem> = (0..n).map(|k| s_of(&Elem::basis(k))).collect();
    let center = center_basis(h);
    let restrict = |f: &dyn Fn(&Elem) -> Elem, what: &str| -> Result<Matrix, QinvError> {
        let cols: Vec<Vec<Cyclo>> = center
            .iter()
            .map(|z| coordinates(&center, n, &f(z)))
            .collect::<Option<_>>()
            .ok_or_else(|| QinvError::Engine(format!("{what} does not preserve the center")))?;
        let mut m = Matrix::zeros(center.len(), center.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, c) in col.iter().enumerate() {
                m[(i, j)] = c.clone();
            }
        }
        Ok(m)
    };
    let t_z = restrict(&t_of, "T*")?;
    let s_z = restrict(&s_of, "S*")?;
    let unit = coordinates(&center, n, &h.one()).expect("1 is central");
    let counit = center.iter().map(|z| h.counit(z)).collect();
    let s_star_one = crate::hopf::ribbon::proportional(&s_of(&h.one()), &ctx.ints.lambda);
    let modular = s_z.rank() == center.len();
    Ok(TorusRep {
        t_star: matrix_of(n, &t_cols),
        s_star: matrix_of(n, &s_cols),
        center,
        t_z,
        s_z,
        unit,
        counit,
        s_star_one,
        modular,
    })
}

impl TorusRep {
    pub fn center_dim(&self) -> usize {
        self.center.len()
    }

    /// The matrix of a word on the center.
    pub fn word_matrix(&self, w: &MappingClassWord) -> Result<Matrix, QinvError> {
        let k = self.center_dim();
        let mut s_inv = None;
        let mut t_inv = None;
        let mut m = Matrix::identity(k);
        for l in &w.0 {
            let f = match l {
                Letter::S => self.s_z.clone(),
                Letter::T => self.t_z.clone(),
                Letter::SInv => s_inv
                    .get_or_insert_with(|| self.s_z.inverse())
                    .clone()
                    .ok_or_else(|| {
                        QinvError::NonModular("S* is not invertible on the center".into())
                    })?,
                Letter::TInv => t_inv
                    .get_or_insert_with(|| self.t_z.inverse())
                    .clone()
                    .expect("v is invertible"),
            };
            m = m.mul(&f);
        }
        Ok(m)
    }
}

/// ε(ψ(1)) for the word ψ.
pub fn lens_invariant(w: &MappingClassWord, rep: &TorusRep) -> Result<Cyclo, QinvError> {
    let x = rep.word_matrix(w)?.apply(&rep.unit);
    let mut acc = Cyclo::zero();
    for (a, b) in x.iter().zip(&rep.counit) {
        acc += &(a * b);
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sl2zScalars {
    /// (sZ·tZ)³ = c1·sZ².
    pub c1: Cyclo,
    /// sZ⁴ = c2·id.
    pub c2: Cyclo,
}

/// Projective SL(2,ℤ) relations of a pair of matrices.
pub fn sl2z_scalars(s: &Matrix, t: &Matrix) -> Result<Sl2zScalars, QinvError> {
    let st = s.mul(t);
    let s2 = s.mul(s);
    let c1 = st
        .pow(3)
        .proportionality(&s2)
        .filter(|c| !c.is_zero() && !s2.is_zero())
        .ok_or_else(|| QinvError::Engine("(ST)³ is not a nonzero multiple of S²".into()))?;
    let c2 = s2
        .mul(&s2)
        .proportionality(&Matrix::identity(s.nrows()))
        .filter(|c| !c.is_zero())
        .ok_or_else(|| QinvError::Engine("S⁴ is not a nonzero multiple of the identity".into()))?;
    Ok(Sl2zScalars { c1, c2 })
}

pub fn check_sl2z_relations(rep: &TorusRep) -> Result<Sl2zScalars, QinvError> {
    if !rep.modular {
        return Err(QinvError::NonModular(
            "S* is degenerate on the center".into(),
        ));
    }
    sl2z_scalars(&rep.s_z, &rep.t_z)
}

/// The center representation cut down by Q. With Q² = 0 only S can carry an
/// inserted Q, so the quotient Z/ker(Q) ≅ W = Q·Z(A) carries ŝ = Q∘S and t̂ = T.
#[derive(Clone, Debug)]
pub struct QQuotient {
    /// Rank of S*∘(multiplication by Q) on the center.
    pub sq_rank: usize,
    pub dim: usize,
    pub s: Matrix,
    pub t: Matrix,
}

/// Builds ŝ and t̂ on W = Q·Z(A).
pub fn q_quotient(ctx: &AlgebraContext, rep: &TorusRep) -> Result<QQuotient, QinvError> {
    let h = &ctx.h;
    let n = h.dim();
    let k = rep.center_dim();
    let q_cols: Vec<Elem> = rep.center.iter().map(|z| h.mul(&ctx.q.value, z)).collect();
    let mut qz = Matrix::zeros(k, k);
    for (j, e) in q_cols.iter().enumerate() {
        let c = coordinates(&rep.center, n, e)
            .ok_or_else(|| QinvError::Engine("Q·z is not central".into()))?;
        for (i, x) in c.into_iter().enumerate() {
            qz[(i, j)] = x;
        }
    }
    let sq_rank = rep.s_z.mul(&qz).rank();
    // Basis of W from independent columns of qz.
    let mut ech = crate::linalg::Echelon::new(k);
    let mut basis: Vec<Vec<Cyclo>> = Vec::new();
    for j in 0..k {
        let col: Vec<Cyclo> = (0..k).map(|i| qz[(i, j)].clone()).collect();
        if ech.insert_dense(col.clone()) {
            basis.push(col);
        }
    }
    let d = basis.len();
    let restrict = |m: &Matrix| -> Result<Matrix, QinvError> {
        let mut out = Matrix::zeros(d, d);
        for (j, b) in basis.iter().enumerate() {
            let img = m.apply(b);
            let eqs = (0..k).map(|i| {
                let row: Vec<(usize, Cyclo)> = (0..d)
                    .filter(|&c| !basis[c][i].is_zero())
                    .map(|c| (c, basis[c][i].clone()))
                    .collect();
                (row, img[i].clone())
            });
            let x = solve_sparse(d, eqs)
                .ok_or_else(|| QinvError::Engine("Q·Z is not preserved".into()))?;
            for (i, c) in x.into_iter().enumerate() {
                out[(i, j)] = c;
            }
        }
        Ok(out)
    };
    Ok(QQuotient {
        sq_rank,
        dim: d,
        s: restrict(&qz.mul(&rep.s_z))?,
        t: restrict(&rep.t_z)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_parsing() {
        let w: MappingClassWord = "S T^3 S^-1".parse().unwrap();
        assert_eq!(w.0.len(), 5);
        assert_eq!(w, "ST^3S^-1".parse().unwrap());
        assert_eq!(MappingClassWord::lens(-2), "S T^-2".parse().unwrap());
        assert_eq!(MappingClassWord::lens(2).to_string(), "S T T");
        assert!("SX".parse::<MappingClassWord>().is_err());
    }

    #[test]
    fn trivial_algebra_is_one_by_one() {
        let ctx = AlgebraContext::load("trivial").unwrap();
        let rep = build_torus_rep(&ctx).unwrap();
        assert_eq!(rep.t_star.to_rows(), vec![vec![Cyclo::one()]]);
        assert_eq!(rep.s_star.to_rows(), vec![vec![Cyclo::one()]]);
        let c = check_sl2z_relations(&rep).unwrap();
        assert_eq!((c.c1, c.c2), (Cyclo::one(), Cyclo::one()));
    }

    #[test]
    fn t_star_of_one_is_v_and_s_star_of_one_is_a_cointegral() {
        let ctx = AlgebraContext::load("double:Z2").unwrap();
        let rep = build_torus_rep(&ctx).unwrap();
        let n = ctx.h.dim();
        let one = ctx.h.one().to_dense(n);
        assert_eq!(Elem::from_dense(&rep.t_star.apply(&one)), ctx.rd.v);
        assert!(rep.s_star_one.as_ref().is_some_and(|c| !c.is_zero()));
        assert!(check_sl2z_relations(&rep).is_ok());
    }

    #[test]
    fn double_z2_lens_space_counts_square_roots() {
        let ctx = AlgebraContext::load("double:Z2").unwrap();
        let rep = build_torus_rep(&ctx).unwrap();
        let s3 = lens_invariant(&MappingClassWord::lens(1), &rep).unwrap();
        let l2 = lens_invariant(&MappingClassWord::lens(2), &rep).unwrap();
        assert_eq!(l2 * s3.inv().unwrap(), Cyclo::from_i64(2));
    }
}
