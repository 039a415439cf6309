//! Exact linear algebra over cyclotomic fields.
//!
//! The workhorse is [`Echelon`], an incrementally built, fully reduced row echelon
//! basis: rows are inserted one at a time, reduced against the existing pivots with a
//! dense accumulator, normalized so the pivot entry is 1, and then used to clear their
//! pivot column from every earlier row. Ranks, kernels, and particular solutions all
//! come out of that one structure. Dense matrices ([`Matrix`]) cover the small square
//! computations of the torus and S-matrix code.

use crate::scalar::Cyclo;

/// Sparse row: strictly increasing column indices with nonzero values.
pub type SparseRow = Vec<(usize, Cyclo)>;

#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseRow>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Echelon {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    /// Reduces a dense vector against the basis; returns the residual (zero iff in span).
    pub fn reduce_dense(&self, acc: &mut [Cyclo]) {
        debug_assert_eq!(acc.len(), self.ncols);
        for c in 0..self.ncols {
            if acc[c].is_zero() {
                continue;
            }
            if let Some(r) = self.pivot_row[c] {
                let f = acc[c].clone();
                for (k, x) in &self.rows[r] {
                    acc[*k] -= &(x * &f);
                }
            }
        }
    }

    /// Whether a sparse row lies in the span of the rows inserted so far.
    pub fn contains(&self, row: &[(usize, Cyclo)]) -> bool {
        let mut acc = self.densify(row);
        self.reduce_dense(&mut acc);
        acc.iter().all(|x| x.is_zero())
    }

    fn densify(&self, row: &[(usize, Cyclo)]) -> Vec<Cyclo> {
        let mut acc = vec![Cyclo::zero(); self.ncols];
        for (k, x) in row {
            acc[*k] += x;
        }
        acc
    }

    /// Inserts a sparse row. Returns true when it enlarged the span.
    pub fn insert(&mut self, row: &[(usize, Cyclo)]) -> bool {
        let acc = self.densify(row);
        self.insert_dense(acc)
    }

    /// Inserts a dense row. Returns true when it enlarged the span.
    pub fn insert_dense(&mut self, mut acc: Vec<Cyclo>) -> bool {
        self.reduce_dense(&mut acc);
        let Some(p) = acc.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = acc[p].inv().expect("nonzero pivot");
        let new_row: SparseRow = acc
            .into_iter()
            .enumerate()
            .skip(p)
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| (k, x * &inv))
            .collect();
        // clear column p from existing rows
        for r in self.rows.iter_mut() {
            if let Ok(pos) = r.binary_search_by_key(&p, |e| e.0) {
                let f = r[pos].1.clone();
                *r = axpy_sparse(r, &new_row, &(-f));
            }
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push(new_row);
        true
    }

    /// Basis of the null space {x : row·x = 0 for every inserted row}.
    pub fn kernel(&self) -> Vec<Vec<Cyclo>> {
        let mut out = Vec::new();
        for free in 0..self.ncols {
            if self.pivot_row[free].is_some() {
                continue;
            }
            let mut v = vec![Cyclo::zero(); self.ncols];
            v[free] = Cyclo::one();
            for r in &self.rows {
                if let Ok(pos) = r.binary_search_by_key(&free, |e| e.0) {
                    v[r[0].0] = -&r[pos].1;
                }
            }
            out.push(v);
        }
        out
    }
}

/// Returns a + f·b for sparse rows.
fn axpy_sparse(a: &[(usize, Cyclo)], b: &[(usize, Cyclo)], f: &Cyclo) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ka = a.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let kb = b.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ka < kb {
            out.push(a[i].clone());
            i += 1;
        } else if kb < ka {
            out.push((kb, &b[j].1 * f));
            j += 1;
        } else {
            let v = &a[i].1 + &(&b[j].1 * f);
            if !v.is_zero() {
                out.push((ka, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Solves the system whose equations are `(row, rhs)` pairs. Returns one solution
/// (free variables set to zero) or `None` if inconsistent.
pub fn solve_sparse(
    ncols: usize,
    equations: impl IntoIterator<Item = (SparseRow, Cyclo)>,
) -> Option<Vec<Cyclo>> {
    let mut e = Echelon::new(ncols + 1);
    for (mut row, rhs) in equations {
        if !rhs.is_zero() {
            row.push((ncols, rhs));
        }
        e.insert(&row);
        if e.pivot_row[ncols].is_some() {
            return None;
        }
    }
    let mut x = vec![Cyclo::zero(); ncols];
    for r in &e.rows {
        if let Ok(pos) = r.binary_search_by_key(&ncols, |t| t.0) {
            x[r[0].0] = r[pos].1.clone();
        }
    }
    Some(x)
}

/// Dense row-major matrix over ℚ(ζ).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Cyclo>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Cyclo::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Cyclo::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Cyclo>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Cyclo] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Cyclo>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Cyclo]) -> Vec<Cyclo> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Cyclo::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, s: &Cyclo) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        for i in 0..self.rows {
            e.insert_dense(self.row(i).to_vec());
        }
        e.rank()
    }

    /// Right null space basis.
    pub fn kernel(&self) -> Vec<Vec<Cyclo>> {
        let mut e = Echelon::new(self.cols);
        for i in 0..self.rows {
            e.insert_dense(self.row(i).to_vec());
        }
        e.kernel()
    }

    pub fn trace(&self) -> Cyclo {
        let mut t = Cyclo::zero();
        for i in 0..self.rows.min(self.cols) {
            t += &self[(i, i)];
        }
        t
    }

    pub fn pow(&self, mut e: u32) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut e = Echelon::new(2 * n);
        for i in 0..n {
            let mut row: Vec<Cyclo> = self.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { Cyclo::one() } else { Cyclo::zero() }));
            e.insert_dense(row);
        }
        if (0..n).any(|c| e.pivot_row[c].is_none()) {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for r in &e.rows {
            let i = r[0].0;
            for (k, x) in r.iter() {
                if *k >= n {
                    inv[(i, k - n)] = x.clone();
                }
            }
        }
        Some(inv)
    }

    /// Finds c with self = c·other, if such a scalar exists. Both zero yields Some(1).
    pub fn proportionality(&self, other: &Matrix) -> Option<Cyclo> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return None;
        }
        let Some(k) = other.data.iter().position(|x| !x.is_zero()) else {
            return self.is_zero().then(Cyclo::one);
        };
        let c = self.data[k].div_ref(&other.data[k]).ok()?;
        (other.scale(&c) == *self).then_some(c)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Cyclo;
    fn index(&self, (i, j): (usize, usize)) -> &Cyclo {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cyclo {
        &mut self.data[i * self.cols + j]
    }
}

/// Signature (positive, negative) of a symmetric rational matrix by congruence
/// diagonalization.
pub fn signature(m: &[Vec<i64>]) -> (usize, usize) {
    use num_rational::BigRational;
    use num_traits::{Signed, Zero};
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let (mut pos, mut neg) = (0, 0);
    let mut alive: Vec<usize> = (0..n).collect();
    while !alive.is_empty() {
        // pick a nonzero diagonal pivot, or create one from an off-diagonal entry
        let piv = alive.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match piv {
            Some(p) => p,
            None => {
                let mut found = None;
                's: for &i in &alive {
                    for &j in &alive {
                        if i != j && !a[i][j].is_zero() {
                            found = Some((i, j));
                            break 's;
                        }
                    }
                }
                let Some((i, j)) = found else { break };
                // replace basis vector e_i by e_i + e_j: row/col i += row/col j
                for k in 0..n {
                    let t = a[j][k].clone();
                    a[i][k] += t;
                }
                for k in 0..n {
                    let t = a[k][j].clone();
                    a[k][i] += t;
                }
                i
            }
        };
        let d = a[p][p].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        alive.retain(|&x| x != p);
        for &i in &alive {
            if a[i][p].is_zero() {
                continue;
            }
            let f = &a[i][p] / &d;
            for k in 0..n {
                let t = &f * &a[p][k];
                a[i][k] -= t;
            }
            for k in 0..n {
                let t = &f * &a[k][p];
                a[k][i] -= t;
            }
        }
    }
    (pos, neg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> Cyclo {
        Cyclo::from_i64(n)
    }

    #[test]
    fn rank_of_dependent_rows() {
        let m = Matrix::from_rows(vec![
            vec![c(1), c(2), c(3)],
            vec![c(2), c(4), c(6)],
            vec![c(0), c(1), c(1)],
        ]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn inverse_over_cyclotomic_entries() {
        let z = Cyclo::root_of_unity(5);
        let m = Matrix::from_rows(vec![vec![c(1), z.clone()], vec![z.clone(), c(1)]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = Matrix::from_rows(vec![vec![c(1), c(1)], vec![c(1), c(1)]]);
        assert!(m.inverse().is_none());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let eqs = vec![
            (vec![(0, c(1)), (1, c(1))], c(3)),
            (vec![(0, c(1)), (1, c(-1))], c(1)),
        ];
        let x = solve_sparse(2, eqs).unwrap();
        assert_eq!(x, vec![c(2), c(1)]);
        let bad = vec![(vec![(0, c(1))], c(1)), (vec![(0, c(2))], c(3))];
        assert!(solve_sparse(1, bad).is_none());
    }

    #[test]
    fn proportional_matrices() {
        let a = Matrix::identity(3).scale(&c(4));
        assert_eq!(a.proportionality(&Matrix::identity(3)), Some(c(4)));
        assert_eq!(
            Matrix::identity(3).proportionality(&a.add(&Matrix::identity(3))),
            Some(Cyclo::ratio(1, 5))
        );
    }

    #[test]
    fn signatures() {
        assert_eq!(signature(&[vec![0]]), (0, 0));
        assert_eq!(signature(&[vec![3]]), (1, 0));
        assert_eq!(signature(&[vec![0, 1], vec![1, 0]]), (1, 1));
        assert_eq!(signature(&[vec![2, 1], vec![1, 2]]), (2, 0));
        assert_eq!(signature(&[vec![1, 2], vec![2, 1]]), (1, 1));
        assert_eq!(signature(&[vec![0, 0], vec![0, -1]]), (0, 1));
    }
}
