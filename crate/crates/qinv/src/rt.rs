//! Reshetikhin–Turaev evaluation by matrix contraction.
//!
//! The diagram is read slice by slice, carrying a dense tensor over the strands of
//! the current level. A downward strand colored V carries V, an upward one carries
//! V* with a acting as ρ(S(a))ᵀ. Crossings apply the R-action and swap,
//! maxima and minima are the (co)evaluations with the G-corrections of the
//! Hennings traversal, and twists act by θ±.

use crate::context::AlgebraContext;
use crate::diagram::{self, Dir, FramedLinkDiagram, Segment, Slice, SplitDiagram};
use crate::hennings::{self, Mode};
use crate::hopf::Elem;
use crate::linalg::Matrix;
use crate::scalar::Cyclo;
use crate::zoo::Representation;
use crate::QinvError;
use rayon::prelude::*;

/// A linear map between blocks of strands, stored by output index.
struct BlockMap {
    in_dim: usize,
    out_dims: Vec<usize>,
    rows: Vec<Vec<(usize, Cyclo)>>,
}

impl BlockMap {
    fn from_matrix(m: &Matrix, out_dims: Vec<usize>) -> BlockMap {
        let rows = (0..m.nrows())
            .map(|r| {
                m.row(r)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i, c.clone()))
                    .collect()
            })
            .collect();
        BlockMap {
            in_dim: m.ncols(),
            out_dims,
            rows,
        }
    }
}

/// Dense tensor over the strands of one level.
struct State {
    dims: Vec<usize>,
    data: Vec<Cyclo>,
}

impl State {
    fn new() -> State {
        State {
            dims: Vec::new(),
            data: vec![Cyclo::one()],
        }
    }

    /// Replaces strands `pos..pos + width` by the outputs of `m`.
    fn apply(&mut self, pos: usize, width: usize, m: &BlockMap) {
        let left: usize = self.dims[..pos].iter().product();
        let mid: usize = self.dims[pos..pos + width].iter().product();
        let right: usize = self.dims[pos + width..].iter().product();
        assert_eq!(mid, m.in_dim, "block dimension mismatch");
        let out: usize = m.out_dims.iter().product();
        let mut data = vec![Cyclo::zero(); left * out * right];
        for l in 0..left {
            for (o, row) in m.rows.iter().enumerate() {
                for (i, c) in row {
                    let src = (l * mid + i) * right;
                    let dst = (l * out + o) * right;
                    for r in 0..right {
                        let x = &self.data[src + r];
                        if !x.is_zero() {
                            data[dst + r] += &(c * x);
                        }
                    }
                }
            }
        }
        self.dims
            .splice(pos..pos + width, m.out_dims.iter().copied());
        self.data = data;
    }
}

fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ar, ac, br, bc) = (a.nrows(), a.ncols(), b.nrows(), b.ncols());
    let mut m = Matrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            if a[(i, j)].is_zero() {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    if !b[(k, l)].is_zero() {
                        m[(i * br + k, j * bc + l)] = &a[(i, j)] * &b[(k, l)];
                    }
                }
            }
        }
    }
    m
}

struct Evaluator<'a> {
    ctx: &'a AlgebraContext,
    l: &'a FramedLinkDiagram,
    colors: &'a [&'a Representation],
}

impl Evaluator<'_> {
    fn strand(&self, level: usize, pos: usize) -> (&Representation, Dir) {
        let seg = Segment { level, pos };
        (self.colors[self.l.component_of(seg)], self.l.direction(seg))
    }

    /// Action of x on a strand of the given direction.
    fn act(&self, rep: &Representation, dir: Dir, x: &Elem) -> Matrix {
        match dir {
            Dir::Down => rep.rho(x),
            Dir::Up => rep.rho(&self.ctx.h.antipode(x)).transpose(),
        }
    }

    fn twist(&self, power: i64) -> Elem {
        let base = if power >= 0 {
            &self.ctx.theta_plus
        } else {
            &self.ctx.theta_minus
        };
        self.ctx.h.pow(base, power.unsigned_abs() as u32)
    }

    fn run(&self) -> Result<Cyclo, QinvError> {
        let l = self.l;
        let h = &self.ctx.h;
        let rd = &self.ctx.rd;
        let mut state = State::new();
        let mut scalar = Cyclo::one();
        let defects = l.framing_defects();
        let mut twisted = vec![false; l.component_count()];
        for (k, slice) in l.slices().iter().enumerate() {
            match *slice {
                Slice::Cap { pos, left_down } => {
                    let (rep, _) = self.strand(k + 1, pos);
                    let d = rep.dim;
                    let pair = if left_down {
                        Matrix::identity(d)
                    } else {
                        rep.rho(&rd.balancing_inv).transpose()
                    };
                    // Column vector of the new pair, indexed (left, right).
                    let mut m = Matrix::zeros(d * d, 1);
                    for i in 0..d {
                        for j in 0..d {
                            m[(i * d + j, 0)] = pair[(i, j)].clone();
                        }
                    }
                    state.apply(pos, 0, &BlockMap::from_matrix(&m, vec![d, d]));
                    let c = l.component_of(Segment { level: k + 1, pos });
                    if !twisted[c] && defects[c] != 0 {
                        let down = if left_down { pos } else { pos + 1 };
                        let (rep, dir) = self.strand(k + 1, down);
                        let t = self.act(rep, dir, &self.twist(defects[c]));
                        state.apply(down, 1, &BlockMap::from_matrix(&t, vec![d]));
                    }
                    twisted[c] = true;
                }
                Slice::Cup { pos } => {
                    let (rep, dir) = self.strand(k, pos);
                    let d = rep.dim;
                    let pair = match dir {
                        // v_i ⊗ v^j ↦ v^j(G v_i)
                        Dir::Down => rep.rho(&rd.balancing).transpose(),
                        Dir::Up => Matrix::identity(d),
                    };
                    let mut m = Matrix::zeros(1, d * d);
                    for i in 0..d {
                        for j in 0..d {
                            m[(0, i * d + j)] = pair[(i, j)].clone();
                        }
                    }
                    state.apply(pos, 2, &BlockMap::from_matrix(&m, vec![]));
                }
                Slice::Cross { pos, .. } => {
                    let (x, dx) = self.strand(k, pos);
                    let (y, dy) = self.strand(k, pos + 1);
                    let id = l
                        .crossings()
                        .iter()
                        .position(|c| c.slice == k)
                        .expect("registered crossing");
                    let left_over = l.crossings()[id].left_over;
                    let mut m = Matrix::zeros(x.dim * y.dim, x.dim * y.dim);
                    let terms: Vec<(&Elem, &Elem)> = if left_over {
                        rd.r_factors.iter().map(|(e, f)| (e, f)).collect()
                    } else {
                        rd.r_inv_factors.iter().map(|(se, f)| (f, se)).collect()
                    };
                    for (a, b) in terms {
                        m = m.add(&kron(&self.act(x, dx, a), &self.act(y, dy, b)));
                    }
                    // Swap: output index (j, i) from (i, j).
                    let mut sw = Matrix::zeros(x.dim * y.dim, x.dim * y.dim);
                    for i in 0..x.dim {
                        for j in 0..y.dim {
                            sw[(j * x.dim + i, i * y.dim + j)] = Cyclo::one();
                        }
                    }
                    state.apply(
                        pos,
                        2,
                        &BlockMap::from_matrix(&sw.mul(&m), vec![y.dim, x.dim]),
                    );
                }
                Slice::Twist { pos, positive } => {
                    let (rep, dir) = self.strand(k, pos);
                    let t = self.act(rep, dir, &self.twist(if positive { 1 } else { -1 }));
                    state.apply(pos, 1, &BlockMap::from_matrix(&t, vec![rep.dim]));
                }
                Slice::Coupon { pos, width } => {
                    let lambda = &self.ctx.ints.lambda;
                    if width == 0 {
                        scalar = &scalar * &h.counit(lambda);
                        continue;
                    }
                    let strands: Vec<(&Representation, Dir)> =
                        (0..width).map(|i| self.strand(k, pos + i)).collect();
                    let dims: Vec<usize> = strands.iter().map(|(r, _)| r.dim).collect();
                    let n: usize = dims.iter().product();
                    let mut m = Matrix::zeros(n, n);
                    for (idx, c) in h.comul_iter(lambda, width).terms() {
                        let mut op = Matrix::identity(1).scale(c);
                        for (leg, &b) in idx.iter().enumerate() {
                            let (rep, dir) = strands[leg];
                            op = kron(&op, &self.act(rep, dir, &Elem::basis(b)));
                        }
                        m = m.add(&op);
                    }
                    state.apply(pos, width, &BlockMap::from_matrix(&m, dims));
                }
            }
        }
        debug_assert!(state.dims.is_empty());
        Ok(&scalar * &state.data[0])
    }
}

/// I(L; V₁..V_N): the diagram evaluated with component c colored by `colors[c]`.
pub fn colored_invariant(
    ctx: &AlgebraContext,
    l: &FramedLinkDiagram,
    colors: &[&Representation],
) -> Result<Cyclo, QinvError> {
    if colors.len() != l.component_count() {
        return Err(QinvError::Engine(format!(
            "{} colors for {} components",
            colors.len(),
            l.component_count()
        )));
    }
    Evaluator { ctx, l, colors }.run()
}

/// Colored invariant with catalog entries.
pub fn colored_by_catalog(
    ctx: &AlgebraContext,
    l: &FramedLinkDiagram,
    coloring: &[usize],
) -> Result<Cyclo, QinvError> {
    let reps: Vec<&Representation> = coloring
        .iter()
        .map(|&j| &ctx.catalog.entries()[j].rep)
        .collect();
    colored_invariant(ctx, l, &reps)
}

/// Σ over colorings of D^{−N} Π d(j_c) · I(L; j), before normalization.
pub fn tau_rt_raw(ctx: &AlgebraContext, l: &FramedLinkDiagram) -> Result<Cyclo, QinvError> {
    let n = l.component_count();
    let m = ctx.catalog.len();
    let entries = ctx.catalog.entries();
    let colorings: Vec<Vec<usize>> = (0..m.pow(n as u32))
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let j = idx % m;
                    idx /= m;
                    j
                })
                .collect()
        })
        .collect();
    // Terms are computed in parallel and summed in a fixed order.
    let terms: Vec<Cyclo> = colorings
        .par_iter()
        .map(|coloring| {
            let w = coloring
                .iter()
                .fold(Cyclo::one(), |w, &j| &w * &entries[j].qdim);
            Ok(&w * &colored_by_catalog(ctx, l, coloring)?)
        })
        .collect::<Result<_, QinvError>>()?;
    let total = terms.iter().fold(Cyclo::zero(), |acc, t| &acc + t);
    let d_inv = ctx.catalog.global_dim().pow(-(n as i64)).expect("D ≠ 0");
    Ok(total * d_inv)
}

/// α₊, α₋ of the state sum: raw values of the ±1-framed unknots.
pub fn rt_alphas(ctx: &AlgebraContext) -> Result<(Cyclo, Cyclo), QinvError> {
    Ok((
        tau_rt_raw(ctx, &diagram::fixtures::unknot(1))?,
        tau_rt_raw(ctx, &diagram::fixtures::unknot(-1))?,
    ))
}

pub fn tau_rt(ctx: &AlgebraContext, l: &FramedLinkDiagram, mode: Mode) -> Result<Cyclo, QinvError> {
    let raw = tau_rt_raw(ctx, l)?;
    let (ap, am) = rt_alphas(ctx)?;
    hennings::normalize(raw, l.signature(), mode, (&ap, &am))
}

/// S_ij = I(Hopf(0,0); V_i, V_{j∨}).
pub fn s_matrix(ctx: &AlgebraContext) -> Result<Matrix, QinvError> {
    let m = ctx.catalog.len();
    let hopf = diagram::fixtures::hopf(0, 0);
    let mut s = Matrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            s[(i, j)] = colored_by_catalog(ctx, &hopf, &[i, ctx.catalog.dual_of(j)])?;
        }
    }
    Ok(s)
}

/// Whether Σ_j S_{i,j∨} d(j) = D² δ_{i,0} for every row i.
pub fn s_matrix_row_identity(ctx: &AlgebraContext, s: &Matrix) -> bool {
    let d = ctx.catalog.qdims();
    (0..s.nrows()).all(|i| {
        let mut acc = Cyclo::zero();
        for (j, dj) in d.iter().enumerate() {
            acc += &(&s[(i, ctx.catalog.dual_of(j))] * dj);
        }
        let expect = if i == 0 {
            ctx.catalog.global_dim_sq().clone()
        } else {
            Cyclo::zero()
        };
        acc == expect
    })
}

/// tau_rt against Hennings with Q on every component, both normalized when `mode` says so.
pub fn rt_equals_hennings_with_q(
    ctx: &AlgebraContext,
    l: &FramedLinkDiagram,
    mode: Mode,
) -> Result<bool, QinvError> {
    Ok(tau_rt(ctx, l, mode)? == ctx.tau(l, mode, true)?)
}

/// Colors component `component` by V_a ⊕ V_b (others by `coloring`) and compares
/// with the sum of the two single-color invariants.
pub fn jordan_holder_additivity(
    ctx: &AlgebraContext,
    l: &FramedLinkDiagram,
    coloring: &[usize],
    component: usize,
    a: usize,
    b: usize,
) -> Result<bool, QinvError> {
    let e = ctx.catalog.entries();
    let sum = e[a].rep.direct_sum(&e[b].rep);
    let mut reps: Vec<&Representation> = coloring.iter().map(|&j| &e[j].rep).collect();
    reps[component] = &sum;
    let lhs = colored_invariant(ctx, l, &reps)?;
    let mut ca = coloring.to_vec();
    ca[component] = a;
    let mut cb = coloring.to_vec();
    cb[component] = b;
    Ok(lhs == colored_by_catalog(ctx, l, &ca)? + colored_by_catalog(ctx, l, &cb)?)
}

/// Compares the matrix contraction with Hennings' ∫I: for each coloring,
/// I(L; V) = ⊗_c tr_{V_c}(G⁻¹ · ∫I_c).
pub fn fiber_crosscheck(
    ctx: &AlgebraContext,
    s: &SplitDiagram,
    colors: &[&Representation],
) -> Result<bool, QinvError> {
    let l = &s.base;
    let lhs = colored_invariant(ctx, l, colors)?;
    let h = &ctx.h;
    let forms: Vec<Vec<Cyclo>> = colors
        .iter()
        .map(|rep| {
            (0..h.dim())
                .map(|b| rep.trace(&h.mul(&ctx.rd.balancing_inv, &Elem::basis(b))))
                .collect()
        })
        .collect();
    let refs: Vec<&[Cyclo]> = forms.iter().map(|f| f.as_slice()).collect();
    let plan = ctx.bead_plan(s, false)?;
    let rhs = hennings::evaluate_plan(&plan, &ctx.decorator(), &refs);
    Ok(lhs == rhs)
}

/// The representations used for cross-checks: the catalog, plus the regular
/// representation when the algebra is small.
pub fn crosscheck_representations(ctx: &AlgebraContext) -> Vec<Representation> {
    let mut out: Vec<Representation> = ctx
        .catalog
        .entries()
        .iter()
        .map(|e| e.rep.clone())
        .collect();
    if ctx.h.dim() <= 8 {
        out.push(Representation::regular(&ctx.h));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::*;

    #[test]
    fn unknot_gives_quantum_dimensions() {
        let ctx = AlgebraContext::load("uq_sl2:3").unwrap();
        for (j, e) in ctx.catalog.entries().iter().enumerate() {
            assert_eq!(colored_by_catalog(&ctx, &unknot(0), &[j]).unwrap(), e.qdim);
        }
        assert_eq!(
            colored_by_catalog(&ctx, &unknot(0), &[0]).unwrap(),
            Cyclo::one()
        );
    }

    #[test]
    fn abelian_group_s_matrix_has_rank_one() {
        let ctx = AlgebraContext::load("group:Z3").unwrap();
        let s = s_matrix(&ctx).unwrap();
        assert_eq!(s.rank(), 1);
        assert!((0..3).all(|i| (0..3).all(|j| s[(i, j)] == Cyclo::one())));
    }

    #[test]
    fn trivial_s_matrix() {
        let ctx = AlgebraContext::load("trivial").unwrap();
        let s = s_matrix(&ctx).unwrap();
        assert_eq!(s.to_rows(), vec![vec![Cyclo::one()]]);
    }

    #[test]
    fn regular_crosscheck_on_small_double() {
        let ctx = AlgebraContext::load("double:Z2").unwrap();
        let reg = Representation::regular(&ctx.h);
        for l in [unknot(0), hopf(0, 0), trefoil(1)] {
            let colors = vec![&reg; l.component_count()];
            assert!(fiber_crosscheck(&ctx, &diagram::split(&l), &colors).unwrap());
        }
    }
}
