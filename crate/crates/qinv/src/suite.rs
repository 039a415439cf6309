//! The acceptance suite as a library routine, so the command line can run it.
//!
//! Each criterion returns an [`Outcome`] with one line per failed sub-check, so a
//! failure report names the algebra and fixture involved.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::moves::{eta_move, handle_slide_pairs, BraidPresentation};
use crate::diagram::{fixtures, split, split_at, FramedLinkDiagram, Segment};
use crate::hennings::{self, Mode};
use crate::hopf::integrals::integral_dimensions;
use crate::hopf::{certify_hopf, coadjoint_invariance_check, TensorElement};
use crate::rt;
use crate::scalar::Cyclo;
use crate::torus::{build_torus_rep, check_sl2z_relations, lens_invariant, MappingClassWord};
use crate::zoo::{AlgebraSpec, ZOO};
use crate::zoo::{GroupSpec, Representation};
use crate::{AlgebraContext, QinvError};

pub const CRITERIA: [(u8, &str); 12] = [
    (1, "certification of every zoo algebra"),
    (2, "integral uniqueness and normalization"),
    (3, "modularity of omega"),
    (4, "S1xS2 value and the coupon presentation"),
    (5, "normalized value 1 on presentations of S3"),
    (6, "D(G) lens spaces count k-th roots of the identity"),
    (7, "properties of Q"),
    (8, "RT equals Hennings with Q inserted"),
    (9, "uq_sl2:5 lens-space ratio equals k"),
    (10, "S-matrix identities"),
    (11, "torus representation consistency"),
    (12, "property suites"),
];

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    /// Failed sub-checks; empty when the criterion passes.
    pub failures: Vec<String>,
    /// Number of sub-checks that ran.
    pub checks: usize,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Loaded zoo members, in registry order.
pub struct Zoo {
    pub members: Vec<AlgebraContext>,
}

impl Zoo {
    pub fn load() -> Result<Zoo, QinvError> {
        let members = ZOO
            .par_iter()
            .map(|n| AlgebraContext::load(n))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Zoo { members })
    }

    pub fn get(&self, name: &str) -> &AlgebraContext {
        self.members
            .iter()
            .find(|c| c.name == name)
            .expect("zoo member")
    }
}

/// Collects sub-check results for one criterion.
struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Tally {
        Tally {
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn check_result(&mut self, r: Result<bool, QinvError>, what: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.check(ok, what),
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{}: {e}", what()));
            }
        }
    }

    fn merge(&mut self, o: Tally) {
        self.checks += o.checks;
        self.failures.extend(o.failures);
    }
}

/// Runs one criterion by number.
pub fn run(id: u8, zoo: &Zoo) -> Outcome {
    let start = Instant::now();
    let mut t = match id {
        1 => criterion_1(),
        2 => criterion_2(zoo),
        3 => criterion_3(zoo),
        4 => criterion_4(zoo),
        5 => criterion_5(zoo),
        6 => criterion_6(zoo),
        7 => criterion_7(zoo),
        8 => criterion_8(zoo),
        9 => criterion_9(zoo),
        10 => criterion_10(zoo),
        11 => criterion_11(zoo),
        12 => criterion_12(zoo),
        _ => {
            let mut t = Tally::new();
            t.check(false, || format!("no criterion {id}"));
            t
        }
    };
    let elapsed = start.elapsed();
    let budget = match id {
        1 | 6 => Some(Duration::from_secs(60)),
        8 => Some(Duration::from_secs(600)),
        _ => None,
    };
    if let Some(b) = budget {
        t.check(elapsed < b, || {
            format!(
                "runtime {:.1} s exceeds {} s",
                elapsed.as_secs_f64(),
                b.as_secs()
            )
        });
    }
    let title = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .map_or("unknown", |c| c.1)
        .to_string();
    Outcome {
        id,
        title,
        passed: t.failures.is_empty(),
        failures: t.failures,
        checks: t.checks,
        elapsed,
    }
}

fn criterion_1() -> Tally {
    let reports: Vec<Result<(String, Vec<String>), QinvError>> = ZOO
        .par_iter()
        .map(|name| {
            let h = AlgebraSpec::parse(name)?.build()?;
            let rep = certify_hopf(&h);
            Ok((
                name.to_string(),
                rep.failures().iter().map(|c| c.name.clone()).collect(),
            ))
        })
        .collect();
    let mut t = Tally::new();
    for r in reports {
        match r {
            Ok((name, failed)) => t.check(failed.is_empty(), || {
                format!("{name}: failed {}", failed.join(", "))
            }),
            Err(e) => t.check(false, || format!("construction: {e}")),
        }
    }
    t
}

fn criterion_2(zoo: &Zoo) -> Tally {
    let mut t = Tally::new();
    for ctx in &zoo.members {
        let d = integral_dimensions(&ctx.h);
        t.check(
            d.left_integral == 1 && d.right_integral == 1 && d.cointegral == 1,
            || format!("{}: integral dimensions {d:?}", ctx.name),
        );
        t.check(ctx.ints.mu_right(&ctx.ints.lambda).is_one(), || {
            format!("{}: mu_R(lambda) != 1", ctx.name)
        });
    }
    t
}

fn criterion_3(zoo: &Zoo) -> Tally {
    let mut t = Tally::new();
    for ctx in &zoo.members {
        let m = &ctx.modularity;
        match ctx.spec {
            AlgebraSpec::Group(_) => {
                let r = ctx
                    .h
                    .r_matrix()
                    .cloned()
                    .unwrap_or_else(|| TensorElement::zero(2));
                let trivial_r = TensorElement::pure(&[&ctx.h.one(), &ctx.h.one()]);
                t.check(r == trivial_r, || format!("{}: R is not 1⊗1", ctx.name));
                t.check(m.rank == 1, || {
                    format!("{}: omega has rank {}", ctx.name, m.rank)
                });
            }
            _ => {
                t.check(m.modular, || {
                    format!("{}: omega has rank {} < {}", ctx.name, m.rank, ctx.h.dim())
                });
                t.check(
                    ctx.omega_scale.as_ref().is_some_and(|c| !c.is_zero()),
                    || {
                        format!(
                            "{}: (id⊗mu_R)(omega) is not a nonzero multiple of lambda",
                            ctx.name
                        )
                    },
                );
            }
        }
    }
    t
}

fn criterion_4(zoo: &Zoo) -> Tally {
    let mut t = Tally::new();
    let u0 = fixtures::unknot(0);
    for ctx in &zoo.members {
        let v = match ctx.tau(&u0, Mode::Normalized, false) {
            Ok(v) => v,
            Err(e) => {
                t.check(false, || format!("{}: {e}", ctx.name));
                continue;
            }
        };
        if ctx.is_semisimple() {
            t.check(!v.is_zero(), || format!("{}: tau(S1xS2) = 0", ctx.name));
        }
        if ctx.name == "uq_sl2:5" || ctx.name == "uq_sl2:3" {
            t.check(v.is_zero(), || format!("{}: tau(S1xS2) = {v}", ctx.name));
        }
        let coupon = ctx.raw_value(&fixtures::s1xs2_coupon(), false);
        let eps = ctx.h.counit(&ctx.ints.lambda);
        t.check_result(coupon.map(|c| c == v && eps == v), || {
            format!("{}: coupon value differs", ctx.name)
        });
    }
    t
}

fn s3_presentations() -> Vec<(&'static str, FramedLinkDiagram)> {
    vec![
        ("empty", fixtures::empty()),
        ("unknot:1", fixtures::unknot(1)),
        ("unknot:-1", fixtures::unknot(-1)),
        ("s3_markov", fixtures::s3_markov()),
    ]
}

fn criterion_5(zoo: &Zoo) -> Tally {
    let mut t = Tally::new();
    for ctx in &zoo.members {
        for (name, l) in s3_presentations() {
            t.check_result(
                ctx.tau(&l, Mode::Normalized, false).map(|v| v.is_one()),
                || format!("{}: tau({name}) != 1", ctx.name),
            );
        }
    }
    t
}

fn criterion_6(zoo: &Zoo) -> Tally {
    let mut t = Tally::new();
    for g in ["Z2", "Z3", "S3"] {
        let ctx = zoo.get(&format!("double:{g}"));
        let table = match &ctx.spec {
            AlgebraSpec::Double(gs) => gs.table(),
            _ => unreachable!("double member"),
        };
        let base = ctx.tau(&fixtures::empty(), Mode::Normalized, false);
        for k in 1..=6i64 {
            let expect = Cyclo::from_i64(table.count_kth_roots_of_identity(k) as i64);
            let r = ctx
                .tau(&fixtures::lens(k), Mode::Normalized, false)
                .and_then(|v| {
                    let b = base.clone()?;
                    Ok(v.div_ref(&b)
                        .map_err(|e| QinvError::Engine(e.to_string()))?
                        == expect)
                });
            t.check_result(r, || {
                format!("double:{g}: L({k},1) ratio differs from {expect}")
            });
        }
    }
    t
}

fn criterion_7(zoo: &Zoo) -> Tally {
    let mut t = Tally::new();
    for ctx in &zoo.members {
        let q = &ctx.q;
        if ctx.is_semisimple() {
            t.check(q.is_one(&ctx.h), || format!("{}: Q != 1", ctx.name));
        } else {
            t.check(q.is_central, || format!("{}: Q is not central", ctx.name));
            t.check(q.is_antipode_invariant, || {
                format!("{}: S(Q) != Q", ctx.name)
            });
            t.check(ctx.h.mul(&q.value, &q.value).is_zero(), || {
                format!("{}: Q² != 0", ctx.name)
            });
        }
    }
    t
}

fn criterion_8(zoo: &Zoo) -> Tally {
    let set = fixtures::comparison_set();
    let jobs: Vec<(&AlgebraContext, &(String, FramedLinkDiagram), Mode)> = zoo
        .members
        .iter()
        .flat_map(|ctx| {
            set.iter()
                .flat_map(move |f| [(ctx, f, Mode::Raw), (ctx, f, Mode::Normalized)])
        })
        .collect();
    let tallies: Vec<Tally> = jobs
        .par_iter()
        .map(|(ctx, (name, l), mode)| {
            let mut t = Tally::new();
            t.check_result(rt::rt_equals_hennings_with_q(ctx, l, *mode), || {
                format!(
                    "{}: {name} ({mode:?}) RT differs from Hennings with Q",
                    ctx.name
                )
            });
            t
        })
        .collect();
    let mut t = Tally::new();
    tallies.into_iter().for_each(|x| t.merge(x));
    t
}

fn criterion_9(zoo: &Zoo) -> Tally {
    let ctx = zoo.get("uq_sl2:5");
    let rows: Vec<(i64, Result<(Cyclo, Cyclo), QinvError>)> = (0..=6i64)
        .into_par_iter()
        .map(|k| {
            let l = fixtures::lens(k);
            let r = ctx
                .tau(&l, Mode::Normalized, false)
                .and_then(|h| Ok((h, rt::tau_rt(ctx, &l, Mode::Normalized)?)));
            (k, r)
        })
        .collect();
    let mut t = Tally::new();
    for (k, r) in rows {
        let ok = r.map(|(h, rt)| {
            if k == 0 {
                h.is_zero()
            } else {
                h == Cyclo::from_i64(k) * rt
            }
        });
        t.check_result(ok, || format!("k = {k}: lens ratio check failed"));
    }
    t
}

fn criterion_10(zoo: &Zoo) -> Tally {
    let mut t = Tally::new();
    for ctx in &zoo.members {
        let s = match rt::s_matrix(ctx) {
            Ok(s) => s,
            Err(e) => {
                t.check(false, || format!("{}: {e}", ctx.name));
                continue;
            }
        };
        let invertible = s.rank() == s.nrows();
        if matches!(ctx.spec, AlgebraSpec::Double(_) | AlgebraSpec::Trivial) {
            t.check(invertible, || {
                format!("{}: catalog S-matrix is singular", ctx.name)
            });
        }
        if invertible {
            t.check(rt::s_matrix_row_identity(ctx, &s), || {
                format!("{}: row identity fails", ctx.name)
            });
        }
        if ctx.spec == AlgebraSpec::Group(GroupSpec::Cyclic(3)) {
            t.check(s.rank() == 1, || {
                format!("group:Z3: S has rank {}", s.rank())
            });
        }
    }
    t
}

fn criterion_11(zoo: &Zoo) -> Tally {
    let tallies: Vec<Tally> = zoo
        .members
        .par_iter()
        .map(|ctx| {
            let mut t = Tally::new();
            let rep = match build_torus_rep(ctx) {
                Ok(r) => r,
                Err(e) => {
                    t.check(false, || format!("{}: {e}", ctx.name));
                    return t;
                }
            };
            for k in -6..=6 {
                let r = lens_invariant(&MappingClassWord::lens(k), &rep)
                    .and_then(|a| Ok(a == ctx.raw_value(&fixtures::unknot(k), false)?));
                t.check_result(r, || {
                    format!("{}: lens word differs from surgery at k = {k}", ctx.name)
                });
            }
            if rep.modular {
                t.check_result(check_sl2z_relations(&rep).map(|_| true), || {
                    format!("{}: SL(2,Z) relations on the center", ctx.name)
                });
            }
            if ctx.name == "uq_sl2:5" {
                t.check(rep.center_dim() == 7, || {
                    format!("uq_sl2:5: center dimension {}", rep.center_dim())
                });
            }
            t
        })
        .collect();
    let mut t = Tally::new();
    tallies.into_iter().for_each(|x| t.merge(x));
    t
}

/// Fixtures for the diagram-level property checks.
pub fn property_fixtures() -> Vec<(String, FramedLinkDiagram)> {
    let mut out: Vec<(String, FramedLinkDiagram)> = Vec::new();
    for f in -2..=2 {
        out.push((format!("unknot:{f}"), fixtures::unknot(f)));
    }
    for (a, b) in [(0, 0), (1, -1), (2, 1)] {
        out.push((format!("hopf:{a},{b}"), fixtures::hopf(a, b)));
    }
    out.push(("trefoil:0".into(), fixtures::trefoil(0)));
    out.push(("trefoil:-1".into(), fixtures::trefoil(-1)));
    out.push(("curl:+1".into(), fixtures::curl(true)));
    out.push(("twist:2".into(), fixtures::twisted_circle(2)));
    out.push(("s1xs2_coupon".into(), fixtures::s1xs2_coupon()));
    out.push(("coupon_cancel".into(), fixtures::coupon_cancel()));
    out.push(("s3_markov".into(), fixtures::s3_markov()));
    out
}

/// Every basepoint choice on one component at a time gives the same raw value.
pub fn basepoint_rotation(ctx: &AlgebraContext, l: &FramedLinkDiagram) -> Result<bool, QinvError> {
    let canonical = split(l);
    let reference = ctx.raw_value(l, false)?;
    let forms: Vec<&[Cyclo]> = vec![&ctx.ints.mu_right; l.component_count()];
    let choices: Vec<Vec<Segment>> = (0..l.component_count())
        .flat_map(|c| {
            let canonical = &canonical;
            canonical.segments(c).into_iter().map(move |seg| {
                let mut bps = canonical.basepoints.clone();
                bps[c] = seg;
                bps
            })
        })
        .collect();
    let same = choices
        .into_par_iter()
        .map(|bps| {
            let plan = ctx.bead_plan(&split_at(l, bps)?, false)?;
            Ok(hennings::evaluate_plan(&plan, &ctx.decorator(), &forms) == reference)
        })
        .collect::<Result<Vec<bool>, QinvError>>()?;
    Ok(same.into_iter().all(|b| b))
}

/// ∫I read with its legs in reverse order, the order in which the cut strands
/// sit from right to left, commutes with the iterated coproduct.
pub fn integral_is_ad_invariant(
    ctx: &AlgebraContext,
    l: &FramedLinkDiagram,
) -> Result<bool, QinvError> {
    let x = ctx.integral_element(l, false)?;
    let n = x.arity();
    let reversed: Vec<usize> = (0..n).rev().collect();
    Ok(coadjoint_invariance_check(&x.permute(&reversed), &ctx.h))
}

fn markov_presentations() -> Vec<(&'static str, BraidPresentation)> {
    vec![
        (
            "trefoil:0",
            BraidPresentation::new(2, vec![1, 1, 1], vec![0]).expect("valid"),
        ),
        (
            "hopf:1,-2",
            BraidPresentation::new(2, vec![1, 1], vec![1, -2]).expect("valid"),
        ),
        (
            "s3_markov",
            BraidPresentation::new(3, vec![1, 1, -2, -1], vec![1]).expect("valid"),
        ),
    ]
}

/// Raw values agree across every single Markov move of a presentation.
pub fn markov_invariance(ctx: &AlgebraContext, p: &BraidPresentation) -> Result<bool, QinvError> {
    let base = ctx.raw_value(&p.diagram(), false)?;
    let same = p
        .neighbours()
        .into_par_iter()
        .map(|(_, q)| Ok(ctx.raw_value(&q.diagram(), false)? == base))
        .collect::<Result<Vec<bool>, QinvError>>()?;
    Ok(same.into_iter().all(|b| b))
}

/// Colorings of every component by the given representations.
fn all_colorings(reps: &[Representation], n: usize) -> Vec<Vec<&Representation>> {
    let m = reps.len();
    (0..m.pow(n as u32))
        .map(|mut idx| {
            (0..n)
                .map(|_| {
                    let j = idx % m;
                    idx /= m;
                    &reps[j]
                })
                .collect()
        })
        .collect()
}

/// Algebras above this dimension run the property checks on diagrams with at
/// most two crossings; a three-crossing diagram costs seconds per evaluation there.
const LARGE_DIM: usize = 64;

fn property_suite(ctx: &AlgebraContext) -> Tally {
    let mut t = Tally::new();
    let name = &ctx.name;
    let large = ctx.h.dim() > LARGE_DIM;
    let small_enough = |l: &FramedLinkDiagram| !large || l.crossings().len() <= 2;
    let fx: Vec<(String, FramedLinkDiagram)> = property_fixtures()
        .into_iter()
        .filter(|(_, l)| small_enough(l))
        .collect();

    for (f, l) in &fx {
        t.check_result(basepoint_rotation(ctx, l), || {
            format!("{name}: basepoint rotation on {f}")
        });
    }
    for (f, p) in markov_presentations() {
        if large && p.braid.word.len() > 2 {
            continue;
        }
        t.check_result(markov_invariance(ctx, &p), || {
            format!("{name}: Markov move on {f}")
        });
    }
    let range = if large { -1..=1 } else { -2..=2 };
    let slides = handle_slide_pairs(range);
    let slide_results: Vec<Result<bool, QinvError>> = slides
        .par_iter()
        .map(|(_, a, b)| {
            Ok(ctx.tau(a, Mode::Normalized, false)? == ctx.tau(b, Mode::Normalized, false)?)
        })
        .collect();
    for ((f, _, _), r) in slides.iter().zip(slide_results) {
        t.check_result(r, || format!("{name}: handle slide {f}"));
    }
    for (f, l) in fx.iter().take(8) {
        for n in [-1, 0, 1] {
            let r = ctx
                .tau(l, Mode::Normalized, false)
                .and_then(|x| Ok(x == ctx.tau(&eta_move(l, n), Mode::Normalized, false)?));
            t.check_result(r, || format!("{name}: eta move ({n}) on {f}"));
        }
    }
    for (f, l) in &fx {
        t.check_result(integral_is_ad_invariant(ctx, l), || {
            format!("{name}: integral of {f} is not ad-invariant")
        });
    }
    let m = ctx.catalog.len();
    for (f, l) in [
        ("hopf:0,0", fixtures::hopf(0, 0)),
        ("trefoil:0", fixtures::trefoil(0)),
    ] {
        let n = l.component_count();
        for a in 0..m {
            for b in 0..m {
                for other in 0..m {
                    let coloring = vec![other; n];
                    let r = rt::jordan_holder_additivity(ctx, &l, &coloring, 0, a, b);
                    t.check_result(r, || {
                        format!("{name}: Jordan–Hölder additivity on {f} with {a}⊕{b}")
                    });
                }
            }
        }
    }
    let reps = rt::crosscheck_representations(ctx);
    for (f, l) in &property_fixtures() {
        if l.crossings().len() > 3 {
            continue;
        }
        let s = split(l);
        for colors in all_colorings(&reps, l.component_count()) {
            t.check_result(rt::fiber_crosscheck(ctx, &s, &colors), || {
                let labels: Vec<&str> = colors.iter().map(|r| r.label.as_str()).collect();
                format!("{name}: fiber cross-check on {f} colored {labels:?}")
            });
        }
    }
    t
}

fn criterion_12(zoo: &Zoo) -> Tally {
    let tallies: Vec<Tally> = zoo.members.par_iter().map(property_suite).collect();
    let mut t = Tally::new();
    tallies.into_iter().for_each(|x| t.merge(x));
    t
}
