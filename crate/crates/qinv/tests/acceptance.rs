//! Acceptance criteria, one PASS/FAIL line each. Expected values come from
//! oracles written here rather than from the library's own helpers.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use qinv::diagram::fixtures;
use qinv::hennings::Mode;
use qinv::hopf::integrals::integral_dimensions;
use qinv::hopf::{certify_hopf, Elem, TensorElement};
use qinv::linalg::Matrix;
use qinv::rt;
use qinv::scalar::Cyclo;
use qinv::suite::{self, Zoo};
use qinv::torus::{build_torus_rep, lens_invariant, MappingClassWord};
use qinv::zoo::{AlgebraSpec, ZOO};

type Verdict = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Verdict {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration) -> Verdict {
    let t = start.elapsed();
    ensure(t < budget, || {
        format!(
            "took {:.1} s, budget {} s",
            t.as_secs_f64(),
            budget.as_secs()
        )
    })
}

fn c1_certification() -> Verdict {
    let start = Instant::now();
    for name in ZOO {
        let h = AlgebraSpec::parse(name)
            .unwrap()
            .build()
            .map_err(|e| e.to_string())?;
        let rep = certify_hopf(&h);
        let failed: Vec<&str> = rep.failures().iter().map(|c| c.name.as_str()).collect();
        ensure(failed.is_empty(), || format!("{name}: {failed:?}"))?;
    }
    within(start, Duration::from_secs(60))
}

fn c2_integrals(zoo: &Zoo) -> Verdict {
    for ctx in &zoo.members {
        let h = &ctx.h;
        let d = integral_dimensions(h);
        ensure(
            d.left_integral == 1 && d.right_integral == 1 && d.cointegral == 1,
            || format!("{}: {d:?}", ctx.name),
        )?;
        let lam = &ctx.ints.lambda;
        // x·λ = ε(x)λ for every basis element.
        for i in 0..h.dim() {
            let x = Elem::basis(i);
            ensure(h.mul(&x, lam) == lam.scale(&h.counit(&x)), || {
                format!("{}: λ is not a left cointegral", ctx.name)
            })?;
        }
        // (μ^R ⊗ id)Δ(x) = μ^R(x)·1.
        for i in 0..h.dim() {
            let x = Elem::basis(i);
            let lhs = h.comul(&x).contract_leg(0, &ctx.ints.mu_right).to_elem();
            ensure(lhs == h.one().scale(&ctx.ints.mu_right(&x)), || {
                format!("{}: μ^R is not a right integral", ctx.name)
            })?;
        }
        ensure(ctx.ints.mu_right(lam).is_one(), || {
            format!("{}: μ^R(λ) ≠ 1", ctx.name)
        })?;
    }
    Ok(())
}

fn c3_modularity(zoo: &Zoo) -> Verdict {
    for ctx in &zoo.members {
        let h = &ctx.h;
        let rank = ctx.rd.omega.to_matrix(h.dim()).rank();
        match ctx.spec {
            AlgebraSpec::Group(_) => {
                let one = h.one();
                ensure(
                    h.r_matrix() == Some(&TensorElement::pure(&[&one, &one])),
                    || format!("{}: R ≠ 1⊗1", ctx.name),
                )?;
                ensure(rank == 1, || format!("{}: ω rank {rank}", ctx.name))?;
            }
            _ => {
                ensure(rank == h.dim(), || {
                    format!("{}: ω rank {rank} of {}", ctx.name, h.dim())
                })?;
                let x = ctx.rd.omega.contract_leg(1, &ctx.ints.mu_right).to_elem();
                // Find c from one nonzero coordinate of λ, then compare everywhere.
                let (i, l) = ctx.ints.lambda.terms()[0].clone();
                let c = x.coeff(i).div_ref(&l).unwrap();
                ensure(!c.is_zero() && x == ctx.ints.lambda.scale(&c), || {
                    format!("{}: (id⊗μ^R)(ω) is not a nonzero multiple of λ", ctx.name)
                })?;
            }
        }
    }
    Ok(())
}

fn c4_s1xs2(zoo: &Zoo) -> Verdict {
    for ctx in &zoo.members {
        let v = ctx
            .tau(&fixtures::unknot(0), Mode::Normalized, false)
            .map_err(|e| e.to_string())?;
        if ctx.is_semisimple() {
            ensure(!v.is_zero(), || format!("{}: τ(S¹×S²) = 0", ctx.name))?;
        }
        if ctx.name == "uq_sl2:5" {
            ensure(v.is_zero(), || format!("uq_sl2:5: τ(S¹×S²) = {v}"))?;
        }
        let coupon = ctx
            .raw_value(&fixtures::s1xs2_coupon(), false)
            .map_err(|e| e.to_string())?;
        let eps_lambda = ctx.h.counit(&ctx.ints.lambda);
        ensure(coupon == eps_lambda && coupon == v, || {
            format!(
                "{}: coupon {coupon}, ε(λ) {eps_lambda}, unknot {v}",
                ctx.name
            )
        })?;
    }
    Ok(())
}

fn c5_s3(zoo: &Zoo) -> Verdict {
    let links = [
        ("empty", fixtures::empty()),
        ("unknot:+1", fixtures::unknot(1)),
        ("unknot:-1", fixtures::unknot(-1)),
        ("s3_markov", fixtures::s3_markov()),
    ];
    for ctx in &zoo.members {
        for (name, l) in &links {
            let v = ctx
                .tau(l, Mode::Normalized, false)
                .map_err(|e| e.to_string())?;
            ensure(v.is_one(), || format!("{}: τ({name}) = {v}", ctx.name))?;
        }
    }
    Ok(())
}

/// Brute-force count of g with g^k = e, on explicit models of the groups.
fn count_roots(group: &str, k: i64) -> i64 {
    let power = |mul: &dyn Fn(usize, usize) -> usize, e: usize, g: usize| {
        let mut x = e;
        for _ in 0..k {
            x = mul(x, g);
        }
        x
    };
    match group {
        "Z2" | "Z3" => {
            let n: usize = group[1..].parse().unwrap();
            (0..n)
                .filter(|&g| power(&|a, b| (a + b) % n, 0, g) == 0)
                .count() as i64
        }
        "S3" => {
            let perms: Vec<[usize; 3]> = vec![
                [0, 1, 2],
                [0, 2, 1],
                [1, 0, 2],
                [1, 2, 0],
                [2, 0, 1],
                [2, 1, 0],
            ];
            let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
            let mul = |a: usize, b: usize| {
                let (p, q) = (perms[a], perms[b]);
                index([p[q[0]], p[q[1]], p[q[2]]])
            };
            (0..6).filter(|&g| power(&mul, 0, g) == 0).count() as i64
        }
        _ => unreachable!(),
    }
}

fn c6_double_counting(zoo: &Zoo) -> Verdict {
    let start = Instant::now();
    for g in ["Z2", "Z3", "S3"] {
        let ctx = zoo.get(&format!("double:{g}"));
        let s3 = ctx
            .tau(&fixtures::empty(), Mode::Normalized, false)
            .map_err(|e| e.to_string())?;
        for k in 1..=6 {
            let v = ctx
                .tau(&fixtures::lens(k), Mode::Normalized, false)
                .map_err(|e| e.to_string())?;
            let ratio = v.div_ref(&s3).map_err(|e| e.to_string())?;
            let expect = Cyclo::from_i64(count_roots(g, k));
            ensure(ratio == expect, || {
                format!("D({g}), k = {k}: {ratio} vs {expect}")
            })?;
        }
    }
    within(start, Duration::from_secs(60))
}

fn c7_q(zoo: &Zoo) -> Verdict {
    for ctx in &zoo.members {
        let h = &ctx.h;
        let q = &ctx.q.value;
        if ctx.is_semisimple() {
            ensure(*q == h.one(), || format!("{}: Q ≠ 1", ctx.name))?;
        } else {
            for i in 0..h.dim() {
                let x = Elem::basis(i);
                ensure(h.mul(&x, q) == h.mul(q, &x), || {
                    format!("{}: Q is not central", ctx.name)
                })?;
            }
            ensure(h.antipode(q) == *q, || format!("{}: S(Q) ≠ Q", ctx.name))?;
            ensure(h.mul(q, q).is_zero(), || format!("{}: Q² ≠ 0", ctx.name))?;
            ensure(!q.is_zero(), || format!("{}: Q = 0", ctx.name))?;
        }
    }
    Ok(())
}

fn c8_rt_equals_hennings_q(zoo: &Zoo) -> Verdict {
    let start = Instant::now();
    for ctx in &zoo.members {
        for (name, l) in fixtures::comparison_set() {
            for mode in [Mode::Raw, Mode::Normalized] {
                let a = rt::tau_rt(ctx, &l, mode).map_err(|e| e.to_string())?;
                let b = ctx.tau(&l, mode, true).map_err(|e| e.to_string())?;
                ensure(a == b, || {
                    format!("{} {name} {mode:?}: RT {a} vs Hennings+Q {b}", ctx.name)
                })?;
            }
        }
    }
    within(start, Duration::from_secs(600))
}

fn c9_lens_ratio(zoo: &Zoo) -> Verdict {
    let ctx = zoo.get("uq_sl2:5");
    for k in 0..=6 {
        let l = fixtures::lens(k);
        let h = ctx
            .tau(&l, Mode::Normalized, false)
            .map_err(|e| e.to_string())?;
        if k == 0 {
            ensure(h.is_zero(), || format!("τ_HKR(S¹×S²) = {h}"))?;
            continue;
        }
        let r = rt::tau_rt(ctx, &l, Mode::Normalized).map_err(|e| e.to_string())?;
        ensure(h == Cyclo::from_i64(k) * r.clone(), || {
            format!("k = {k}: τ_HKR {h}, τ_RT {r}")
        })?;
    }
    Ok(())
}

fn c10_s_matrix(zoo: &Zoo) -> Verdict {
    for ctx in &zoo.members {
        let s = rt::s_matrix(ctx).map_err(|e| e.to_string())?;
        let n = s.nrows();
        if s.rank() == n {
            let d = ctx.catalog.qdims();
            let d2: Cyclo = d
                .iter()
                .fold(Cyclo::zero(), |acc, x| acc + x.clone() * x.clone());
            for i in 0..n {
                let mut acc = Cyclo::zero();
                for (j, dj) in d.iter().enumerate() {
                    acc = acc + s[(i, ctx.catalog.dual_of(j))].clone() * dj.clone();
                }
                let expect = if i == 0 { d2.clone() } else { Cyclo::zero() };
                ensure(acc == expect, || {
                    format!("{} row {i}: {acc} vs {expect}", ctx.name)
                })?;
            }
        }
        if matches!(ctx.spec, AlgebraSpec::Double(_) | AlgebraSpec::Trivial) {
            ensure(s.rank() == n, || {
                format!("{}: S has rank {} of {n}", ctx.name, s.rank())
            })?;
        }
    }
    // With R = 1⊗1 every entry of the k[ℤ/3] S-matrix is d_i·d_j = 1.
    let s = rt::s_matrix(zoo.get("group:Z3")).map_err(|e| e.to_string())?;
    let ones = Matrix::from_rows(vec![vec![Cyclo::one(); 3]; 3]);
    ensure(s == ones && s.rank() == 1, || {
        "group:Z3: S is not the rank-1 all-ones matrix".into()
    })
}

/// c with a = c·b, read off one nonzero entry and checked on all.
fn matrix_ratio(a: &Matrix, b: &Matrix) -> Option<Cyclo> {
    for i in 0..b.nrows() {
        for j in 0..b.ncols() {
            if !b[(i, j)].is_zero() {
                let c = a[(i, j)].div_ref(&b[(i, j)]).ok()?;
                return (*a == b.scale(&c)).then_some(c);
            }
        }
    }
    None
}

fn c11_torus(zoo: &Zoo) -> Verdict {
    let mut failures = Vec::new();
    for ctx in &zoo.members {
        let rep = build_torus_rep(ctx).map_err(|e| e.to_string())?;
        for k in -6..=6 {
            let a = lens_invariant(&MappingClassWord::lens(k), &rep).map_err(|e| e.to_string())?;
            let b = ctx
                .raw_value(&fixtures::unknot(k), false)
                .map_err(|e| e.to_string())?;
            ensure(a == b, || {
                format!("{} k = {k}: torus {a} vs surgery {b}", ctx.name)
            })?;
        }
        if rep.s_z.rank() == rep.s_z.nrows() {
            let (s, t) = (&rep.s_z, &rep.t_z);
            let s2 = s.mul(s);
            let st3 = s.mul(t).pow(3);
            let c1 = matrix_ratio(&st3, &s2).filter(|c| !c.is_zero());
            let c2 =
                matrix_ratio(&s2.mul(&s2), &Matrix::identity(s.nrows())).filter(|c| !c.is_zero());
            if c1.is_none() {
                failures.push(format!(
                    "{}: (S*T*)³ is not a nonzero multiple of S*²",
                    ctx.name
                ));
            }
            if c2.is_none() {
                failures.push(format!(
                    "{}: S*⁴ is not a nonzero multiple of the identity",
                    ctx.name
                ));
            }
        }
    }
    let dim = build_torus_rep(zoo.get("uq_sl2:5"))
        .map_err(|e| e.to_string())?
        .center_dim();
    if dim != 7 {
        failures.push(format!("uq_sl2:5 center dimension {dim}"));
    }
    ensure(failures.is_empty(), || failures.join("; "))
}

fn c12_properties(zoo: &Zoo) -> Verdict {
    let o = suite::run(12, zoo);
    ensure(o.passed, || o.failures.join("; "))
}

fn main() -> ExitCode {
    let zoo = Zoo::load().expect("zoo loads");
    let criteria: [(u8, &str, &dyn Fn(&Zoo) -> Verdict); 12] = [
        (1, "certification", &|_| c1_certification()),
        (2, "integral uniqueness and normalization", &c2_integrals),
        (3, "modularity", &c3_modularity),
        (4, "S1xS2 and the coupon presentation", &c4_s1xs2),
        (5, "S3 presentations", &c5_s3),
        (6, "D(G) homomorphism counting", &c6_double_counting),
        (7, "Q element", &c7_q),
        (8, "RT equals Hennings with Q", &c8_rt_equals_hennings_q),
        (9, "uq_sl2:5 lens-space ratio", &c9_lens_ratio),
        (10, "S-matrix identities", &c10_s_matrix),
        (11, "torus TQFT consistency", &c11_torus),
        (12, "property suites", &c12_properties),
    ];
    let mut all = true;
    for (id, title, f) in criteria {
        let start = Instant::now();
        let verdict = f(&zoo);
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(()) => println!("PASS criterion {id:>2}: {title} ({secs:.1} s)"),
            Err(why) => {
                all = false;
                println!("FAIL criterion {id:>2}: {title} ({secs:.1} s): {why}");
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
