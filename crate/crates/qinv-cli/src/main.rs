//! `qinv`: exact 3-manifold invariants from the command line.
//!
//! Every command prints one JSON document on standard output. Exit codes:
//! 0 success, 1 a verification failed, 2 unknown algebra or fixture name,
//! 3 malformed input, 4 an engine error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use qinv::diagram::{self, fixtures, FramedLinkDiagram};
use qinv::hennings::Mode;
use qinv::hopf::integrals::integral_dimensions;
use qinv::hopf::ribbon::{center_basis, coadjoint_invariance_check};
use qinv::hopf::{certify_hopf, HopfAlgebra};
use qinv::linalg::Matrix;
use qinv::scalar::Cyclo;
use qinv::suite::{self, Zoo};
use qinv::torus::{build_torus_rep, lens_invariant, q_quotient, sl2z_scalars, MappingClassWord};
use qinv::zoo::ZOO;
use qinv::{rt, AlgebraContext, QinvError};

/// Environment variable holding the worker thread count.
const THREADS_ENV: &str = "QINV_THREADS";

#[derive(Parser)]
#[command(
    name = "qinv",
    version,
    about = "Exact quantum invariants of 3-manifolds from ribbon Hopf algebras"
)]
struct Cli {
    /// Add floating-point approximations next to every exact scalar.
    #[arg(long, global = true)]
    approx: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Hopf, quasitriangular and ribbon axioms of an algebra.
    Certify(CertifyArgs),
    /// Invariant of the manifold given by surgery on a framed link.
    Invariant(InvariantArgs),
    /// Invariants of the lens spaces L(k,1).
    Lens(LensArgs),
    /// S-matrix of the irreducible representation catalog.
    Smatrix(AlgebraArg),
    /// Genus-one mapping class group action on the center.
    Sl2z(AlgebraArg),
    /// List the registered algebras.
    Zoo,
    /// Named link fixtures and the verification suite.
    Fixtures {
        #[command(subcommand)]
        command: FixturesCommand,
    },
}

#[derive(Args)]
struct AlgebraArg {
    /// Registry name, e.g. double:Z2 or uq_sl2:5.
    #[arg(long)]
    algebra: String,
}

#[derive(Args)]
struct CertifyArgs {
    /// Registry name.
    #[arg(long, conflicts_with_all = ["algebra_file", "all"])]
    algebra: Option<String>,
    /// An algebra in the JSON interchange format.
    #[arg(long, conflicts_with = "all")]
    algebra_file: Option<PathBuf>,
    /// Certify every registered algebra.
    #[arg(long)]
    all: bool,
}

#[derive(Args)]
struct InvariantArgs {
    /// Registry name, e.g. double:Z2 or uq_sl2:5.
    #[arg(long)]
    algebra: String,
    /// Link file: {"braid": {...}} or {"slices": [...], "framings": [...]}.
    #[arg(long, conflicts_with = "fixture", required_unless_present = "fixture")]
    link: Option<PathBuf>,
    /// Named fixture such as hopf:0,0 or trefoil:0.
    #[arg(long)]
    fixture: Option<String>,
    /// Report the unnormalized value.
    #[arg(long, conflicts_with = "normalized")]
    raw: bool,
    /// Divide by the values of the ±1-framed unknot (the default).
    #[arg(long)]
    normalized: bool,
    /// Insert the element Q on every component.
    #[arg(long = "with-Q")]
    with_q: bool,
    /// Report the Reshetikhin–Turaev state sum instead.
    #[arg(long, conflicts_with = "both")]
    rt: bool,
    /// Report both invariants and their ratio.
    #[arg(long)]
    both: bool,
}

#[derive(Args)]
struct LensArgs {
    /// Registry name, e.g. double:Z2 or uq_sl2:5.
    #[arg(long)]
    algebra: String,
    /// A single k or an inclusive range such as 0..6.
    #[arg(short = 'k', allow_hyphen_values = true)]
    k: String,
    /// Also compute the state-sum invariant and the ratio.
    #[arg(long)]
    both: bool,
}

#[derive(Subcommand)]
enum FixturesCommand {
    /// Names of the built-in fixtures.
    List,
    /// Print a fixture as a link file.
    Show { name: String },
    /// Write every listed fixture into a directory.
    Export { dir: PathBuf },
    /// Run the acceptance suite.
    Verify {
        /// Run every criterion.
        #[arg(
            long,
            conflicts_with = "criterion",
            required_unless_present = "criterion"
        )]
        all: bool,
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        criterion: Vec<u8>,
    },
}

/// Failure kinds, each with its own exit code.
enum Failure {
    Verification(Value),
    UnknownName(String),
    Malformed(String),
    Engine(String),
}

impl From<QinvError> for Failure {
    fn from(e: QinvError) -> Failure {
        use qinv::diagram::DiagramError;
        use qinv::zoo::ZooError;
        match &e {
            QinvError::Zoo(ZooError::UnknownName(_)) => Failure::UnknownName(e.to_string()),
            QinvError::Diagram(DiagramError::Json(m)) if m.starts_with("unknown fixture") => {
                Failure::UnknownName(m.clone())
            }
            QinvError::Diagram(_) => Failure::Malformed(e.to_string()),
            _ => Failure::Engine(e.to_string()),
        }
    }
}

type Outcome = Result<Value, Failure>;

/// Scalar rendering shared by every command.
struct Out {
    approx: bool,
}

impl Out {
    fn scalar(&self, c: &Cyclo) -> Value {
        let mut v = json!({ "exact": c.to_json(), "text": c.to_string() });
        if self.approx {
            let (re, im) = c.approx();
            v["approx"] = json!({ "re": re, "im": im });
        }
        v
    }

    fn opt_scalar(&self, c: Option<&Cyclo>) -> Value {
        c.map_or(Value::Null, |c| self.scalar(c))
    }

    fn matrix(&self, m: &Matrix) -> Value {
        Value::Array(
            m.to_rows()
                .iter()
                .map(|r| Value::Array(r.iter().map(|c| self.scalar(c)).collect()))
                .collect(),
        )
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let out = Out { approx: cli.approx };
    let result = match cli.command {
        Command::Certify(a) => certify(&out, a),
        Command::Invariant(a) => invariant(&out, a),
        Command::Lens(a) => lens(&out, a),
        Command::Smatrix(a) => smatrix(&out, &a.algebra),
        Command::Sl2z(a) => sl2z(&out, &a.algebra),
        Command::Zoo => zoo(&out),
        Command::Fixtures { command } => fixtures_cmd(command),
    };
    let (doc, code) = match result {
        Ok(v) => (Some(v), 0),
        Err(Failure::Verification(v)) => (Some(v), 1),
        Err(Failure::UnknownName(m)) => {
            eprintln!("error: {m}");
            (None, 2)
        }
        Err(Failure::Malformed(m)) => {
            eprintln!("error: malformed input: {m}");
            (None, 3)
        }
        Err(Failure::Engine(m)) => {
            eprintln!("error: {m}");
            (None, 4)
        }
    };
    if let Some(v) = doc {
        let text = serde_json::to_string_pretty(&v).expect("JSON values serialize");
        // A closed pipe (e.g. `| head`) is not an error worth a panic.
        let _ = writeln!(std::io::stdout().lock(), "{text}");
    }
    ExitCode::from(code)
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| anyhow::anyhow!("{THREADS_ENV}={raw:?} is not a thread count"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()?;
    Ok(())
}

fn load(name: &str) -> Result<AlgebraContext, Failure> {
    Ok(AlgebraContext::load(name)?)
}

fn verified(v: Value, ok: bool) -> Outcome {
    if ok {
        Ok(v)
    } else {
        Err(Failure::Verification(v))
    }
}

fn certify_one(h: &HopfAlgebra) -> (Value, bool) {
    let rep = certify_hopf(h);
    let dims = integral_dimensions(h);
    let ok = rep.all_passed();
    let v = json!({
        "algebra": rep.algebra,
        "dim": rep.dim,
        "passed": ok,
        "checks": rep.checks,
        "integral_dimensions": dims,
    });
    (v, ok)
}

fn certify(_out: &Out, a: CertifyArgs) -> Outcome {
    if a.all {
        let rows: Vec<Result<(Value, bool), Failure>> = ZOO
            .par_iter()
            .map(|n| {
                let h = qinv::zoo::AlgebraSpec::parse(n)
                    .map_err(QinvError::from)?
                    .build()
                    .map_err(QinvError::from)?;
                Ok(certify_one(&h))
            })
            .collect();
        let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
        let ok = rows.iter().all(|r| r.1);
        return verified(
            json!({ "passed": ok, "reports": rows.into_iter().map(|r| r.0).collect::<Vec<_>>() }),
            ok,
        );
    }
    let h = match (&a.algebra, &a.algebra_file) {
        (Some(n), None) => qinv::zoo::AlgebraSpec::parse(n)
            .and_then(|s| s.build())
            .map_err(|e| Failure::from(QinvError::from(e)))?,
        (None, Some(p)) => {
            let v = read_json(p)?;
            HopfAlgebra::from_json(&v)
                .map_err(|e| Failure::Malformed(format!("{}: {e}", p.display())))?
        }
        _ => {
            return Err(Failure::Malformed(
                "give one of --algebra, --algebra-file, --all".into(),
            ))
        }
    };
    let (v, ok) = certify_one(&h);
    verified(v, ok)
}

fn read_json(p: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(p)
        .map_err(|e| Failure::Malformed(format!("{}: {e}", p.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Malformed(format!("{}: {e}", p.display())))
}

fn read_link(a: &InvariantArgs) -> Result<(String, FramedLinkDiagram), Failure> {
    match (&a.link, &a.fixture) {
        (Some(p), _) => {
            let v = read_json(p)?;
            let l = diagram::from_json(&v)
                .map_err(|e| Failure::Malformed(format!("{}: {e}", p.display())))?;
            Ok((p.display().to_string(), l))
        }
        (None, Some(n)) => Ok((n.clone(), fixtures::by_name(n).map_err(QinvError::from)?)),
        (None, None) => Err(Failure::Malformed("give --link or --fixture".into())),
    }
}

fn ratio(a: &Cyclo, b: &Cyclo) -> Option<Cyclo> {
    a.div_ref(b).ok()
}

fn invariant(out: &Out, a: InvariantArgs) -> Outcome {
    let ctx = load(&a.algebra)?;
    let (label, l) = read_link(&a)?;
    let mode = if a.raw { Mode::Raw } else { Mode::Normalized };
    let sig = l.signature();
    let mut v = json!({
        "algebra": ctx.name,
        "link": label,
        "components": l.component_count(),
        "crossings": l.crossings().len(),
        "framings": l.framings(),
        "sigma": [sig.0, sig.1],
        "mode": mode,
        "with_Q": a.with_q,
    });
    let hennings = if a.rt {
        None
    } else {
        let int_i = ctx.integral_element(&l, a.with_q)?;
        // Legs are listed left to right; the adjoint action reads them right to left.
        let reversed: Vec<usize> = (0..int_i.arity()).rev().collect();
        v["intI_summary"] = json!({
            "arity": int_i.arity(),
            "terms": int_i.len(),
            "ad_invariant": coadjoint_invariance_check(&int_i.permute(&reversed), &ctx.h),
        });
        let tau = ctx.tau(&l, mode, a.with_q)?;
        v["tau"] = out.scalar(&tau);
        Some(tau)
    };
    if a.rt || a.both {
        let t = rt::tau_rt(&ctx, &l, mode)?;
        v["tau_rt"] = out.scalar(&t);
        if let Some(h) = &hennings {
            v["ratio"] = out.opt_scalar(ratio(h, &t).as_ref());
            v["equal"] = json!(*h == t);
        }
    }
    Ok(v)
}

fn parse_k(s: &str) -> Result<Vec<i64>, Failure> {
    let bad = || Failure::Malformed(format!("-k expects an integer or a range a..b, got {s:?}"));
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        Ok((lo..=hi).collect())
    } else {
        Ok(vec![s.trim().parse().map_err(|_| bad())?])
    }
}

fn lens(out: &Out, a: LensArgs) -> Outcome {
    let ks = parse_k(&a.k)?;
    let ctx = load(&a.algebra)?;
    let rep = build_torus_rep(&ctx)?;
    let rows: Vec<Result<Value, Failure>> = ks
        .par_iter()
        .map(|&k| {
            let l = fixtures::lens(k);
            let word = MappingClassWord::lens(k);
            let tau = ctx.tau(&l, Mode::Normalized, false)?;
            let mut row = json!({
                "k": k,
                "word": word.to_string(),
                "h1_order": if k == 0 { Value::Null } else { json!(k.unsigned_abs()) },
                "lens_invariant": out.scalar(&lens_invariant(&word, &rep)?),
                "tau": out.scalar(&tau),
            });
            if a.both {
                let t = rt::tau_rt(&ctx, &l, Mode::Normalized)?;
                row["tau_rt"] = out.scalar(&t);
                row["ratio"] = out.opt_scalar(ratio(&tau, &t).as_ref());
            }
            Ok(row)
        })
        .collect();
    let mut rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    if rows.len() == 1 {
        let mut row = rows.pop().expect("one row");
        row["algebra"] = json!(ctx.name);
        return Ok(row);
    }
    Ok(json!({ "algebra": ctx.name, "rows": rows }))
}

fn smatrix(out: &Out, name: &str) -> Outcome {
    let ctx = load(name)?;
    let s = rt::s_matrix(&ctx)?;
    let rank = s.rank();
    let invertible = rank == s.nrows();
    let row_identity = rt::s_matrix_row_identity(&ctx, &s);
    let labels: Vec<&str> = ctx
        .catalog
        .entries()
        .iter()
        .map(|e| e.rep.label.as_str())
        .collect();
    let v = json!({
        "algebra": ctx.name,
        "labels": labels,
        "qdims": ctx.catalog.qdims().iter().map(|d| out.scalar(d)).collect::<Vec<_>>(),
        "global_dim_sq": out.scalar(ctx.catalog.global_dim_sq()),
        "matrix": out.matrix(&s),
        "rank": rank,
        "invertible": invertible,
        "row_identity": row_identity,
    });
    // The row identity is only claimed for invertible S-matrices.
    verified(v, !invertible || row_identity)
}

fn sl2z(out: &Out, name: &str) -> Outcome {
    let ctx = load(name)?;
    let rep = build_torus_rep(&ctx)?;
    let mut v = json!({
        "algebra": ctx.name,
        "center_dim": rep.center_dim(),
        "modular": rep.modular,
        "s_star_one": out.opt_scalar(rep.s_star_one.as_ref()),
        "S": out.matrix(&rep.s_z),
        "T": out.matrix(&rep.t_z),
    });
    let mut ok = true;
    if rep.modular {
        match sl2z_scalars(&rep.s_z, &rep.t_z) {
            Ok(c) => {
                v["relations_hold"] = json!(true);
                v["c1"] = out.scalar(&c.c1);
                v["c2"] = out.scalar(&c.c2);
            }
            Err(e) => {
                ok = false;
                v["relations_hold"] = json!(false);
                v["diagnostic"] = json!(e.to_string());
            }
        }
    }
    if !ctx.is_semisimple() {
        let qq = q_quotient(&ctx, &rep)?;
        let mut w =
            json!({ "dim": qq.dim, "sq_rank": qq.sq_rank, "catalog_size": ctx.catalog.len() });
        match sl2z_scalars(&qq.s, &qq.t) {
            Ok(c) => {
                w["relations_hold"] = json!(true);
                w["c1"] = out.scalar(&c.c1);
                w["c2"] = out.scalar(&c.c2);
            }
            Err(e) => {
                ok = false;
                w["relations_hold"] = json!(false);
                w["diagnostic"] = json!(e.to_string());
            }
        }
        v["q_quotient"] = w;
    }
    verified(v, ok)
}

fn zoo(out: &Out) -> Outcome {
    let rows: Vec<Result<Value, Failure>> = ZOO
        .par_iter()
        .map(|n| {
            let ctx = load(n)?;
            Ok(json!({
                "name": ctx.name,
                "dim": ctx.h.dim(),
                "semisimple": ctx.is_semisimple(),
                "omega_rank": ctx.modularity.rank,
                "modular": ctx.modularity.modular,
                "center_dim": center_basis(&ctx.h).len(),
                "catalog": ctx.catalog.entries().iter().map(|e| e.rep.label.clone()).collect::<Vec<_>>(),
                "global_dim_sq": out.scalar(ctx.catalog.global_dim_sq()),
                "q_is_one": ctx.q.is_one(&ctx.h),
            }))
        })
        .collect();
    Ok(json!({ "algebras": rows.into_iter().collect::<Result<Vec<_>, _>>()? }))
}

/// Fixtures written by `fixtures export`, with their file names.
fn exported_fixtures() -> Vec<(&'static str, &'static str)> {
    vec![
        ("empty", "empty.json"),
        ("unknot:0", "unknot0.json"),
        ("unknot:1", "unknot1.json"),
        ("unknot:-1", "unknot-1.json"),
        ("hopf:0,0", "hopf00.json"),
        ("hopf:1,-1", "hopf1-1.json"),
        ("trefoil:0", "trefoil0.json"),
        ("lens:3", "lens3.json"),
        ("s1xs2_coupon", "s1xs2_coupon.json"),
        ("coupon_cancel", "coupon_cancel.json"),
        ("s3_markov", "s3_markov.json"),
    ]
}

fn fixtures_cmd(c: FixturesCommand) -> Outcome {
    match c {
        FixturesCommand::List => Ok(json!({
            "fixtures": [
                "empty", "unknot:F", "curl:+1", "curl:-1", "twist:F", "hopf:F1,F2", "trefoil:F", "lens:K",
                "s1xs2", "s1xs2_coupon", "coupon_cancel", "s3_markov", "slide:A,K", "unslid:A,K"
            ]
        })),
        FixturesCommand::Show { name } => {
            Ok(fixtures::by_name(&name).map_err(QinvError::from)?.to_json())
        }
        FixturesCommand::Export { dir } => {
            std::fs::create_dir_all(&dir)
                .map_err(|e| Failure::Engine(format!("{}: {e}", dir.display())))?;
            let mut written = Vec::new();
            for (name, file) in exported_fixtures() {
                let l = fixtures::by_name(name).map_err(QinvError::from)?;
                let text = serde_json::to_string_pretty(&l.to_json())
                    .expect("JSON values serialize")
                    + "\n";
                let path = dir.join(file);
                std::fs::write(&path, text)
                    .map_err(|e| Failure::Engine(format!("{}: {e}", path.display())))?;
                written.push(path.display().to_string());
            }
            Ok(json!({ "written": written }))
        }
        FixturesCommand::Verify { all, criterion } => {
            let ids: Vec<u8> = if all {
                suite::CRITERIA.iter().map(|c| c.0).collect()
            } else {
                criterion
            };
            if let Some(bad) = ids
                .iter()
                .find(|i| !suite::CRITERIA.iter().any(|c| c.0 == **i))
            {
                return Err(Failure::UnknownName(format!(
                    "no acceptance criterion {bad}"
                )));
            }
            let zoo = Zoo::load()?;
            let mut outcomes = Vec::new();
            for id in ids {
                let o = suite::run(id, &zoo);
                eprintln!(
                    "{} criterion {:>2}: {} ({:.1} s)",
                    if o.passed { "PASS" } else { "FAIL" },
                    o.id,
                    o.title,
                    o.elapsed.as_secs_f64()
                );
                outcomes.push(o);
            }
            let ok = outcomes.iter().all(|o| o.passed);
            verified(json!({ "passed": ok, "criteria": outcomes }), ok)
        }
    }
}
