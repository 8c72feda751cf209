use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use intertwine::category::{intrinsic_dimension, Category};
use intertwine::config::{RunConfig, ScalarMode, Setting};
use intertwine::ergodic::eigenmatrix;
use intertwine::report::Report;
use intertwine::suites::{classify_suite, su2_suite, suite_report, tl_conjugate_suite, SUITES};
use intertwine::tl::TemperleyLieb;
use intertwine::{Error, Scalar, Surd, F32, F64};

#[derive(Parser)]
#[command(name = "intertwine", version, about = "Verification suites for quasitensor functors and induced bimodules")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification suites.
    Verify(Common),
    /// Intrinsic dimensions and spectral multiplicities.
    Dims(Common),
    /// Build the algebra and bimodules of each pair and dump structure constants.
    Induce(Common),
    /// (z, W) classification for the configured ergodic actions.
    Classify(Common),
    /// SU(2) adjoint actions: spectra, hom dimensions and verdicts.
    Su2(Common),
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated suite names; defaults to the config's list.
    #[arg(long, value_delimiter = ',')]
    suite: Vec<String>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Both,
}

enum Fail {
    Config(String),
    Checks,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Config(e.to_string())
    }
}

struct Output {
    dir: Option<PathBuf>,
    format: Format,
}

impl Output {
    fn json(&self) -> bool {
        self.format != Format::Text
    }

    fn text(&self) -> bool {
        self.format != Format::Json
    }

    fn write(&self, stem: &str, json: &Value, text: &str) -> Result<(), Fail> {
        if self.text() {
            print!("{text}");
        }
        let Some(dir) = &self.dir else {
            if self.json() && !self.text() {
                println!("{}", serde_json::to_string_pretty(json).expect("json"));
            }
            return Ok(());
        };
        std::fs::create_dir_all(dir).map_err(|e| Fail::Config(format!("--out {}: {e}", dir.display())))?;
        let put = |name: String, body: String| {
            std::fs::write(dir.join(&name), body).map_err(|e| Fail::Config(format!("{}: {e}", dir.join(name).display())))
        };
        if self.json() {
            put(format!("{stem}.json"), serde_json::to_string_pretty(json).expect("json"))?;
        }
        if self.text() {
            put(format!("{stem}.txt"), text.to_string())?;
        }
        Ok(())
    }
}

fn load(c: &Common, default_suites: &[&str]) -> Result<(RunConfig, Output), Fail> {
    let mut cfg = match &c.config {
        Some(p) => RunConfig::from_path(p)?,
        None => RunConfig::default(),
    };
    if !c.suite.is_empty() {
        cfg.suites = c.suite.clone();
    }
    if cfg.suites.is_empty() {
        cfg.suites = default_suites.iter().map(|s| s.to_string()).collect();
    }
    if let Some(s) = c.seed {
        cfg.seed = s;
    }
    if let Some(e) = c.eps.or(cfg.eps) {
        if !(e > 0.0 && e.is_finite()) {
            return Err(Fail::Config(format!("eps must be positive, got {e}")));
        }
        intertwine::set_eps(e);
    }
    let out_cfg = cfg.output.clone().unwrap_or_default();
    let dir = c.out.clone().or_else(|| {
        out_cfg.dir.map(|d| match &c.config {
            Some(p) if Path::new(&d).is_relative() => std::env::current_dir().unwrap_or_default().join(d),
            _ => PathBuf::from(d),
        })
    });
    let format = match (c.format, out_cfg.format.as_deref()) {
        (Some(f), _) => f,
        (None, Some("json")) => Format::Json,
        (None, Some("text")) => Format::Text,
        (None, Some("both")) | (None, None) => Format::Both,
        (None, Some(other)) => return Err(Fail::Config(format!("output.format: unknown format {other}"))),
    };
    Ok((cfg, Output { dir, format }))
}

fn verify<S: Scalar>(cfg: &RunConfig, set: &Setting<S>, out: &Output) -> Result<(), Fail>
where
    Setting<S>: Sync,
{
    let mut names: Vec<&str> = SUITES.iter().copied().filter(|s| cfg.suites.iter().any(|c| c == s)).collect();
    names.dedup();
    let scalar = cfg.scalar.name();
    let reports: Vec<Result<Report, Error>> = names.par_iter().map(|n| suite_report(n, set, scalar)).collect();
    let reports = reports.into_iter().collect::<Result<Vec<_>, _>>()?;
    let text: String = reports.iter().map(|r| r.to_text()).collect::<Vec<_>>().join("\n");
    out.write("report", &serde_json::to_value(&reports).expect("json"), &text)?;
    if reports.iter().all(|r| r.all_passed()) {
        Ok(())
    } else {
        Err(Fail::Checks)
    }
}

fn dims<S: Scalar>(set: &Setting<S>, out: &Output) -> Result<(), Fail> {
    let mut rows = Vec::new();
    let mut text = String::from("intrinsic dimensions\n");
    for p in &set.pairs {
        for w in p.cat.irreducibles() {
            let d = intrinsic_dimension(p.cat.as_ref(), &w)?;
            text.push_str(&format!("  {:<12} {:<12} {d}\n", p.label, p.cat.describe(&w)));
            rows.push(json!({"category": p.label, "object": p.cat.describe(&w), "dimension": d.to_string()}));
        }
    }
    for t in &set.tl {
        let tl = TemperleyLieb::new(t.variant, t.d.clone());
        let d = intrinsic_dimension(&tl, &tl.generator())?;
        text.push_str(&format!("  {:<12} {:<12} {d}\n", t.id, "x"));
        rows.push(json!({"category": t.id, "object": "x", "dimension": d.to_string()}));
        let ok = tl_conjugate_suite(&tl)?.iter().all(|c| c.passed());
        text.push_str(&format!("  conjugate equations {}\n", if ok { "hold" } else { "FAIL" }));
    }
    let mut mults = Vec::new();
    text.push_str("spectral multiplicities\n");
    for a in &set.actions {
        for (name, v) in &a.irreps {
            let em = eigenmatrix(v, &a.action)?;
            text.push_str(&format!("  {:<12} {:<12} mult {} dim {}\n", a.id, name, em.mult, v.dim()));
            mults.push(json!({"action": a.id, "irrep": name, "mult": em.mult, "dim": v.dim()}));
        }
    }
    out.write("dims", &json!({"dimensions": rows, "multiplicities": mults}), &text)
}

fn induce<S: Scalar>(set: &Setting<S>, out: &Output) -> Result<(), Fail> {
    let mut text = String::new();
    let mut dump = Vec::new();
    for p in &set.pairs {
        let ctx = p.context()?;
        let basis = ctx.spanning_set(&[])?;
        let n = basis.len();
        // c_ijk = omega(b_k* b_i b_j)
        let stars = basis.iter().map(|b| ctx.star_default(b)).collect::<Result<Vec<_>, _>>()?;
        let mut consts = Vec::new();
        for bi in &basis {
            for bj in &basis {
                let prod = ctx.dot(bi, bj)?;
                for sk in &stars {
                    consts.push(ctx.state(&ctx.dot(sk, &prod)?)?.to_string());
                }
            }
        }
        text.push_str(&format!("{}: algebra of dimension {n}\n", p.label));
        let mut modules = Vec::new();
        for o in &set.corpus.objects {
            let u = p.word(o).map_err(|e| Fail::Config(format!("corpus.objects: {e}")))?;
            let span = ctx.spanning_set(&[u.clone()])?;
            let gram = if u.is_empty() { ctx.state_gram(&basis)? } else { ctx.state_gram(&ctx.x_basis(&u)?)? };
            let rank = intertwine::linalg::rank(&ctx.state_gram(&span)?);
            text.push_str(&format!("  H_{o}: spanning set {}, dimension {rank}\n", span.len()));
            modules.push(json!({
                "object": o,
                "spanning": span.len(),
                "dimension": rank,
                "x_gram": (0..gram.rows()).map(|i| (0..gram.cols()).map(|j| gram.get(i, j).to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            }));
        }
        dump.push(json!({"pair": p.label, "algebra_dim": n, "structure_constants": consts, "modules": modules}));
    }
    out.write("induce", &Value::Array(dump), &text)
}

fn classify<S: Scalar>(set: &Setting<S>, out: &Output) -> Result<(), Fail> {
    let mut text = String::new();
    let mut dump = Vec::new();
    let mut ok = true;
    for k in &set.classify {
        let a = &set.actions[k.action];
        let v = &a.irreps.iter().find(|(n, _)| *n == k.v).expect("resolved").1;
        let plain: Vec<_> = a.irreps.iter().map(|(_, r)| r.clone()).collect();
        let names: Vec<String> = a.irreps.iter().map(|(n, _)| n.clone()).collect();
        let (checks, c) = classify_suite(&k.v, v, &a.action, &plain, k.bound, set.seed)?;
        ok &= checks.iter().all(|c| !c.failed());
        let summary = c.summary(&names);
        text.push_str(&format!("{} / {}: mult {} of dim {}\n", a.id, k.v, c.mult, v.dim()));
        for s in &summary {
            text.push_str(&format!(
                "  z = {:?} exists {} full {} moduli {:?}{}\n",
                s.z,
                s.exists,
                s.full,
                s.moduli_dim,
                if s.partial { " (partial)" } else { "" }
            ));
        }
        dump.push(json!({"action": a.id, "v": k.v, "mult": c.mult, "candidates": summary, "checks": checks}));
    }
    out.write("classify", &Value::Array(dump), &text)?;
    if ok {
        Ok(())
    } else {
        Err(Fail::Checks)
    }
}

fn su2(set: &Setting<Surd>, out: &Output) -> Result<(), Fail> {
    let rs = if set.su2.is_empty() { vec![1, 2, 3] } else { set.su2.clone() };
    let (checks, reports) = su2_suite(&rs)?;
    let mut rep = Report::new("su2", "exact");
    rep.extend(checks);
    out.write("su2", &json!({"reports": reports, "checks": rep}), &rep.to_text())?;
    if rep.all_passed() {
        Ok(())
    } else {
        Err(Fail::Checks)
    }
}

fn dispatch<S: Scalar>(cmd: &Cmd, cfg: &RunConfig, out: &Output) -> Result<(), Fail>
where
    Setting<S>: Sync,
{
    let set = cfg.resolve::<S>()?;
    match cmd {
        Cmd::Verify(_) => verify(cfg, &set, out),
        Cmd::Dims(_) => dims(&set, out),
        Cmd::Induce(_) => induce(&set, out),
        Cmd::Classify(_) => classify(&set, out),
        Cmd::Su2(_) => unreachable!("su2 runs exactly"),
    }
}

fn run(cli: &Cli) -> Result<(), Fail> {
    let (common, defaults): (&Common, &[&str]) = match &cli.cmd {
        Cmd::Verify(c) => (c, SUITES),
        Cmd::Dims(c) | Cmd::Induce(c) | Cmd::Classify(c) => (c, &[]),
        Cmd::Su2(c) => (c, &["su2"]),
    };
    let (cfg, out) = load(common, defaults)?;
    if let Cmd::Su2(_) = cli.cmd {
        return su2(&cfg.resolve::<Surd>()?, &out);
    }
    match cfg.scalar {
        ScalarMode::Exact => dispatch::<Surd>(&cli.cmd, &cfg, &out),
        ScalarMode::F64 => dispatch::<F64>(&cli.cmd, &cfg, &out),
        ScalarMode::F32 => dispatch::<F32>(&cli.cmd, &cfg, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Checks) => ExitCode::from(1),
        Err(Fail::Config(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
