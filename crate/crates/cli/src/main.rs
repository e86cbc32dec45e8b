//! `gasym`: infinity branches and generalized asymptotes of space curves.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use gasym::exactfield::Exponent;
use gasym::polynomial::{parse_poly_at, var_list};
use gasym::spacecurve::{
    analyze_curve, eliminate_lambda, project_seeded, space_branches, verify_convergence, Method,
    PipelineOptions, SpaceAnalysis, DEFAULT_SEED,
};
use gasym::{Error, MultiPoly, Rational};
use gasym_cli::doc::{self, CheckDoc, Document, InputDoc};
use gasym_cli::plot;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

const CHECK_DIGITS: usize = 30;

#[derive(Parser, Debug)]
#[command(
    name = "gasym",
    version,
    about = "Infinity branches and generalized asymptotes of space curves f1 = f2 = 0"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(clap::Args, Debug)]
struct Common {
    /// First defining polynomial in x1, x2, x3.
    #[arg(
        long,
        global = true,
        allow_hyphen_values = true,
        requires = "f2",
        conflicts_with = "input"
    )]
    f1: Option<String>,
    /// Second defining polynomial in x1, x2, x3.
    #[arg(
        long,
        global = true,
        allow_hyphen_values = true,
        requires = "f1",
        conflicts_with = "input"
    )]
    f2: Option<String>,
    /// File with the two polynomials on separate lines; `#` starts a comment.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Number of negative powers of z kept in printed series.
    #[arg(long, global = true, default_value_t = 2)]
    depth: u32,
    /// Comma-separated sample magnitudes of |z|, positive and increasing.
    #[arg(long, global = true)]
    samples: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the random coordinate changes.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Process branches sequentially.
    #[arg(long, global = true)]
    deterministic: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Projection curve, lift function and coordinate change.
    Project,
    /// Infinity branches with their truncated series.
    Branches,
    /// Generalized asymptotes and their convergence checks.
    Asymptotes {
        #[arg(long, value_enum, default_value_t = MethodArg::Improved)]
        method: MethodArg,
    },
    /// CSV samples of real points on branches and asymptotes.
    Plotdata {
        #[arg(long, value_enum, default_value_t = MethodArg::Improved)]
        method: MethodArg,
        /// Significant digits of the decimal values.
        #[arg(long, default_value_t = 15)]
        precision: usize,
        /// Output file; standard output when absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Basic,
    Improved,
    Both,
}

struct JobConfig {
    f1_text: String,
    f2_text: String,
    f1: MultiPoly,
    f2: MultiPoly,
    depth: u32,
    samples: Vec<Rational>,
    format: Format,
    opts: PipelineOptions,
}

/// Parses `100`, `2.5`, `1e3` or `7/2`.
fn parse_magnitude(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.contains('/') {
        return doc::parse_rational(s);
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (
            m,
            e.parse::<i32>()
                .with_context(|| format!("bad exponent in {s:?}"))?,
        ),
        None => (s, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits = format!("{int}{frac}");
    let value = doc::parse_rational(&digits).with_context(|| format!("not a number: {s:?}"))?;
    let shift = exp - frac.len() as i32;
    let ten = Rational::from_integer(10.into());
    Ok(if shift >= 0 {
        value * num::pow(ten, shift as usize)
    } else {
        value / num::pow(ten, (-shift) as usize)
    })
}

fn parse_samples(text: Option<&str>, default: &[i64]) -> Result<Vec<Rational>> {
    let values: Vec<Rational> = match text {
        None => default
            .iter()
            .map(|&m| Rational::from_integer(m.into()))
            .collect(),
        Some(t) => t
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(parse_magnitude)
            .collect::<Result<_>>()?,
    };
    if values
        .iter()
        .any(|v| *v <= Rational::from_integer(0.into()))
    {
        bail!("sample magnitudes must be positive");
    }
    if values.windows(2).any(|w| w[1] <= w[0]) {
        bail!("sample magnitudes must be strictly increasing");
    }
    Ok(values)
}

fn parse_one(text: &str, line: usize, origin: &str) -> Result<MultiPoly> {
    parse_poly_at(text, &var_list(&["x1", "x2", "x3"]), line).map_err(|e| anyhow!("{origin}: {e}"))
}

fn read_inputs(c: &Common) -> Result<(String, String, MultiPoly, MultiPoly)> {
    match (&c.f1, &c.f2, &c.input) {
        (Some(a), Some(b), None) => Ok((
            a.clone(),
            b.clone(),
            parse_one(a, 1, "--f1")?,
            parse_one(b, 1, "--f2")?,
        )),
        (None, None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            let lines: Vec<(usize, &str)> = text
                .lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
                .filter(|(_, l)| !l.trim().is_empty())
                .collect();
            if lines.len() != 2 {
                bail!(
                    "{}: expected two polynomial lines, found {}",
                    path.display(),
                    lines.len()
                );
            }
            let origin = path.display().to_string();
            let f1 = parse_one(lines[0].1, lines[0].0, &origin)?;
            let f2 = parse_one(lines[1].1, lines[1].0, &origin)?;
            Ok((
                lines[0].1.trim().to_string(),
                lines[1].1.trim().to_string(),
                f1,
                f2,
            ))
        }
        _ => bail!("give either --f1 and --f2 or --input"),
    }
}

fn config(c: &Common, default_samples: &[i64]) -> Result<JobConfig> {
    let (f1_text, f2_text, f1, f2) = read_inputs(c)?;
    Ok(JobConfig {
        f1_text,
        f2_text,
        f1,
        f2,
        depth: c.depth,
        samples: parse_samples(c.samples.as_deref(), default_samples)?,
        format: c.format,
        opts: PipelineOptions {
            seed: c.seed,
            parallel: !c.deterministic,
            order: Exponent::from_integer(c.depth as i64 + 1),
        },
    })
}

fn document(cfg: &JobConfig) -> Document {
    Document {
        input: InputDoc {
            f1: cfg.f1_text.clone(),
            f2: cfg.f2_text.clone(),
        },
        ..Document::default()
    }
}

/// Output text and whether every check passed.
type Report = (String, bool);

fn cmd_project(cfg: &JobConfig) -> Result<Report> {
    let pr = project_seeded(&cfg.f1, &cfg.f2, cfg.opts.seed)?;
    let (p, l) = doc::projection(&pr);
    if cfg.format == Format::Structured {
        let mut d = document(cfg);
        d.projection = Some(p);
        d.lift = Some(l);
        return Ok((serde_json::to_string_pretty(&d)? + "\n", true));
    }
    let mut out = String::new();
    push_projection(&mut out, &p, &l);
    Ok((out, true))
}

fn push_projection(out: &mut String, p: &doc::ProjectionDoc, l: &doc::LiftDoc) {
    for w in &p.warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    match &p.transform {
        Some(m) => {
            out.push_str("coordinate change x = M y with M =\n");
            for row in m {
                out.push_str(&format!("  [{}]\n", row.join(", ")));
            }
            out.push_str("(the polynomials below are in y1, y2, y3 printed as x1, x2, x3)\n");
        }
        None => out.push_str("coordinate change: none\n"),
    }
    out.push_str(&format!("projection fp = {}\n", p.fp));
    if p.vertical {
        out.push_str("lift: f2 is linear in x3 with constant leading coefficient\n");
    }
    out.push_str(&format!(
        "lift x3 = h1/h2 with h1 = {}, h2 = {}\n",
        l.h1, l.h2
    ));
    out.push_str(&format!("lift equation f3 = {}\n", l.f3));
}

fn cmd_branches(cfg: &JobConfig) -> Result<Report> {
    let (pr, branches) = space_branches(&cfg.f1, &cfg.f2, &cfg.opts)?;
    let (p, l) = doc::projection(&pr);
    let mut d = document(cfg);
    let mut out = String::new();
    push_projection(&mut out, &p, &l);
    for (i, b) in branches.iter().enumerate() {
        let r2 = doc::shown_to_depth(&b.r2, cfg.depth, b.ramification());
        let r3 = doc::shown_to_depth(&b.r3, cfg.depth, b.ramification());
        let bd = doc::branch(i + 1, b, (&r2, &r3));
        out.push_str(&format!(
            "branch {}: point {}, ramification {}, degree {}\n",
            i + 1,
            bd.point_text,
            b.ramification(),
            b.degree()
        ));
        if let Some(m) = b.plane.conjugacy_minpoly() {
            out.push_str(&format!(
                "  class: {} conjugates over {}\n",
                m.len() - 1,
                minpoly_text(&m)
            ));
        }
        out.push_str(&format!("  r2 = {r2}\n  r3 = {r3}\n"));
        d.branches.push(bd);
    }
    if cfg.format == Format::Structured {
        d.projection = Some(p);
        d.lift = Some(l);
        return Ok((serde_json::to_string_pretty(&d)? + "\n", true));
    }
    Ok((out, true))
}

fn minpoly_text(m: &[Rational]) -> String {
    let p = gasym::exactfield::UniPoly::from_rationals(m);
    format!("{} = 0", p.format_in("λ"))
}

fn method_of(m: MethodArg) -> Method {
    match m {
        MethodArg::Basic => Method::Basic,
        MethodArg::Improved | MethodArg::Both => Method::Improved,
    }
}

fn checks_for(cfg: &JobConfig, a: &SpaceAnalysis) -> Result<Vec<CheckDoc>> {
    let mut checks = Vec::new();
    for (i, r) in a.branches.iter().enumerate() {
        let rep = verify_convergence(&r.local, &r.branch, &cfg.samples)?;
        let detail = rep
            .rendered(CHECK_DIGITS)
            .into_iter()
            .map(|(m, d)| format!("|z| = {m}: {d}"))
            .collect::<Vec<_>>()
            .join("; ");
        let detail = if detail.is_empty() {
            format!("exact part {}", if rep.exact { "equal" } else { "differs" })
        } else {
            detail
        };
        checks.push(CheckDoc {
            name: format!("convergence of branch {}", i + 1),
            passed: rep.passed(),
            detail,
        });
        if let (Some(s), Some(sol)) = (&r.system, &r.solution) {
            let bound = s.mu - s.degree as i64 - 1;
            let deg = s.residual_degree(sol);
            checks.push(CheckDoc {
                name: format!("residual degree of branch {}", i + 1),
                passed: deg.is_none_or(|d| d <= bound),
                detail: format!(
                    "degree {} <= {bound}",
                    deg.map(|d| d.to_string()).unwrap_or_else(|| "-inf".into())
                ),
            });
        }
    }
    Ok(checks)
}

fn fill_analysis(cfg: &JobConfig, a: &SpaceAnalysis, d: &mut Document) -> Result<()> {
    let (p, l) = doc::projection(&a.projection);
    d.projection = Some(p);
    d.lift = Some(l);
    for (i, r) in a.branches.iter().enumerate() {
        let r2 = doc::shown_to_depth(&r.branch.r2, cfg.depth, r.branch.ramification());
        let r3 = doc::shown_to_depth(&r.branch.r3, cfg.depth, r.branch.ramification());
        let mut bd = doc::branch(i + 1, &r.branch, (&r2, &r3));
        if let (Some(p), Some(s), Some(sol)) = (&r.params, &r.system, &r.solution) {
            bd.system = Some(doc::system(p, s, sol));
        }
        d.branches.push(bd);
    }
    for e in &a.asymptotes {
        let implicit = match &e.asymptote.minpoly {
            Some(_) => {
                let (g1, g2) = eliminate_lambda(&e.asymptote)?;
                Some((g1.to_string(), g2.to_string()))
            }
            None => None,
        };
        let idx: Vec<usize> = e.branches.iter().map(|i| i + 1).collect();
        d.asymptotes
            .push(doc::asymptote(&e.asymptote, implicit, &idx));
    }
    d.checks.extend(checks_for(cfg, a)?);
    Ok(())
}

fn render_analysis_text(d: &Document, method: &str) -> String {
    let mut out = String::new();
    if let (Some(p), Some(l)) = (&d.projection, &d.lift) {
        push_projection(&mut out, p, l);
    }
    for b in &d.branches {
        out.push_str(&format!(
            "branch {}: point {}, ramification {}, degree {}\n",
            b.index, b.point_text, b.ramification, b.degree
        ));
        out.push_str(&format!("  r2 = {}\n  r3 = {}\n", b.r2.text, b.r3.text));
        if let Some(s) = &b.system {
            out.push_str(&format!(
                "  system: k = {}, r = {}, n = {}, mu = {}\n",
                s.k, s.r, s.n, s.mu
            ));
            for (j, l) in s.lambdas.iter().enumerate() {
                out.push_str(&format!("    L{j} = {l}\n"));
            }
        }
    }
    out.push_str(&format!("asymptotes ({method}):\n"));
    for (i, a) in d.asymptotes.iter().enumerate() {
        let idx: Vec<String> = a.branches.iter().map(|b| b.to_string()).collect();
        let mut line = format!("  {}: {}  [branches {}]", i + 1, a.text, idx.join(", "));
        match a.repaired_from {
            Some(k) => line.push_str(&format!(" proper, reparametrized from t^{k}")),
            None if a.proper => line.push_str(" proper"),
            None => line.push_str(" not proper"),
        }
        out.push_str(&line);
        out.push('\n');
        if let Some(m) = &a.minpoly {
            let m: Vec<Rational> = m
                .iter()
                .filter_map(|s| doc::parse_rational(s).ok())
                .collect();
            out.push_str(&format!("     where {}\n", minpoly_text(&m)));
        }
        if let Some(g) = &a.implicit {
            out.push_str(&format!("     g1 = {}\n     g2 = {}\n", g[0], g[1]));
        }
    }
    out.push_str("checks:\n");
    for c in &d.checks {
        out.push_str(&format!(
            "  {} {}: {}\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        ));
    }
    out
}

fn cmd_asymptotes(cfg: &JobConfig, method: MethodArg) -> Result<Report> {
    let a = analyze_curve(&cfg.f1, &cfg.f2, method_of(method), &cfg.opts)?;
    let mut d = document(cfg);
    fill_analysis(cfg, &a, &mut d)?;
    let mut agree = None;
    if method == MethodArg::Both {
        let basic = analyze_curve(&cfg.f1, &cfg.f2, Method::Basic, &cfg.opts)?;
        let same = basic.asymptotes == a.asymptotes;
        let detail = if same {
            "methods agree".to_string()
        } else {
            let list = |x: &SpaceAnalysis| {
                x.asymptotes
                    .iter()
                    .map(|e| e.asymptote.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            format!(
                "methods disagree: basic {{{}}}, improved {{{}}}",
                list(&basic),
                list(&a)
            )
        };
        d.checks.push(CheckDoc {
            name: "method agreement".into(),
            passed: same,
            detail: detail.clone(),
        });
        agree = Some(detail);
    }
    let ok = d.checks.iter().all(|c| c.passed);
    if cfg.format == Format::Structured {
        return Ok((serde_json::to_string_pretty(&d)? + "\n", ok));
    }
    let label = match method {
        MethodArg::Basic => "basic",
        MethodArg::Improved => "improved",
        MethodArg::Both => "improved and basic",
    };
    let mut out = render_analysis_text(&d, label);
    if let Some(a) = agree {
        out.push_str(&a);
        out.push('\n');
    }
    Ok((out, ok))
}

fn cmd_plotdata(cfg: &JobConfig, method: MethodArg, precision: usize) -> Result<Report> {
    if precision == 0 {
        bail!("precision must be at least 1");
    }
    let a = analyze_curve(&cfg.f1, &cfg.f2, method_of(method), &cfg.opts)?;
    Ok((plot::sample(&a, &cfg.samples, precision).render(), true))
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Project => cmd_project(&config(&cli.common, &[100, 1000, 10000])?),
        Command::Branches => cmd_branches(&config(&cli.common, &[100, 1000, 10000])?),
        Command::Asymptotes { method } => {
            cmd_asymptotes(&config(&cli.common, &[100, 1000, 10000])?, *method)
        }
        Command::Plotdata {
            method,
            precision,
            output,
        } => {
            let cfg = config(&cli.common, &[5, 10, 50])?;
            let (text, ok) = cmd_plotdata(&cfg, *method, *precision)?;
            match output {
                Some(path) => {
                    std::fs::write(path, &text)
                        .with_context(|| format!("cannot write {}", path.display()))?;
                    Ok((String::new(), ok))
                }
                None => Ok((text, ok)),
            }
        }
    }
}

fn diagnostic(e: &anyhow::Error) -> String {
    match e.downcast_ref::<Error>() {
        Some(Error::NotACurve(why)) => format!("not a curve: {why}"),
        _ => format!("error: {e:#}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, ok)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("{}", diagnostic(&e));
            ExitCode::from(2)
        }
    }
}
