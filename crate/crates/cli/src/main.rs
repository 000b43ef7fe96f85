//! `tlcat` — command-line surface for the diagram-calculus toolkit.
//!
//! Exit codes: 0 success, 1 invariant violation (a mathematical check
//! failed), 2 usage error (bad arguments, out-of-range parameters,
//! mismatched hom requests).  Output is plain text by default and
//! stable JSON with `--json`; all numbers print exactly.

mod spec;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tlcat_core::cell::{gram_det, gram_matrix, radical_dim};
use tlcat_core::diagram::enumerate_diagrams;
use tlcat_core::error::Error;
use tlcat_core::g0::{
    composition_series, coproduct, enumerate_walled, mackey_check, struct_const,
    struct_const_verified, G0Vector, StructMethod, TripleIndex,
};
use tlcat_core::rep::hom_space;
use tlcat_core::scalar::{Mode, Rational, Scalar};
use tlcat_core::tower::{check_axioms, ind_cell, res_cell, SupportSet};
use tlcat_core::verify::verify_all;

/// Hard ceiling on point counts, overridable (downward or upward at
/// your own risk) through the TLCAT_MAX_N environment variable.
const DEFAULT_MAX_N: usize = 14;

#[derive(Parser)]
#[command(name = "tlcat", version, about = "Exact Temperley-Lieb diagram calculus")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Evaluate coefficients at a fixed rational delta, e.g. "2" or "3/2".
    #[arg(long, global = true, value_name = "P/Q")]
    delta: Option<String>,

    /// Keep delta as a formal variable (the default).
    #[arg(long, global = true)]
    generic: bool,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Include ASCII pictures where the subcommand has any.
    #[arg(long, global = true)]
    render: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Planar diagram enumeration.
    Diagrams {
        #[command(subcommand)]
        cmd: DiagramsCmd,
    },
    /// Gram matrix, determinant, or radical of one cell module.
    Gram {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Print only the determinant.
        #[arg(long, conflicts_with = "radical")]
        det: bool,
        /// Print only the radical dimension (needs --delta).
        #[arg(long)]
        radical: bool,
    },
    /// Dimension and basis of the intertwiner space between two modules.
    ///
    /// Module specs: cell:n:r | reg:n | tensor(S1,S2) | res(S,k,l)
    Hom {
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
    },
    /// Restriction, induction, and axiom sweeps along the tower.
    Tower {
        #[command(subcommand)]
        cmd: TowerCmd,
    },
    /// Grothendieck-group product, coproduct, filtrations, and the
    /// Mackey comparison.
    G0 {
        #[command(subcommand)]
        cmd: G0Cmd,
    },
    /// Run every invariant suite up to a bound.
    Verify {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

#[derive(Subcommand)]
enum DiagramsCmd {
    /// List all planar matchings from `bot` bottom to `top` top points.
    Enumerate {
        #[arg(long)]
        bot: usize,
        #[arg(long)]
        top: usize,
    },
}

#[derive(Subcommand)]
enum TowerCmd {
    /// Cell labels of the one-step restriction of a cell module.
    Res {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
    },
    /// Cell labels of the one-step induction of a cell module.
    Ind {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
    },
    /// Bending bijections, support bounds, adjunction witnesses, and
    /// pairing ranks, swept up to a bound.
    Axioms {
        #[arg(long)]
        max_n: usize,
    },
}

#[derive(Subcommand)]
enum G0Cmd {
    /// Product of two cell classes.
    Product {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Closed)]
        method: MethodArg,
    },
    /// Coproduct of one cell class.
    Coproduct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Both sides of the Mackey-style comparison and their difference.
    Mackey {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
    },
    /// Filtration layers of a restricted cell module.
    Series {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum MethodArg {
    Closed,
    Walled,
    Hom,
    All,
}

/// Failure that carries its process exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn violation(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_) | Error::InvalidDiagram(_) | Error::NonComposable { .. } => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn max_n_bound() -> usize {
    std::env::var("TLCAT_MAX_N")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}

fn check_bound(what: &str, value: usize) -> Result<(), Failure> {
    let bound = max_n_bound();
    if value > bound {
        return Err(Failure::usage(format!(
            "{what} = {value} exceeds the enumeration bound {bound} (override with TLCAT_MAX_N)"
        )));
    }
    Ok(())
}

fn parse_rational(text: &str) -> Result<Rational, Failure> {
    let mut parts = text.splitn(2, '/');
    let num: i64 = parts
        .next()
        .unwrap()
        .trim()
        .parse()
        .map_err(|_| Failure::usage(format!("cannot parse delta {text:?}")))?;
    let den: i64 = match parts.next() {
        Some(d) => d
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("cannot parse delta {text:?}")))?,
        None => 1,
    };
    if den == 0 {
        return Err(Failure::usage("delta denominator is zero"));
    }
    Ok(Rational::new(num, den))
}

fn resolve_mode(cli: &Cli) -> Result<Mode, Failure> {
    match (&cli.delta, cli.generic) {
        (Some(_), true) => Err(Failure::usage("--delta and --generic are mutually exclusive")),
        (Some(text), false) => Ok(Mode::At(parse_rational(text)?)),
        (None, _) => Ok(Mode::Generic),
    }
}

/// Writes a line to stdout, exiting quietly if the reading end of a
/// pipe has already closed (e.g. `tlcat ... | head`).
fn print_line(line: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{line}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("cannot write to stdout: {e}");
    }
}

/// Prints JSON or a lazily built text block, per the global flag.
fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    if json {
        print_line(&serde_json::to_string(value).expect("serializable output"));
    } else {
        print_line(&text());
    }
}

fn support_text(s: &SupportSet) -> String {
    let terms: Vec<String> = s
        .labels()
        .map(|(r, m)| {
            if m == 1 {
                format!("[Δ_{}({r})]", s.n)
            } else {
                format!("{m}·[Δ_{}({r})]", s.n)
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => {}
        Err(f) => {
            eprintln!("error: {}", f.message);
            std::process::exit(f.code);
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let mode = resolve_mode(cli)?;
    match &cli.cmd {
        Cmd::Diagrams {
            cmd: DiagramsCmd::Enumerate { bot, top },
        } => {
            check_bound("bot", *bot)?;
            check_bound("top", *top)?;
            let all = enumerate_diagrams(*bot, *top);
            emit(cli.json, &all, || {
                let mut out = format!("{} diagram(s) from {bot} to {top}", all.len());
                for d in &all {
                    out.push_str(&format!("\n{d}"));
                    if cli.render {
                        out.push('\n');
                        out.push_str(&d.render_ascii());
                    }
                }
                out
            });
        }

        Cmd::Gram { n, r, det, radical } => {
            check_bound("n", *n)?;
            if 2 * r > *n {
                return Err(Failure::usage(format!("no cell module with {r} caps on {n} points")));
            }
            if *det {
                let d = gram_det(&mode, *n, *r)?;
                #[derive(Serialize)]
                struct DetOut<'a> {
                    n: usize,
                    r: usize,
                    det: &'a Scalar,
                }
                emit(cli.json, &DetOut { n: *n, r: *r, det: &d }, || format!("{d}"));
            } else if *radical {
                let q = match &mode {
                    Mode::At(q) => q.clone(),
                    Mode::Generic => {
                        return Err(Failure::usage(
                            "--radical needs a numeric --delta (generically the form is nondegenerate)",
                        ))
                    }
                };
                let dim = radical_dim(*n, *r, &q)?;
                #[derive(Serialize)]
                struct RadOut<'a> {
                    n: usize,
                    r: usize,
                    delta: &'a Rational,
                    radical_dim: usize,
                }
                emit(
                    cli.json,
                    &RadOut {
                        n: *n,
                        r: *r,
                        delta: &q,
                        radical_dim: dim,
                    },
                    || format!("radical dimension {dim} at delta = {q}"),
                );
            } else {
                let gm = gram_matrix(&mode, *n, *r)?;
                emit(cli.json, &gm, || {
                    let mut out = format!("Gram matrix of the ({n},{r}) cell module:");
                    for (i, row) in gm.entries.iter().enumerate() {
                        let cells: Vec<String> = row.iter().map(|s| format!("{s}")).collect();
                        out.push_str(&format!("\n{}  [{}]", gm.basis[i], cells.join(", ")));
                    }
                    out
                });
            }
        }

        Cmd::Hom { source, target } => {
            let src = spec::parse(source, &mode).map_err(Failure::usage)?;
            let tgt = spec::parse(target, &mode).map_err(Failure::usage)?;
            let (src_alg, tgt_alg) = (src.algebra(), tgt.algebra());
            for arity in src_alg.arities().iter().chain(tgt_alg.arities()) {
                check_bound("module arity", *arity)?;
            }
            let basis = hom_space(&src, &tgt)?;
            #[derive(Serialize)]
            struct HomOut {
                source: String,
                target: String,
                dim: usize,
                basis: Vec<Vec<Vec<Scalar>>>,
            }
            let out = HomOut {
                source: format!("{src}"),
                target: format!("{tgt}"),
                dim: basis.len(),
                basis,
            };
            emit(cli.json, &out, || {
                let mut text = format!("dim hom({}, {}) = {}", out.source, out.target, out.dim);
                for (k, mat) in out.basis.iter().enumerate() {
                    text.push_str(&format!("\nbasis intertwiner {}:", k + 1));
                    for row in mat {
                        let cells: Vec<String> = row.iter().map(|s| format!("{s}")).collect();
                        text.push_str(&format!("\n  [{}]", cells.join(", ")));
                    }
                }
                text
            });
        }

        Cmd::Tower { cmd } => match cmd {
            TowerCmd::Res { n, p } => {
                check_bound("n", *n)?;
                let s = res_cell(*n, *p)?;
                emit(cli.json, &s, || {
                    format!("Res Δ_{n}({p}) = {}", support_text(&s))
                });
            }
            TowerCmd::Ind { n, p } => {
                check_bound("n", *n)?;
                let s = ind_cell(*n, *p)?;
                emit(cli.json, &s, || {
                    format!("Ind Δ_{n}({p}) = {}", support_text(&s))
                });
            }
            TowerCmd::Axioms { max_n } => {
                check_bound("max-n", *max_n)?;
                let report = check_axioms(*max_n)?;
                emit(cli.json, &report, || {
                    format!(
                        "axioms up to n = {}: {} bending checks, {} support checks, {} adjunction checks, {} pairing checks — {}",
                        report.max_n,
                        report.a2.len(),
                        report.a3.len(),
                        report.a4.len(),
                        report.morita.len(),
                        if report.pass { "all pass" } else { "FAILED" }
                    )
                });
                if !report.pass {
                    return Err(Failure::violation("tower axiom sweep failed"));
                }
            }
        },

        Cmd::G0 { cmd } => match cmd {
            G0Cmd::Product { m, p, n, q, method } => {
                check_bound("m + n", m + n)?;
                if 2 * p > *m || 2 * q > *n {
                    return Err(Failure::usage("cell labels out of range"));
                }
                let hom_feasible = m + n <= 7;
                let mut vec = G0Vector::zero();
                for r in 0..=(m + n) / 2 {
                    let c = match method {
                        MethodArg::Closed => struct_const(*m, *n, *p, *q, r, StructMethod::Closed)?,
                        MethodArg::Walled => struct_const(*m, *n, *p, *q, r, StructMethod::Walled)?,
                        MethodArg::Hom => {
                            if !hom_feasible {
                                return Err(Failure::usage(format!(
                                    "hom method is capped at m + n <= 7, got {}",
                                    m + n
                                )));
                            }
                            struct_const(*m, *n, *p, *q, r, StructMethod::Hom)?
                        }
                        MethodArg::All => struct_const_verified(*m, *n, *p, *q, r, hom_feasible)?,
                    };
                    if c != 0 {
                        vec.add_term(m + n, r, c as i64);
                    }
                }
                #[derive(Serialize)]
                struct ProductOut<'a> {
                    m: usize,
                    p: usize,
                    n: usize,
                    q: usize,
                    method: String,
                    hom_checked: bool,
                    product: &'a G0Vector,
                }
                let out = ProductOut {
                    m: *m,
                    p: *p,
                    n: *n,
                    q: *q,
                    method: format!("{method:?}").to_lowercase(),
                    hom_checked: matches!(method, MethodArg::Hom)
                        || (matches!(method, MethodArg::All) && hom_feasible),
                    product: &vec,
                };
                emit(cli.json, &out, || {
                    format!("[Δ_{m}({p})]·[Δ_{n}({q})] = {vec}")
                });
            }
            G0Cmd::Coproduct { n, r } => {
                check_bound("n", *n)?;
                if 2 * r > *n {
                    return Err(Failure::usage("cell label out of range"));
                }
                let t = coproduct(&G0Vector::class(*n, *r));
                #[derive(Serialize)]
                struct CoproductOut<'a> {
                    n: usize,
                    r: usize,
                    coproduct: &'a tlcat_core::g0::G0Tensor,
                }
                emit(
                    cli.json,
                    &CoproductOut {
                        n: *n,
                        r: *r,
                        coproduct: &t,
                    },
                    || format!("Δ-split of [Δ_{n}({r})] = {t}"),
                );
            }
            G0Cmd::Mackey { n, p } => {
                check_bound("n", *n)?;
                if *n == 0 || 2 * p > *n {
                    return Err(Failure::usage("mackey comparison needs n >= 1 and 2p <= n"));
                }
                let report = mackey_check(*n, *p)?;
                emit(cli.json, &report, || {
                    format!(
                        "left  = {}\nright = {}\nequal = {}\ndifference (right - left) = {}",
                        report.left, report.right, report.equal, report.difference
                    )
                });
            }
            G0Cmd::Series { m, n, r } => {
                check_bound("m + n", m + n)?;
                if 2 * r > m + n {
                    return Err(Failure::usage("cap count out of range"));
                }
                let series = composition_series(*m, *n, *r)?;
                #[derive(Serialize)]
                struct Layer<'a> {
                    triple: &'a TripleIndex,
                    dim: usize,
                }
                let layers: Vec<Layer> = series
                    .iter()
                    .map(|(t, d)| Layer { triple: t, dim: *d })
                    .collect();
                emit(cli.json, &layers, || {
                    let mut out = format!(
                        "filtration of the ({m}|{n})-restriction of Δ_{}({r}):",
                        m + n
                    );
                    let mut cumulative = 0;
                    for (t, d) in &series {
                        cumulative += d;
                        out.push_str(&format!(
                            "\nW{t}: layer dim {d} (cumulative {cumulative})"
                        ));
                        if cli.render {
                            for (w, wt) in enumerate_walled(*m, *n, *r) {
                                if wt == *t {
                                    out.push('\n');
                                    out.push_str(&w.render_ascii());
                                    out.push('\n');
                                }
                            }
                        }
                    }
                    out
                });
            }
        },

        Cmd::Verify { max_n } => {
            check_bound("max-n", *max_n)?;
            let report = verify_all(*max_n);
            emit(cli.json, &report, || {
                let mut out = String::new();
                for c in &report.checks {
                    out.push_str(&format!(
                        "[{}] {}: {}\n",
                        if c.pass { "ok" } else { "FAIL" },
                        c.name,
                        c.detail
                    ));
                }
                out.push_str(&format!(
                    "verified up to n = {}: {}",
                    report.max_n,
                    if report.pass { "all pass" } else { "FAILED" }
                ));
                out
            });
            if !report.pass {
                return Err(Failure::violation("verification failed"));
            }
        }
    }
    Ok(())
}
