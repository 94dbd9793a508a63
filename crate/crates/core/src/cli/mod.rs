//! The `hq` command line: expression syntax, JSON I/O and verification suites.

mod config;
mod expr;
pub mod suites;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

pub use config::{Config, FieldConfig};
pub use expr::{parse_element, render_element, render_scalar, render_tensor, Coeff, ExprAst, ExprTerm};

use crate::error::{Error, Result};
use crate::groupkit::{BetaTower, SemidirectElt};
use crate::halgebra::{self, Window};
use crate::morphisms::{decompose, Morphism, TabulatedMorphism};
use crate::qscalar::Field;
use suites::SuiteParams;

#[derive(Parser, Debug)]
#[command(name = "hq", version, about = "Exact computations in k_q[x, x^-1, y] and its coalgebra automorphisms")]
pub struct Cli {
    /// JSON config file (field mode, default window, depth, seed).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Work numerically with q fixed to this rational (overrides the config).
    #[arg(long, global = true, allow_hyphen_values = true)]
    q: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and normalize an element.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Product of two elements.
    Mul {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Coproduct of an element.
    Delta {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Counit of an element.
    Counit {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Antipode of an element.
    Antipode {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Basis of the (x^m, 1)-primitive elements within a window.
    Primitives {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Operations on morphisms given as JSON (inline or @file).
    #[command(subcommand)]
    Morph(MorphCommand),
    /// Operations on the groups G_i and (k^x)^Z x| Z.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Run a verification suite; exit status 0 iff it passes.
    Verify {
        suite: String,
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        /// Randomized draws per family.
        #[arg(long, default_value_t = 5)]
        draws: usize,
        #[arg(long)]
        depth: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct MorphArg {
    /// Morphism JSON ({"word": [...]}) or tabulated morphism JSON.
    #[arg(long)]
    morph: String,
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
}

#[derive(Subcommand, Debug)]
enum MorphCommand {
    Apply {
        #[command(flatten)]
        m: MorphArg,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Compose the given words; the first is applied last.
    Compose {
        #[arg(long, required = true)]
        morph: Vec<String>,
    },
    Tabulate {
        #[command(flatten)]
        m: MorphArg,
    },
    Invert {
        #[command(flatten)]
        m: MorphArg,
    },
    Decompose {
        #[command(flatten)]
        m: MorphArg,
        #[arg(long)]
        depth: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum GroupCommand {
    Mul {
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Use the closed forms for levels 2 and 3.
        #[arg(long)]
        closed: bool,
    },
    Act {
        #[arg(long)]
        elt: String,
        #[arg(long)]
        tower: String,
    },
}

struct Ctx {
    field: Field,
    config: Config,
    json: bool,
}

impl Ctx {
    fn window(&self, flag: &Option<String>) -> Result<Window> {
        flag.as_deref().map_or(Ok(self.config.window), Window::parse)
    }

    fn parse(&self, text: &str) -> Result<halgebra::Element> {
        parse_element(text, &self.field)
    }
}

/// Inline JSON, or the contents of a file for `@path`.
fn read_json<T: DeserializeOwned>(arg: &str) -> Result<T> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)?,
        None => arg.to_string(),
    };
    Ok(serde_json::from_str(&text)?)
}

enum AnyMorph {
    Word(Morphism),
    Table(TabulatedMorphism),
}

fn read_morph(arg: &str) -> Result<AnyMorph> {
    let v: Value = read_json(arg)?;
    if v.get("word").is_some() {
        Ok(AnyMorph::Word(serde_json::from_value(v)?))
    } else {
        Ok(AnyMorph::Table(serde_json::from_value(v)?))
    }
}

fn table_of(ctx: &Ctx, m: &MorphArg) -> Result<TabulatedMorphism> {
    match read_morph(&m.morph)? {
        AnyMorph::Word(w) => Ok(w.tabulate(&ctx.field, &ctx.window(&m.window)?)),
        AnyMorph::Table(t) => match &m.window {
            Some(w) => t.restrict(&Window::parse(w)?),
            None => Ok(t),
        },
    }
}

fn table_text(t: &TabulatedMorphism) -> String {
    t.entries()
        .map(|(mono, img)| format!("{mono} -> {}", render_element(img)))
        .collect::<Vec<_>>()
        .join("\n")
}

fn tower_text(t: &BetaTower) -> String {
    t.levels()
        .iter()
        .enumerate()
        .map(|(i, b)| format!("level {}: {b}", i + 1))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Print a line; a closed stdout (e.g. `| head`) is not an error.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

/// Entry point of the `hq` binary.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Run a parsed command line, printing its output. Returns whether the
/// command succeeded (only `verify` can report failure without an error).
pub fn execute(cli: Cli) -> Result<bool> {
    let mut config = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    if let Some(q) = &cli.q {
        config.field = FieldConfig::Numeric { q: q.clone() };
    }
    let ctx = Ctx {
        field: config.field.build()?,
        config,
        json: cli.json,
    };
    let f = &ctx.field;
    let (text, value): (String, Value) = match &cli.command {
        Command::Eval { expr } => {
            let e = ctx.parse(expr)?;
            (render_element(&e), e.to_json())
        }
        Command::Mul { left, right } => {
            let e = halgebra::multiply(f, &ctx.parse(left)?, &ctx.parse(right)?);
            (render_element(&e), e.to_json())
        }
        Command::Delta { expr } => {
            let t = halgebra::comultiply(f, &ctx.parse(expr)?);
            (render_tensor(&t), t.to_json())
        }
        Command::Counit { expr } => {
            let c = halgebra::counit(&ctx.parse(expr)?);
            (render_scalar(&c), c.to_json())
        }
        Command::Antipode { expr } => {
            let e = halgebra::antipode(f, &ctx.parse(expr)?);
            (render_element(&e), e.to_json())
        }
        Command::Primitives { m, window } => {
            let basis = halgebra::primitive_space(f, *m, &ctx.window(window)?)?;
            (
                basis.iter().map(render_element).collect::<Vec<_>>().join("\n"),
                json!({ "m": m, "basis": basis.iter().map(|e| e.to_json()).collect::<Vec<_>>() }),
            )
        }
        Command::Morph(cmd) => morph(&ctx, cmd)?,
        Command::Group(cmd) => group(&ctx, cmd)?,
        Command::Verify {
            suite,
            window,
            seed,
            draws,
            depth,
        } => {
            let params = SuiteParams {
                window: ctx.window(window)?,
                seed: seed.unwrap_or(ctx.config.seed),
                draws: *draws,
                depth: depth.unwrap_or(ctx.config.depth),
            };
            let reports = suites::run_suite(f, suite, &params)?;
            let passed = reports.iter().all(|r| r.passed);
            if ctx.json {
                emit(&serde_json::to_string_pretty(&json!({ "passed": passed, "suites": reports }))?);
            } else if !passed {
                let failing: Vec<Value> = reports
                    .iter()
                    .filter(|r| !r.passed)
                    .map(|r| json!({ "suite": r.suite, "failures": r.failures().collect::<Vec<_>>() }))
                    .collect();
                emit(&serde_json::to_string_pretty(&json!({ "passed": false, "suites": failing }))?);
            } else {
                for r in &reports {
                    emit(&format!("{}: {} cases passed", r.suite, r.cases.len()));
                }
            }
            return Ok(passed);
        }
    };
    if ctx.json {
        emit(&serde_json::to_string_pretty(&value)?);
    } else {
        emit(&text);
    }
    Ok(true)
}

fn morph(ctx: &Ctx, cmd: &MorphCommand) -> Result<(String, Value)> {
    let f = &ctx.field;
    Ok(match cmd {
        MorphCommand::Apply { m, expr } => {
            let e = ctx.parse(expr)?;
            let img = match read_morph(&m.morph)? {
                AnyMorph::Word(w) => w.apply(f, &e),
                AnyMorph::Table(t) => t.apply(&e)?,
            };
            (render_element(&img), img.to_json())
        }
        MorphCommand::Compose { morph } => {
            let mut acc = Morphism::identity();
            for m in morph {
                acc = acc.compose(&read_json::<Morphism>(m)?);
            }
            (acc.to_string(), serde_json::to_value(&acc)?)
        }
        MorphCommand::Tabulate { m } => {
            let t = table_of(ctx, m)?;
            (table_text(&t), t.to_json())
        }
        MorphCommand::Invert { m } => {
            let t = table_of(ctx, m)?.invert()?;
            (format!("window {}\n{}", t.window(), table_text(&t)), t.to_json())
        }
        MorphCommand::Decompose { m, depth } => {
            let t = table_of(ctx, m)?;
            let depth = depth.unwrap_or(ctx.config.depth.min(t.window().m_max as usize));
            let d = decompose(f, &t, depth)?;
            (
                format!("r = {}\nalpha = {}\n{}", d.r, d.alpha, tower_text(&d.tower)),
                serde_json::to_value(&d)?,
            )
        }
    })
}

fn group(ctx: &Ctx, cmd: &GroupCommand) -> Result<(String, Value)> {
    let f = &ctx.field;
    Ok(match cmd {
        GroupCommand::Mul {
            depth,
            left,
            right,
            closed,
        } => {
            if *depth == 0 {
                return Err(Error::InvalidArgument("depth must be >= 1".into()));
            }
            let b: BetaTower = read_json(left)?;
            let c: BetaTower = read_json(right)?;
            let (b, c) = (b.pad(*depth).truncate(*depth)?, c.pad(*depth).truncate(*depth)?);
            let mut prod = b.g_mul(f, &c)?;
            if *closed {
                let mut levels = prod.levels().to_vec();
                for level in 2..=(*depth).min(3) {
                    levels[level - 1] = b.g_mul_closed(f, level, &c)?;
                }
                prod = BetaTower::new(levels)?;
            }
            (tower_text(&prod), serde_json::to_value(&prod)?)
        }
        GroupCommand::Act { elt, tower } => {
            let a: SemidirectElt = read_json(elt)?;
            let t: BetaTower = read_json(tower)?;
            let out = a.act(&t);
            (tower_text(&out), serde_json::to_value(&out)?)
        }
    })
}
