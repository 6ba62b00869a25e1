//! `lpmln`: exact inference for LP^MLN and the languages it embeds.
//!
//! Exit codes: 0 success, 1 usage error, 2 parse or validation error, 3 semantic error.

mod pipeline;
mod translate;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use lpmln_core::frontends::plog::plog_validate;
use lpmln_core::selftest::{self, Ctx};
use lpmln_core::stable::{is_stable_model, is_tight, unweighted};
use lpmln_core::textio::{parse_file, parse_query, Dialect, Source};
use lpmln_core::{Error, Limits};

use pipeline::{as_lpmln, ground, Engine, Model, Row};
use translate::{render_alchemy, render_json, render_text, Options, Output, Target};

#[derive(Parser, Debug)]
#[command(name = "lpmln", version, about = "Exact inference for weighted logic programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    caps: Caps,
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Args, Debug)]
struct Caps {
    /// Largest universe enumerated exhaustively.
    #[arg(long, global = true, env = "LPMLN_MAX_ATOMS", value_parser = positive)]
    max_atoms: Option<usize>,
    /// Largest atom set searched in one minimality check.
    #[arg(long, global = true, value_parser = positive)]
    max_subset_atoms: Option<usize>,
    /// Most ground rule instances per program.
    #[arg(long, global = true, value_parser = positive)]
    max_ground: Option<usize>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Args, Debug)]
struct Input {
    file: PathBuf,
    /// Dialect, overriding the `#dialect` header and the extension.
    #[arg(long, value_parser = dialect)]
    dialect: Option<Dialect>,
}

fn dialect(s: &str) -> Result<Dialect, String> {
    Dialect::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = Dialect::ALL.iter().map(|d| d.name()).collect();
        format!("unknown dialect; expected one of {}", names.join(", "))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List interpretations with positive probability, or the full weight table.
    Models {
        #[command(flatten)]
        input: Input,
        /// Every interpretation, with satisfied rules and symbolic weight.
        #[arg(long)]
        list_all: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Engine::Search)]
        engine: Engine,
        /// Decimal places of printed probabilities.
        #[arg(long, default_value_t = 6)]
        digits: usize,
    },
    /// Probability of a ground formula, optionally conditioned on another.
    Query {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        query: String,
        #[arg(long)]
        given: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Engine::Search)]
        engine: Engine,
        #[arg(long, default_value_t = 6)]
        digits: usize,
    },
    /// Print the program in another form.
    Translate {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        to: Target,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
        /// Alchemy-style syntax for MLN targets.
        #[arg(long)]
        alchemy: bool,
        /// Emit the completion of a non-tight program anyway.
        #[arg(long)]
        force: bool,
        /// Use every nonempty atom set instead of the loops (small programs only).
        #[arg(long)]
        all_subsets: bool,
    },
    /// Validate a program and print diagnostics.
    Check {
        #[command(flatten)]
        input: Input,
        /// Also report whether the ground program is tight.
        #[arg(long)]
        tight: bool,
    },
    /// Run the randomized cross-checks between semantics and translations.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cases per property.
        #[arg(long, default_value_t = 200)]
        n: usize,
        /// Only this property.
        #[arg(long)]
        property: Option<String>,
    },
}

/// Errors carry their own exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<std::io::Error> for Failure {
    // A closed pipe (`lpmln ... | head`) ends the run quietly.
    fn from(e: std::io::Error) -> Self {
        match e.kind() {
            std::io::ErrorKind::BrokenPipe => Failure { code: 0, message: String::new() },
            _ => Failure { code: 3, message: e.to_string() },
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_input_error() { 2 } else { 3 },
            message: e.to_string(),
        }
    }
}

fn limits(caps: &Caps) -> Limits {
    let mut l = Limits::default();
    if let Some(n) = caps.max_atoms {
        l.max_atoms = n;
    }
    if let Some(n) = caps.max_subset_atoms {
        l.max_subset_atoms = n;
    }
    if let Some(n) = caps.max_ground {
        l.max_ground = n;
    }
    l
}

macro_rules! outln {
    ($($t:tt)*) => {
        writeln!(std::io::stdout().lock(), $($t)*)?
    };
}

macro_rules! out {
    ($($t:tt)*) => {
        write!(std::io::stdout().lock(), $($t)*)?
    };
}

fn load(input: &Input) -> Result<Source, Failure> {
    Ok(parse_file(&input.file, input.dialect)?)
}

fn show_atoms(atoms: &[lpmln_core::logic::GroundAtom]) -> String {
    let xs: Vec<String> = atoms.iter().map(|a| a.to_string()).collect();
    format!("{{{}}}", xs.join(", "))
}

fn weight_json(w: &lpmln_core::logic::SymbolicWeight) -> serde_json::Value {
    match (w.hard(), w.soft()) {
        (Some(h), Some(s)) => json!({ "hard": h, "soft": s }),
        _ => serde_json::Value::Null,
    }
}

fn print_rows(rows: &[Row], format: Format, digits: usize, full: bool) -> Result<(), Failure> {
    match format {
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|r| {
                    let mut o = json!({
                        "atoms": r.atoms.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                        "prob": r.prob,
                    });
                    if full {
                        o["satisfied"] = json!(r.satisfied);
                        o["weight"] = weight_json(&r.weight);
                    }
                    o
                })
                .collect();
            outln!("{}", serde_json::Value::Array(items));
        }
        Format::Table if full => {
            let cells: Vec<[String; 4]> = rows
                .iter()
                .map(|r| {
                    let sat = match &r.satisfied {
                        Some(ix) => ix.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","),
                        None => "-".into(),
                    };
                    [show_atoms(&r.atoms), sat, r.weight.to_string(), format!("{:.digits$}", r.prob)]
                })
                .collect();
            let head = ["I", "satisfied", "weight", "P"].map(String::from);
            let mut width = head.clone().map(|h| h.len());
            for c in &cells {
                for k in 0..4 {
                    width[k] = width[k].max(c[k].chars().count());
                }
            }
            for row in std::iter::once(&head).chain(&cells) {
                let line: Vec<String> = (0..4).map(|k| format!("{:<w$}", row[k], w = width[k])).collect();
                outln!("{}", line.join("  ").trim_end());
            }
        }
        Format::Table => {
            for r in rows {
                outln!("{}  {:.digits$}", show_atoms(&r.atoms), r.prob);
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let limits = limits(&cli.caps);
    match cli.command {
        Command::Models {
            input,
            list_all,
            format,
            engine,
            digits,
        } => {
            let model = Model::load(&load(&input)?, &limits)?;
            let rows = model.rows(engine, list_all, &limits)?;
            if rows.iter().all(|r| r.prob == 0.0) {
                return Err(Error::NoStableModel.into());
            }
            print_rows(&rows, format, digits, list_all)?;
        }
        Command::Query {
            input,
            query,
            given,
            format,
            engine,
            digits,
        } => {
            let model = Model::load(&load(&input)?, &limits)?;
            let q = parse_query(&query)?;
            let g = given.as_deref().map(parse_query).transpose()?;
            let p = model.query(&q, g.as_ref(), engine, &limits)?;
            match format {
                Format::Table => outln!("P = {p:.digits$}"),
                Format::Json => outln!("{}", json!({ "query": query, "given": given, "prob": p })),
            }
        }
        Command::Translate {
            input,
            to,
            format,
            alchemy,
            force,
            all_subsets,
        } => {
            let src = load(&input)?;
            let t = translate::translate(&src, to, &Options { force, all_subsets }, &limits)?;
            for w in &t.warnings {
                eprintln!("warning: {w}");
            }
            match (&t.output, format, alchemy) {
                (Output::Mln(l), TextFormat::Text, true) => out!("{}", render_alchemy(l)),
                (_, TextFormat::Json, _) => outln!("{}", render_json(&t.output)),
                (_, TextFormat::Text, _) => out!("{}", render_text(&t.output)),
            }
        }
        Command::Check { input, tight } => {
            let src = load(&input)?;
            if let Source::Plog(p) = &src {
                let diags = plog_validate(p, &limits)?;
                if !diags.is_empty() {
                    return Err(Error::Diagnostics(diags).into());
                }
            }
            outln!("ok: {} program", src.dialect());
            if tight {
                let g = ground(&as_lpmln(&src)?, &limits)?;
                if is_tight(g.atom_count(), &unweighted(&g.rules)) {
                    outln!("tight");
                } else {
                    outln!("not tight");
                    return Err(Error::NotTight.into());
                }
            }
        }
        Command::Selftest { seed, n, property } => {
            let ctx = Ctx {
                limits: &limits,
                check: is_stable_model,
            };
            let props: Vec<_> = match &property {
                Some(name) => vec![selftest::property(name).ok_or_else(|| Failure {
                    code: 1,
                    message: format!("unknown property {name}"),
                })?],
                None => selftest::PROPERTIES.iter().collect(),
            };
            let mut failed = 0;
            for p in props {
                let r = selftest::run(p, seed, n, &ctx);
                match &r.failure {
                    None => outln!("ok    {:<18} {} cases, {} skipped", r.property, r.cases, r.skipped),
                    Some(f) => {
                        failed += 1;
                        outln!("FAIL  {:<18} case {}: {}", r.property, f.case, f.message);
                        outln!("% counterexample ({})", p.about);
                        out!("{}", f.counterexample);
                    }
                }
            }
            if failed > 0 {
                return Err(Error::PropertyViolation(format!("{failed} properties failed")).into());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
