//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on a domain error, 2 on a usage or parse
//! error. Domain errors print their error name first on stderr.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::groups::perm::order;
use crate::groups::{fricke_test, lambda_kernel, load_catalog, quotient_group, CatalogId, MoonshineSymbol};
use crate::harmonics::{audit, known_counterexamples, mismatch_set, reconstruct_classes, Heights};
use crate::lattice::{canonicalize, hyper_distance, p_neighbors, LatticeClass, Matrix};
use crate::pictures::{
    build_picture, classify_local, local_neighborhood, render, roots_table, stats, ExportFormat, Mode,
};
use crate::structures::{serpent, snake, spine, thread, Picture};
use crate::words::{normalize, PrimeOperator};

#[derive(Debug, Parser)]
#[command(
    name = "bigpic",
    version,
    about = "Threads, snakes, serpents and moonshine pictures"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lattice class operations.
    Class {
        #[command(subcommand)]
        op: ClassOp,
    },
    /// Hyper-distance between two classes.
    Dist {
        #[arg(allow_hyphen_values = true)]
        x: LatticeClass,
        #[arg(allow_hyphen_values = true)]
        y: LatticeClass,
    },
    /// The p + 1 classes at hyper-distance p.
    Neighbors { x: LatticeClass, p: u64 },
    /// Classes of the (n|h)-thread.
    Thread { n: u64, h: u64 },
    /// Classes of the N-snake.
    Snake {
        #[arg(value_name = "N")]
        big_n: u64,
    },
    /// Classes of the (n|h)-serpent.
    Serpent { n: u64, h: u64 },
    /// The spine of the N-snake.
    Spine {
        #[arg(value_name = "N")]
        big_n: u64,
    },
    /// Prime operator words.
    Word {
        #[command(subcommand)]
        op: WordOp,
    },
    /// Moonshine symbols.
    Symbol {
        #[command(subcommand)]
        op: SymbolOp,
    },
    /// The quotient group acting on the serpent of a symbol.
    Group { symbol: MoonshineSymbol },
    /// Kernel and index of the character on the quotient group.
    Kernel { symbol: MoonshineSymbol },
    /// Moonshine pictures of a catalog.
    Picture(PictureArgs),
    /// Thread predictions from anchor classes.
    Harmonics(HarmonicsArgs),
}

#[derive(Debug, Subcommand)]
pub enum ClassOp {
    /// Canonical class of a matrix `a,b;c,d` with rational entries.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        matrix: Matrix,
    },
}

#[derive(Debug, Subcommand)]
pub enum WordOp {
    /// Normal form of a word of tokens `p_i`.
    Normalize {
        #[arg(required = true, num_args = 1..)]
        tokens: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SymbolOp {
    /// Parse and print the normalized symbol.
    Parse { text: String },
}

#[derive(Debug, Args)]
pub struct PictureArgs {
    #[arg(long)]
    pub catalog: CatalogId,
    #[arg(long, default_value = "serpent")]
    pub mode: Mode,
    #[arg(long)]
    pub stats: bool,
    #[arg(long)]
    pub roots: bool,
    /// Restrict to the local structure around the number class C.
    #[arg(long, value_name = "C")]
    pub local: Option<u64>,
    #[arg(long, value_name = "FORMAT")]
    pub export: Option<ExportFormat>,
    /// Output file for --export; stdout when absent.
    #[arg(long, requires = "export")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HarmonicsArgs {
    #[arg(long, default_value = "monster")]
    pub catalog: CatalogId,
    #[arg(long, conflicts_with = "reconstruct")]
    pub audit: bool,
    #[arg(long)]
    pub reconstruct: bool,
    #[arg(long, default_value = "serpent", requires = "reconstruct")]
    pub mode: Mode,
    /// Use the corrected thread heights instead of the predicted ones.
    #[arg(long, requires = "reconstruct")]
    pub corrected: bool,
    /// Print classes missing from or extra to the reference picture.
    #[arg(long, requires = "reconstruct")]
    pub diff: bool,
}

/// A failure reported with exit code 1.
#[derive(Debug)]
pub struct DomainError(String);

impl<E: Display> From<E> for DomainError {
    fn from(e: E) -> Self {
        DomainError(e.to_string())
    }
}

type Outcome = Result<i32, DomainError>;

/// Parse `argv` (program name first) and run, writing to the process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(DomainError(msg)) => {
            let _ = writeln!(err, "{msg}");
            1
        }
    }
}

fn lines<T: Display>(out: &mut dyn Write, items: impl IntoIterator<Item = T>) -> Outcome {
    for x in items {
        writeln!(out, "{x}")?;
    }
    Ok(0)
}

fn join<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    let v: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    if v.is_empty() {
        "-".into()
    } else {
        v.join(",")
    }
}

fn usage(err: &mut dyn Write, msg: impl Display) -> i32 {
    let _ = writeln!(err, "error: {msg}");
    2
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Class {
            op: ClassOp::Normalize { matrix },
        } => {
            writeln!(out, "{}", canonicalize(&matrix)?)?;
            Ok(0)
        }
        Command::Dist { x, y } => {
            writeln!(out, "{}", hyper_distance(&x, &y))?;
            Ok(0)
        }
        Command::Neighbors { x, p } => lines(out, p_neighbors(&x, p)?),
        Command::Thread { n, h } => lines(out, thread(n, h)?.classes),
        Command::Snake { big_n } => lines(out, snake(big_n).classes),
        Command::Serpent { n, h } => lines(out, serpent(n, h)?.classes),
        Command::Spine { big_n } => lines(out, spine(big_n).classes),
        Command::Word {
            op: WordOp::Normalize { tokens },
        } => word_normalize(&tokens, out, err),
        Command::Symbol {
            op: SymbolOp::Parse { text },
        } => symbol_parse(&text, out, err),
        Command::Group { symbol } => group(&symbol, out),
        Command::Kernel { symbol } => kernel(&symbol, out),
        Command::Picture(args) => picture(args, out),
        Command::Harmonics(args) => harmonics(args, out, err),
    }
}

fn word_normalize(tokens: &[String], out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let mut word = Vec::new();
    for t in tokens.iter().flat_map(|t| t.split_whitespace()) {
        match t.parse::<PrimeOperator>() {
            Ok(op) => word.push(op),
            Err(e) => return Ok(usage(err, e)),
        }
    }
    let nf = normalize(&word);
    writeln!(out, "{nf}")?;
    writeln!(out, "class: {}", nf.to_class())?;
    Ok(0)
}

fn symbol_parse(text: &str, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let s: MoonshineSymbol = match text.parse() {
        Ok(s) => s,
        Err(e) => return Ok(usage(err, e)),
    };
    writeln!(out, "symbol: {s}")?;
    writeln!(out, "n: {}", s.n)?;
    writeln!(out, "h: {}", s.h)?;
    writeln!(out, "N: {}", s.big_n())?;
    writeln!(out, "atkin_lehner: {}", join(&s.divisors))?;
    Ok(0)
}

fn group(s: &MoonshineSymbol, out: &mut dyn Write) -> Outcome {
    let q = quotient_group(s)?;
    let g = &q.group;
    writeln!(out, "symbol: {s}")?;
    writeln!(out, "serpent: {}", g.ground.len())?;
    writeln!(out, "order: {}", g.order())?;
    for (name, p) in &g.generators {
        writeln!(out, "order({name}): {}", order(p))?;
    }
    for (e, p) in &q.atkin_lehner {
        writeln!(out, "order(w_{e}): {}", order(p))?;
    }
    Ok(0)
}

fn kernel(s: &MoonshineSymbol, out: &mut dyn Write) -> Outcome {
    let k = lambda_kernel(s)?;
    writeln!(out, "symbol: {s}")?;
    writeln!(out, "order: {}", k.quotient.group.order())?;
    writeln!(out, "kernel: {}", k.kernel.order())?;
    writeln!(out, "index: {}", k.index)?;
    writeln!(out, "fricke: {}", if fricke_test(s) { "yes" } else { "no" })?;
    Ok(0)
}

fn print_stats(p: &Picture, out: &mut dyn Write) -> Outcome {
    let st = stats(p);
    writeln!(out, "vertices: {}", st.vertices)?;
    writeln!(out, "number_classes: {}", st.number_classes)?;
    writeln!(out, "edges: {}", st.edges)?;
    for (h, count) in &st.per_h {
        writeln!(out, "h={h}: {count}")?;
    }
    Ok(0)
}

fn picture(args: PictureArgs, out: &mut dyn Write) -> Outcome {
    let cat = load_catalog(args.catalog)?;
    let mut pic = build_picture(&cat, args.mode);
    if let Some(c) = args.local {
        let t = classify_local(c, &pic)?;
        writeln!(out, "center: {c}")?;
        writeln!(out, "roots: {}", join(&t.roots))?;
        writeln!(out, "template: {:?}", t.template)?;
        pic = local_neighborhood(c, &pic)?;
    }
    let listing = !(args.stats || args.roots || args.export.is_some());
    if args.stats || listing {
        print_stats(&pic, out)?;
    }
    if args.roots {
        let other = match args.mode {
            Mode::Serpent => Mode::Snake,
            Mode::Snake => Mode::Serpent,
        };
        let full = build_picture(&cat, other);
        let (plain, extended) = match args.mode {
            Mode::Serpent => (&pic, &full),
            Mode::Snake => (&full, &pic),
        };
        write!(out, "{}", roots_table(plain, extended))?;
    }
    if let Some(fmt) = args.export {
        let text = render(&pic, fmt);
        match &args.out {
            Some(path) => std::fs::write(path, text)
                .map_err(|e| DomainError(format!("ExportError: {}: {e}", path.display())))?,
            None => out.write_all(text.as_bytes())?,
        }
    }
    Ok(0)
}

fn harmonics(args: HarmonicsArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let cat = load_catalog(args.catalog)?;
    if args.reconstruct {
        let heights = if args.corrected {
            Heights::Corrected
        } else {
            Heights::Predicted
        };
        let got = reconstruct_classes(&cat, args.mode, heights)?;
        let want = build_picture(&cat, args.mode).vertices;
        writeln!(out, "reconstructed: {}", got.len())?;
        writeln!(out, "reference: {}", want.len())?;
        if !args.diff {
            return Ok(0);
        }
        let missing: BTreeSet<&LatticeClass> = want.difference(&got).collect();
        let extra: BTreeSet<&LatticeClass> = got.difference(&want).collect();
        writeln!(out, "missing: {}", join(&missing))?;
        writeln!(out, "extra: {}", join(&extra))?;
        return Ok(if missing.is_empty() && extra.is_empty() {
            0
        } else {
            1
        });
    }
    if !args.audit {
        return Ok(usage(err, "harmonics needs --audit or --reconstruct"));
    }
    let rows = audit(&cat)?;
    writeln!(out, "class\tsymbol\tanchor\tpredicted\ttable\tactual")?;
    for r in &rows {
        writeln!(
            out,
            "{}\t{}\t{}\t({}|{})\t{}\t{}{}",
            r.class_name,
            r.symbol,
            r.anchor,
            r.predicted.0,
            r.predicted.1,
            r.procedure,
            r.expected,
            if r.mismatch { "\t!" } else { "" }
        )?;
    }
    let got = mismatch_set(&rows);
    let want = known_counterexamples(args.catalog);
    writeln!(out, "mismatches: {}", join(&got))?;
    writeln!(out, "expected: {}", join(&want))?;
    writeln!(out, "unexpected: {}", join(got.difference(&want)))?;
    writeln!(out, "missed: {}", join(want.difference(&got)))?;
    Ok(if got == want { 0 } else { 1 })
}
