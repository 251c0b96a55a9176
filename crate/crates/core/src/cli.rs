//! The `hexprism` command line.
//!
//! Exit status: 0 on success, 1 when a design fails verification or does not
//! exist, 2 on usage, parse or I/O errors, 3 when a search runs out of budget.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::catalog::{self, CatalogKey};
use crate::construct::{construct, ConstructError};
use crate::feasibility::classify;
use crate::format::{emit_design, parse_design, render_text};
use crate::graph::{Design, DesignKind, Edge, Host};
use crate::search::{
    confirm_nonexistence, find_extremal, search_multidecomposition, BlockTypes, ExtremalKind,
    SearchConfig, SearchOutcome, SearchResult, SearchStats,
};
use crate::verify::verify_design;

macro_rules! out {
    ($($arg:tt)*) => {{
        let _ = write!(std::io::stdout().lock(), $($arg)*);
    }};
}

macro_rules! outln {
    ($($arg:tt)*) => {{
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "hexprism",
    version,
    about = "Hexagon/prism designs on complete graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Decomposition,
    Packing,
    Covering,
}

impl Kind {
    fn design_kind(self) -> DesignKind {
        match self {
            Kind::Decomposition => DesignKind::Decomposition,
            Kind::Packing => DesignKind::Packing,
            Kind::Covering => DesignKind::Covering,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Blocks {
    Hexagon,
    Prism,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a decomposition, maximum packing or minimum covering of K_n.
    Construct {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "decomposition")]
        kind: Kind,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a design file.
    Verify {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Report existence and extremal leave/padding sizes for K_n.
    Classify {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exhaustive search on K_n or another host.
    Search {
        /// Shorthand for `--host complete:N`.
        #[arg(long, conflicts_with = "host")]
        n: Option<u32>,
        /// `complete:N`, `bipartite:MxN` or `explicit:a-b,c-d,...`.
        #[arg(long)]
        host: Option<String>,
        /// Look for a packing or covering with `--bound` leave/padding edges.
        #[arg(long, value_enum, default_value = "decomposition")]
        kind: Kind,
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long, value_enum, default_value = "both")]
        blocks: Blocks,
        /// Exact block counts `x,y` (hexagons, prisms).
        #[arg(long, value_parser = parse_targets)]
        targets: Option<(u64, u64)>,
        #[arg(long)]
        budget: Option<u64>,
        /// Disable the root symmetry reduction on complete hosts.
        #[arg(long)]
        no_symmetry: bool,
        /// Run the two-branch nonexistence certificate (orders 7, 9, 10).
        #[arg(long, requires = "n")]
        certify: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List bundled designs, or export one or all of them.
    Catalog {
        /// Entry name such as `packing-17` or `bipartite-6x4`.
        #[arg(long)]
        key: Option<String>,
        /// Write every entry as `<name>.json` into this directory.
        #[arg(long, conflicts_with = "key")]
        export: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            EXIT_USAGE
        }
    }
}

type Outcome = Result<i32, String>;

fn execute(command: Command) -> Outcome {
    match command {
        Command::Construct {
            n,
            kind,
            format,
            output,
        } => cmd_construct(n, kind.design_kind(), format, output),
        Command::Verify { input, format } => cmd_verify(&input, format),
        Command::Classify { n, format } => cmd_classify(n, format),
        Command::Search {
            n,
            host,
            kind,
            bound,
            blocks,
            targets,
            budget,
            no_symmetry,
            certify,
            format,
            output,
        } => {
            if certify {
                return cmd_certify(n.expect("clap enforces --n"), format);
            }
            let host = match (n, host) {
                (Some(n), _) => Host::Complete(n),
                (None, Some(spec)) => parse_host(&spec)?,
                (None, None) => return Err("search needs --n or --host".into()),
            };
            let mut cfg = match blocks {
                Blocks::Both => SearchConfig::default(),
                Blocks::Hexagon => SearchConfig::only(BlockTypes::Hexagon),
                Blocks::Prism => SearchConfig::only(BlockTypes::Prism),
            };
            cfg.targets = targets;
            cfg.budget = budget;
            cfg.symmetry_breaking = !no_symmetry;
            cmd_search(&host, kind, bound, &cfg, format, output)
        }
        Command::Catalog {
            key,
            export,
            format,
            output,
        } => cmd_catalog(key, export, format, output),
    }
}

fn write_out(output: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                Err(format!("cannot write to stdout: {e}"))
            }
            _ => Ok(()),
        },
    }
}

fn render(d: &Design, format: Format) -> String {
    match format {
        Format::Json => emit_design(d),
        Format::Text => render_text(d),
    }
}

fn cmd_construct(n: u32, kind: DesignKind, format: Format, output: Option<PathBuf>) -> Outcome {
    let d = match construct(n, kind) {
        Ok(d) => d,
        Err(ConstructError::Infeasible(report)) => {
            eprintln!("K_{n} admits no decomposition");
            out!("{report}");
            return Ok(EXIT_FAILURE);
        }
        Err(e) => return Err(e.to_string()),
    };
    let report = verify_design(&d);
    if !report.valid {
        eprint!("constructed design failed verification:\n{report}");
        return Ok(EXIT_FAILURE);
    }
    write_out(&output, &render(&d, format))?;
    if let Some(path) = &output {
        let (x, y) = d.block_counts();
        outln!(
            "wrote {} of K_{n} ({x} hexagons, {y} prisms, leave {}, padding {}) to {}",
            d.kind,
            d.leave.len(),
            d.padding.len(),
            path.display()
        );
    }
    Ok(EXIT_OK)
}

fn show<T: Serialize + fmt::Display>(value: &T, format: Format) {
    match format {
        Format::Json => outln!(
            "{}",
            serde_json::to_string_pretty(value).expect("serializes")
        ),
        Format::Text => out!("{value}"),
    }
}

fn cmd_verify(input: &PathBuf, format: Format) -> Outcome {
    let text =
        fs::read_to_string(input).map_err(|e| format!("cannot read {}: {e}", input.display()))?;
    let d = parse_design(&text).map_err(|e| format!("{}: {e}", input.display()))?;
    let report = verify_design(&d);
    show(&report, format);
    Ok(if report.valid { EXIT_OK } else { EXIT_FAILURE })
}

fn cmd_classify(n: u32, format: Format) -> Outcome {
    let report = classify(n).map_err(|e| e.to_string())?;
    show(&report, format);
    Ok(EXIT_OK)
}

fn cmd_certify(n: u32, format: Format) -> Outcome {
    let report = confirm_nonexistence(n).map_err(|e| e.to_string())?;
    show(&report, format);
    Ok(if report.nonexistent {
        EXIT_FAILURE
    } else {
        EXIT_OK
    })
}

fn cmd_search(
    host: &Host,
    kind: Kind,
    bound: Option<u64>,
    cfg: &SearchConfig,
    format: Format,
    output: Option<PathBuf>,
) -> Outcome {
    let outcome = match (kind, bound) {
        (Kind::Decomposition, None) => search_multidecomposition(host, cfg),
        (Kind::Decomposition, Some(_)) => {
            return Err("--bound applies to --kind packing or covering".into())
        }
        (_, None) => return Err("--kind packing/covering needs --bound".into()),
        (Kind::Packing, Some(b)) => find_extremal(host, ExtremalKind::Packing, b, cfg),
        (Kind::Covering, Some(b)) => find_extremal(host, ExtremalKind::Covering, b, cfg),
    }
    .map_err(|e| e.to_string())?;
    report_search(&outcome, format, output)
}

#[derive(Serialize)]
struct SearchReport {
    result: &'static str,
    stats: SearchStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    design: Option<serde_json::Value>,
}

fn report_search(outcome: &SearchOutcome, format: Format, output: Option<PathBuf>) -> Outcome {
    let code = match outcome.result {
        SearchResult::Found(_) => EXIT_OK,
        SearchResult::ExhaustedNone => EXIT_FAILURE,
        SearchResult::BudgetExceeded => EXIT_INCONCLUSIVE,
    };
    match format {
        Format::Text => outln!("{outcome}"),
        Format::Json => {
            let design = match (outcome.found(), &output) {
                (Some(d), None) => {
                    Some(serde_json::from_str(&emit_design(d)).expect("emitted JSON parses"))
                }
                _ => None,
            };
            let value = SearchReport {
                result: outcome.label(),
                stats: outcome.stats,
                design,
            };
            outln!(
                "{}",
                serde_json::to_string_pretty(&value).expect("serializes")
            );
        }
    }
    if let Some(d) = outcome.found() {
        match (&output, format) {
            (Some(_), _) => write_out(&output, &emit_design(d))?,
            (None, Format::Text) => out!("{}", render_text(d)),
            (None, Format::Json) => {}
        }
    }
    Ok(code)
}

fn cmd_catalog(
    key: Option<String>,
    export: Option<PathBuf>,
    format: Format,
    output: Option<PathBuf>,
) -> Outcome {
    if let Some(dir) = export {
        fs::create_dir_all(&dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
        for key in catalog::keys() {
            let d = catalog::get(key).map_err(|e| e.to_string())?;
            let path = dir.join(format!("{key}.json"));
            fs::write(&path, emit_design(d))
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        }
        outln!(
            "exported {} designs to {}",
            catalog::keys().len(),
            dir.display()
        );
        return Ok(EXIT_OK);
    }
    let Some(name) = key else {
        for key in catalog::keys() {
            let d = catalog::get(key).map_err(|e| e.to_string())?;
            let (x, y) = d.block_counts();
            outln!(
                "{:<28} {:>3} hexagons {:>3} prisms  leave {}  padding {}",
                key.to_string(),
                x,
                y,
                d.leave.len(),
                d.padding.len()
            );
        }
        return Ok(EXIT_OK);
    };
    let key = CatalogKey::parse(&name).ok_or_else(|| format!("unknown catalog entry {name:?}"))?;
    let d = catalog::get(key).map_err(|e| e.to_string())?;
    write_out(&output, &render(d, format))?;
    Ok(EXIT_OK)
}

fn parse_targets(s: &str) -> Result<(u64, u64), String> {
    let bad = || format!("bad targets {s:?}; expected x,y");
    let (x, y) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        x.trim().parse().map_err(|_| bad())?,
        y.trim().parse().map_err(|_| bad())?,
    ))
}

/// Parses `complete:N`, `bipartite:MxN` (sides `0..M` and `M..M+N`) or
/// `explicit:a-b,c-d,...`.
pub fn parse_host(spec: &str) -> Result<Host, String> {
    let bad =
        || format!("bad host {spec:?}; expected complete:N, bipartite:MxN or explicit:a-b,...");
    let (kind, rest) = spec.split_once(':').ok_or_else(bad)?;
    match kind {
        "complete" => Ok(Host::Complete(rest.parse().map_err(|_| bad())?)),
        "bipartite" => {
            let (m, n) = rest.split_once('x').ok_or_else(bad)?;
            let m: u32 = m.parse().map_err(|_| bad())?;
            let n: u32 = n.parse().map_err(|_| bad())?;
            Ok(Host::bipartite(0..m, m..m + n))
        }
        "explicit" => {
            let edges = rest
                .split(',')
                .map(|pair| {
                    let (a, b) = pair.split_once('-').ok_or_else(bad)?;
                    let a = a.trim().parse().map_err(|_| bad())?;
                    let b = b.trim().parse().map_err(|_| bad())?;
                    Edge::new(a, b).map_err(|e| e.to_string())
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Host::Explicit(edges))
        }
        _ => Err(bad()),
    }
}
