use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tilecolor::catalog::{load_tiling, orbit_count, TilingSpec, TILING_NAMES};
use tilecolor::chroma::{coloring_number, enumerate_classes};
use tilecolor::document::{document_from_svg, render_svg, verify, ColoringDocument, Verdict};

const VERIFY_FAILED: u8 = 1;
const UNKNOWN_TILING: u8 = 2;
const NO_COLORING: u8 = 3;
const UNWRITABLE: u8 = 4;
const MALFORMED: u8 = 5;

/// Perfect transitive colorings of the non-regular Archimedean tilings.
#[derive(Parser)]
#[command(name = "tilings", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in tilings.
    List,
    /// Least number of colors of a transitive perfect coloring.
    ColoringNumber { name: String },
    /// One JSON document per inequivalent coloring.
    Enumerate {
        name: String,
        /// Number of colors (default: the coloring number).
        #[arg(short)]
        n: Option<usize>,
    },
    /// Write one coloring as SVG.
    Render {
        name: String,
        /// 1-based position in the `enumerate` output.
        class: usize,
        out: PathBuf,
        #[arg(long, default_value_t = 2)]
        cells: usize,
        #[arg(short)]
        n: Option<usize>,
    },
    /// Recheck a document (or a list of documents) from `enumerate`.
    Verify { path: PathBuf },
}

struct Failure(u8, String);

type CmdResult = Result<(), Failure>;

fn tiling(name: &str) -> Result<TilingSpec, Failure> {
    load_tiling(name).map_err(|e| Failure(UNKNOWN_TILING, e.to_string()))
}

fn documents(spec: &TilingSpec, n: Option<usize>) -> Result<Vec<ColoringDocument>, Failure> {
    let least = coloring_number(spec).map_err(|e| Failure(NO_COLORING, e.to_string()))?;
    let n = n.unwrap_or(least);
    if n < least {
        return Err(Failure(NO_COLORING, format!("{}: n = {n} is below the coloring number {least}", spec.name)));
    }
    let classes = enumerate_classes(spec, n).map_err(|e| Failure(NO_COLORING, e.to_string()))?;
    if classes.is_empty() {
        return Err(Failure(NO_COLORING, format!("{}: no transitive perfect {n}-coloring", spec.name)));
    }
    Ok(classes.iter().map(|c| ColoringDocument::from_scheme(&c.scheme)).collect())
}

fn list() -> CmdResult {
    for name in TILING_NAMES {
        let spec = tiling(name)?;
        println!("{}  {}  {} orbits  roth={}", spec.name, spec.group_name(), orbit_count(&spec), spec.roth_bound);
    }
    Ok(())
}

fn enumerate(name: &str, n: Option<usize>) -> CmdResult {
    let docs = documents(&tiling(name)?, n)?;
    eprintln!("{} classes", docs.len());
    print!("{}", serde_json::to_string_pretty(&docs).expect("documents serialize") + "\n");
    Ok(())
}

fn render(name: &str, class: usize, out: &PathBuf, cells: usize, n: Option<usize>) -> CmdResult {
    if cells == 0 {
        return Err(Failure(NO_COLORING, "--cells must be at least 1".into()));
    }
    let docs = documents(&tiling(name)?, n)?;
    let doc = class
        .checked_sub(1)
        .and_then(|i| docs.get(i))
        .ok_or_else(|| Failure(NO_COLORING, format!("class {class} out of range 1..={}", docs.len())))?;
    let svg = render_svg(doc, cells).map_err(|e| Failure(NO_COLORING, e.to_string()))?;
    fs::write(out, svg).map_err(|e| Failure(UNWRITABLE, format!("{}: {e}", out.display())))
}

fn verify_path(path: &PathBuf) -> CmdResult {
    let text = fs::read_to_string(path).map_err(|e| Failure(MALFORMED, format!("{}: {e}", path.display())))?;
    let docs = if text.trim_start().starts_with('<') {
        vec![document_from_svg(&text).map_err(|e| Failure(MALFORMED, e.to_string()))?]
    } else if text.trim_start().starts_with('[') {
        serde_json::from_str::<Vec<ColoringDocument>>(&text).map_err(|e| Failure(MALFORMED, format!("malformed document: {e}")))?
    } else {
        vec![ColoringDocument::from_json(&text).map_err(|e| Failure(MALFORMED, e.to_string()))?]
    };
    if docs.is_empty() {
        return Err(Failure(MALFORMED, "empty document list".into()));
    }
    for (i, doc) in docs.iter().enumerate() {
        match verify(doc).map_err(|e| Failure(MALFORMED, format!("document {}: {e}", i + 1)))? {
            Verdict::Valid => {}
            Verdict::Invalid(msg) => return Err(Failure(VERIFY_FAILED, format!("document {}: {msg}", i + 1))),
        }
    }
    println!("ok: {} document(s) verified", docs.len());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::List => list(),
        Command::ColoringNumber { name } => tiling(name).and_then(|spec| {
            let n = coloring_number(&spec).map_err(|e| Failure(NO_COLORING, e.to_string()))?;
            println!("{n}");
            Ok(())
        }),
        Command::Enumerate { name, n } => enumerate(name, *n),
        Command::Render { name, class, out, cells, n } => render(name, *class, out, *cells, *n),
        Command::Verify { path } => verify_path(path),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
