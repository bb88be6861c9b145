//! `piano-cat`: enumerate limit generators and dissections, build quivers,
//! tabulate morphism dimensions, run verifiers and render figures.
//!
//! Exit codes: 0 on success, 1 when a verifier finds a failure, 2 for usage
//! and input errors.

mod suites;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use piano_core::cyclic_geometry::{Arc, ArcSet};
use piano_core::derived_equivalence::InitialChoice;
use piano_core::endomorphism_rings::ChiAlgebra;
use piano_core::generators::{enumerate_limit_generators_capped, fan_generator, DEFAULT_CAP};
use piano_core::hom_calculus::HomDegreeTable;
use piano_core::quiver_algebras::keyboard_from_extended;
use piano_core::render::{render_arc_diagram, render_dissection, render_quiver, FigureKind, Format};
use piano_core::surface_dissections::{enumerate_extended_dissections, epsilon, DissectionSet};
use serde_json::json;

use suites::{Settings, Which};

#[derive(Parser)]
#[command(name = "piano-cat", version, about = "Limit generators, extended dissections and piano algebras")]
struct Cli {
    /// Degree window D: statements for all degrees are checked on [-D, D].
    #[arg(long, global = true, env = "PIANO_CAT_WINDOW", default_value_t = 6,
          value_parser = clap::value_parser!(i64).range(2..))]
    window: i64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Objects {
    Generators,
    Dissections,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DataFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum QuiverFormat {
    Json,
    Dot,
    Tikz,
}

#[derive(Subcommand)]
enum Command {
    /// List all limit generators or extended dissections of size n.
    Enumerate {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// One representative per rotation class.
        #[arg(long)]
        equiv: bool,
        #[arg(long, value_enum, default_value = "generators")]
        objects: Objects,
        #[arg(long, value_enum, default_value = "json")]
        format: DataFormat,
        /// Draw each record instead of listing it (svg or tikz).
        #[arg(long)]
        render: Option<String>,
        /// Write one file per record here instead of stdout when rendering.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Keyboard and piano quiver of an extended dissection or limit generator file.
    Quiver {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: QuiverFormat,
    },
    /// Morphism dimensions per degree between two arcs, or the matrix algebra of a generator.
    Homtable {
        /// Source arc, e.g. "{a0, m1(3)}".
        #[arg(long, requires = "target")]
        source: Option<String>,
        #[arg(long, requires = "source")]
        target: Option<String>,
        /// Generator file; dumps its degreewise dimension matrices.
        #[arg(long, conflicts_with_all = ["source", "fan"])]
        generator: Option<PathBuf>,
        /// Use the fan generator of this size.
        #[arg(long, conflicts_with = "source")]
        fan: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: DataFormat,
    },
    /// Run a verifier over every instance of size n.
    Verify {
        #[arg(value_enum)]
        which: Which,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Initial choice of the signed matrix, e.g. beta:5 or delta:1.
        #[arg(long)]
        choice: Option<String>,
        /// Longest word for the rewriting checks.
        #[arg(long, default_value_t = 8)]
        len: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Draw a generator, dissection or keyboard quiver from a JSON file.
    Render {
        #[arg(long)]
        input: PathBuf,
        /// arc-diagram, dissection or quiver
        #[arg(long)]
        kind: String,
        /// svg, tikz or dot
        #[arg(long, default_value = "svg")]
        format: String,
    },
}

enum Outcome {
    Ok(String),
    Failed(String),
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// A dissection file, or a generator file turned into its dissection.
fn read_dissection(path: &Path) -> Result<DissectionSet> {
    let value: serde_json::Value = read_json(path)?;
    if value.get("arcs").is_some() {
        let g: ArcSet = serde_json::from_value(value).with_context(|| format!("parsing {}", path.display()))?;
        return Ok(epsilon(&g)?);
    }
    serde_json::from_value(value).with_context(|| format!("parsing {}", path.display()))
}

fn quote_csv(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

fn enumerate(
    n: usize,
    equiv: bool,
    objects: Objects,
    format: DataFormat,
    render: Option<Format>,
    out_dir: Option<&Path>,
    cap: usize,
) -> Result<String> {
    if n > cap {
        bail!(piano_core::Error::CapExceeded { n, cap });
    }
    let (records, drawings): (Vec<serde_json::Value>, Vec<String>) = match objects {
        Objects::Generators => {
            let gens = enumerate_limit_generators_capped(n, equiv, cap)?;
            let drawings = match render {
                Some(f) => gens.iter().map(|g| render_arc_diagram(g, f)).collect::<Result<_, _>>()?,
                None => vec![],
            };
            (gens.iter().map(|g| json!(g)).collect(), drawings)
        }
        Objects::Dissections => {
            let mut ds = enumerate_extended_dissections(n);
            if equiv {
                let mut reps: Vec<DissectionSet> = ds
                    .iter()
                    .map(|d| (0..n).map(|r| d.rotate(r).canonical()).min_by_key(|x| (x.red.clone(), x.binding.clone())).unwrap())
                    .collect();
                reps.sort_by_key(|x| (x.red.clone(), x.binding.clone()));
                reps.dedup();
                ds = reps;
            }
            let drawings = match render {
                Some(f) => ds.iter().map(|d| render_dissection(d, f)).collect::<Result<_, _>>()?,
                None => vec![],
            };
            (ds.iter().map(|d| json!(d)).collect(), drawings)
        }
    };
    if render.is_some() {
        let ext = if matches!(render, Some(Format::Tikz)) { "tex" } else { "svg" };
        if let Some(dir) = out_dir {
            fs::create_dir_all(dir)?;
            for (k, s) in drawings.iter().enumerate() {
                fs::write(dir.join(format!("record-{k:04}.{ext}")), s)?;
            }
            return Ok(format!("{}\n", json!({"written": drawings.len(), "dir": dir})));
        }
        return Ok(drawings.concat());
    }
    Ok(match format {
        DataFormat::Json => format!("{}\n", serde_json::to_string_pretty(&records)?),
        DataFormat::Csv => {
            let mut out = String::from("index,record\n");
            for (k, r) in records.iter().enumerate() {
                out.push_str(&format!("{k},{}\n", quote_csv(&r.to_string())));
            }
            out
        }
    })
}

fn homtable(
    window: i64,
    source: Option<String>,
    target: Option<String>,
    generator: Option<PathBuf>,
    fan: Option<usize>,
    format: DataFormat,
) -> Result<String> {
    if let (Some(x), Some(y)) = (source, target) {
        let x: Arc = x.parse()?;
        let y: Arc = y.parse()?;
        let t = HomDegreeTable::compute(&x, &y, window);
        return Ok(match format {
            DataFormat::Json => format!("{}\n", serde_json::to_string(&t)?),
            DataFormat::Csv => t.to_csv(),
        });
    }
    let g = match (generator, fan) {
        (Some(path), _) => read_json::<ArcSet>(&path)?,
        (None, Some(n)) if n >= 1 => fan_generator(n),
        _ => bail!("give --source and --target, --generator or --fan"),
    };
    let chi = ChiAlgebra::new(&g, window)?;
    Ok(match format {
        DataFormat::Csv => chi.to_csv(),
        DataFormat::Json => {
            let matrices: Vec<_> = (-window..=window)
                .map(|d| json!({"degree": d, "dims": chi.dimension_matrix(d)}))
                .collect();
            format!("{}\n", json!({"generator": g, "entries": chi.entries.iter().map(|r| r.iter().map(|e| e.kind).collect::<Vec<_>>()).collect::<Vec<_>>(), "matrices": matrices}))
        }
    })
}

fn run(cli: Cli) -> Result<Outcome> {
    let window = cli.window;
    match cli.command {
        Command::Enumerate { n, equiv, objects, format, render, out_dir, cap } => {
            let render = render.map(|r| r.parse::<Format>()).transpose()?;
            Ok(Outcome::Ok(enumerate(n as usize, equiv, objects, format, render, out_dir.as_deref(), cap)?))
        }
        Command::Quiver { input, format } => {
            let d = read_dissection(&input)?;
            let k = keyboard_from_extended(&d)?;
            Ok(Outcome::Ok(match format {
                QuiverFormat::Dot => render_quiver(&k, Format::Dot)?,
                QuiverFormat::Tikz => render_quiver(&k, Format::Tikz)?,
                QuiverFormat::Json => {
                    let p = piano_core::quiver_algebras::PianoQuiver::new(k);
                    format!("{}\n", serde_json::to_string_pretty(&json!({"keyboard": p.keyboard, "relations": p.relations()}))?)
                }
            }))
        }
        Command::Homtable { source, target, generator, fan, format } => {
            Ok(Outcome::Ok(homtable(window, source, target, generator, fan, format)?))
        }
        Command::Verify { which, n, choice, len, cap } => {
            let choice = choice.map(|c| c.parse::<InitialChoice>()).transpose()?;
            let settings = Settings { n: n as usize, window, len, cap, choice };
            let report = suites::run(which, &settings)?;
            let text: String = report.lines.iter().map(|l| format!("{l}\n")).collect();
            Ok(if report.failed { Outcome::Failed(text) } else { Outcome::Ok(text) })
        }
        Command::Render { input, kind, format } => {
            let kind: FigureKind = kind.parse()?;
            let format: Format = format.parse()?;
            Ok(Outcome::Ok(match kind {
                FigureKind::ArcDiagram => render_arc_diagram(&read_json::<ArcSet>(&input)?, format)?,
                FigureKind::Dissection => render_dissection(&read_dissection(&input)?, format)?,
                FigureKind::Quiver => render_quiver(&keyboard_from_extended(&read_dissection(&input)?)?, format)?,
            }))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(cli) {
        Ok(Outcome::Ok(text)) => {
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Ok(Outcome::Failed(text)) => {
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
