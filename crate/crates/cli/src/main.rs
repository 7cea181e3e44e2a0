//! `typec`: enumerate, convert, count and verify type C Catalan objects.

use std::collections::HashSet;
use std::io::{self, BufWriter, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use typec_catalan::bijections::psi_word;
use typec_catalan::counting::c_table;
use typec_catalan::verify::{self, Suite};
use typec_catalan::{
    enumerate_annotated_sketches, enumerate_forests, enumerate_symmetric_sketches, forest_shuffles,
    phi, psi_labeled, psi_symmetric, region_count, region_count_via_sum, representative_point,
    sigma, sketch_shuffles, validate_symmetric_forest, AnnotatedSketch, OrderedForest, RegionPoint,
    SketchWord, SymmetricSketch,
};

const MAX_ANNOTATED: usize = 6;
const MAX_SYMMETRIC: usize = 4;
const MAX_LABELED_FORESTS: usize = 7;
const MAX_SHAPES: usize = 10;

#[derive(Parser)]
#[command(
    name = "typec",
    version,
    about = "Regions of the type C Catalan arrangement, sketches and forests"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of regions in dimension n.
    Count {
        #[arg(long)]
        n: usize,
        /// Print the table s -> number of forest shapes with s special leaves.
        #[arg(long)]
        by_special: bool,
        /// Compute through the sum over special-leaf counts.
        #[arg(long)]
        via_sum: bool,
    },
    /// List every object of the given kind and size, one per line.
    Enumerate {
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        symmetric: bool,
        #[arg(long)]
        labeled: bool,
        /// Allow sizes beyond the desk-scale bounds.
        #[arg(long)]
        force: bool,
    },
    /// Convert one object.
    Map {
        direction: Direction,
        #[arg(long)]
        n: Option<usize>,
        /// Point coordinates, comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        coords: Option<String>,
        /// The object; read from standard input when absent.
        #[arg(allow_hyphen_values = true)]
        object: Option<String>,
    },
    /// List the shuffles of an annotated 1-sketch or labeled forest with its symmetric.
    Shuffle {
        kind: Kind,
        #[arg(allow_hyphen_values = true)]
        object: Option<String>,
    },
    /// Run a named check suite.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long)]
        n_max: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    #[value(alias = "sketch")]
    Sketches,
    #[value(alias = "forest")]
    Forests,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    SketchToForest,
    ForestToSketch,
    PointToSketch,
    SketchToPoint,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn read_object(arg: Option<String>) -> Result<String, Failure> {
    match arg {
        Some(s) => Ok(s),
        None => {
            let mut buf = String::new();
            io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure::Usage(format!("cannot read standard input: {e}")))?;
            Ok(buf.trim().to_string())
        }
    }
}

fn guard(n: usize, max: usize, force: bool) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    if n > max && !force {
        return Err(Failure::Usage(format!(
            "n = {n} exceeds the bound {max} for this enumeration; pass --force to run anyway"
        )));
    }
    Ok(())
}

enum AnySketch {
    Annotated(AnnotatedSketch),
    Symmetric(SymmetricSketch),
}

/// With `--n`, a `4n`-letter word is symmetric and a `2n`-letter word
/// annotated. Without it, a word whose indices stay within a quarter of its
/// length is symmetric.
fn parse_sketch(text: &str, n: Option<usize>) -> Result<AnySketch, Failure> {
    let word: SketchWord = text.parse()?;
    let len = word.len();
    match n {
        Some(n) if len == 4 * n => Ok(AnySketch::Symmetric(SymmetricSketch::new(word, n)?)),
        Some(n) if len == 2 * n => Ok(AnySketch::Annotated(AnnotatedSketch::new(word, n)?)),
        Some(n) => Err(Failure::Domain(format!(
            "a word of {len} letters is not a sketch for n = {n}"
        ))),
        None => {
            let top = word
                .letters()
                .iter()
                .map(|l| l.index().unsigned_abs() as usize)
                .max();
            if len.is_multiple_of(4) && top.is_some_and(|t| t <= len / 4) {
                Ok(AnySketch::Symmetric(SymmetricSketch::new(word, len / 4)?))
            } else {
                Ok(AnySketch::Annotated(AnnotatedSketch::new(
                    word,
                    len.div_ceil(2).max(1),
                )?))
            }
        }
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<bool, Failure> {
    match cli.command {
        Command::Count {
            n,
            by_special,
            via_sum,
        } => {
            if n == 0 {
                return Err(Failure::Usage("--n must be at least 1".into()));
            }
            if by_special {
                write!(out, "{}", c_table(n))?;
            } else if via_sum {
                writeln!(out, "{}", region_count_via_sum(n))?;
            } else {
                writeln!(out, "{}", region_count(n))?;
            }
        }
        Command::Enumerate {
            kind: Kind::Sketches,
            n,
            symmetric,
            force,
            ..
        } => {
            if symmetric {
                guard(n, MAX_SYMMETRIC, force)?;
                for w in enumerate_symmetric_sketches(n) {
                    writeln!(out, "{w}")?;
                }
            } else {
                guard(n, MAX_ANNOTATED, force)?;
                for w in enumerate_annotated_sketches(n) {
                    writeln!(out, "{w}")?;
                }
            }
        }
        Command::Enumerate {
            kind: Kind::Forests,
            n,
            symmetric,
            labeled,
            force,
        } => {
            if symmetric {
                guard(n, MAX_SYMMETRIC, force)?;
                let mut forests: Vec<OrderedForest> =
                    enumerate_symmetric_sketches(n).iter().map(phi).collect();
                forests.sort_by_cached_key(OrderedForest::serial_key);
                for f in forests {
                    writeln!(out, "{f}")?;
                }
            } else {
                guard(
                    n,
                    if labeled {
                        MAX_LABELED_FORESTS
                    } else {
                        MAX_SHAPES
                    },
                    force,
                )?;
                for f in enumerate_forests(n, labeled) {
                    writeln!(out, "{f}")?;
                }
            }
        }
        Command::Map {
            direction,
            n,
            coords,
            object,
        } => match direction {
            Direction::SketchToForest => {
                let f = match parse_sketch(&read_object(object)?, n)? {
                    AnySketch::Annotated(w) => phi(&w),
                    AnySketch::Symmetric(w) => phi(&w),
                };
                writeln!(out, "{f}")?;
            }
            Direction::ForestToSketch => {
                let f: OrderedForest = read_object(object)?.parse()?;
                let symmetric = match n {
                    Some(n) if f.len() == 2 * n => true,
                    Some(n) if f.len() == n => false,
                    Some(n) => {
                        return Err(Failure::Domain(format!(
                            "a forest of {} nodes has neither n = {n} nor 2n nodes",
                            f.len()
                        )))
                    }
                    None => {
                        f.len().is_multiple_of(2)
                            && validate_symmetric_forest(&f, f.len() / 2).is_ok_and(|r| r.is_ok())
                    }
                };
                if symmetric {
                    writeln!(out, "{}", psi_symmetric(&f)?)?;
                } else {
                    writeln!(out, "{}", psi_labeled(&f)?)?;
                }
            }
            Direction::PointToSketch => {
                let text = match coords {
                    Some(c) => c,
                    None => read_object(object)?,
                };
                let x: RegionPoint = text.parse()?;
                if let Some(n) = n.filter(|&n| n != x.n()) {
                    return Err(Failure::Domain(format!(
                        "expected {n} coordinates, found {}",
                        x.n()
                    )));
                }
                writeln!(out, "{}", sigma(&x)?)?;
            }
            Direction::SketchToPoint => match parse_sketch(&read_object(object)?, n)? {
                AnySketch::Symmetric(w) => writeln!(out, "{}", representative_point(&w))?,
                AnySketch::Annotated(_) => {
                    return Err(Failure::Domain(
                        "sketch-to-point needs a symmetric annotated 1-sketch".into(),
                    ))
                }
            },
        },
        Command::Shuffle {
            kind: Kind::Sketches,
            object,
        } => {
            let w = AnnotatedSketch::parse(&read_object(object)?)?;
            for s in sketch_shuffles(&w) {
                writeln!(out, "{s}")?;
            }
        }
        Command::Shuffle {
            kind: Kind::Forests,
            object,
        } => {
            let f: OrderedForest = read_object(object)?.parse()?;
            let mut seen = HashSet::new();
            for g in forest_shuffles(&f)? {
                if seen.insert(psi_word(&g)) {
                    writeln!(out, "{g}")?;
                }
            }
        }
        Command::Verify { suite, n_max } => {
            let bound = verify::max_n(suite);
            if n_max == 0 || n_max > bound {
                return Err(Failure::Usage(format!(
                    "--n-max must be in 1..={bound} for this suite"
                )));
            }
            let checks = verify::run_suite(suite, n_max);
            for c in &checks {
                writeln!(out, "{c}")?;
            }
            return Ok(checks.iter().all(|c| c.passed));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match result {
        Ok(true) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
