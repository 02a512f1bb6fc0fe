//! Command-line front end. Every verb writes a `key=value` report.
//!
//! Exit codes: 0 YES or success, 1 NO, 2 UNKNOWN, 64 usage, 65 bad input
//! data (syntax errors carry a byte offset), 66 unreadable file.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classify::{decide, Relation, SearchOptions};
use crate::cohomology::{build_cocycle, coinvariants, h1_presentation};
use crate::dsl::{canonical_text, parse_group, parse_matrix, parse_vector, Report};
use crate::error::Error;
use crate::hgroup::{HGroupPresentation, LocalPresentation};
use crate::linalg::{fmt_rat_vec, Lattice};
use crate::odometer::{spectrum, OdometerTower};
use crate::rigid::{gallery, rigid_report};
use crate::suite::{run_suite, DEFAULT_SEED};

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_IO: i32 = 66;

#[derive(Parser, Debug)]
#[command(
    name = "odometer",
    version,
    about = "Exact computations for Z^d-odometers given by groups Z^d <= H <= Q^d"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a group file and print its canonical form and dimension.
    Parse {
        file: PathBuf,
    },
    /// Print the canonical form only.
    Canon {
        file: PathBuf,
    },
    /// Test membership of a rational vector.
    Member {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
    /// Test equality of two groups.
    Equal {
        left: PathBuf,
        right: PathBuf,
    },
    Superindex {
        file: PathBuf,
    },
    /// Test whether the action is free, i.e. H is dense in R^d.
    Free {
        file: PathBuf,
    },
    /// The tower H ∩ (1/n!) Z^d.
    Tower {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Follow a random point along the first coordinate direction.
    Simulate {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Eigenvalues with denominators up to the given height.
    Spectrum {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        height: u64,
    },
    /// Dual of a lattice given by generator rows, e.g. "[2,1;0,3]".
    Dual {
        #[arg(long)]
        lattice: String,
    },
    /// Trace of the cocycle built from h in the dual of the lattice.
    Tau {
        #[arg(long)]
        lattice: String,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    /// First cohomology with its finite levels.
    H1 {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Coinvariants read off the finite levels.
    Coinv {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Decide one of conj, iso, coe, oe.
    Classify {
        #[arg(long)]
        relation: Relation,
        left: PathBuf,
        right: PathBuf,
        #[arg(long, default_value_t = 20)]
        bound: i64,
        #[arg(long)]
        all_witnesses: bool,
    },
    /// Build the rigid example.
    Rigid {
        #[arg(long, default_value_t = 3)]
        levels: usize,
        #[arg(long)]
        verify: bool,
    },
    /// Run the acceptance suite.
    Verify {
        #[arg(long, default_value = "paper")]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug)]
enum Failure {
    Io(PathBuf, std::io::Error),
    Data(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

impl From<crate::dsl::ParseError> for Failure {
    fn from(e: crate::dsl::ParseError) -> Self {
        Failure::Data(e.into())
    }
}

/// Runs the command line `args` (including the program name), writing the
/// report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(cli.command) {
        Ok((report, code)) => {
            let _ = write!(out, "{report}");
            code
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(path, e)) => {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            EXIT_IO
        }
        Err(Failure::Data(e)) => {
            if let Error::Parse(p) = &e {
                let _ = writeln!(out, "offset={}", p.offset());
            }
            let _ = writeln!(err, "error: {e}");
            EXIT_DATA
        }
    }
}

/// Reads a group file. A missing path whose file stem names a gallery
/// group resolves to that group.
pub fn load_group(
    path: &Path,
) -> Result<LocalPresentation, (PathBuf, Option<std::io::Error>, Option<Error>)> {
    match std::fs::read_to_string(path) {
        Ok(text) => parse_group(&text).map_err(|e| (path.to_path_buf(), None, Some(e))),
        Err(io) => {
            let g = gallery();
            let stem = path
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or_default();
            match g.get(stem) {
                Some(h) if !path.exists() => Ok(h.clone()),
                _ => Err((path.to_path_buf(), Some(io), None)),
            }
        }
    }
}

fn group(path: &Path) -> Result<LocalPresentation, Failure> {
    load_group(path).map_err(|(p, io, e)| match (io, e) {
        (Some(io), _) => Failure::Io(p, io),
        (None, Some(e)) => Failure::Data(e),
        (None, None) => unreachable!("load_group reports a cause"),
    })
}

/// Lattice spanned by the rows of a DSL matrix.
fn lattice_from_rows(text: &str) -> Result<Lattice, Failure> {
    let m = parse_matrix(text)?;
    Ok(Lattice::from_generators(&m.transpose())?)
}

fn fmt_coset(x: &[i64]) -> String {
    let parts: Vec<String> = x.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn execute(cmd: Command) -> Result<(Report, i32), Failure> {
    let mut r = Report::new();
    let mut code = 0;
    match cmd {
        Command::Parse { file } => {
            let h = group(&file)?;
            r.push("dim", h.dim());
            r.push("canonical", canonical_text(&h));
        }
        Command::Canon { file } => {
            r.push("canonical", canonical_text(&group(&file)?));
        }
        Command::Member { file, vector } => {
            let h: HGroupPresentation = group(&file)?.into();
            let v = parse_vector(&vector)?;
            r.push("member", h.member(&v)?);
        }
        Command::Equal { left, right } => {
            let (a, b): (HGroupPresentation, HGroupPresentation) =
                (group(&left)?.into(), group(&right)?.into());
            r.push("equal", a.equal(&b)?);
        }
        Command::Superindex { file } => {
            r.push("superindex", group(&file)?.superindex());
        }
        Command::Free { file } => {
            r.push("free", group(&file)?.is_free());
        }
        Command::Tower { file, depth } => {
            let h: HGroupPresentation = group(&file)?.into();
            let t = h.tower(depth)?;
            for n in 1..=t.depth() {
                r.push(format!("level_{n}"), t.level(n));
                r.push(format!("index_{n}"), t.index(n));
            }
        }
        Command::Simulate {
            file,
            depth,
            steps,
            seed,
        } => {
            let h: HGroupPresentation = group(&file)?.into();
            let t = OdometerTower::new(h.tower(depth)?)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut x = t.random_point(&mut rng);
            let e1: Vec<i64> = (0..t.dim()).map(|i| (i == 0) as i64).collect();
            for s in 0..=steps {
                let top = x.cosets.last().expect("nonempty tower");
                r.push(format!("step_{s}"), fmt_coset(top));
                x = t.act(&e1, &x);
            }
        }
        Command::Spectrum { file, height } => {
            let ev = spectrum(&group(&file)?, height)?;
            r.push("count", ev.len());
            for e in ev {
                r.push("eigenvalue", e);
            }
        }
        Command::Dual { lattice } => {
            r.push(
                "dual",
                lattice_from_rows(&lattice)?.dual().basis().transpose(),
            );
        }
        Command::Tau { lattice, h } => {
            let g = lattice_from_rows(&lattice)?;
            let h = parse_vector(&h)?;
            if !g.dual().contains(&h) {
                return Err(Failure::Usage("h is not in the dual lattice".into()));
            }
            r.push("tau", fmt_rat_vec(&build_cocycle(&g, &h, None)?.tau1()));
        }
        Command::H1 { file, depth } => {
            let h: HGroupPresentation = group(&file)?.into();
            let p = h1_presentation(&h, depth)?;
            r.push("h1", canonical_text(&p.group));
            for n in 1..=p.tower.depth() {
                r.push(format!("level_{n}"), p.tower.level(n));
            }
            r.push("levels_verified", p.verify_levels()?);
        }
        Command::Coinv { file, depth } => {
            let h: HGroupPresentation = group(&file)?.into();
            r.push("coinvariants", coinvariants(&h, depth)?);
        }
        Command::Classify {
            relation,
            left,
            right,
            bound,
            all_witnesses,
        } => {
            if bound < 1 {
                return Err(Failure::Usage("--bound must be positive".into()));
            }
            let (a, b) = (group(&left)?, group(&right)?);
            let v = decide(
                relation,
                &a,
                &b,
                &SearchOptions {
                    bound,
                    all_witnesses,
                },
            )?;
            r = v.report();
            code = v.exit_code();
        }
        Command::Rigid { levels, verify } => {
            if levels == 0 {
                return Err(Failure::Usage("--levels must be at least 1".into()));
            }
            r = rigid_report(levels, verify)?;
            if verify && r.get("verdict") != Some("YES") {
                code = 1;
            }
        }
        Command::Verify { suite, seed } => {
            if suite != "paper" {
                return Err(Failure::Usage(format!("unknown suite {suite:?}")));
            }
            let results = run_suite(seed);
            for c in &results {
                let status = if c.passed { "PASS" } else { "FAIL" };
                r.push(
                    format!("criterion_{}", c.id),
                    format!("{status} {}: {}", c.name, c.detail),
                );
            }
            let all = results.iter().all(|c| c.passed);
            r.push("suite", if all { "PASS" } else { "FAIL" });
            code = if all { 0 } else { 1 };
        }
    }
    Ok((r, code))
}
