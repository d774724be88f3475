//! `pph` command-line driver.
//!
//! Exit status: 0 when the instance is accepted (or the cross-check
//! agrees), 1 when it is rejected (or disagrees), 2 on usage, input or I/O
//! errors.
//!
//! Verdict reports are one line: `YES`, `NO gamete-pair I J`, or
//! `NO odd-cycle A V1-V2:W V2-V3:W ...` where `A` is the anchor column of
//! the resolution graph holding the cycle and each step lists its two
//! columns and edge weight. All indices are 1-based. Without `--directed`
//! witnesses refer to the column-flipped directed instance.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use pph_core::decide::{decide_dpph_with, decide_pph_with, Route, Verdict};
use pph_core::oracle::{oracle_decide, plant_instance, DEFAULT_CAP};
use pph_core::resolution::graphs_to_dot;
use pph_core::{
    build_all_resolution_graphs, build_tree, construct_haplotypes_dpph, construct_haplotypes_pph,
    pph_to_dpph, verify_tree, ConstructError, GenotypeMatrix,
};

pub const EXIT_ACCEPT: u8 = 0;
pub const EXIT_REJECT: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "pph",
    version,
    about = "Decide and solve perfect phylogeny haplotyping instances",
    after_help = "Input: one genotype per line over {0,1,2}; blank lines and '#' comments are \
                  ignored. Exit status: 0 accept/agree, 1 reject/disagree, 2 error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print YES, or NO with a rejection witness
    Decide {
        #[command(flatten)]
        io: InputArgs,
        /// Odd-cycle test: parity union-find or bipartite expansion
        #[arg(long, default_value_t = Route::Parity)]
        route: Route,
    },
    /// Print an explaining haplotype matrix (2 rows per genotype)
    Solve(InputArgs),
    /// Print the perfect phylogeny of the constructed haplotypes as DOT
    Tree(InputArgs),
    /// Print the resolution graphs of the directed instance as DOT
    Graphs(InputArgs),
    /// Decide by exhaustive search over all phasings
    Oracle {
        #[command(flatten)]
        io: InputArgs,
        /// Maximum number of 2-entries the search accepts
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Generate a planted instance that admits a perfect phylogeny
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        rows: usize,
        #[arg(long, default_value_t = 10)]
        cols: usize,
        /// Also write the planted haplotypes to this file
        #[arg(long, value_name = "PATH")]
        haplotypes: Option<PathBuf>,
        #[arg(long, short, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Compare both decision routes and, within the cap, the oracle
    Crosscheck {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
}

#[derive(Args, Debug, Clone)]
struct InputArgs {
    /// Genotype matrix file; standard input when absent or "-"
    input: Option<PathBuf>,
    /// Root the phylogeny at the all-0 haplotype
    #[arg(long)]
    directed: bool,
    /// Write the result here instead of standard output
    #[arg(long, short, value_name = "PATH")]
    output: Option<PathBuf>,
}

/// Resolved command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub input: Option<PathBuf>,
    pub directed: bool,
    pub route: Route,
    pub cap: usize,
    pub seed: u64,
    pub rows: usize,
    pub cols: usize,
    pub haplotypes: Option<PathBuf>,
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Decide,
    Solve,
    Tree,
    Graphs,
    Oracle,
    Gen,
    Crosscheck,
}

impl RunConfig {
    fn from_cli(cli: Cli) -> Result<Self> {
        let mut config = RunConfig {
            command: CommandKind::Decide,
            input: None,
            directed: false,
            route: Route::Parity,
            cap: DEFAULT_CAP,
            seed: 0,
            rows: 0,
            cols: 0,
            haplotypes: None,
            output: None,
        };
        let io = match cli.command {
            Command::Decide { io, route } => {
                config.route = route;
                io
            }
            Command::Solve(io) => {
                config.command = CommandKind::Solve;
                io
            }
            Command::Tree(io) => {
                config.command = CommandKind::Tree;
                io
            }
            Command::Graphs(io) => {
                config.command = CommandKind::Graphs;
                io
            }
            Command::Oracle { io, cap } => {
                config.command = CommandKind::Oracle;
                config.cap = cap;
                io
            }
            Command::Crosscheck { io, cap } => {
                config.command = CommandKind::Crosscheck;
                config.cap = cap;
                io
            }
            Command::Gen {
                seed,
                rows,
                cols,
                haplotypes,
                output,
            } => {
                if rows == 0 || cols == 0 {
                    bail!("--rows and --cols must be at least 1");
                }
                config.command = CommandKind::Gen;
                config.seed = seed;
                config.rows = rows;
                config.cols = cols;
                config.haplotypes = haplotypes;
                config.output = output;
                return Ok(config);
            }
        };
        config.input = io.input.filter(|p| p.as_os_str() != "-");
        config.directed = io.directed;
        config.output = io.output;
        Ok(config)
    }
}

/// Text report plus exit status of one command.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn accept(text: String) -> Self {
        Self {
            text,
            code: EXIT_ACCEPT,
        }
    }

    fn from_verdict(verdict: &Verdict) -> Self {
        Self {
            text: format!("{verdict}\n"),
            code: if verdict.admits() {
                EXIT_ACCEPT
            } else {
                EXIT_REJECT
            },
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() {
                let _ = write!(stderr, "{err}");
                EXIT_ERROR
            } else {
                let _ = write!(stdout, "{err}");
                EXIT_ACCEPT
            };
            return code;
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|config| {
        let outcome = execute(&config, stdin)?;
        emit(&config, &outcome.text, stdout)?;
        Ok(outcome.code)
    });
    match result {
        Ok(code) => code,
        Err(err) => {
            let _ = writeln!(stderr, "error: {err:#}");
            EXIT_ERROR
        }
    }
}

fn emit(config: &RunConfig, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match &config.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => stdout.write_all(text.as_bytes()).context("writing output"),
    }
}

fn read_input(config: &RunConfig, stdin: &mut dyn Read) -> Result<GenotypeMatrix> {
    let (text, name) = match &config.input {
        Some(path) => (
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
            path.display().to_string(),
        ),
        None => {
            let mut text = String::new();
            stdin
                .read_to_string(&mut text)
                .context("reading standard input")?;
            (text, "<stdin>".to_string())
        }
    };
    GenotypeMatrix::parse(&text).with_context(|| name)
}

fn decide(a: &GenotypeMatrix, directed: bool, route: Route) -> Verdict {
    if directed {
        decide_dpph_with(a, route)
    } else {
        decide_pph_with(a, route)
    }
}

fn yes_no(admits: bool) -> &'static str {
    if admits {
        "YES"
    } else {
        "NO"
    }
}

fn execute(config: &RunConfig, stdin: &mut dyn Read) -> Result<Outcome> {
    if config.command == CommandKind::Gen {
        let (a, b) = plant_instance(config.seed, config.rows, config.cols);
        if let Some(path) = &config.haplotypes {
            fs::write(path, b.to_string())
                .with_context(|| format!("writing {}", path.display()))?;
        }
        return Ok(Outcome::accept(a.to_string()));
    }

    let a = read_input(config, stdin)?;
    let directed = config.directed;
    match config.command {
        CommandKind::Decide => Ok(Outcome::from_verdict(&decide(&a, directed, config.route))),
        CommandKind::Solve => {
            let solved = if directed {
                construct_haplotypes_dpph(&a)
            } else {
                construct_haplotypes_pph(&a)
            };
            match solved {
                Ok(b) => Ok(Outcome::accept(b.to_string())),
                Err(ConstructError::NotAdmitting(w)) => {
                    Ok(Outcome::from_verdict(&Verdict::Rejects(w)))
                }
                Err(e) => Err(e.into()),
            }
        }
        CommandKind::Tree => {
            let solved = if directed {
                construct_haplotypes_dpph(&a)
            } else {
                construct_haplotypes_pph(&a)
            };
            let b = match solved {
                Ok(b) => b,
                Err(ConstructError::NotAdmitting(w)) => {
                    return Ok(Outcome::from_verdict(&Verdict::Rejects(w)))
                }
                Err(e) => return Err(e.into()),
            };
            let tree = build_tree(&b, directed)?;
            verify_tree(&b, &tree).context("constructed tree failed verification")?;
            Ok(Outcome::accept(tree.to_dot()))
        }
        CommandKind::Graphs => {
            let instance = if directed { a } else { pph_to_dpph(&a).0 };
            Ok(Outcome::accept(graphs_to_dot(
                &build_all_resolution_graphs(&instance),
            )))
        }
        CommandKind::Oracle => {
            let admits = oracle_decide(&a, directed, config.cap)?;
            Ok(Outcome {
                text: format!("{}\n", yes_no(admits)),
                code: if admits { EXIT_ACCEPT } else { EXIT_REJECT },
            })
        }
        CommandKind::Crosscheck => Ok(crosscheck(&a, directed, config.cap)),
        CommandKind::Gen => unreachable!("handled above"),
    }
}

fn crosscheck(a: &GenotypeMatrix, directed: bool, cap: usize) -> Outcome {
    let parity = decide(a, directed, Route::Parity).admits();
    let bipartite = decide(a, directed, Route::Bipartite).admits();
    let oracle = oracle_decide(a, directed, cap);
    let (agree, detail) = match &oracle {
        Ok(o) => (
            parity == bipartite && bipartite == *o,
            format!(
                "parity={} bipartite={} oracle={}",
                yes_no(parity),
                yes_no(bipartite),
                yes_no(*o)
            ),
        ),
        Err(e) => (
            parity == bipartite,
            format!(
                "parity={} bipartite={} routes-only ({e})",
                yes_no(parity),
                yes_no(bipartite)
            ),
        ),
    };
    let text = if agree {
        match oracle {
            Ok(_) => format!("AGREE {}\n", yes_no(parity)),
            Err(e) => format!("AGREE {} routes-only ({e})\n", yes_no(parity)),
        }
    } else {
        format!("DISAGREE {detail}\n")
    };
    Outcome {
        text,
        code: if agree { EXIT_ACCEPT } else { EXIT_REJECT },
    }
}
