use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use latdiff_cli::{
    classify, enumerate, lattice_check, op_check, parse_assignment, run, table, verify,
    EnumerateArgs, Family, LatticeSource, TableKind,
};
use latdiff_core::Weight;

#[derive(Parser)]
#[command(
    name = "latdiff",
    version,
    about = "Difference operators on finite lattices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a lattice file and report its bounds and distributivity.
    LatticeCheck { lattice: PathBuf },
    /// Check an operator file against the weight identities.
    OpCheck {
        lattice: PathBuf,
        operator: PathBuf,
        /// Weight to check: 1, 0 or -1. Repeatable; defaults to 1.
        #[arg(long, short, allow_hyphen_values = true)]
        weight: Vec<Weight>,
    },
    /// Count (or list) the operators of a given weight.
    Enumerate(Target),
    /// List the operators of a given weight with the named families each belongs to.
    Classify(Target),
    /// Reproduce the count tables as TSV.
    Table {
        #[arg(value_enum)]
        which: Which,
        /// Largest n (lattice size). Defaults to 10 for chains, 11 for quasi.
        #[arg(long)]
        max_n: Option<u32>,
        /// Add brute-force counts and a match column.
        #[arg(long)]
        brute: bool,
        /// Ignore the size budget.
        #[arg(long)]
        force: bool,
        #[arg(long)]
        parallel: bool,
    },
    /// Run a verification suite over the built-in lattice catalog.
    Verify {
        /// weight-equivalence, decreasing, distributivity, characterizations,
        /// chain-counts, quasi-classification, lemmas, counterexamples,
        /// boundary, or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Include L_7, L_8, M_6 and the larger brute-force checks.
        #[arg(long)]
        slow: bool,
        /// Print every note, not just failures.
        #[arg(long, short)]
        verbose: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Chains,
    Quasi,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Chain,
    Quasi,
}

#[derive(Args)]
struct Target {
    /// Built-in lattice family.
    #[arg(long, requires = "n", conflicts_with = "lattice")]
    family: Option<FamilyArg>,
    /// Lattice size. For quasi this is the element count, so the number of atoms is n - 2.
    #[arg(long)]
    n: Option<usize>,
    /// Lattice file instead of a built-in family.
    #[arg(long)]
    lattice: Option<PathBuf>,
    /// Weight: 1, 0 or -1.
    #[arg(long, short, default_value = "1", allow_hyphen_values = true)]
    weight: Weight,
    /// Require d(j) = i. Repeatable.
    #[arg(long = "fix", value_name = "J=I", value_parser = parse_assignment)]
    fix: Vec<(usize, usize)>,
    /// Require d(j) >= i. Repeatable.
    #[arg(long = "at-least", value_name = "J=I", value_parser = parse_assignment)]
    at_least: Vec<(usize, usize)>,
    /// Print every operator, one image array per line.
    #[arg(long)]
    emit: bool,
    /// Ignore the size budget (default 8, or the LATDIFF_BUDGET variable).
    #[arg(long)]
    force: bool,
    /// Split the search by d(0) across threads.
    #[arg(long)]
    parallel: bool,
}

impl Target {
    fn into_args(self) -> Result<EnumerateArgs, String> {
        let source = match (self.family, self.n, self.lattice) {
            (Some(f), Some(n), None) => LatticeSource::Family(
                match f {
                    FamilyArg::Chain => Family::Chain,
                    FamilyArg::Quasi => Family::Quasi,
                },
                n,
            ),
            (None, None, Some(p)) => LatticeSource::File(p),
            _ => return Err("give either --family with --n, or --lattice".into()),
        };
        Ok(EnumerateArgs {
            source,
            weight: self.weight,
            fixed: self.fix,
            at_least: self.at_least,
            emit: self.emit,
            force: self.force,
            parallel: self.parallel,
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let mut err = io::stderr();
    let code = match cli.command {
        Command::LatticeCheck { lattice } => run(&mut err, || lattice_check(&mut out, &lattice)),
        Command::OpCheck {
            lattice,
            operator,
            weight,
        } => run(&mut err, || {
            op_check(&mut out, &lattice, &operator, &weight)
        }),
        Command::Enumerate(t) => match t.into_args() {
            Ok(a) => run(&mut err, || enumerate(&mut out, &a)),
            Err(m) => usage(&mut err, &m),
        },
        Command::Classify(t) => match t.into_args() {
            Ok(a) => run(&mut err, || classify(&mut out, &a)),
            Err(m) => usage(&mut err, &m),
        },
        Command::Table {
            which,
            max_n,
            brute,
            force,
            parallel,
        } => {
            let kind = match which {
                Which::Chains => TableKind::Chains,
                Which::Quasi => TableKind::Quasi,
            };
            run(&mut err, || {
                table(&mut out, kind, max_n, brute, force, parallel)
            })
        }
        Command::Verify {
            suite,
            slow,
            verbose,
        } => run(&mut err, || verify(&mut out, &suite, slow, verbose)),
    };
    if out.flush().is_err() {
        return ExitCode::from(latdiff_cli::EXIT_INPUT);
    }
    ExitCode::from(code)
}

fn usage(err: &mut dyn Write, msg: &str) -> u8 {
    let _ = writeln!(err, "error: {msg}");
    latdiff_cli::EXIT_INPUT
}
