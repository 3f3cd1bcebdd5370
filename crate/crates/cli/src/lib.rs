//! Command implementations behind the `latdiff` binary.
//!
//! Every command writes to a caller-supplied sink and returns the process
//! exit status: 0 success, 1 negative verdict, 2 input error, 3 budget
//! refusal.

use std::fmt::Display;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use latdiff_core::enumerate::enumerate_ops;
use latdiff_core::formulas::{chain_total, quasi_binomial_sum, quasi_cubic_term, quasi_total};
use latdiff_core::harness::{
    catalog, classification_families, verify_chain_counts, verify_characterizations,
    verify_counterexamples, verify_decreasing_characterization,
    verify_distributivity_characterization, verify_quasi_classification, verify_supporting_lemmas,
    verify_trivial_boundary, verify_weight_equivalence, EquivalenceMode, HarnessError,
};
use latdiff_core::io::{parse_lattice, parse_operator, FormatError};
use latdiff_core::operator::weight_violation;
use latdiff_core::{
    check_property, Budget, CountQuery, EnumerateError, EnumerationOptions, Lattice, LatticeError,
    Operator, Partitioning, Property, VerificationReport, Weight,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

/// Largest lattice the CLI enumerates without `--force`.
pub const CLI_DEFAULT_BUDGET: usize = 8;
/// Environment variable overriding [`CLI_DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "LATDIFF_BUDGET";

/// A failure that ends a command, with its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn input(message: impl Display) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::input(e)
    }
}

impl From<EnumerateError> for Failure {
    fn from(e: EnumerateError) -> Self {
        let code = match e {
            EnumerateError::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_INPUT,
        };
        Self {
            code,
            message: match e {
                EnumerateError::BudgetExceeded { .. } => {
                    format!("{e}; pass --force or set {BUDGET_ENV}")
                }
                _ => e.to_string(),
            },
        }
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Enumerate(e) => e.into(),
            HarnessError::Budget { .. } => Self {
                code: EXIT_BUDGET,
                message: e.to_string(),
            },
            e => Failure::input(e),
        }
    }
}

pub type CmdResult = Result<u8, Failure>;

/// Runs a command, printing any failure to `err` and returning the status.
pub fn run(err: &mut dyn Write, cmd: impl FnOnce() -> CmdResult) -> u8 {
    match cmd() {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_lattice(path: &Path) -> Result<Lattice, Failure> {
    parse_lattice(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// The size budget: `--force` lifts it, otherwise the environment value or
/// the CLI default.
pub fn resolve_budget(force: bool, env: Option<&str>) -> Result<Budget, Failure> {
    if force {
        return Ok(Budget::unlimited());
    }
    match env {
        None => Ok(Budget::at_most(CLI_DEFAULT_BUDGET)),
        Some(v) => v.trim().parse::<usize>().map(Budget::at_most).map_err(|_| {
            Failure::input(format!("{BUDGET_ENV}={v:?} is not a nonnegative integer"))
        }),
    }
}

fn budget_from_env(force: bool) -> Result<Budget, Failure> {
    resolve_budget(force, std::env::var(BUDGET_ENV).ok().as_deref())
}

/// Parses `j=i` into `(j, i)`.
pub fn parse_assignment(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once('=')
        .ok_or_else(|| format!("expected ELEMENT=VALUE, found {s:?}"))?;
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("{t:?} is not a nonnegative integer"))
    };
    Ok((num(a)?, num(b)?))
}

// ---------------------------------------------------------------- lattice-check

pub fn lattice_check(out: &mut dyn Write, path: &Path) -> CmdResult {
    let text = read(path)?;
    match parse_lattice(&text) {
        Ok(l) => {
            writeln!(
                out,
                "PASS n={} bottom={} top={} distributive={}",
                l.size(),
                l.bottom(),
                l.top(),
                l.is_distributive()
            )?;
            Ok(EXIT_OK)
        }
        Err(FormatError::Lattice(e)) => {
            writeln!(out, "FAIL {}: {e}", lattice_error_kind(&e))?;
            Ok(EXIT_NEGATIVE)
        }
        Err(e) => Err(Failure::input(format!("{}: {e}", path.display()))),
    }
}

fn lattice_error_kind(e: &LatticeError) -> &'static str {
    match e {
        LatticeError::InvalidSize { .. } => "invalid-size",
        LatticeError::OutOfRange { .. } | LatticeError::LabelOutOfRange { .. } => "out-of-range",
        LatticeError::Cycle { .. } => "cycle",
        LatticeError::NoBottom { .. } => "no-bottom",
        LatticeError::NoTop { .. } => "no-top",
        LatticeError::NotALattice { .. } => "not-a-lattice",
        LatticeError::AxiomViolation { .. } => "axiom-violation",
    }
}

// ---------------------------------------------------------------- op-check

fn weight_noun(w: Weight) -> &'static str {
    match w {
        Weight::One => "difference operator",
        Weight::Zero => "derivation",
        Weight::MinusOne => "weight -1 operator",
    }
}

pub fn op_check(out: &mut dyn Write, lattice: &Path, op: &Path, weights: &[Weight]) -> CmdResult {
    let l = load_lattice(lattice)?;
    let d = parse_operator(&read(op)?, Some(&l))
        .map_err(|e| Failure::input(format!("{}: {e}", op.display())))?;
    let weights = if weights.is_empty() {
        &[Weight::One][..]
    } else {
        weights
    };
    let mut all = true;
    writeln!(out, "operator [{d}]")?;
    for &w in weights {
        match weight_violation(&l, &d, w) {
            None => writeln!(out, "weight {w}: {}", weight_noun(w))?,
            Some((x, y)) => {
                all = false;
                writeln!(
                    out,
                    "weight {w}: NOT a {} (fails at x={x}, y={y})",
                    weight_noun(w)
                )?;
            }
        }
    }
    let flags: Vec<String> = Property::ALL
        .iter()
        .map(|&p| {
            let holds = check_property(&l, &d, p).expect("bound to lattice");
            format!("{}={holds}", p.name())
        })
        .collect();
    writeln!(out, "properties {}", flags.join(" "))?;
    Ok(if all { EXIT_OK } else { EXIT_NEGATIVE })
}

// ---------------------------------------------------------------- enumerate

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Chain,
    Quasi,
}

/// Where the lattice of an enumeration comes from.
#[derive(Debug, Clone)]
pub enum LatticeSource {
    /// `n` is the lattice size for both families.
    Family(Family, usize),
    File(std::path::PathBuf),
}

impl LatticeSource {
    pub fn build(&self) -> Result<Lattice, Failure> {
        match self {
            LatticeSource::Family(Family::Chain, n) => Lattice::chain(*n).map_err(Failure::input),
            LatticeSource::Family(Family::Quasi, n) => {
                if *n < 4 {
                    return Err(Failure::input(format!(
                        "quasi-antichains have n >= 4 elements, got n = {n}"
                    )));
                }
                Lattice::quasi_antichain(n - 2).map_err(Failure::input)
            }
            LatticeSource::File(p) => load_lattice(p),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EnumerateArgs {
    pub source: LatticeSource,
    pub weight: Weight,
    pub fixed: Vec<(usize, usize)>,
    pub at_least: Vec<(usize, usize)>,
    pub emit: bool,
    pub force: bool,
    pub parallel: bool,
}

fn options(budget: Budget, parallel: bool) -> EnumerationOptions {
    EnumerationOptions {
        budget,
        partitioning: if parallel {
            Partitioning::ByFirstImage
        } else {
            Partitioning::Sequential
        },
        ..Default::default()
    }
}

fn build_query<'a>(l: &'a Lattice, args: &EnumerateArgs) -> CountQuery<'a> {
    let mut q = CountQuery::new(l, args.weight);
    for &(j, i) in &args.fixed {
        q = q.fix(j, i);
    }
    for &(j, i) in &args.at_least {
        q = q.at_least(j, i);
    }
    q
}

pub fn enumerate(out: &mut dyn Write, args: &EnumerateArgs) -> CmdResult {
    let l = args.source.build()?;
    let budget = budget_from_env(args.force)?;
    let q = build_query(&l, args);
    let opts = options(budget, args.parallel);
    let mut io_err = None;
    let report = if args.emit {
        let mut sink = |d: &Operator| {
            if io_err.is_none() {
                if let Err(e) = writeln!(out, "{d}") {
                    io_err = Some(e);
                }
            }
        };
        enumerate_ops(&q, opts, Some(&mut sink))?
    } else {
        enumerate_ops(&q, opts, None)?
    };
    if let Some(e) = io_err {
        return Err(e.into());
    }
    if args.emit {
        writeln!(out, "# count {}", report.count)?;
    } else {
        writeln!(out, "{}", report.count)?;
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------- classify

pub fn classify(out: &mut dyn Write, args: &EnumerateArgs) -> CmdResult {
    let l = args.source.build()?;
    let budget = budget_from_env(args.force)?;
    let q = build_query(&l, args);
    let families = classification_families(&l)?;
    let mut members = Vec::new();
    enumerate_ops(
        &q,
        options(budget, args.parallel),
        Some(&mut |d: &Operator| members.push(d.clone())),
    )?;
    writeln!(out, "operator\tfamilies")?;
    for d in &members {
        let labels: Vec<&str> = families
            .iter()
            .filter(|f| &f.operator == d)
            .map(|f| f.label.as_str())
            .collect();
        let labels = if labels.is_empty() {
            "-".to_string()
        } else {
            labels.join(",")
        };
        writeln!(out, "{d}\t{labels}")?;
    }
    writeln!(out, "# count {}", members.len())?;
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------- table

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Chains,
    Quasi,
}

const DASH: &str = "—";
const NO_FORMULA_AT_4: &str = "n/a(formula n≥5)";

pub fn table(
    out: &mut dyn Write,
    kind: TableKind,
    max_n: Option<u32>,
    brute: bool,
    force: bool,
    parallel: bool,
) -> CmdResult {
    let (first, default_max) = match kind {
        TableKind::Chains => (1, 10),
        TableKind::Quasi => (4, 11),
    };
    let max_n = max_n.unwrap_or(default_max);
    if max_n < first {
        return Err(Failure::input(format!("--max-n must be at least {first}")));
    }
    let budget = budget_from_env(force)?;
    if brute {
        budget.admit(max_n as usize)?;
    }
    // Compute every row before printing so a late error leaves no partial table.
    let mut rows = Vec::new();
    for n in first..=max_n {
        let mut cells = vec![n.to_string()];
        let formula = match kind {
            TableKind::Chains => Some(chain_total(n).map_err(Failure::input)?),
            TableKind::Quasi if n >= 5 => Some(quasi_total(n).map_err(Failure::input)?),
            TableKind::Quasi => None,
        };
        cells.push(formula.map_or(DASH.to_string(), |f| f.to_string()));
        if brute {
            let l = match kind {
                TableKind::Chains => Lattice::chain(n as usize),
                TableKind::Quasi => Lattice::quasi_antichain(n as usize - 2),
            }
            .map_err(Failure::input)?;
            let q = CountQuery::new(&l, Weight::One);
            let count = enumerate_ops(&q, options(budget, parallel), None)?.count;
            cells.push(count.to_string());
            cells.push(match formula {
                Some(f) if f == count => "yes".into(),
                Some(_) => "NO".into(),
                None => NO_FORMULA_AT_4.into(),
            });
        }
        if kind == TableKind::Quasi {
            if n >= 5 {
                cells.push(quasi_cubic_term(n).map_err(Failure::input)?.to_string());
                cells.push(quasi_binomial_sum(n).map_err(Failure::input)?.to_string());
            } else {
                cells.push(DASH.into());
                cells.push(DASH.into());
            }
        }
        rows.push(cells.join("\t"));
    }
    let mut header = vec!["n", "formula"];
    if brute {
        header.extend(["brute", "match"]);
    }
    if kind == TableKind::Quasi {
        header.extend(["cubic_addend", "binomial_addend"]);
    }
    writeln!(out, "{}", header.join("\t"))?;
    for r in &rows {
        writeln!(out, "{r}")?;
    }
    let mismatch = rows.iter().any(|r| r.split('\t').any(|c| c == "NO"));
    Ok(if mismatch { EXIT_NEGATIVE } else { EXIT_OK })
}

// ---------------------------------------------------------------- verify

pub const SUITES: [&str; 9] = [
    "weight-equivalence",
    "decreasing",
    "distributivity",
    "characterizations",
    "chain-counts",
    "quasi-classification",
    "lemmas",
    "counterexamples",
    "boundary",
];

fn suite_reports(suite: &str, slow: bool) -> Result<Vec<VerificationReport>, Failure> {
    let cat = catalog(slow);
    let per_lattice = |f: &dyn Fn(&Lattice) -> Result<VerificationReport, HarnessError>| {
        cat.iter()
            .map(|e| {
                f(&e.lattice).map(|mut r| {
                    r.lattice_desc = e.name.clone();
                    r
                })
            })
            .collect::<Result<Vec<_>, _>>()
    };
    let reports = match suite {
        "weight-equivalence" => {
            per_lattice(&|l| verify_weight_equivalence(l, EquivalenceMode::Auto))?
        }
        "decreasing" => per_lattice(&verify_decreasing_characterization)?,
        "distributivity" => per_lattice(&verify_distributivity_characterization)?,
        "characterizations" => per_lattice(&verify_characterizations)?,
        "lemmas" => per_lattice(&verify_supporting_lemmas)?,
        "boundary" => per_lattice(&verify_trivial_boundary)?,
        "chain-counts" => {
            let brute_max = if slow { 8 } else { 6 };
            (1..=10)
                .map(|n| verify_chain_counts(n, n <= brute_max))
                .collect::<Result<Vec<_>, _>>()?
        }
        "quasi-classification" => {
            let max = if slow { 7 } else { 6 };
            (4..=max)
                .map(verify_quasi_classification)
                .collect::<Result<Vec<_>, _>>()?
        }
        "counterexamples" => vec![verify_counterexamples()?],
        other => {
            return Err(Failure::input(format!(
                "unknown suite {other:?}; expected one of {} or all",
                SUITES.join(", ")
            )))
        }
    };
    Ok(reports)
}

pub fn verify(out: &mut dyn Write, suite: &str, slow: bool, verbose: bool) -> CmdResult {
    let suites: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else {
        vec![suite]
    };
    let (mut pass, mut fail) = (0, 0);
    for s in suites {
        for r in suite_reports(s, slow)? {
            writeln!(out, "{s}: {r}")?;
            let show = verbose || !r.passed();
            if show {
                for n in &r.notes {
                    writeln!(out, "    {n}")?;
                }
            }
            if r.passed() {
                pass += 1;
            } else {
                fail += 1;
            }
        }
    }
    writeln!(out, "{pass} passed, {fail} failed")?;
    Ok(if fail == 0 { EXIT_OK } else { EXIT_NEGATIVE })
}
