use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use reidemeister::diagram::KnotDiagram;
use reidemeister::error::{FamilyError, InvariantError, MoveError, ParseError};
use reidemeister::family;
use reidemeister::format;
use reidemeister::half::Half;
use reidemeister::invariants::{
    self, corollary_quantities_of, cowrithe_of, BoundReport, Quantity, DEFAULT_BUDGET,
};
use reidemeister::moves::{self, MoveKind};

#[derive(Parser)]
#[command(name = "reidemeister", version, about = "Reidemeister moves and Arnold-invariant bounds on knot diagrams")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Oracle {
    Auto,
    On,
    Off,
}

/// Largest n for which `--oracle auto` runs the reduction.
const AUTO_ORACLE_MAX: usize = 5;

#[derive(Subcommand)]
enum Command {
    /// Write a curve or diagram file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Print J⁺/2+St, J⁻/2+St, the writhe and the derived quantities.
    Invariants {
        file: String,
        /// Second Conway coefficient of the knot.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        c2: i64,
        /// States the reduction search may visit.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Run a move script on a diagram; prints the result with the trace as comments.
    Apply { diagram: String, script: String },
    /// Check the unknotting script of D_n end to end.
    Verify {
        n: usize,
        /// Also compute the values of D_n by independent reduction; `auto`
        /// does so for n <= 5.
        #[arg(long, value_enum, default_value_t = Oracle::Auto)]
        oracle: Oracle,
    },
    /// Lower bound on the number of moves between two diagrams.
    Bound {
        first: String,
        second: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Print the unknotting script of D_n.
    Script {
        n: usize,
        /// Print the reversed script, building D_n from the trivial diagram.
        #[arg(long)]
        construct: bool,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// The curve Γ_n.
    Gamma { n: usize },
    /// The ascending diagram D_n.
    Dn { n: usize },
    /// Closure of a braid word such as "-1 -2 -1 2".
    Braid {
        strands: usize,
        #[arg(allow_hyphen_values = true, num_args = 1.., required = true)]
        word: Vec<String>,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn usage(msg: impl ToString) -> Self {
        Failure { code: 2, msg: msg.to_string() }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::usage(e)
    }
}

impl From<MoveError> for Failure {
    fn from(e: MoveError) -> Self {
        let msg = match e.script_index() {
            Some(i) => format!("index {i}: {e}"),
            None => e.to_string(),
        };
        Failure { code: 4, msg }
    }
}

impl From<InvariantError> for Failure {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::ReductionFailed { .. } => Failure { code: 3, msg: e.to_string() },
            InvariantError::Move(m) => m.into(),
            InvariantError::InvalidCertificate { .. } => Failure { code: 1, msg: e.to_string() },
        }
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::OutOfRange(..) | FamilyError::Diagram(_) => Failure::usage(e),
            FamilyError::Move(m) => m.into(),
            FamilyError::Invariant(i) => i.into(),
            FamilyError::CheckFailed { .. } | FamilyError::ScriptSearchFailed(_) => {
                Failure { code: 1, msg: e.to_string() }
            }
        }
    }
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{path}: {e}")))
}

fn read_diagram(path: &str) -> Result<KnotDiagram, Failure> {
    format::parse_diagram(&read(path)?).map_err(|e| Failure::usage(format!("{path}: {e}")))
}

fn gen(kind: GenKind) -> Result<String, Failure> {
    Ok(match kind {
        GenKind::Gamma { n } => format::write_curve(&family::gamma_curve(n)?),
        GenKind::Dn { n } => format::write_diagram(&family::dn_diagram(n)?),
        GenKind::Braid { strands, word } => {
            let word = word
                .iter()
                .flat_map(|w| w.split_whitespace())
                .map(|w| w.parse::<i64>().map_err(|_| Failure::usage(format!("bad generator `{w}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            let d = KnotDiagram::from_braid(&word, strands).map_err(Failure::usage)?;
            format::write_diagram(&d)
        }
    })
}

fn invariants_report(path: &str, c2: i64, budget: usize) -> Result<String, Failure> {
    let d = read_diagram(path)?;
    let s = invariants::invariants_with_budget(&d, budget)?;
    let x = cowrithe_of(&s, c2);
    let (lo, hi) = corollary_quantities_of(&s, c2);
    let lines = [
        format!("J+/2+St = {}", s.get(Quantity::A)),
        format!("J-/2+St = {}", Half::from_doubled(s.b2)),
        format!("w = {}", s.w),
        format!("n = {}", s.n),
        format!("J-/2+St-w/2 = {}", s.get(Quantity::BMinus)),
        format!("J-/2+St+w/2 = {}", s.get(Quantity::BPlus)),
        format!("c2 = {c2}"),
        format!("cowrithe = {x}"),
        format!("cowrithe+n/2-w/2 = {lo}"),
        format!("cowrithe+n/2+w/2 = {hi}"),
    ];
    Ok(lines.join("\n") + "\n")
}

fn apply(diagram: &str, script: &str) -> Result<String, Failure> {
    let d = read_diagram(diagram)?;
    let script = moves::parse_script(&read(script)?).map_err(|e| Failure::usage(format!("{script}: {e}")))?;
    let (end, log) = moves::run_script(&d, &script)?;
    let mut out = String::new();
    for (i, c) in log.iter().enumerate() {
        out.push_str(&format!("# {i} {} ({})\n", c.mv, c.class));
    }
    let count = |k| log.iter().filter(|c| c.class.kind() == k).count();
    out.push_str(&format!(
        "# RI={} RII={} RIII={}\n",
        count(MoveKind::RI),
        count(MoveKind::RII),
        count(MoveKind::RIII)
    ));
    out.push_str(&format::write_diagram(&end));
    Ok(out)
}

fn verify(n: usize, oracle: bool) -> Result<String, Failure> {
    let report = family::theorem_report(n, oracle)?;
    let text = format!("{report}\n");
    if report.ok() {
        Ok(text)
    } else {
        print!("{text}");
        let msg = report.check().err().map(|e| e.to_string()).unwrap_or_default();
        Err(Failure { code: 1, msg })
    }
}

fn bound(first: &str, second: &str, budget: usize) -> Result<String, Failure> {
    let a = invariants::invariants_with_budget(&read_diagram(first)?, budget)?;
    let b = invariants::invariants_with_budget(&read_diagram(second)?, budget)?;
    Ok(format!("{}\n", BoundReport::between(a, b)))
}

fn script(n: usize, construct: bool) -> Result<String, Failure> {
    if n < 1 {
        return Err(FamilyError::OutOfRange(n, 1).into());
    }
    let s = if construct { family::construction_script(n)? } else { family::unknotting_script(n)? };
    Ok(moves::format_script(&s))
}

fn run(cli: Cli) -> Result<String, Failure> {
    let Format::Text = cli.format;
    match cli.command {
        Command::Gen { kind } => gen(kind),
        Command::Invariants { file, c2, budget } => invariants_report(&file, c2, budget),
        Command::Apply { diagram, script } => apply(&diagram, &script),
        Command::Verify { n, oracle } => {
            let run = match oracle {
                Oracle::Auto => n <= AUTO_ORACLE_MAX,
                Oracle::On => true,
                Oracle::Off => false,
            };
            verify(n, run)
        }
        Command::Bound { first, second, budget } => bound(&first, &second, budget),
        Command::Script { n, construct } => script(n, construct),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.msg.lines().next().unwrap_or(""));
            ExitCode::from(f.code)
        }
    }
}
