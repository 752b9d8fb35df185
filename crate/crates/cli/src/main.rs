//! `ahseries`: coefficient tables and identity reports.
//!
//! Exit status is 0 when everything holds, 1 when an identity fails and 2 on
//! bad input.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use ahseries::{
    artin_hasse_rational, coefficient_grid, reduce_rational_mod_p, CoeffCell, Error, Identity,
    Prime, Status, VerificationReport, VerifyInputs,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "ahseries",
    version,
    about = "Artin-Hasse series modulo p and their identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rational coefficients u_n and their residues a_n.
    Coeffs {
        #[command(flatten)]
        common: Common,
        /// Number of rows; defaults to the precision.
        #[arg(long)]
        count: Option<usize>,
    },
    /// Run one identity, or all of them.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Identity name, or `all`.
        #[arg(long, default_value = "all")]
        identity: String,
        /// Add one to the coefficient of E_p at this degree before checking.
        #[arg(long, value_name = "DEGREE")]
        perturb: Option<usize>,
    },
    /// The p x p grid of a_{rp+k}, from the recursion and the closed form.
    Table {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long)]
    prime: u64,
    #[arg(long, env = "AHSERIES_PRECISION", default_value_t = 200)]
    precision: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Coeffs { common, count } => coeffs(&common, count),
        Command::Verify {
            common,
            identity,
            perturb,
        } => verify(&common, &identity, perturb),
        Command::Table { common } => table(&common),
    }
}

impl Common {
    fn prime(&self) -> Result<Prime, Failure> {
        if self.precision < 1 {
            return Err(Failure::Usage("precision must be at least 1".into()));
        }
        Ok(Prime::new(self.prime)?)
    }

    fn sink(&self) -> io::Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

fn write_csv<T: Serialize>(out: Box<dyn Write>, rows: &[T]) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

fn write_json<T: Serialize>(mut out: Box<dyn Write>, value: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct CoeffRow {
    n: usize,
    numerator: String,
    denominator: String,
    residue: u64,
}

fn coeffs(common: &Common, count: Option<usize>) -> Outcome {
    let p = common.prime()?;
    let count = count.unwrap_or(common.precision);
    if count < 1 {
        return Err(Failure::Usage("count must be at least 1".into()));
    }
    let ah = artin_hasse_rational(p, count);
    let rows = ah
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, u)| {
            Ok(CoeffRow {
                n,
                numerator: u.numer().to_string(),
                denominator: u.denom().to_string(),
                residue: reduce_rational_mod_p(u, p)?.value(),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let mut out = common.sink()?;
    match common.format {
        Format::Csv => write_csv(out, &rows)?,
        Format::Json => write_json(out, &rows)?,
        Format::Text => {
            for r in &rows {
                let u = if r.denominator == "1" {
                    r.numerator.clone()
                } else {
                    format!("{}/{}", r.numerator, r.denominator)
                };
                writeln!(out, "{:>5}  {:>3}  {}", r.n, r.residue, u)?;
            }
            out.flush()?;
        }
    }
    Ok(true)
}

#[derive(Serialize)]
struct ReportRow<'a> {
    identity: &'a str,
    prime: u64,
    precision: Option<usize>,
    status: Status,
    holds: bool,
    first_discrepancy_degree: Option<usize>,
    witness_term: Option<&'a str>,
    witness_lhs: Option<&'a str>,
    witness_rhs: Option<&'a str>,
    note: Option<&'a str>,
}

impl<'a> From<&'a VerificationReport> for ReportRow<'a> {
    fn from(r: &'a VerificationReport) -> Self {
        let w = r.witness.as_ref();
        ReportRow {
            identity: r.identity.name(),
            prime: r.prime,
            precision: r.precision,
            status: r.status,
            holds: r.holds,
            first_discrepancy_degree: r.first_discrepancy_degree,
            witness_term: w.map(|w| w.term.as_str()),
            witness_lhs: w.map(|w| w.lhs.as_str()),
            witness_rhs: w.map(|w| w.rhs.as_str()),
            note: r.note.as_deref(),
        }
    }
}

fn report_line(r: &VerificationReport) -> String {
    let at = match r.precision {
        Some(n) => format!("p={} N={}", r.prime, n),
        None => format!("p={} exact", r.prime),
    };
    let verdict = match (r.status, &r.witness) {
        (Status::Holds, _) => "holds".to_string(),
        (Status::Fails, Some(w)) => format!("FAILS at {}: {} vs {}", w.term, w.lhs, w.rhs),
        (Status::Fails, None) => "FAILS".to_string(),
        (Status::Skipped, _) => "skipped".to_string(),
        (Status::InsufficientPrecision, _) => "insufficient precision".to_string(),
    };
    match &r.note {
        Some(note) if r.status != Status::Fails => {
            format!("{:<12} {at:<14} {verdict} ({note})", r.identity.name())
        }
        _ => format!("{:<12} {at:<14} {verdict}", r.identity.name()),
    }
}

fn verify(common: &Common, identity: &str, perturb: Option<usize>) -> Outcome {
    let p = common.prime()?;
    let selected = match identity {
        "all" => None,
        name => Some(name.parse::<Identity>()?),
    };
    let mut inputs = VerifyInputs::build(p, common.precision)?;
    if let Some(d) = perturb {
        if d >= inputs.ep.precision() {
            return Err(Failure::Usage(format!(
                "perturbed degree {d} is beyond the precision"
            )));
        }
        inputs.perturb(d)?;
    }
    let reports = match selected {
        Some(id) => vec![inputs.verify(id)?],
        None => inputs.verify_all()?,
    };
    if let Some(r) = reports
        .iter()
        .find(|r| r.status == Status::InsufficientPrecision)
    {
        return Err(Failure::Usage(format!(
            "{}: {}",
            r.identity,
            r.note.as_deref().unwrap_or_default()
        )));
    }
    for r in &reports {
        eprintln!("{}: {:.3} s", r.identity, r.elapsed.as_secs_f64());
    }

    let mut out = common.sink()?;
    match common.format {
        Format::Json => write_json(out, &reports)?,
        Format::Csv => write_csv(
            out,
            &reports.iter().map(ReportRow::from).collect::<Vec<_>>(),
        )?,
        Format::Text => {
            for r in &reports {
                writeln!(out, "{}", report_line(r))?;
            }
            out.flush()?;
        }
    }
    Ok(reports.iter().all(|r| r.status != Status::Fails))
}

fn table(common: &Common) -> Outcome {
    let p = common.prime()?;
    p.require_odd()?;
    let pu = p.get() as usize;
    let ep = artin_hasse_rational(p, pu * pu).reduce_mod_p(p)?;
    let cells = coefficient_grid(&ep, true)?;
    let all_match = cells.iter().all(|c| c.matches);

    let mut out = common.sink()?;
    match common.format {
        Format::Csv => write_csv(out, &cells)?,
        Format::Json => write_json(out, &cells)?,
        Format::Text => {
            write_grid(&mut out, pu, &cells)?;
            out.flush()?;
        }
    }
    Ok(all_match)
}

/// Rows are `r`, columns `k`; each entry is `recursion/closed form`, starred
/// on a mismatch.
fn write_grid(out: &mut dyn Write, p: usize, cells: &[CoeffCell]) -> io::Result<()> {
    let width = 2 * p.to_string().len() + 2;
    write!(out, "r\\k")?;
    for k in 0..p {
        write!(out, " {k:>width$}")?;
    }
    writeln!(out)?;
    for row in cells.chunks(p) {
        write!(out, "{:>3}", row[0].r)?;
        for c in row {
            let mark = if c.matches { ' ' } else { '*' };
            let entry = format!("{}/{}{mark}", c.recursion, c.closed_form);
            write!(out, " {entry:>width$}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}
