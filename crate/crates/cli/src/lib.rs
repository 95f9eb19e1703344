//! Command-line front end for `hankelforge`.

pub mod output;
pub mod parse;

use clap::{Args, Parser, Subcommand};
use hankelforge::forms::{adjointness_report, transvect_with, SumStart};
use hankelforge::hankel::solve_for_a_trace;
use hankelforge::identities::{identity_a_grid, identity_b_grid, BForm, IdentityResult};
use hankelforge::suites::{run_suites, Suite};
use hankelforge::sym_tensor::{build_v, section_sigma};
use hankelforge::tensor_rep::lowest_weight;
use hankelforge::{apply_b, matrix_window, LaurentPoly, Section};

pub use output::{parse_csv_grid, rational_json, Cell, Entries, Format, Record, Report};
pub use parse::{parse_symbol, ParseError, SymbolExpr};

#[derive(Debug, Parser)]
#[command(
    name = "hankelforge",
    version,
    about = "Exact higher-order Hankel operators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct FormatArg {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Finite window of the operator matrix: entry (m, n) is the coefficient
    /// of z^m in B(x) z^-(n+1).
    Matrix {
        #[arg(long)]
        s: u32,
        #[arg(long, allow_hyphen_values = true)]
        symbol: String,
        #[arg(long, default_value_t = 6)]
        rows: usize,
        #[arg(long, default_value_t = 6)]
        cols: usize,
        /// Print the highest row first.
        #[arg(long)]
        paper_orientation: bool,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Applies B(x) to an input with only negative powers.
    Apply {
        #[arg(long)]
        s: u32,
        #[arg(long, allow_hyphen_values = true)]
        symbol: String,
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        #[command(flatten)]
        format: FormatArg,
    },
    /// The tensor v_(2s+1), or the cross-section of z^p when --p is given.
    Section {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        p: Option<u32>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Coefficients of the lowest-weight vector l_s in the tensor square.
    Lowest {
        #[arg(long)]
        s: u32,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Transvectant of two half-densities.
    Transvect {
        #[arg(long)]
        s: u32,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        /// Start the defining sum at j = 1.
        #[arg(long)]
        from_one: bool,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Proportionality constant between the Hankel form and the operator.
    Adjoint {
        #[arg(long)]
        s: u32,
        /// Largest symbol exponent swept; defaults to 2s + 9.
        #[arg(long)]
        k_max: Option<u32>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Evaluates a binomial identity family over a grid, one JSON line per point.
    Identity {
        #[arg(long, value_parser = ["A", "B"])]
        family: String,
        #[arg(long, default_value_t = 8)]
        max_s: i64,
        /// Family A: k runs over 2s+1 ..= 2s+span.
        #[arg(long, default_value_t = 12)]
        k_span: i64,
        /// Family B: bound on i and j.
        #[arg(long, default_value_t = 12)]
        max_ij: i64,
        /// Family B: use C(s, l) in place of C(s, j) on the right.
        #[arg(long)]
        corrected: bool,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Operator coefficients from the factorized linear solve.
    SolveA {
        #[arg(long)]
        s: u32,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Runs verification suites.
    Verify {
        /// Suite name or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 6)]
        max_s: u32,
        #[command(flatten)]
        format: FormatArg,
    },
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        let mut stderr = msg.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Self {
            code: 2,
            stdout: String::new(),
            stderr,
        }
    }
}

fn symbol(flag: &str, text: &str) -> Result<LaurentPoly, Outcome> {
    parse_symbol(text).map(|e| e.poly).map_err(|e| {
        Outcome::usage(format!(
            "--{flag}: {e}\n  {text}\n  {}^",
            " ".repeat(e.position)
        ))
    })
}

fn lib<T>(r: hankelforge::Result<T>) -> Result<T, Outcome> {
    r.map_err(|e| Outcome::usage(format!("error: {e}")))
}

fn poly_records(p: &LaurentPoly) -> Vec<Record> {
    p.terms()
        .map(|(e, c)| vec![("exp", Cell::Int(e)), ("coeff", Cell::Rat(c.clone()))])
        .collect()
}

fn identity_record(r: &IdentityResult) -> Record {
    vec![
        ("family", Cell::Text(r.family.to_string())),
        ("params", Cell::Ints(r.params.clone())),
        ("lhs", Cell::Rat(r.lhs.clone())),
        ("rhs", Cell::Rat(r.rhs.clone())),
        ("equal", Cell::Bool(r.equal)),
    ]
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome::usage(text)
            }
        }
    }
}

pub fn execute(cmd: Command) -> Outcome {
    match try_execute(cmd) {
        Ok(o) | Err(o) => o,
    }
}

fn try_execute(cmd: Command) -> Result<Outcome, Outcome> {
    let out = match cmd {
        Command::Matrix {
            s,
            symbol: text,
            rows,
            cols,
            paper_orientation,
            format,
        } => {
            let x = symbol("symbol", &text)?;
            let w = lib(matrix_window(s, &x, rows, cols))?;
            let grid = if paper_orientation {
                w.bottom_up()
            } else {
                w.entries
            };
            let r = Report {
                s,
                kind: "matrix",
                entries: Entries::Grid(grid),
            };
            Outcome::ok(r.render(format.format))
        }
        Command::Apply {
            s,
            symbol: text,
            input,
            format,
        } => {
            let x = symbol("symbol", &text)?;
            let f = symbol("input", &input)?;
            let image = lib(apply_b(s, &x, &Section::half(f)))?;
            Outcome::ok(
                Report::records(s, "apply", poly_records(&image.coeff)).render(format.format),
            )
        }
        Command::Section { s, p, format } => {
            let t = match p {
                Some(p) => lib(section_sigma(s, p))?,
                None => lib(build_v(s))?,
            };
            let recs = t
                .terms()
                .map(|(key, c)| {
                    let key = key.iter().map(|&v| v as i64).collect();
                    vec![("powers", Cell::Ints(key)), ("coeff", Cell::Rat(c.clone()))]
                })
                .collect();
            Outcome::ok(Report::records(s, "section", recs).render(format.format))
        }
        Command::Lowest { s, format } => {
            let recs = lowest_weight(s)
                .terms()
                .map(|((i, j), c)| {
                    vec![
                        ("i", Cell::Int(i as i64)),
                        ("j", Cell::Int(j as i64)),
                        ("coeff", Cell::Rat(c.clone())),
                    ]
                })
                .collect();
            Outcome::ok(Report::records(s, "lowest", recs).render(format.format))
        }
        Command::Transvect {
            s,
            f,
            g,
            from_one,
            format,
        } => {
            let f = symbol("f", &f)?;
            let g = symbol("g", &g)?;
            let start = if from_one {
                SumStart::One
            } else {
                SumStart::Zero
            };
            let t = transvect_with(s, &f, &g, start);
            Outcome::ok(
                Report::records(s, "transvect", poly_records(&t.coeff)).render(format.format),
            )
        }
        Command::Adjoint { s, k_max, format } => {
            let rep = lib(adjointness_report(s, k_max.unwrap_or(2 * s + 9)))?;
            let lambda = match &rep.lambda {
                Some(l) => Cell::Rat(l.clone()),
                None => Cell::Text("undefined".into()),
            };
            let rec = vec![
                ("lambda", lambda),
                ("pairing", Cell::Text(rep.pairing.name().into())),
                ("samples", Cell::Int(rep.samples.len() as i64)),
                ("proportional", Cell::Bool(rep.is_proportional())),
            ];
            let mut o = Outcome::ok(Report::records(s, "adjoint", vec![rec]).render(format.format));
            if !rep.is_proportional() {
                o.code = 1;
            }
            o
        }
        Command::Identity {
            family,
            max_s,
            k_span,
            max_ij,
            corrected,
            format,
        } => {
            let results = if family == "A" {
                lib(identity_a_grid(max_s, k_span))?
            } else {
                let form = if corrected {
                    BForm::Corrected
                } else {
                    BForm::Printed
                };
                lib(identity_b_grid(max_s, max_ij, form))?
            };
            let recs: Vec<Record> = results.iter().map(identity_record).collect();
            let stdout = match format.format {
                Format::Json => recs
                    .iter()
                    .map(|r| format!("{}\n", output::record_json(r)))
                    .collect(),
                Format::Csv => Report::records(max_s.max(0) as u32, "identity", recs).to_csv(),
            };
            let mut o = Outcome::ok(stdout);
            if results.iter().any(|r| !r.equal) {
                o.code = 1;
            }
            o
        }
        Command::SolveA { s, format } => {
            let t = match solve_for_a_trace(s) {
                Ok(t) => t,
                Err(e @ hankelforge::Error::ClosedFormMismatch(_)) => {
                    return Err(Outcome {
                        code: 1,
                        stdout: String::new(),
                        stderr: format!("error: {e}\n"),
                    })
                }
                Err(e) => return Err(Outcome::usage(format!("error: {e}"))),
            };
            let recs = (0..=s as usize)
                .map(|j| {
                    vec![
                        ("j", Cell::Int(j as i64)),
                        ("a", Cell::Rat(t.a[j].clone())),
                        ("rhs", Cell::Rat(t.rhs[j].clone())),
                        ("after_lower", Cell::Rat(t.after_lower[j].clone())),
                        ("after_upper", Cell::Rat(t.after_upper[j].clone())),
                    ]
                })
                .collect();
            Outcome::ok(Report::records(s, "solve-a", recs).render(format.format))
        }
        Command::Verify {
            suite,
            max_s,
            format,
        } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse().map_err(Outcome::usage)?]
            };
            let reports = run_suites(&suites, max_s);
            let mut stderr = String::new();
            let recs = reports
                .iter()
                .map(|r| {
                    for f in r.failures.iter().take(5) {
                        stderr.push_str(&format!("{}: {f}\n", r.name));
                    }
                    if r.failures.len() > 5 {
                        stderr.push_str(&format!(
                            "{}: ... {} more\n",
                            r.name,
                            r.failures.len() - 5
                        ));
                    }
                    let measured = r
                        .measured
                        .iter()
                        .map(|(k, v)| format!("{k} = {v}"))
                        .collect::<Vec<_>>()
                        .join("; ");
                    vec![
                        ("suite", Cell::Text(r.name.clone())),
                        ("passed", Cell::Bool(r.passed())),
                        ("checks", Cell::Int(r.checks as i64)),
                        ("failures", Cell::Int(r.failures.len() as i64)),
                        ("measured", Cell::Text(measured)),
                    ]
                })
                .collect();
            let failed = reports.iter().any(|r| !r.passed());
            Outcome {
                code: if failed { 1 } else { 0 },
                stdout: Report::records(max_s, "verify", recs).render(format.format),
                stderr,
            }
        }
    };
    Ok(out)
}
