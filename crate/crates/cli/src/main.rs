use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use eisenlab::catalog::{
    classify, enumerate, length_measure, Compact, CubicEquation, EnumerateOptions, FilterOutcome,
    PipelineOptions, DEFAULT_MODULI,
};
use eisenlab::character::{char_primary_with, char_prime, is_cubic_residue_oracle};
use eisenlab::factor::{factor_with, is_eisenstein_prime};
use eisenlab::par::{self, Exec};
use eisenlab::proof::{self, SweepOptions};
use eisenlab::rational::FactorBudget;
use eisenlab::search::{search_compact, SearchOptions};
use eisenlab::{EisensteinInt, Error};

const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "eisenlab",
    version,
    about = "Eisenstein-integer arithmetic, cubic residue symbols, and small cubic Diophantine equations"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Seed for randomized sweeps.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Worker threads; the EISENLAB_WORKERS variable takes precedence.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Trial-division limit for rational factoring.
    #[arg(long, default_value_t = 1_000_000, global = true)]
    factor_budget: u64,
    /// Pollard-rho iterations allowed per factoring call.
    #[arg(long, default_value_t = 1 << 24, global = true)]
    rho_budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cubic residue character (alpha/eta) for a prime or primary eta.
    Char {
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        #[arg(allow_hyphen_values = true)]
        eta: String,
        /// Also decide cubic residuosity by exhaustive search when eta is
        /// prime with norm at most this bound.
        #[arg(long)]
        oracle_bound: Option<u64>,
    },
    /// Factorization into a unit, a power of 1-w, and primary primes.
    Factor {
        #[arg(allow_hyphen_values = true)]
        alpha: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Smallest z in the trace range.
        #[arg(long, default_value_t = -10_000, allow_negative_numbers = true)]
        z_lo: i64,
        /// Largest z in the trace range.
        #[arg(long, default_value_t = 10_000, allow_negative_numbers = true)]
        z_hi: i64,
        /// Trial-division limit when factoring b in the trace checks.
        #[arg(long, default_value_t = 1_000_000)]
        factor_bound: u64,
        /// Half-width of the (x, y) grid for the companion symbol checks.
        #[arg(long, default_value_t = 100)]
        grid_bound: i64,
        /// Random pairs of primary primes in the reciprocity sweep.
        #[arg(long, default_value_t = 500)]
        prime_pairs: usize,
        /// Random pairs of primary composites in the reciprocity sweep.
        #[arg(long, default_value_t = 200)]
        composite_pairs: usize,
    },
    /// Length L and l = log2 L of an equation.
    Length {
        #[arg(allow_hyphen_values = true)]
        equation: String,
    },
    /// List one representative per equivalence class.
    Enumerate {
        /// Largest length L to list.
        #[arg(long = "max-L")]
        max_l: u64,
        /// Fewest variables an equation may have.
        #[arg(long, default_value_t = 0)]
        min_vars: usize,
        /// Only equations of length exactly max-L.
        #[arg(long)]
        exact: bool,
    },
    /// Screen enumerated equations and report the survivors.
    Classify {
        /// Largest length L to classify.
        #[arg(long = "max-L")]
        max_l: u64,
        /// Largest box radius for the solution search.
        #[arg(long)]
        search_bound: i64,
        /// Fewest variables an equation may have.
        #[arg(long, default_value_t = 3)]
        min_vars: usize,
        /// Only equations of length exactly max-L.
        #[arg(long)]
        exact: bool,
        /// Comma-separated moduli for the congruence checks.
        #[arg(long, value_delimiter = ',')]
        moduli: Option<Vec<u64>>,
        /// Root-finding steps per equation in the bounded search.
        #[arg(long, default_value_t = 1 << 20)]
        effort: u64,
    },
    /// All integer solutions with every coordinate at most bound in
    /// absolute value.
    Search {
        #[arg(allow_hyphen_values = true)]
        equation: String,
        #[arg(long)]
        bound: i64,
        /// Comma-separated moduli for the residue sieve.
        #[arg(long, value_delimiter = ',')]
        sieve: Vec<u64>,
        /// Enumerate every coordinate instead of solving for one.
        #[arg(long)]
        exhaustive: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Main,
    Eq14,
    Solutions,
    Reciprocity,
}

/// Exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Ok = 0,
    Failed = 1,
    Usage = 2,
    Budget = 3,
}

fn status_of(e: &Error) -> Status {
    match e {
        Error::FactoringBudgetExceeded(_)
        | Error::OracleBoundExceeded { .. }
        | Error::SweepBudgetExceeded { .. }
        | Error::SearchOverflow(_) => Status::Budget,
        _ => Status::Usage,
    }
}

struct Out {
    format: Format,
    w: Box<dyn Write>,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) -> io::Result<()> {
        writeln!(self.w, "{}", s.as_ref())
    }

    /// Emits `v` with the schema tag first.
    fn json(&mut self, v: Value) -> io::Result<()> {
        let mut m = Map::new();
        m.insert("schema".into(), json!(SCHEMA));
        if let Value::Object(o) = v {
            m.extend(o);
        }
        self.line(serde_json::to_string(&Value::Object(m)).expect("serializable"))
    }
}

fn parse_int(s: &str) -> Result<EisensteinInt, Error> {
    s.parse()
}

fn parse_eq(s: &str) -> Result<CubicEquation, Error> {
    s.parse()
}

fn budget(cli: &Cli) -> FactorBudget {
    FactorBudget {
        trial_limit: cli.factor_budget,
        rho_iterations: cli.rho_budget,
    }
}

fn run(cli: &Cli, out: &mut Out) -> Result<Status, Error> {
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    let io = |e: io::Error| Error::Parse(format!("write failed: {e}"));
    match &cli.command {
        Command::Char {
            alpha,
            eta,
            oracle_bound,
        } => {
            let a = parse_int(alpha)?;
            let e = parse_int(eta)?;
            let value = if is_eisenstein_prime(&e) {
                char_prime(&a, &e)?
            } else {
                char_primary_with(&a, &e, &budget(cli))?
            };
            let residue = match oracle_bound {
                Some(b) if !e.divides(&a) => Some(is_cubic_residue_oracle(&a, &e, *b)?),
                _ => None,
            };
            match out.format {
                Format::Json => out.json(json!({
                    "command": "char",
                    "alpha": a.to_string(),
                    "eta": e.to_string(),
                    "value": value.to_string(),
                    "cubic_residue": residue,
                })),
                Format::Csv => out
                    .line("alpha,eta,value")
                    .and_then(|_| out.line(format!("{a},{e},{value}"))),
                Format::Text => out.line(value.to_string()),
            }
            .map_err(io)?;
            Ok(Status::Ok)
        }
        Command::Factor { alpha } => {
            let a = parse_int(alpha)?;
            let f = factor_with(&a, &budget(cli))?;
            match out.format {
                Format::Json => {
                    let mut v = f.to_json();
                    v["command"] = json!("factor");
                    v["input"] = json!(a.to_string());
                    out.json(v)
                }
                Format::Csv => {
                    let mut r = out.line("factor,exponent");
                    r = r.and_then(|_| out.line(format!("{},1", f.unit)));
                    if f.lambda_exp > 0 {
                        r = r.and_then(|_| out.line(format!("1-w,{}", f.lambda_exp)));
                    }
                    for (p, e) in &f.factors {
                        r = r.and_then(|_| out.line(format!("{p},{e}")));
                    }
                    r
                }
                Format::Text => {
                    let mut parts = vec![f.unit.to_string()];
                    if f.lambda_exp > 0 {
                        parts.push(format!("(1-w)^{}", f.lambda_exp));
                    }
                    for (p, e) in &f.factors {
                        parts.push(format!("({p})^{e}"));
                    }
                    out.line(parts.join(" * "))
                }
            }
            .map_err(io)?;
            Ok(Status::Ok)
        }
        Command::Length { equation } => {
            let eq = parse_eq(equation)?;
            let l = length_measure(&eq);
            match out.format {
                Format::Json => out.json(json!({
                    "command": "length",
                    "eq": eq.to_string(),
                    "L": l.exact.to_string(),
                    "l": l.l_display(),
                })),
                Format::Csv => out
                    .line("eq,L,l")
                    .and_then(|_| out.line(format!("{eq},{},{:.6}", l.exact, l.l_display()))),
                Format::Text => out.line(l.to_string()),
            }
            .map_err(io)?;
            Ok(Status::Ok)
        }
        Command::Enumerate {
            max_l,
            min_vars,
            exact,
        } => {
            let opts = EnumerateOptions::new(*max_l, *min_vars)
                .exact(*exact)
                .exec(exec);
            let all = enumerate(&opts);
            if out.format == Format::Csv {
                out.line("eq,L,l").map_err(io)?;
            }
            for c in &all {
                let l = c.length();
                let row = match out.format {
                    Format::Json => {
                        out.json(json!({"eq": c.to_string(), "L": l, "l": (l as f64).log2()}))
                    }
                    Format::Csv => out.line(format!("{c},{l},{:.6}", (l as f64).log2())),
                    Format::Text => out.line(format!("{l}\t{c}")),
                };
                row.map_err(io)?;
            }
            match out.format {
                Format::Json => out.json(json!({"summary": {"count": all.len()}})),
                Format::Csv => Ok(()),
                Format::Text => out.line(format!("{} classes", all.len())),
            }
            .map_err(io)?;
            Ok(Status::Ok)
        }
        Command::Classify {
            max_l,
            search_bound,
            min_vars,
            exact,
            moduli,
            effort,
        } => {
            if *search_bound < 1 {
                return Err(Error::PreconditionViolated(
                    "search bound must be positive".into(),
                ));
            }
            let mut opts = PipelineOptions::new(*max_l, *min_vars, *search_bound)
                .exact(*exact)
                .exec(exec)
                .search_effort(*effort);
            opts.moduli = moduli.clone().unwrap_or_else(|| DEFAULT_MODULI.to_vec());
            let report = classify(&opts);
            let outcome = FilterOutcome::Open;
            if out.format == Format::Csv {
                out.line("eq,L,l,outcome").map_err(io)?;
            }
            for (l, c) in &report.open {
                let ld = (*l as f64).log2();
                let row = match out.format {
                    Format::Json => out.json(json!({
                        "eq": c.to_string(),
                        "L": l,
                        "l": ld,
                        "outcome": outcome.to_json(),
                    })),
                    Format::Csv => out.line(format!("{c},{l},{ld:.6},{}", outcome.tag())),
                    Format::Text => out.line(format!("{l}\t{c}\t{}", outcome.tag())),
                };
                row.map_err(io)?;
            }
            match out.format {
                Format::Json => out.json(json!({"summary": report.summary_json()})),
                Format::Csv => Ok(()),
                Format::Text => out.line(report.summary_json().to_string()),
            }
            .map_err(io)?;
            Ok(Status::Ok)
        }
        Command::Search {
            equation,
            bound,
            sieve,
            exhaustive,
        } => {
            let eq = parse_eq(equation)?;
            let c = Compact::from_equation(&eq)?;
            let mut opts = SearchOptions::new(*bound).sieve(sieve).exec(exec);
            if *exhaustive {
                opts = opts.strategy(eisenlab::search::Strategy::Exhaustive);
            }
            let r = search_compact(&c, &opts)?;
            match out.format {
                Format::Json => out.json(json!({
                    "command": "search",
                    "eq": eq.to_string(),
                    "bound": bound,
                    "sieve": sieve,
                    "solutions": r.solutions,
                    "complete": r.complete,
                })),
                Format::Csv => {
                    let names: Vec<String> =
                        (0..eq.num_vars).map(|v| eq.variable_name(v)).collect();
                    let mut w = out.line(names.join(","));
                    for s in &r.solutions {
                        let row: Vec<String> = s.iter().map(|v| v.to_string()).collect();
                        w = w.and_then(|_| out.line(row.join(",")));
                    }
                    w
                }
                Format::Text => {
                    let mut w = Ok(());
                    for s in &r.solutions {
                        let row: Vec<String> = s.iter().map(|v| v.to_string()).collect();
                        w = w.and_then(|_| out.line(format!("({})", row.join(", "))));
                    }
                    w.and_then(|_| out.line(format!("{} solutions", r.solutions.len())))
                }
            }
            .map_err(io)?;
            Ok(Status::Ok)
        }
        Command::Verify {
            suite,
            z_lo,
            z_hi,
            factor_bound,
            grid_bound,
            prime_pairs,
            composite_pairs,
        } => {
            let (name, verified, budget_hit, report) = match suite {
                Suite::Main => {
                    if z_lo > z_hi {
                        return Err(Error::PreconditionViolated("z-lo exceeds z-hi".into()));
                    }
                    let residues = proof::verify_main_residues();
                    let cycle = proof::verify_power7_cycle();
                    let trace = proof::trace::verify_trace_identities_with(
                        *z_lo,
                        *z_hi,
                        *factor_bound,
                        exec,
                    );
                    let ok =
                        residues.iter().all(|r| r.verified()) && cycle.verified && trace.verified();
                    let report = json!({
                        "residues": residues.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                        "power_cycle": cycle,
                        "trace": trace.to_json(),
                    });
                    ("main", ok, !trace.skipped.is_empty(), report)
                }
                Suite::Eq14 => {
                    let r = proof::verify_companion_claims(*grid_bound);
                    ("eq14", r.verified(), !r.skipped.is_empty(), r.to_json())
                }
                Suite::Solutions => {
                    let checks = proof::verify_published_solutions();
                    let control =
                        proof::solutions::check_solution(proof::MAIN_EQUATION, &["0", "0", "0"])?;
                    let ok = checks.iter().all(|c| c.holds) && !control.holds;
                    let report = json!({
                        "published": checks.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
                        "control": control.to_json(),
                    });
                    ("solutions", ok, false, report)
                }
                Suite::Reciprocity => {
                    let opts = SweepOptions {
                        prime_pairs: *prime_pairs,
                        composite_pairs: *composite_pairs,
                        shared_pairs: (*composite_pairs / 10).max((*composite_pairs).min(10)),
                        seed: cli.seed,
                        exec,
                        ..SweepOptions::default()
                    };
                    let r = proof::reciprocity_sweep(&opts);
                    let ok = r.violations.is_empty();
                    ("reciprocity", ok, r.budget_exhausted(), r.to_json())
                }
            };
            let status = if !verified && !budget_hit {
                Status::Failed
            } else if budget_hit {
                Status::Budget
            } else {
                Status::Ok
            };
            match out.format {
                Format::Json => out.json(json!({
                    "command": "verify",
                    "suite": name,
                    "verified": verified && !budget_hit,
                    "report": report,
                })),
                Format::Csv => out
                    .line("suite,verified")
                    .and_then(|_| out.line(format!("{name},{}", verified && !budget_hit))),
                Format::Text => {
                    let word = match status {
                        Status::Ok => "verified",
                        Status::Budget => "incomplete (budget exhausted)",
                        _ => "FAILED",
                    };
                    out.line(format!("{name}: {word}"))
                }
            }
            .map_err(io)?;
            Ok(status)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                Status::Usage as u8
            } else {
                0
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let env_workers = match std::env::var(par::WORKERS_ENV) {
        Ok(v) if !v.trim().is_empty() => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Some(n),
            _ => {
                eprintln!(
                    "error: {} must be a positive integer, got {v:?}",
                    par::WORKERS_ENV
                );
                return ExitCode::from(Status::Usage as u8);
            }
        },
        _ => None,
    };
    par::init_workers(env_workers.or(cli.workers).unwrap_or_else(par::workers));

    let w: Box<dyn Write> = match &cli.output {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("error: cannot open {}: {e}", path.display());
                return ExitCode::from(Status::Usage as u8);
            }
        },
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let mut out = Out {
        format: cli.format,
        w,
    };
    let status = match run(&cli, &mut out) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            status_of(&e)
        }
    };
    if let Err(e) = out.w.flush() {
        eprintln!("error: {e}");
        return ExitCode::from(Status::Usage as u8);
    }
    ExitCode::from(status as u8)
}
