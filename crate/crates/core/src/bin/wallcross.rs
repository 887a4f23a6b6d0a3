use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use wallcross::farey::farey_sequence;
use wallcross::render::{render_prediction, render_svg, RenderOptions};
use wallcross::sign::{predict_interval, validate_prediction, FourthEquation};
use wallcross::verifier::{
    bez_case, calibrate_convention, closing_claim_diagnostic, verify_bez_scoped, verify_bez_upto,
    verify_sign_bounded, verify_sign_upto, BezScope, Convention, Side, VerificationReport, WallSet,
    DEFAULT_BEZ_BOUND, DEFAULT_SIGN_BOUND,
};
use wallcross::wallcross::{
    cross_with, full_prime_trajectory, full_trajectory_with, TransposeOrder,
};
use wallcross::{
    mprime, mtilde, mtilde_prime, Error, Fraction, Mullineux, Partition, Trajectory, WallState,
};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "wallcross",
    version,
    about = "Combinatorial wall-crossing experiments"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Memo cache for the Mullineux map, loaded before and extended after the run.
    #[arg(long, global = true)]
    cache_file: Option<PathBuf>,

    /// Upper bound on p (verify-sign) or n (verify-bez).
    #[arg(long, global = true)]
    bound: Option<usize>,

    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Rows,
    Columns,
}

#[derive(Clone, Copy, ValueEnum)]
enum WallSetArg {
    Strict,
    Inclusive,
}

#[derive(Args)]
struct ConventionArgs {
    #[arg(long, value_enum, default_value_t = SideArg::Columns)]
    convention: SideArg,
    #[arg(long, value_enum, default_value_t = WallSetArg::Strict)]
    wallset: WallSetArg,
}

impl ConventionArgs {
    fn get(&self) -> Convention {
        let side = match self.convention {
            SideArg::Rows => Side::Rows,
            SideArg::Columns => Side::Columns,
        };
        let wallset = match self.wallset {
            WallSetArg::Strict => WallSet::Strict,
            WallSetArg::Inclusive => WallSet::Inclusive,
        };
        Convention::new(side, wallset)
    }
}

#[derive(Subcommand)]
enum Verb {
    /// Terms of the Farey sequence of order n inside (0, 1).
    Farey {
        #[arg(long)]
        n: u64,
    },
    /// transpose(M_e(λ)).
    Cross {
        #[arg(long)]
        e: usize,
        partition: Partition,
        #[arg(long, hide = true)]
        transpose_first: bool,
    },
    /// Generalized Mullineux map M_e.
    Mullineux {
        #[arg(long)]
        e: usize,
        partition: Partition,
    },
    /// M'_e.
    Mprime {
        #[arg(long)]
        e: usize,
        partition: Partition,
    },
    /// Crosses every wall of order n strictly below the given wall.
    Mtilde {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        wall: Fraction,
        partition: Partition,
    },
    /// The M' analogue of mtilde.
    MtildePrime {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        wall: Fraction,
        partition: Partition,
    },
    /// State after every wall of F_n.
    Trajectory {
        #[arg(long)]
        start: Partition,
        #[arg(long)]
        n: Option<usize>,
        /// Restrict to change points in [m/n, (m+1)/n).
        #[arg(long)]
        m: Option<usize>,
        /// Use M' instead of the crossing map.
        #[arg(long)]
        prime: bool,
        #[arg(long, hide = true)]
        transpose_first: bool,
    },
    /// Closed-form change points of (1^p) inside [m/p, (m+1)/p).
    Predict {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        m: usize,
        /// Also print the consistency check of every step.
        #[arg(long)]
        check: bool,
        #[arg(long, hide = true)]
        printed_fourth: bool,
    },
    /// Predictor against engine for one prime, or all primes up to --bound.
    VerifySign {
        #[arg(long)]
        p: Option<usize>,
    },
    /// Row statistic comparison; sweeps n' = 1..=n unless --start is given.
    VerifyBez {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        start: Option<Partition>,
        #[arg(long)]
        wall: Option<Fraction>,
        #[command(flatten)]
        conv: ConventionArgs,
    },
    /// Tries all four statistic conventions for n <= the given n.
    Calibrate {
        #[arg(long, default_value_t = 5)]
        n: usize,
    },
    /// SVG of a trajectory (--start) or a prediction (--p, --m).
    Render {
        #[arg(long)]
        start: Option<Partition>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        every_wall: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Serialize, Default)]
struct Document {
    schema_version: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    start: Option<Partition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    source: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    steps: Option<Vec<WallState>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    change_points: Option<Vec<WallState>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<serde_json::Value>,
}

impl Document {
    fn new() -> Self {
        Document {
            schema_version: SCHEMA_VERSION,
            ..Default::default()
        }
    }

    fn trajectory(t: &Trajectory, source: &'static str, change_points: Vec<WallState>) -> Self {
        Document {
            n: Some(t.n),
            start: Some(t.start.clone()),
            source: Some(source),
            steps: Some(t.steps.clone()),
            change_points: Some(change_points),
            ..Document::new()
        }
    }
}

/// What a verb produced: text, a structured document, and whether a
/// checked claim failed.
struct Outcome {
    text: String,
    doc: Document,
    violation: bool,
}

impl Outcome {
    fn value(text: String, result: serde_json::Value) -> Self {
        Outcome {
            text,
            doc: Document {
                result: Some(result),
                ..Document::new()
            },
            violation: false,
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("serializable")
}

fn states_text(states: &[WallState]) -> String {
    states
        .iter()
        .map(|s| format!("{}\t{}\n", s.wall, s.after))
        .collect()
}

fn size_or(n: Option<usize>, lambda: &Partition) -> usize {
    n.unwrap_or_else(|| lambda.size())
}

fn report_outcome(report: VerificationReport, mut doc: Document) -> Outcome {
    doc.report = Some(to_json(&report));
    eprintln!("elapsed: {:.3}s", report.elapsed.as_secs_f64());
    Outcome {
        text: report.to_string(),
        violation: !report.passed(),
        doc,
    }
}

fn run(cli: &Cli, engine: &Mullineux) -> Result<Outcome, Error> {
    let jobs = cli.jobs;
    Ok(match &cli.verb {
        Verb::Farey { n } => {
            let terms: Vec<Fraction> = farey_sequence(*n);
            let text = terms.iter().map(|f| format!("{f}\n")).collect();
            Outcome::value(text, to_json(&terms))
        }
        Verb::Cross {
            e,
            partition,
            transpose_first,
        } => {
            let order = if *transpose_first {
                TransposeOrder::BeforeMullineux
            } else {
                TransposeOrder::AfterMullineux
            };
            let out = cross_with(engine, partition, *e, order)?;
            Outcome::value(format!("{out}\n"), to_json(&out))
        }
        Verb::Mullineux { e, partition } => {
            let out = engine.general(partition, *e)?;
            Outcome::value(format!("{out}\n"), to_json(&out))
        }
        Verb::Mprime { e, partition } => {
            let out = mprime(partition, *e)?;
            Outcome::value(format!("{out}\n"), to_json(&out))
        }
        Verb::Mtilde { n, wall, partition } => {
            let out = mtilde(engine, partition, size_or(*n, partition), *wall)?;
            Outcome::value(format!("{out}\n"), to_json(&out))
        }
        Verb::MtildePrime { n, wall, partition } => {
            let out = mtilde_prime(partition, size_or(*n, partition), *wall)?;
            Outcome::value(format!("{out}\n"), to_json(&out))
        }
        Verb::Trajectory {
            start,
            n,
            m,
            prime,
            transpose_first,
        } => {
            let n = size_or(*n, start);
            let (t, source) = if *prime {
                (full_prime_trajectory(start, n)?, "prime")
            } else {
                let order = if *transpose_first {
                    TransposeOrder::BeforeMullineux
                } else {
                    TransposeOrder::AfterMullineux
                };
                (full_trajectory_with(engine, start, n, order)?, "engine")
            };
            let t = match m {
                None => t,
                Some(m) => {
                    if *m == 0 || *m >= n {
                        return Err(Error::Domain(format!("m = {m} outside 1..{n}")));
                    }
                    let lo = Fraction::reduced(*m as u64, n as u64)?;
                    let hi = Fraction::reduced(*m as u64 + 1, n as u64)?;
                    Trajectory {
                        n,
                        start: t.state_before(lo).cloned().unwrap_or_default(),
                        steps: t.window(lo, hi).to_vec(),
                    }
                }
            };
            let changes = t.change_points();
            let text = match m {
                Some(_) => states_text(&changes),
                None => t
                    .steps
                    .iter()
                    .map(|s| {
                        let mark = if changes.iter().any(|c| c.wall == s.wall) {
                            "*"
                        } else {
                            ""
                        };
                        format!("{}\t{}{mark}\n", s.wall, s.after)
                    })
                    .collect(),
            };
            Outcome {
                text,
                doc: Document::trajectory(&t, source, changes),
                violation: false,
            }
        }
        Verb::Predict {
            p,
            m,
            check,
            printed_fourth,
        } => {
            let pred = predict_interval(*p, *m)?;
            let states = pred.wall_states();
            let mut text = states_text(&states);
            let mut violation = false;
            if *check {
                let fourth = if *printed_fourth {
                    FourthEquation::Printed
                } else {
                    FourthEquation::Corrected
                };
                for (state, sys) in validate_prediction(&pred, fourth) {
                    violation |= !sys.holds();
                    text.push_str(&format!("step {state}\n{sys}"));
                }
            }
            let doc = Document {
                n: Some(*p),
                start: Some(Partition::column(*p)),
                source: Some("predictor"),
                steps: Some(states.clone()),
                change_points: Some(states),
                ..Document::new()
            };
            Outcome {
                text,
                doc,
                violation,
            }
        }
        Verb::VerifySign { p } => {
            let bound = cli.bound.unwrap_or(DEFAULT_SIGN_BOUND);
            match p {
                Some(p) => {
                    let mut report = verify_sign_bounded(engine, *p, bound, jobs)?;
                    report
                        .notes
                        .extend(closing_claim_diagnostic(engine, *p)?.notes);
                    report_outcome(
                        report,
                        Document {
                            n: Some(*p),
                            start: Some(Partition::column(*p)),
                            source: Some("engine"),
                            ..Document::new()
                        },
                    )
                }
                None => report_outcome(verify_sign_upto(engine, bound, jobs)?, Document::new()),
            }
        }
        Verb::VerifyBez {
            n,
            start,
            wall,
            conv,
        } => {
            let bound = cli.bound.unwrap_or(DEFAULT_BEZ_BOUND);
            let conv = conv.get();
            let report = match (start, wall) {
                (None, None) => verify_bez_upto(engine, *n, conv, bound, jobs)?,
                _ => {
                    let scope = BezScope {
                        start: start.clone(),
                        wall: *wall,
                    };
                    verify_bez_scoped(engine, *n, conv, &scope, bound, jobs)?
                }
            };
            if let (Some(lambda), Some(w)) = (start, wall) {
                let (a, b) = bez_case(engine, lambda, *n, *w, conv)?;
                eprintln!("A={a} B={b}");
            }
            report_outcome(
                report,
                Document {
                    n: Some(*n),
                    ..Document::new()
                },
            )
        }
        Verb::Calibrate { n } => {
            let cal = calibrate_convention(engine, *n, jobs)?;
            Outcome {
                text: cal.to_string(),
                violation: cal.chosen.is_none(),
                doc: Document {
                    n: Some(*n),
                    report: Some(to_json(&cal)),
                    ..Document::new()
                },
            }
        }
        Verb::Render {
            start,
            n,
            p,
            m,
            every_wall,
            output,
        } => {
            let opts = RenderOptions {
                every_wall: *every_wall,
                ..RenderOptions::default()
            };
            let svg = match (start, p, m) {
                (Some(start), None, None) => {
                    let t = full_trajectory_with(
                        engine,
                        start,
                        size_or(*n, start),
                        TransposeOrder::AfterMullineux,
                    )?;
                    render_svg(&t, &opts)
                }
                (None, Some(p), Some(m)) => render_prediction(&predict_interval(*p, *m)?, &opts),
                _ => {
                    return Err(Error::Domain(
                        "render needs either --start or both --p and --m".to_owned(),
                    ))
                }
            };
            match output {
                Some(path) => {
                    fs::write(path, &svg)?;
                    Outcome::value(String::new(), to_json(&path.display().to_string()))
                }
                None => Outcome::value(svg, serde_json::Value::Null),
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let engine = Mullineux::new();
    if let Some(path) = &cli.cache_file {
        if path.exists() {
            if let Err(err) = engine.cache().load(path) {
                eprintln!("error: {err}");
                return ExitCode::from(2);
            }
        }
    }
    let outcome = match run(&cli, &engine) {
        Ok(outcome) => outcome,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    };
    if let Some(path) = &cli.cache_file {
        if let Err(err) = engine.cache().persist(path) {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    }
    let mut stdout = std::io::stdout().lock();
    let written = match cli.format {
        Format::Text => stdout.write_all(outcome.text.as_bytes()),
        Format::Json => {
            let body = serde_json::to_string_pretty(&outcome.doc).expect("serializable");
            writeln!(stdout, "{body}")
        }
    };
    if written.is_err() {
        return ExitCode::from(2);
    }
    if outcome.violation {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
