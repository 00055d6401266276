use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use motivecalc::commands;
use motivecalc::report::{render_structured, render_text, ReportFormat};
use motivecalc::verify::{run_verify, write_counterexamples, SuiteKind, VerifyOptions};
use motivecalc::workspace::parse_workspace;
use motivecalc::CliError;
use motivecalc_core::derived::TruncationBound;
use motivecalc_core::weights::AdjointSide;

#[derive(Parser)]
#[command(
    name = "motivecalc",
    version,
    about = "Exact calculator for weight and t-structures on twist-graded equivariant complexes"
)]
struct Cli {
    /// Workspace file (TOML).
    #[arg(long, global = true)]
    workspace: Option<PathBuf>,

    /// Override the weight band [a, b].
    #[arg(long, global = true, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
    band: Option<Vec<i32>>,

    /// Seed for the verification suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Number of fuzzed cases per suite.
    #[arg(long, global = true, default_value_t = 200)]
    fuzz: usize,

    /// Report format: text or structured (one JSON record per check).
    #[arg(long, global = true, default_value = "text")]
    format: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of Hom(K, L[shift]) in the derived category.
    Hom {
        k: String,
        l: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i32,
    },
    /// Dimension and cocycle basis of Ext1 between two objects.
    Ext1 { m: String, n: String },
    /// The weight filtration of an object, level by level.
    WeightFiltration { object: String },
    /// The graded piece of one weight of an object.
    Gr {
        object: String,
        #[arg(allow_hyphen_values = true)]
        n: i32,
    },
    /// Cohomological truncation of a complex.
    TTruncate {
        complex: String,
        #[arg(long, allow_hyphen_values = true)]
        le: Option<i32>,
        #[arg(long, allow_hyphen_values = true)]
        ge: Option<i32>,
    },
    /// The weight filtration triangle of a complex at one level.
    WTruncate {
        complex: String,
        #[arg(allow_hyphen_values = true)]
        n: i32,
    },
    /// The band strand and band truncation of a complex.
    BandGr {
        complex: String,
        #[arg(allow_hyphen_values = true)]
        n: i32,
    },
    /// The normal form of a complex in the weight-structure heart.
    HeartNormalForm { complex: String },
    /// The weight-zero graded piece with its adjunction data.
    Gr0 {
        complex: String,
        #[arg(long, default_value = "left")]
        side: String,
    },
    /// Splits a complex with weights in {-1, 0} into pure summands.
    Split { complex: String },
    /// Whether a complex is without weights r..s, with the splitting
    /// triangle when it is.
    WithoutWeights {
        complex: String,
        #[arg(allow_hyphen_values = true)]
        r: i32,
        #[arg(allow_hyphen_values = true)]
        s: i32,
    },
    /// The weight-graded realization of a complex.
    Realize { complex: String },
    /// The four-way criteria table comparing direct and realization-side
    /// weight predicates.
    WeightReport {
        complex: String,
        #[arg(long, allow_hyphen_values = true)]
        r: Option<i32>,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<i32>,
    },
    /// Runs a verification suite against fuzzed data.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(64);
        }
    };
    match run(cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    let path = cli
        .workspace
        .as_ref()
        .ok_or_else(|| CliError::Usage("--workspace <path> is required".into()))?;
    let mut ws = parse_workspace(path)?;
    if let Some(band) = &cli.band {
        let (a, b) = (band[0], band[1]);
        if a > b {
            return Err(CliError::Usage("band bounds out of order".into()));
        }
        for (name, obj) in &ws.objects {
            for &m in &obj.support() {
                let w = -2 * m;
                if w < a || w > b {
                    return Err(CliError::Malformed(format!(
                        "objects.{name}: twist {m} (weight {w}) lies outside the band [{a}, {b}]"
                    )));
                }
            }
        }
        ws.band = (a, b);
    }
    let format = match cli.format.as_str() {
        "text" => ReportFormat::Text,
        "structured" => ReportFormat::Structured,
        other => {
            return Err(CliError::Usage(format!(
                "unknown format {other:?}; expected text or structured"
            )))
        }
    };

    match &cli.command {
        Command::Hom { k, l, shift } => commands::cmd_hom(&ws, k, l, *shift),
        Command::Ext1 { m, n } => commands::cmd_ext1(&ws, m, n),
        Command::WeightFiltration { object } => commands::cmd_weight_filtration(&ws, object),
        Command::Gr { object, n } => commands::cmd_gr(&ws, object, *n),
        Command::TTruncate { complex, le, ge } => {
            let bound = match (le, ge) {
                (Some(n), None) => TruncationBound::Le(*n),
                (None, Some(n)) => TruncationBound::Ge(*n),
                _ => {
                    return Err(CliError::Usage(
                        "give exactly one of --le n or --ge n".into(),
                    ))
                }
            };
            commands::cmd_t_truncate(&ws, complex, bound)
        }
        Command::WTruncate { complex, n } => commands::cmd_w_truncate(&ws, complex, *n),
        Command::BandGr { complex, n } => commands::cmd_band_gr(&ws, complex, *n),
        Command::HeartNormalForm { complex } => commands::cmd_heart_normal_form(&ws, complex),
        Command::Gr0 { complex, side } => {
            let side = match side.as_str() {
                "left" => AdjointSide::Left,
                "right" => AdjointSide::Right,
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown side {other:?}; expected left or right"
                    )))
                }
            };
            commands::cmd_gr0(&ws, complex, side)
        }
        Command::Split { complex } => commands::cmd_split(&ws, complex),
        Command::WithoutWeights { complex, r, s } => {
            commands::cmd_without_weights(&ws, complex, *r, *s)
        }
        Command::Realize { complex } => commands::cmd_realize(&ws, complex),
        Command::WeightReport { complex, r, s } => {
            commands::cmd_weight_report(&ws, complex, *r, *s)
        }
        Command::Verify { suite } => {
            let opts = VerifyOptions {
                suite: SuiteKind::parse(suite)?,
                fuzz: cli.fuzz,
                seed: cli.seed,
            };
            let report = run_verify(&ws, &opts)?;
            let rendered = match format {
                ReportFormat::Text => {
                    let header = format!(
                        "verify suite={suite} seed={} fuzz={} band=[{}, {}]",
                        cli.seed, cli.fuzz, ws.band.0, ws.band.1
                    );
                    render_text(&header, &report.records)
                }
                ReportFormat::Structured => render_structured(&report.records),
            };
            if report.all_pass() {
                Ok(rendered)
            } else {
                let dir = std::env::current_dir()
                    .map_err(|e| CliError::Malformed(format!("cannot resolve cwd: {e}")))?;
                let files = write_counterexamples(&report, &dir);
                print!("{rendered}");
                let list: Vec<String> = files.iter().map(|p| p.display().to_string()).collect();
                Err(CliError::Counterexample(format!(
                    "{} failing check(s); reproducers: {}",
                    report.records.iter().filter(|r| !r.pass()).count(),
                    if list.is_empty() {
                        "none written".to_string()
                    } else {
                        list.join(", ")
                    }
                )))
            }
        }
    }
}
