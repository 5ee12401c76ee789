use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use smpg::error::{Error, Result};
use smpg::eval::{discounted_values, mean_values, simulate_mean_payoff, ValueVector};
use smpg::generate::{generate_game, GeneratorConfig};
use smpg::io::{load_game, read_json, to_json_line, write_pretty, SolutionFile};
use smpg::rational::{self, Rational};
use smpg::solvers::{
    brute_force_solve, greedy_recovery_discounted, strategic_via_recovery,
    strategy_iteration_discounted, verify_star, verify_star2, Criterion, ReferenceOracle, Report,
};
use smpg::transforms::{beta_recurrent, mirror, MapFile, TransformMap};
use smpg::{induced_chain, Game, StrategyFile, StrategyPair, DEFAULT_CAP};

/// Exact analysis of stochastic mean payoff and discounted games.
#[derive(Debug, Parser)]
#[command(name = "smpg", version)]
struct Cli {
    /// Maximum number of strategy pairs a brute-force search may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a game file.
    Validate { game: PathBuf },
    /// Evaluate a fixed strategy pair.
    Eval {
        game: PathBuf,
        #[arg(long)]
        strategy: PathBuf,
        #[command(flatten)]
        criterion: CriterionArgs,
    },
    /// Build a beta-recurrent or mirror game.
    #[command(subcommand)]
    Transform(Transform),
    /// Compute values and an optimal pair.
    Solve {
        game: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        #[command(flatten)]
        criterion: CriterionArgs,
    },
    /// Read optimal strategies off exact discounted values.
    Recover {
        game: PathBuf,
        #[arg(long)]
        values: PathBuf,
        #[arg(long, value_enum, default_value = "discounted")]
        criterion: RecoverCriterion,
        #[arg(long, value_parser = parse_rational)]
        beta: Rational,
    },
    /// Check the reduction identities exhaustively over all strategy pairs.
    #[command(subcommand)]
    Verify(Verify),
    /// Solve a mean payoff game through the recovery oracle.
    Pipeline {
        game: PathBuf,
        #[arg(long, value_parser = parse_rational)]
        beta: Rational,
        /// Directory receiving every intermediate game, map and strategy.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Draw a random game.
    Generate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Monte Carlo estimate of the mean payoff of a strategy pair.
    Simulate {
        game: PathBuf,
        #[arg(long)]
        strategy: PathBuf,
        #[arg(long)]
        start: String,
        #[arg(long)]
        horizon: u64,
        #[arg(long)]
        plays: u64,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
enum Transform {
    /// Reset to `--start` with probability 1 - beta after every move.
    BetaRecurrent {
        game: PathBuf,
        #[arg(long, value_parser = parse_rational)]
        beta: Rational,
        #[arg(long)]
        start: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Chain two copies of a beta-recurrent game.
    Mirror {
        game: PathBuf,
        /// Sidecar written by `transform beta-recurrent`.
        #[arg(long)]
        map: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug, Subcommand)]
enum Verify {
    /// Mean payoff of the beta-recurrent game equals the discounted payoff.
    Star {
        game: PathBuf,
        #[arg(long, value_parser = parse_rational)]
        beta: Rational,
        #[arg(long)]
        start: String,
    },
    /// Mirror payoffs split into the two copies; the mirror has value 0.
    ///
    /// Takes a beta-recurrent game with `--map`, or any game with `--beta`
    /// and `--start`, which is transformed first.
    Star2 {
        game: PathBuf,
        #[arg(long, conflicts_with_all = ["beta", "start"])]
        map: Option<PathBuf>,
        #[arg(long, value_parser = parse_rational, requires = "start")]
        beta: Option<Rational>,
        #[arg(long, requires = "beta")]
        start: Option<String>,
    },
}

#[derive(Debug, Args)]
struct OutArgs {
    /// Output game file.
    #[arg(long)]
    out: PathBuf,
    /// Output sidecar map; defaults to the game path with `.map.json`.
    #[arg(long)]
    map_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CriterionArgs {
    #[arg(long, value_enum)]
    criterion: CriterionKind,
    /// Discount factor p/q in [0, 1), required for `discounted`.
    #[arg(long, value_parser = parse_rational)]
    beta: Option<Rational>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CriterionKind {
    Mean,
    Discounted,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RecoverCriterion {
    Discounted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Exhaustive enumeration of strategy pairs.
    Oracle,
    /// Strategy iteration (discounted only).
    Si,
}

fn parse_rational(text: &str) -> std::result::Result<Rational, String> {
    rational::parse(text).map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Domain(Error),
    /// Ran fine but a verification found violations.
    Violations,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    kind: &'a str,
    message: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violations) => ExitCode::from(1),
        Err(Failure::Domain(e)) => {
            eprint!(
                "{}",
                to_json_line(&ErrorReport {
                    kind: e.kind(),
                    message: e.to_string(),
                })
            );
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn criterion(args: &CriterionArgs) -> std::result::Result<Criterion, Failure> {
    match (args.criterion, &args.beta) {
        (CriterionKind::Mean, _) => Ok(Criterion::Mean),
        (CriterionKind::Discounted, Some(beta)) => Ok(Criterion::Discounted(beta.clone())),
        (CriterionKind::Discounted, None) => {
            Err(Failure::Usage("--criterion discounted needs --beta".into()))
        }
    }
}

fn load_strategy(game: &Game, path: &Path) -> Result<StrategyPair> {
    StrategyPair::from_names(game, &read_json::<StrategyFile>(path)?)
}

fn load_map(path: &Path) -> Result<TransformMap> {
    TransformMap::from_file(&read_json::<MapFile>(path)?)
}

fn write_transformed(out: &OutArgs, game: &Game, map: &TransformMap) -> Result<()> {
    let map_out = out
        .map_out
        .clone()
        .unwrap_or_else(|| default_map_path(&out.out));
    write_pretty(&out.out, &game.to_raw())?;
    write_pretty(&map_out, &map.to_file())?;
    #[derive(Serialize)]
    struct Written {
        game: String,
        map: String,
    }
    print!(
        "{}",
        to_json_line(&Written {
            game: out.out.display().to_string(),
            map: map_out.display().to_string(),
        })
    );
    Ok(())
}

fn default_map_path(game: &Path) -> PathBuf {
    let stem = game
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    game.with_file_name(format!("{stem}.map.json"))
}

fn report(report: &Report) -> std::result::Result<(), Failure> {
    print!("{}", to_json_line(report));
    if report.violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violations)
    }
}

fn run(cli: Cli) -> std::result::Result<(), Failure> {
    let cap = cli.cap;
    match cli.command {
        Command::Validate { game } => {
            let g = load_game(&game)?;
            #[derive(Serialize)]
            struct Summary {
                valid: bool,
                states: usize,
                actions: usize,
                transitions: usize,
            }
            print!(
                "{}",
                to_json_line(&Summary {
                    valid: true,
                    states: g.num_states(),
                    actions: g.actions().len(),
                    transitions: g.transitions().len(),
                })
            );
        }
        Command::Eval {
            game,
            strategy,
            criterion: args,
        } => {
            let criterion = criterion(&args)?;
            let g = load_game(&game)?;
            let pair = load_strategy(&g, &strategy)?;
            let chain = induced_chain(&g, &pair)?;
            let values = match criterion {
                Criterion::Discounted(beta) => discounted_values(&chain, &beta)?,
                Criterion::Mean => mean_values(&chain)?,
            };
            print!("{}", to_json_line(&values.to_map()));
        }
        Command::Transform(Transform::BetaRecurrent {
            game,
            beta,
            start,
            out,
        }) => {
            let g = load_game(&game)?;
            let (gb, map) = beta_recurrent(&g, &beta, &start)?;
            write_transformed(&out, &gb, &map)?;
        }
        Command::Transform(Transform::Mirror { game, map, out }) => {
            let gb = load_game(&game)?;
            let (gp, mmap) = mirror(&gb, &load_map(&map)?)?;
            write_transformed(&out, &gp, &mmap)?;
        }
        Command::Solve {
            game,
            method,
            criterion: args,
        } => {
            let criterion = criterion(&args)?;
            let g = load_game(&game)?;
            let solution = match (method, &criterion) {
                (Method::Oracle, _) => brute_force_solve(&g, &criterion, cap)?,
                (Method::Si, Criterion::Discounted(beta)) => {
                    strategy_iteration_discounted(&g, beta)?
                }
                (Method::Si, Criterion::Mean) => {
                    return Err(Failure::Usage(
                        "--method si supports only --criterion discounted".into(),
                    ))
                }
            };
            print!("{}", to_json_line(&SolutionFile::new(&g, &solution)));
        }
        Command::Recover {
            game,
            values,
            criterion: _,
            beta,
        } => {
            let g = load_game(&game)?;
            let values = ValueVector::from_map(&g, &read_json(&values)?)?;
            let pair = greedy_recovery_discounted(&g, &beta, &values)?;
            print!("{}", to_json_line(&pair.to_names(&g)));
        }
        Command::Verify(Verify::Star { game, beta, start }) => {
            let g = load_game(&game)?;
            report(&verify_star(&g, &beta, &start, cap)?)?;
        }
        Command::Verify(Verify::Star2 {
            game,
            map,
            beta,
            start,
        }) => {
            let g = load_game(&game)?;
            let (gb, map) = match (map, beta, start) {
                (Some(map), _, _) => (g, load_map(&map)?),
                (None, Some(beta), Some(start)) => beta_recurrent(&g, &beta, &start)?,
                _ => {
                    return Err(Failure::Usage(
                        "verify star2 needs --map, or --beta with --start".into(),
                    ))
                }
            };
            report(&verify_star2(&gb, &map, cap)?)?;
        }
        Command::Pipeline {
            game,
            beta,
            out_dir,
        } => {
            let g = load_game(&game)?;
            let outcome = strategic_via_recovery(&g, &beta, &ReferenceOracle { cap })?;
            if let Some(dir) = &out_dir {
                fs::create_dir_all(dir)
                    .map_err(|e| Error::Parse(format!("cannot create {}: {e}", dir.display())))?;
                for (i, stage) in outcome.stages.iter().enumerate() {
                    let path = |name: &str| dir.join(format!("stage{i}_{name}.json"));
                    write_pretty(&path("recurrent"), &stage.recurrent.to_raw())?;
                    write_pretty(&path("recurrent.map"), &stage.recurrent_map.to_file())?;
                    write_pretty(&path("mirror"), &stage.mirror.to_raw())?;
                    write_pretty(&path("mirror.map"), &stage.mirror_map.to_file())?;
                    write_pretty(&path("oracle"), &stage.oracle_pair.to_names(&stage.mirror))?;
                    write_pretty(
                        &path("restricted"),
                        &stage.restricted.to_names(&stage.recurrent),
                    )?;
                }
                write_pretty(
                    &dir.join("discounted_values.json"),
                    &outcome.discounted_values.to_map(),
                )?;
                write_pretty(
                    &dir.join("solution.json"),
                    &SolutionFile::new(&g, &outcome.solution),
                )?;
            }
            #[derive(Serialize)]
            struct Stage {
                start: String,
                #[serde(serialize_with = "rational::serialize")]
                value: Rational,
            }
            #[derive(Serialize)]
            struct Output {
                #[serde(serialize_with = "rational::serialize")]
                beta: Rational,
                stages: Vec<Stage>,
                discounted_values: std::collections::BTreeMap<String, String>,
                solution: SolutionFile,
            }
            print!(
                "{}",
                to_json_line(&Output {
                    beta,
                    stages: outcome
                        .stages
                        .iter()
                        .map(|s| Stage {
                            start: s.start.clone(),
                            value: s.value.clone(),
                        })
                        .collect(),
                    discounted_values: outcome.discounted_values.to_map(),
                    solution: SolutionFile::new(&g, &outcome.solution),
                })
            );
        }
        Command::Generate { config, out } => {
            let cfg: GeneratorConfig = read_json(&config)?;
            let g = generate_game(&cfg)?;
            write_pretty(&out, &g.to_raw())?;
        }
        Command::Simulate {
            game,
            strategy,
            start,
            horizon,
            plays,
            seed,
        } => {
            let g = load_game(&game)?;
            let pair = load_strategy(&g, &strategy)?;
            let estimate = simulate_mean_payoff(&g, &pair, &start, horizon, plays, seed)?;
            print!("{}", to_json_line(&estimate));
        }
    }
    Ok(())
}
