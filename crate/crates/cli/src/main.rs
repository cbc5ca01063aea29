//! `matchgame`: solve, pack, play matches, tabulate families against their
//! closed forms, scan trees, run the verification suites, or serve games
//! over HTTP.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input,
//! 3 instance above the exact cap.

use std::fmt::Write as _;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use matchgame::families::{parse_family, FamilyInstance};
use matchgame::packing::{min_maximal_with_cap, mu_with_cap, DEFAULT_PACKING_CAP};
use matchgame::solver::DEFAULT_SOLVE_CAP;
use matchgame::strategies::{
    run_match, scripted, GreedyStrategy, OptimalStrategy, RandomStrategy, Strategy, SCRIPTED_STRATEGIES,
};
use matchgame::verify::{self, VerificationReport};
use matchgame::{has_k3_partition, solve_with, Error, GameSpec, Graph, Pattern, Player, SolveOptions};

#[derive(Parser)]
#[command(name = "matchgame", version, about = "Exact solver and verification suite for the matcher game")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Game value under optimal play.
    Solve {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, default_value_t = DEFAULT_SOLVE_CAP)]
        cap: usize,
        /// Worker threads for the top-level split.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Print one optimal line of play.
        #[arg(long)]
        pv: bool,
        #[arg(long)]
        json: bool,
    },
    /// Packing numbers of the pattern in the graph.
    Pack {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long, value_enum, default_value_t = PackMode::Max)]
        mode: PackMode,
        #[arg(long, default_value_t = DEFAULT_PACKING_CAP)]
        cap: usize,
        #[arg(long)]
        json: bool,
    },
    /// Play one game between two strategies.
    Match {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        game: GameArgs,
        /// optimal, greedy, random or a scripted strategy name.
        #[arg(long, default_value = "optimal")]
        init_strategy: String,
        #[arg(long, default_value = "optimal")]
        resp_strategy: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SOLVE_CAP)]
        cap: usize,
        /// Print every move.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Solver values against closed forms over family instances.
    Table {
        /// Family specifiers; `{a..b}` expands to a range, e.g. grid:2x{2..7}.
        #[arg(long = "family", required = true)]
        families: Vec<String>,
        /// Games as pattern/initiator, e.g. star/max; defaults to the four rooted P3 games.
        #[arg(long = "game")]
        games: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_SOLVE_CAP)]
        cap: usize,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Perfect trees of the given orders against the matching recognizer.
    TreeScan {
        #[arg(long = "n", value_delimiter = ',', default_values_t = [3, 6, 9, 12])]
        orders: Vec<usize>,
        #[command(flatten)]
        game: GameArgs,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Run every verification suite; exits 1 if any row fails.
    VerifyAll {
        /// Where to write the JSON report.
        #[arg(long, default_value = "verify-report.json")]
        out: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
        /// Print the JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Serve games over HTTP.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long, default_value_t = DEFAULT_SOLVE_CAP)]
        cap: usize,
        /// Append-only JSON-lines replay log.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Build a family instance and print it.
    Family {
        #[arg(long)]
        family: String,
        /// Plain `n m` / `u v` edge list instead of JSON.
        #[arg(long)]
        edge_list: bool,
    },
}

#[derive(Args)]
struct Input {
    /// Graph file, JSON `{"n":..,"edges":[[u,v],..]}` or an edge list.
    #[arg(long, conflicts_with = "family")]
    graph: Option<PathBuf>,
    /// Family specifier such as path:7, grid:2x9 or familyE:seed=42,k=3.
    #[arg(long)]
    family: Option<String>,
}

#[derive(Args)]
struct PatternArgs {
    #[arg(long, value_enum, default_value_t = PatternKind::Star)]
    pattern: PatternKind,
    /// Pattern graph file for --pattern generic.
    #[arg(long)]
    pattern_graph: Option<PathBuf>,
    /// Root vertex of a generic pattern; omit for unrooted.
    #[arg(long)]
    root: Option<usize>,
}

#[derive(Args)]
struct GameArgs {
    #[command(flatten)]
    pattern: PatternArgs,
    #[arg(long, value_enum, default_value_t = Side::Max)]
    initiator: Side,
}

#[derive(Clone, Copy, ValueEnum)]
enum PatternKind {
    Star,
    Stripe,
    Unrooted,
    Generic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Max,
    Min,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PackMode {
    Max,
    Minmaximal,
    K3,
}

enum CliError {
    Input(String),
    Cap(String),
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

type CliResult = Result<String, CliError>;

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

impl Input {
    fn load(&self) -> Result<(Graph, Option<FamilyInstance>), CliError> {
        match (&self.graph, &self.family) {
            (Some(path), None) => Ok((Graph::parse_any(&read(path)?)?, None)),
            (None, Some(spec)) => {
                let inst = parse_family(spec)?;
                Ok((inst.graph.clone(), Some(inst)))
            }
            _ => Err(CliError::Input("give --graph or --family".into())),
        }
    }
}

impl PatternArgs {
    fn pattern(&self) -> Result<Pattern, CliError> {
        let generic_only = || CliError::Input("--pattern-graph and --root need --pattern generic".into());
        match self.pattern {
            PatternKind::Generic => {
                let path = self.pattern_graph.as_ref().ok_or_else(|| CliError::Input("--pattern generic needs --pattern-graph".into()))?;
                Ok(Pattern::generic(Graph::parse_any(&read(path)?)?, self.root)?)
            }
            _ if self.pattern_graph.is_some() || self.root.is_some() => Err(generic_only()),
            PatternKind::Star => Ok(Pattern::Star),
            PatternKind::Stripe => Ok(Pattern::Stripe),
            PatternKind::Unrooted => Ok(Pattern::UnrootedP3),
        }
    }
}

impl GameArgs {
    fn spec(&self) -> Result<GameSpec, CliError> {
        let who = match self.initiator {
            Side::Max => Player::Max,
            Side::Min => Player::Min,
        };
        Ok(GameSpec::new(self.pattern.pattern()?, who))
    }
}

fn set_jobs(jobs: Option<usize>) {
    if let Some(j) = jobs {
        // Fails only if the pool already exists, which is harmless here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global();
    }
}

fn parse_game(text: &str) -> Result<GameSpec, CliError> {
    let (p, w) = text.split_once('/').ok_or_else(|| CliError::Input(format!("game {text:?}: expected pattern/initiator, e.g. star/max")))?;
    let pattern = match p {
        "star" => Pattern::Star,
        "stripe" => Pattern::Stripe,
        "unrooted" => Pattern::UnrootedP3,
        _ => return Err(CliError::Input(format!("game {text:?}: unknown pattern {p:?}"))),
    };
    let who = match w {
        "max" => Player::Max,
        "min" => Player::Min,
        _ => return Err(CliError::Input(format!("game {text:?}: initiator must be max or min"))),
    };
    Ok(GameSpec::new(pattern, who))
}

fn strategy(name: &str, spec: &GameSpec, graph: &Graph, inst: Option<&FamilyInstance>, player: Player, seed: u64, cap: usize) -> Result<Box<dyn Strategy>, CliError> {
    match name {
        "optimal" => Ok(Box::new(OptimalStrategy::with_cap(graph.clone(), spec, cap)?)),
        "greedy" => Ok(Box::new(GreedyStrategy::new(spec, player))),
        "random" => Ok(Box::new(RandomStrategy::new(spec, seed))),
        _ if SCRIPTED_STRATEGIES.contains(&name) => {
            let inst = inst.ok_or_else(|| CliError::Input(format!("strategy {name} needs --family")))?;
            Ok(scripted(name, inst, spec)?)
        }
        _ => Err(CliError::Input(format!(
            "unknown strategy {name:?}; use optimal, greedy, random or one of {}",
            SCRIPTED_STRATEGIES.join(", ")
        ))),
    }
}

fn render(report: &VerificationReport, json: bool) -> CliResult {
    let out = if json { report.to_json() + "\n" } else { report.to_text() };
    if report.passed() {
        Ok(out)
    } else {
        print!("{out}");
        Err(CliError::Failed(format!("{} failing rows", report.summary.failed)))
    }
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Solve { input, game, cap, jobs, pv, json } => {
            let (g, _) = input.load()?;
            let spec = game.spec()?;
            let r = solve_with(&g, &spec, &SolveOptions { cap, jobs, ..Default::default() })?;
            if json {
                return Ok(serde_json::to_string_pretty(&r).expect("result json") + "\n");
            }
            let mut out = format!("{}\n", r.value);
            if pv {
                for m in &r.principal_variation {
                    let _ = writeln!(out, "{} -> {:?}", m.init, m.image.to_vec());
                }
                let _ = writeln!(out, "taken {}/{}, {}", r.vertices_taken, g.n(), if r.perfect { "perfect" } else { "imperfect" });
            }
            Ok(out)
        }
        Command::Pack { input, pattern, mode, cap, json } => {
            let (g, _) = input.load()?;
            if mode == PackMode::K3 {
                let found = has_k3_partition(&g);
                return Ok(if json { format!("{{\"k3_partition\":{found}}}\n") } else { format!("{found}\n") });
            }
            let p = pattern.pattern()?;
            let r = match mode {
                PackMode::Max => mu_with_cap(&g, &p, cap)?,
                _ => min_maximal_with_cap(&g, &p, cap)?,
            };
            if json {
                return Ok(serde_json::to_string_pretty(&r).expect("packing json") + "\n");
            }
            Ok(format!("{}\n", r.size))
        }
        Command::Match { input, game, init_strategy, resp_strategy, seed, cap, trace, json } => {
            let (g, inst) = input.load()?;
            let spec = game.spec()?;
            let mut a = strategy(&init_strategy, &spec, &g, inst.as_ref(), spec.initiator, seed, cap)?;
            let mut b = strategy(&resp_strategy, &spec, &g, inst.as_ref(), spec.responder(), seed.wrapping_add(1), cap)?;
            let playout = run_match(&g, &spec, &mut a, &mut b)?;
            if json {
                return Ok(serde_json::to_string_pretty(&playout).expect("playout json") + "\n");
            }
            let mut out = String::new();
            if trace {
                for (i, m) in playout.moves.iter().enumerate() {
                    let _ = writeln!(out, "{:>3}. {} initiates {}, {} takes {:?}", i + 1, spec.initiator, m.init, spec.responder(), m.image.to_vec());
                }
            }
            let _ = writeln!(out, "{}", playout.value);
            Ok(out)
        }
        Command::Table { families, games, cap, jobs, json } => {
            set_jobs(jobs);
            let mut instances = Vec::new();
            for f in &families {
                for spec in verify::expand_range(f)? {
                    instances.push(parse_family(&spec)?);
                }
            }
            let games: Vec<GameSpec> = if games.is_empty() {
                ["star/max", "star/min", "stripe/max", "stripe/min"].iter().map(|g| parse_game(g)).collect::<Result<_, _>>()?
            } else {
                games.iter().map(|g| parse_game(g)).collect::<Result<_, _>>()?
            };
            let report = verify::table(&instances, &games, &SolveOptions { cap, ..Default::default() })?;
            render(&report, json)
        }
        Command::TreeScan { orders, game, jobs, json } => {
            set_jobs(jobs);
            let report = verify::tree_scan(&orders, &game.spec()?)?;
            render(&report, json)
        }
        Command::VerifyAll { out, jobs, json } => {
            set_jobs(jobs);
            let report = verify::verify_all()?;
            std::fs::write(&out, report.to_json() + "\n").map_err(|e| CliError::Input(format!("{}: {e}", out.display())))?;
            let text = if json { report.to_json() + "\n" } else { report.to_text() };
            if report.passed {
                Ok(text)
            } else {
                print!("{text}");
                Err(CliError::Failed("some suites failed".into()))
            }
        }
        Command::Serve { port, host, cap, log } => {
            let addr: SocketAddr = format!("{host}:{port}").parse().map_err(|e| CliError::Input(format!("address: {e}")))?;
            let runtime = tokio::runtime::Runtime::new().map_err(|e| CliError::Failed(e.to_string()))?;
            eprintln!("listening on http://{addr}");
            runtime
                .block_on(matchgame_server::serve(addr, matchgame_server::Config { cap, log }))
                .map_err(|e| CliError::Failed(e.to_string()))?;
            Ok(String::new())
        }
        Command::Family { family, edge_list } => {
            let inst = parse_family(&family)?;
            Ok(if edge_list { inst.graph.to_edge_list() } else { inst.to_json() + "\n" })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("matchgame: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("matchgame: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Cap(msg)) => {
            eprintln!("matchgame: {msg}");
            ExitCode::from(3)
        }
    }
}
