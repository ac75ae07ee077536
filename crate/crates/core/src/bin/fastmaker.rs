//! Thin command line front end over the library.
//!
//! Exit codes: 0 ok, 2 invalid input, 3 a claimed win or replay failed
//! verification.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use fastmaker::breakers::BreakerKind;
use fastmaker::engine::{GameConfig, Outcome};
use fastmaker::experiment::{
    aggregate, build_host, csv_string, play_game, regenerate_host, replay, run_experiment, verify_transcript,
    ExperimentSpec, GameKind, PRule, SeedRange, SummaryRow, CERTIFICATE_FAILURE,
};
use fastmaker::graph::{
    audit_gnp, build_gk, random_tournament, read_graph, write_digraph, write_graph, AuditConfig, GkPairing, Graph,
};
use fastmaker::makers::StrategyConstants;
use fastmaker::oracles::{expander_check, max_matching, vertex_connectivity, ExpanderParams};
use fastmaker::rng::{rng_from, stream};
use fastmaker::{Error, Result};

#[derive(Parser)]
#[command(name = "fastmaker", version, about = "Maker-Breaker games on random graph boards")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Gnp,
    Bipartite,
    Gk,
    Tournament,
}

#[derive(clap::Args)]
struct BoardArgs {
    #[arg(long)]
    n: usize,
    /// Explicit edge probability; overrides --exponent.
    #[arg(long)]
    p: Option<f64>,
    /// Edge probability `ln^e n / n`.
    #[arg(long, default_value_t = 3.0)]
    exponent: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl BoardArgs {
    fn p_rule(&self) -> PRule {
        self.p.map_or(PRule::LogPower(self.exponent), PRule::Explicit)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a seeded board to a graph file.
    Gen {
        #[arg(long, value_enum, default_value = "gnp")]
        kind: GenKind,
        #[command(flatten)]
        board: BoardArgs,
        /// Gadget connectivity for `--kind gk`.
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Play one game and print its summary row.
    Play {
        /// pm, pm-bipartite, ham or kconn<k>.
        #[arg(long)]
        game: GameKind,
        #[command(flatten)]
        board: BoardArgs,
        /// Play on this graph file instead of generating the board.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, default_value = "random")]
        breaker: BreakerKind,
        #[arg(long, default_value_t = 1)]
        a: usize,
        #[arg(long, default_value_t = 1)]
        b: usize,
        /// Strategy constants as JSON; missing fields keep their defaults.
        #[arg(long)]
        constants: Option<PathBuf>,
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Run an experiment spec (JSON) and print per-group statistics.
    Experiment {
        spec: PathBuf,
        /// Print the CSV summary to stdout as well.
        #[arg(long)]
        csv: bool,
    },
    /// Run oracles on a graph file, or judge a transcript's final board.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        transcript: Option<PathBuf>,
        /// Also compute the vertex connectivity (slow on large graphs).
        #[arg(long)]
        connectivity: bool,
        /// Check the `(R, c)` expander property, e.g. `--expander 3,1`.
        #[arg(long, value_delimiter = ',', num_args = 2)]
        expander: Option<Vec<f64>>,
        /// Audit the graph as `G(n, ln^K n / n)` with this `K`.
        #[arg(long)]
        audit: Option<f64>,
    },
    /// Replay a transcript by re-simulation and re-run its oracle.
    Replay {
        transcript: PathBuf,
        /// Host graph file; regenerated from the header when omitted.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
}

fn read_graph_file(path: &PathBuf) -> Result<Graph> {
    read_graph(BufReader::new(File::open(path)?))
}

fn read_transcript(path: &PathBuf) -> Result<fastmaker::engine::Transcript> {
    fastmaker::engine::Transcript::read_jsonl(BufReader::new(File::open(path)?))
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Gen { kind, board, k, out } => {
            let p = board.p_rule().eval(board.n);
            let mut w = output(&out)?;
            match kind {
                GenKind::Gnp => write_graph(&*build_host(GameKind::Pm, board.n, p, board.seed)?, &mut w)?,
                GenKind::Bipartite => write_graph(&*build_host(GameKind::PmBipartite, board.n, p, board.seed)?, &mut w)?,
                GenKind::Gk => {
                    let pairing = if board.seed == 0 { GkPairing::Identity } else { GkPairing::Random(board.seed) };
                    write_graph(&build_gk(k, board.n, pairing)?, &mut w)?
                }
                GenKind::Tournament => {
                    write_digraph(&random_tournament(board.n, &mut rng_from(board.seed, stream::GRAPH)), &mut w)?
                }
            }
            w.flush()?;
            Ok(true)
        }
        Cmd::Play { game, board, graph, breaker, a, b, constants, transcript } => {
            let consts: StrategyConstants = match constants {
                Some(path) => serde_json::from_reader(BufReader::new(File::open(path)?))?,
                None => StrategyConstants::default(),
            };
            consts.validate()?;
            let p = board.p_rule().eval(board.n);
            let host = match &graph {
                Some(path) => Arc::new(read_graph_file(path)?),
                None => {
                    let spec = ExperimentSpec { p: board.p_rule(), ..ExperimentSpec::new(game, vec![board.n], SeedRange::new(0, 1)) };
                    spec.validate()?;
                    build_host(game, board.n, p, board.seed)?
                }
            };
            let cfg = GameConfig::new(a, b);
            let (t, final_board) = play_game(game, &host, p, &cfg, breaker, &consts, board.seed)?;
            let verdict = (t.outcome() == &Outcome::MakerWin).then(|| verify_transcript(&host, game, &final_board, &t));
            let failed = t.outcome().is_certificate_failure() || verdict.as_ref().is_some_and(|v| !v.pass);
            let budget = game.budget(host.n());
            let row = SummaryRow {
                game: game.to_string(),
                n: host.n(),
                p,
                breaker: breaker.label().into(),
                seed: board.seed,
                outcome: if failed { CERTIFICATE_FAILURE.into() } else { t.outcome().label().into() },
                maker_moves: t.last.maker_moves,
                budget,
                slack: t.last.maker_moves as i64 - budget as i64,
                wall_ms: 0.0,
            };
            print!("{}", csv_string(&[row], false));
            if let Outcome::Forfeit { side, reason } = t.outcome() {
                eprintln!("forfeit by {side:?}: {reason}");
            }
            if let Some(path) = transcript {
                t.write_jsonl(BufWriter::new(File::create(path)?))?;
            }
            Ok(!failed)
        }
        Cmd::Experiment { spec, csv } => {
            let text = std::fs::read_to_string(spec)?;
            let spec = ExperimentSpec::from_json(&text)?;
            let res = run_experiment(&spec)?;
            if csv {
                print!("{}", csv_string(&res.rows, true));
            }
            for g in aggregate(&res.rows) {
                println!(
                    "{} n={} breaker={} wins={}/{} ({:.0}%) mean_slack={:.1} max_slack={} certificate_failures={}",
                    g.game,
                    g.n,
                    g.breaker,
                    g.wins,
                    g.runs,
                    100.0 * g.success_rate(),
                    g.mean_slack,
                    g.max_slack.map_or("-".into(), |s| s.to_string()),
                    g.certificate_failures
                );
            }
            Ok(res.certificate_failures() == 0)
        }
        Cmd::Verify { graph, transcript, connectivity, expander, audit } => {
            let g = Arc::new(read_graph_file(&graph)?);
            let mut ok = true;
            println!("n={} m={} min_degree={}", g.n(), g.edge_count(), g.min_degree());
            if let Some(path) = transcript {
                let t = read_transcript(&path)?;
                let params = fastmaker::experiment::transcript_params(&t)?;
                let board = t.rebuild_board()?;
                let verdict = verify_transcript(&g, params.game, &board, &t);
                let claimed = t.outcome() == &Outcome::MakerWin;
                println!("transcript: outcome={} oracle_pass={} {}", t.outcome().label(), verdict.pass, verdict.detail);
                ok &= !claimed || verdict.pass;
            } else {
                let m = max_matching(&g);
                println!("max_matching={} perfect={}", m.len(), 2 * m.len() == g.n());
            }
            if connectivity {
                println!("vertex_connectivity={}", vertex_connectivity(&g));
            }
            if let Some(rc) = expander {
                let v = expander_check(&g, &ExpanderParams::new(rc[0] as usize, rc[1]))?;
                println!("expander(r={}, c={}): pass={} {}", rc[0] as usize, rc[1], v.pass, v.detail);
            }
            if let Some(k) = audit {
                let report = audit_gnp(&g, &AuditConfig { k, ..AuditConfig::default() })?;
                println!("{}", serde_json::to_string(&report)?);
            }
            Ok(ok)
        }
        Cmd::Replay { transcript, graph } => {
            let t = read_transcript(&transcript)?;
            let host = match graph {
                Some(path) => Arc::new(read_graph_file(&path)?),
                None => regenerate_host(&t)?,
            };
            let r = replay(&t, &host)?;
            println!(
                "replay ok: {} moves, outcome {}, oracle pass {}",
                t.moves.len(),
                t.outcome().label(),
                r.verdict.pass
            );
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::ReplayMismatch { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
