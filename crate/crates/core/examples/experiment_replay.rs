//! A small experiment grid: play, certify, write the CSV and transcripts,
//! then replay every transcript from scratch.
//!
//! cargo run --release --example experiment_replay -- [n] [seeds]

use std::fs::File;
use std::io::BufReader;

use fastmaker::breakers::BreakerKind;
use fastmaker::engine::Transcript;
use fastmaker::experiment::{aggregate, regenerate_host, replay, run_experiment, ExperimentSpec, GameKind, SeedRange};

fn main() -> fastmaker::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(400);
    let seeds: u64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(3);

    let out = std::env::temp_dir().join(format!("fastmaker-demo-{}", std::process::id()));
    std::fs::create_dir_all(&out)?;
    let mut spec = ExperimentSpec::new(GameKind::Pm, vec![n], SeedRange::new(0, seeds));
    spec.breakers = vec![BreakerKind::Random, BreakerKind::DegreeAttacker];
    spec.outputs.csv = Some(out.join("summary.csv"));
    spec.outputs.transcripts = Some(out.clone());
    println!("spec: {}", serde_json::to_string(&spec)?);

    let result = run_experiment(&spec)?;
    for g in aggregate(&result.rows) {
        println!("{} n={} {}: {}/{} wins, mean slack {:.1}", g.game, g.n, g.breaker, g.wins, g.runs, g.mean_slack);
    }
    // read every transcript back from disk and re-simulate it
    let mut files: Vec<_> = std::fs::read_dir(&out)?.filter_map(|e| e.ok().map(|e| e.path())).collect();
    files.retain(|p| p.extension().is_some_and(|x| x == "jsonl"));
    files.sort();
    for path in &files {
        let t = Transcript::read_jsonl(BufReader::new(File::open(path)?))?;
        let host = regenerate_host(&t)?;
        let r = replay(&t, &host)?;
        println!("replayed {}: {} records, oracle pass {}", path.display(), t.moves.len(), r.verdict.pass);
    }
    assert_eq!(files.len(), result.transcripts.len());
    println!("outputs in {}", out.display());
    Ok(())
}
