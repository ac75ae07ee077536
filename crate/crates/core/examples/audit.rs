//! Pseudo-randomness audit of a `G(n, ln^K n / n)` board: degree band (A1),
//! sparse sets (A2) and edges between large sets (A3).
//!
//! cargo run --release --example audit -- [n] [seeds]

use fastmaker::graph::{audit_gnp, gen_gnp, AuditConfig, GnpParams, Graph};

fn main() -> fastmaker::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(2000);
    let seeds: u64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(5);

    let cfg = AuditConfig::default();
    for seed in 0..seeds {
        let g = gen_gnp(GnpParams::new(n, cfg.p(n), seed)?)?;
        let r = audit_gnp(&g, &AuditConfig { seed, ..cfg.clone() })?;
        println!("seed {seed}: A1 {} A2 {} A3 {}  ({})", r.a1.pass, r.a2.pass, r.a3.pass, r.a1.detail);
    }
    let small = 200;
    let empty = audit_gnp(&Graph::empty(small), &cfg)?;
    let full = audit_gnp(&Graph::complete(small), &cfg)?;
    println!("empty graph n={small}: A1 {} A2 {} A3 {}", empty.a1.pass, empty.a2.pass, empty.a3.pass);
    println!("complete graph n={small}: A1 {} A2 {} A3 {}", full.a1.pass, full.a2.pass, full.a3.pass);
    Ok(())
}
