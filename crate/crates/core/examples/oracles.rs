//! The verification oracles on small hand-made graphs and on a random graph.
//!
//! cargo run --example oracles

use fastmaker::graph::{gen_gnp, BipartiteGraph, GnpParams, Graph};
use fastmaker::oracles::{
    check_hamilton_cycle, check_hamilton_path, connectivity_verdict, expander_check, hall_check, max_bipartite_matching,
    max_matching, perfect_matching_verdict, posa_ham_path, vertex_connectivity, ExpanderParams, HallParams, PosaConfig,
};

fn main() -> fastmaker::Result<()> {
    // matchings: the Petersen graph is perfectly matchable, a star is not
    let petersen = Graph::from_edges(
        10,
        [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
    )?;
    let m = max_matching(&petersen);
    println!("Petersen: matching of size {}, verdict {:?}", m.len(), perfect_matching_verdict(&petersen, &m).pass);
    let star = Graph::from_edges(5, (1..5).map(|v| (0, v)))?;
    println!("star K_1,4: maximum matching {}", max_matching(&star).len());

    let k33 = BipartiteGraph::complete(3);
    println!("K_3,3: bipartite matching {}, Hall check {}", max_bipartite_matching(&k33).len(), hall_check(&k33, &HallParams::new(1))?.pass);

    // connectivity: Petersen is 3-connected, a cycle only 2-connected
    println!("kappa(Petersen) = {}, kappa(C_8) = {}", vertex_connectivity(&petersen), vertex_connectivity(&Graph::cycle(8)));
    let v = connectivity_verdict(&Graph::cycle(8), 3);
    println!("C_8 is 3-connected? {} ({})", v.pass, v.detail);

    // Hamilton cycles: Petersen has none, but a Hamilton path between 0 and 2
    let ring: Vec<usize> = (0..8).collect();
    println!("C_8 ring certificate: {}", check_hamilton_cycle(&Graph::cycle(8), &ring).pass);
    let cfg = PosaConfig::default();
    match posa_ham_path(&petersen, 0, 2, &cfg) {
        Some(p) => println!("Petersen Hamilton 0-2 path {p:?}: {}", check_hamilton_path(&petersen, &p, 0, 2).pass),
        None => println!("Petersen: no Hamilton 0-2 path found"),
    }

    // rotation-extension on a dense random graph
    let g = gen_gnp(GnpParams::new(400, 0.05, 3)?)?;
    let path = posa_ham_path(&g, 0, 1, &PosaConfig { seed: 3, ..cfg });
    println!("G(400, 0.05): Hamilton 0-1 path found: {}", path.is_some_and(|p| check_hamilton_path(&g, &p, 0, 1).pass));

    // expanders: exact enumeration on K_8 and C_12, sampling on the random graph
    for (name, h) in [("K_8", Graph::complete(8)), ("C_12", Graph::cycle(12))] {
        let v = expander_check(&h, &ExpanderParams::new(2, 1.0).exact())?;
        println!("{name} is a (2,1)-expander: {} {}", v.pass, v.detail);
    }
    let v = expander_check(&g, &ExpanderParams::new(20, 2.0).sampled(500, 1))?;
    println!("G(400, 0.05) sampled (20,2)-expander check: {} {}", v.pass, v.detail);
    Ok(())
}
