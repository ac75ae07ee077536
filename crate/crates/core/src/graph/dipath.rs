//! Long directed paths via depth-first search.
//!
//! The DFS keeps three classes: unvisited `S`, the current stack `U` (always a
//! directed path) and finished `T`. A vertex is finished only once it has no
//! out-neighbour in `S`, so there is never an arc from `T` to `S`. When the
//! digraph has an arc from every m-set to every disjoint m-set, the stack
//! must at some point hold at least `|V| - 2m + 2` vertices.

use rand::seq::index::sample;
use rand::Rng;

use super::{Digraph, Vertex};
use crate::rng::GameRng;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mark {
    Unvisited,
    OnStack,
    Finished,
}

/// Returns the longest stack observed during a DFS that starts new trees in
/// index order. The result is a simple directed path of `d`. `m` is only
/// used to check the DFS invariant in debug builds.
pub fn long_directed_path(d: &Digraph, m: usize) -> Vec<Vertex> {
    let order: Vec<Vertex> = (0..d.n()).collect();
    dfs_longest_stack(d, &order, m)
}

pub(crate) fn dfs_longest_stack(d: &Digraph, order: &[Vertex], _m: usize) -> Vec<Vertex> {
    let n = d.n();
    let mut mark = vec![Mark::Unvisited; n];
    // cursor[v]: next position in v's out-list still to inspect
    let mut cursor = vec![0usize; n];
    let mut stack: Vec<Vertex> = Vec::new();
    let mut best: Vec<Vertex> = Vec::new();
    let mut finished = 0usize;

    for &root in order {
        if mark[root] != Mark::Unvisited {
            continue;
        }
        mark[root] = Mark::OnStack;
        stack.push(root);
        while let Some(&top) = stack.last() {
            if stack.len() > best.len() {
                best.clone_from(&stack);
            }
            let outs = d.out_neighbors(top);
            let mut next = None;
            while cursor[top] < outs.len() {
                let w = outs[cursor[top]] as usize;
                cursor[top] += 1;
                if mark[w] == Mark::Unvisited {
                    next = Some(w);
                    break;
                }
            }
            match next {
                Some(w) => {
                    mark[w] = Mark::OnStack;
                    stack.push(w);
                }
                None => {
                    stack.pop();
                    mark[top] = Mark::Finished;
                    finished += 1;
                    debug_assert!(
                        d.out_neighbors(top)
                            .iter()
                            .all(|&w| mark[w as usize] != Mark::Unvisited),
                        "arc from a finished vertex to an unvisited one"
                    );
                }
            }
        }
    }
    debug_assert_eq!(finished, n);
    best
}

/// Uniform random tournament on `n` vertices.
pub fn random_tournament(n: usize, rng: &mut GameRng) -> Digraph {
    let mut arcs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.5) {
                arcs.push((u, v));
            } else {
                arcs.push((v, u));
            }
        }
    }
    Digraph::from_arcs(n, arcs).expect("tournament arcs are valid")
}

/// Samples `samples` pairs of disjoint m-sets `(S, T)` and returns the first
/// pair with no arc from `S` to `T`, if any.
pub fn sample_pair_property(
    d: &Digraph,
    m: usize,
    samples: usize,
    rng: &mut GameRng,
) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
    let n = d.n();
    if 2 * m > n || m == 0 {
        return None;
    }
    let mut in_t = vec![false; n];
    for _ in 0..samples {
        let picked = sample(rng, n, 2 * m).into_vec();
        let (s, t) = picked.split_at(m);
        for &v in t {
            in_t[v] = true;
        }
        let hit = s
            .iter()
            .any(|&u| d.out_neighbors(u).iter().any(|&w| in_t[w as usize]));
        for &v in t {
            in_t[v] = false;
        }
        if !hit {
            return Some((s.to_vec(), t.to_vec()));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from;

    fn assert_path(d: &Digraph, path: &[Vertex]) {
        let mut seen = vec![false; d.n()];
        for &v in path {
            assert!(!seen[v], "vertex {v} repeated");
            seen[v] = true;
        }
        for w in path.windows(2) {
            assert!(d.has_arc(w[0], w[1]), "missing arc {:?}", w);
        }
    }

    #[test]
    fn directed_cycle_gives_hamilton_path() {
        let d = Digraph::cycle(9);
        let p = long_directed_path(&d, 1);
        assert_path(&d, &p);
        assert_eq!(p.len() - 1, 8);
    }

    #[test]
    fn transitive_tournament() {
        let d = Digraph::transitive_tournament(6);
        let p = long_directed_path(&d, 1);
        assert_path(&d, &p);
        assert_eq!(p.len() - 1, 5);
    }

    #[test]
    fn random_tournament_meets_bound() {
        let mut rng = rng_from(5, 0);
        let d = random_tournament(200, &mut rng);
        assert!(sample_pair_property(&d, 8, 10_000, &mut rng).is_none());
        let p = long_directed_path(&d, 8);
        assert_path(&d, &p);
        assert!(p.len() - 1 >= 200 - 16 + 1);
    }

    #[test]
    fn empty_and_arcless() {
        assert!(long_directed_path(&Digraph::new(0), 1).is_empty());
        let p = long_directed_path(&Digraph::new(4), 1);
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn pair_property_detects_gap() {
        // Two vertices with no arcs: ({0},{1}) violates the 1-pair property.
        let d = Digraph::new(2);
        let mut rng = rng_from(1, 0);
        assert!(sample_pair_property(&d, 1, 10, &mut rng).is_some());
    }
}
