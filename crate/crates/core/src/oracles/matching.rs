//! Maximum matchings: Hopcroft-Karp with a König vertex-cover certificate for
//! bipartite hosts, Edmonds' blossom algorithm for general graphs, and the
//! two-condition Hall check.

use std::collections::VecDeque;

use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use super::expander::CheckMode;
use super::search::{adjacency_masks, by_degree, mask_neighbourhood, mask_to_vec, subsets_of_size, Neighbourhood};
use super::{Verdict, Witness};
use crate::error::{invalid, Result};
use crate::graph::{BipartiteGraph, Graph, Vertex};
use crate::rng::rng_from;

const NONE: usize = usize::MAX;

/// A maximum bipartite matching with its optimality certificate: `cover` is
/// a vertex cover with `cover.len() == pairs.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteMatching {
    /// `(left, right)` pairs.
    pub pairs: Vec<(Vertex, Vertex)>,
    pub cover: Vec<Vertex>,
}

impl BipartiteMatching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Checks both the matching and the König certificate against `g`.
    pub fn certify(&self, g: &Graph) -> bool {
        if !is_matching(g, &self.pairs) || self.cover.len() != self.pairs.len() {
            return false;
        }
        let mut covered = vec![false; g.n()];
        for &v in &self.cover {
            covered[v] = true;
        }
        g.edges().iter().all(|&(u, v)| covered[u as usize] || covered[v as usize])
    }
}

pub fn max_bipartite_matching(bg: &BipartiteGraph) -> BipartiteMatching {
    let g = bg.graph();
    let h = bg.half();
    let mut mate_l = vec![NONE; h];
    let mut mate_r = vec![NONE; h];
    let mut dist = vec![0u32; h];
    let mut it = vec![0usize; h];

    // greedy start
    for l in 0..h {
        if let Some(&r) = g.neighbors(l).iter().find(|&&r| mate_r[r as usize - h] == NONE) {
            mate_l[l] = r as usize - h;
            mate_r[r as usize - h] = l;
        }
    }

    loop {
        // layered BFS from free left vertices
        let mut queue = VecDeque::new();
        for l in 0..h {
            if mate_l[l] == NONE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = u32::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in g.neighbors(l) {
                let m = mate_r[r as usize - h];
                if m == NONE {
                    found = true;
                } else if dist[m] == u32::MAX {
                    dist[m] = dist[l] + 1;
                    queue.push_back(m);
                }
            }
        }
        if !found {
            break;
        }
        it.iter_mut().for_each(|x| *x = 0);
        for l in 0..h {
            if mate_l[l] == NONE {
                augment(g, h, l, &mut mate_l, &mut mate_r, &mut dist, &mut it);
            }
        }
    }

    // König: Z = vertices reachable from free left vertices by alternating paths
    let mut seen_l = vec![false; h];
    let mut seen_r = vec![false; h];
    let mut stack: Vec<usize> = (0..h).filter(|&l| mate_l[l] == NONE).collect();
    for &l in &stack {
        seen_l[l] = true;
    }
    while let Some(l) = stack.pop() {
        for &r in g.neighbors(l) {
            let ri = r as usize - h;
            if !seen_r[ri] {
                seen_r[ri] = true;
                let m = mate_r[ri];
                if m != NONE && !seen_l[m] {
                    seen_l[m] = true;
                    stack.push(m);
                }
            }
        }
    }
    let mut cover: Vec<Vertex> = (0..h).filter(|&l| !seen_l[l]).collect();
    cover.extend((0..h).filter(|&r| seen_r[r]).map(|r| r + h));
    let pairs = (0..h)
        .filter(|&l| mate_l[l] != NONE)
        .map(|l| (l, mate_l[l] + h))
        .collect();
    BipartiteMatching { pairs, cover }
}

fn augment(
    g: &Graph,
    h: usize,
    root: usize,
    mate_l: &mut [usize],
    mate_r: &mut [usize],
    dist: &mut [u32],
    it: &mut [usize],
) -> bool {
    // iterative DFS along the layered graph
    let mut path: Vec<usize> = vec![root];
    while let Some(&l) = path.last() {
        let nb = g.neighbors(l);
        let mut advanced = false;
        while it[l] < nb.len() {
            let r = nb[it[l]] as usize - h;
            it[l] += 1;
            let m = mate_r[r];
            if m == NONE {
                // flip the path
                let mut r = r;
                for &pl in path.iter().rev() {
                    let prev = mate_l[pl];
                    mate_l[pl] = r;
                    mate_r[r] = pl;
                    r = prev;
                }
                return true;
            }
            if dist[m] == dist[l] + 1 {
                path.push(m);
                advanced = true;
                break;
            }
        }
        if !advanced {
            dist[l] = u32::MAX;
            path.pop();
        }
    }
    false
}

/// Maximum matching in a general graph (Edmonds' blossom algorithm),
/// returned as `(u, v)` pairs with `u < v`, sorted.
pub fn max_matching(g: &Graph) -> Vec<(Vertex, Vertex)> {
    let n = g.n();
    let mut mate = vec![NONE; n];
    for v in 0..n {
        if mate[v] == NONE {
            if let Some(&w) = g.neighbors(v).iter().find(|&&w| mate[w as usize] == NONE) {
                mate[v] = w as usize;
                mate[w as usize] = v;
            }
        }
    }
    let mut bl = Blossom::new(n);
    for root in 0..n {
        if mate[root] == NONE && g.degree(root) > 0 {
            if let Some(end) = bl.find_path(g, &mut mate, root) {
                let mut v = end;
                while v != NONE {
                    let pv = bl.parent[v];
                    let ppv = mate[pv];
                    mate[v] = pv;
                    mate[pv] = v;
                    v = ppv;
                }
            }
        }
    }
    let mut out: Vec<(Vertex, Vertex)> = (0..n)
        .filter(|&v| mate[v] != NONE && v < mate[v])
        .map(|v| (v, mate[v]))
        .collect();
    out.sort_unstable();
    out
}

struct Blossom {
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    lca_mark: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Blossom {
    fn new(n: usize) -> Self {
        Blossom {
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            lca_mark: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&mut self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        self.lca_mark.iter_mut().for_each(|x| *x = false);
        loop {
            a = self.base[a];
            self.lca_mark[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if self.lca_mark[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    fn find_path(&mut self, g: &Graph, mate: &mut [usize], root: usize) -> Option<usize> {
        let n = g.n();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in g.neighbors(v) {
                let to = to as usize;
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && self.parent[mate[to]] != NONE) {
                    let cur = self.lca(mate, v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if mate[to] == NONE {
                        return Some(to);
                    }
                    let m = mate[to];
                    self.used[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        None
    }
}

/// True iff `pairs` are edges of `g` and pairwise vertex-disjoint.
pub fn is_matching(g: &Graph, pairs: &[(Vertex, Vertex)]) -> bool {
    let mut used = vec![false; g.n()];
    for &(u, v) in pairs {
        if u >= g.n() || v >= g.n() || !g.has_edge(u, v) || used[u] || used[v] {
            return false;
        }
        used[u] = true;
        used[v] = true;
    }
    true
}

/// Certifies a (near-)perfect matching: a matching of `g` leaving at most
/// `n mod 2` vertices uncovered.
pub fn perfect_matching_verdict(g: &Graph, pairs: &[(Vertex, Vertex)]) -> Verdict {
    let mut used = vec![false; g.n()];
    for &(u, v) in pairs {
        if u >= g.n() || v >= g.n() || !g.has_edge(u, v) {
            return Verdict::fail(Witness::Edge(u, v), "pair is not an edge");
        }
        for x in [u, v] {
            if used[x] {
                return Verdict::fail(Witness::Vertex(x), "vertex matched twice");
            }
            used[x] = true;
        }
    }
    let uncovered: Vec<Vertex> = (0..g.n()).filter(|&v| !used[v]).collect();
    if uncovered.len() > g.n() % 2 {
        return Verdict::fail(
            Witness::Set(uncovered.clone()),
            format!("{} vertices uncovered", uncovered.len()),
        );
    }
    Verdict::pass().with_detail(format!("{} disjoint edges", pairs.len()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HallParams {
    pub r: usize,
    pub mode: CheckMode,
    pub samples: usize,
    pub seed: u64,
}

impl HallParams {
    pub fn new(r: usize) -> Self {
        HallParams { r, mode: CheckMode::Auto, samples: 200, seed: 0 }
    }
}

/// Checks `|N(X)| >= |X|` for every one-sided `X` with `|X| <= r` (B1) and
/// `E(X, Y) != ∅` for every `X ⊆ left`, `Y ⊆ right` of size `r` (B2).
pub fn hall_check(bg: &BipartiteGraph, p: &HallParams) -> Result<Verdict> {
    let h = bg.half();
    let n = 2 * h;
    if 2 * p.r > h {
        return Err(invalid(format!("Hall radius r={} exceeds half of the part size {h}", p.r)));
    }
    if p.r == 0 {
        return Ok(Verdict::pass());
    }
    let exact = match p.mode {
        CheckMode::Exact => {
            if n > 24 {
                return Err(crate::error::Error::Budget(format!("exact Hall check needs n <= 24, got {n}")));
            }
            true
        }
        CheckMode::Sampled => false,
        CheckMode::Auto => n <= 24,
    };
    let g = bg.graph();
    if exact {
        Ok(hall_exact(g, h, p.r))
    } else {
        Ok(hall_sampled(bg, p))
    }
}

fn hall_exact(g: &Graph, h: usize, r: usize) -> Verdict {
    let adj = adjacency_masks(g);
    for offset in [0, h] {
        for k in 1..=r {
            for local in subsets_of_size(h, k) {
                let set = local << offset;
                if (mask_neighbourhood(&adj, set).count_ones() as usize) < k {
                    return Verdict::fail(Witness::Set(mask_to_vec(set)), "(B1) |N(X)| < |X|");
                }
            }
        }
    }
    let right_all: u32 = ((1u32 << h) - 1) << h;
    for set in subsets_of_size(h, r) {
        let free = right_all & !mask_neighbourhood(&adj, set);
        if free.count_ones() as usize >= r {
            return Verdict::fail(
                Witness::Pair(mask_to_vec(set), mask_to_vec(first_bits(free, r))),
                "(B2) no edge between X and Y",
            );
        }
    }
    Verdict::pass().with_detail("exact")
}

pub(crate) fn first_bits(mut mask: u32, k: usize) -> u32 {
    let mut out = 0;
    for _ in 0..k {
        let low = mask & mask.wrapping_neg();
        out |= low;
        mask &= !low;
    }
    out
}

fn hall_sampled(bg: &BipartiteGraph, p: &HallParams) -> Verdict {
    let g = bg.graph();
    let h = bg.half();
    let r = p.r;
    let mut rng = rng_from(p.seed, crate::rng::stream::AUDIT);

    if let Some(v) = (0..2 * h).find(|&v| g.degree(v) == 0) {
        return Verdict::fail(Witness::Set(vec![v]), "(B1) isolated vertex");
    }

    let mut nb = Neighbourhood::new(g);
    for left in [true, false] {
        let allowed = move |v: Vertex| (v < h) == left;
        let low = by_degree(g, allowed, 16);
        for s in 0..p.samples {
            nb.clear();
            let seed = if s < low.len() {
                low[s]
            } else if left {
                rand::Rng::gen_range(&mut rng, 0..h)
            } else {
                rand::Rng::gen_range(&mut rng, h..2 * h)
            };
            nb.add(seed);
            let hit = nb.grow(&allowed, &low, r, &mut rng, |x| x.external() < x.len());
            if hit || nb.external() < nb.len() {
                let mut x = nb.members().to_vec();
                x.sort_unstable();
                if neighbourhood_size(g, &x) < x.len() {
                    return Verdict::fail(Witness::Set(x), "(B1) |N(X)| < |X| (sampled)");
                }
            }
            // (B2) from the same greedy set when it is a left r-set
            if left && nb.len() == r {
                let y = nb.outside(|v| v >= h, r);
                if y.len() == r {
                    let mut x = nb.members().to_vec();
                    x.sort_unstable();
                    return Verdict::fail(Witness::Pair(x, y), "(B2) no edge between X and Y (sampled)");
                }
            }
        }
    }
    // uniformly random left r-sets
    for _ in 0..p.samples {
        nb.clear();
        for v in sample(&mut rng, h, r).into_iter() {
            nb.add(v);
        }
        let y = nb.outside(|v| v >= h, r);
        if y.len() == r {
            let mut x = nb.members().to_vec();
            x.sort_unstable();
            return Verdict::fail(Witness::Pair(x, y), "(B2) no edge between X and Y (sampled)");
        }
    }
    Verdict::pass().with_detail(format!("sampled, {} seeds per side", p.samples))
}

fn neighbourhood_size(g: &Graph, x: &[Vertex]) -> usize {
    let mut seen = vec![false; g.n()];
    let mut count = 0;
    for &v in x {
        for &w in g.neighbors(v) {
            if !seen[w as usize] {
                seen[w as usize] = true;
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_bipartite;

    fn brute_max_matching(g: &Graph) -> usize {
        fn rec(g: &Graph, i: usize, used: &mut Vec<bool>) -> usize {
            if i == g.edge_count() {
                return 0;
            }
            let skip = rec(g, i + 1, used);
            let (u, v) = g.edges()[i];
            let (u, v) = (u as usize, v as usize);
            if used[u] || used[v] {
                return skip;
            }
            used[u] = true;
            used[v] = true;
            let take = 1 + rec(g, i + 1, used);
            used[u] = false;
            used[v] = false;
            skip.max(take)
        }
        rec(g, 0, &mut vec![false; g.n()])
    }

    #[test]
    fn k33_and_path() {
        let m = max_bipartite_matching(&BipartiteGraph::complete(3));
        assert_eq!(m.len(), 3);
        assert!(m.certify(BipartiteGraph::complete(3).graph()));
        assert_eq!(max_matching(&Graph::path(4)).len(), 2);
    }

    #[test]
    fn blossom_on_odd_cycles() {
        // two triangles joined by an edge: perfect matching of size 3
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(max_matching(&g).len(), 3);
        assert_eq!(max_matching(&Graph::cycle(7)).len(), 3);
        assert_eq!(max_matching(&Graph::complete(9)).len(), 4);
    }

    #[test]
    fn blossom_matches_brute_force() {
        use rand::Rng;
        let mut rng = rng_from(7, 0);
        for _ in 0..60 {
            let n = rng.gen_range(2..10);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.35) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, edges).unwrap();
            let m = max_matching(&g);
            assert!(is_matching(&g, &m));
            assert_eq!(m.len(), brute_max_matching(&g));
        }
    }

    #[test]
    fn hk_certificate_on_random_bipartite() {
        for seed in 0..10 {
            let bg = gen_bipartite(60, 0.05, seed).unwrap();
            let m = max_bipartite_matching(&bg);
            assert!(m.certify(bg.graph()));
            assert_eq!(m.len(), max_matching(bg.graph()).len());
        }
    }

    #[test]
    fn hall_small_cases() {
        let k33 = BipartiteGraph::complete(3);
        assert!(hall_check(&k33, &HallParams::new(1)).unwrap().pass);
        let g = Graph::from_edges(6, [(0, 3), (0, 4), (1, 4), (1, 5), (0, 5)]).unwrap();
        let bg = BipartiteGraph::new(g, 3).unwrap();
        let v = hall_check(&bg, &HallParams::new(1)).unwrap();
        assert!(!v.pass);
        assert_eq!(v.witness, Some(Witness::Set(vec![2])));
        assert!(hall_check(&k33, &HallParams::new(2)).is_err());
    }

    #[test]
    fn hall_sampled_isolated_vertex() {
        let bg = gen_bipartite(100, 0.3, 3).unwrap();
        let edges: Vec<(usize, usize)> = bg
            .graph()
            .edges()
            .iter()
            .map(|&(u, v)| (u as usize, v as usize))
            .filter(|&(u, _)| u != 7)
            .collect();
        let bg = BipartiteGraph::new(Graph::from_edges(100, edges).unwrap(), 50).unwrap();
        let v = hall_check(&bg, &HallParams::new(5)).unwrap();
        assert_eq!(v.witness, Some(Witness::Set(vec![7])));
    }
}
