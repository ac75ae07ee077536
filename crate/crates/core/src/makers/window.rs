//! Connecting the merged paths near their ends. Every path gets an entry
//! window `L(P)` (first `w` vertices) and an exit window `R(P)` (last `w`);
//! a Maker edge from `R(P)` to `L(Q)` is an arc `P -> Q` of the auxiliary
//! digraph `D`. Maker hits the window pairs with a sampled potential under
//! a virtual Breaker bias, then follows a long directed path of `D` and
//! splices the paths into one.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use super::consts::{StrategyConstants, Thresholds};
use super::expander::{binom, combinations};
use super::pairs::PairPotential;
use crate::engine::{Board, Claim, FakeMoves, MakerAction, MakerStrategy, Side};
use crate::graph::dfs_longest_stack;
use crate::graph::{long_directed_path, Digraph, EdgeId, Graph, Vertex};
use crate::rng::{derive_seed, GameRng};

const NONE: u32 = u32::MAX;

/// Maker's side of the window game on a local universe of window edges:
/// the winning sets of the opponent are `E(R(A), L(B))` for disjoint
/// `m`-sets of paths `A`, `B`, and Maker claims the edge of largest danger.
pub(crate) struct WindowGame {
    by_arc: HashMap<(u32, u32), Vec<EdgeId>>,
    t: usize,
    m: usize,
    beta: f64,
    samples: usize,
    all_limit: usize,
    sampled: bool,
    pairs: PairPotential,
    rng: GameRng,
    started: bool,
}

impl WindowGame {
    pub(crate) fn new(arcs: &[(u32, u32)], t: usize, m: usize, beta: f64, consts: &StrategyConstants, seed: u64) -> Self {
        let mut by_arc: HashMap<(u32, u32), Vec<EdgeId>> = HashMap::new();
        for (i, &a) in arcs.iter().enumerate() {
            by_arc.entry(a).or_default().push(i as EdgeId);
        }
        WindowGame {
            by_arc,
            t,
            m: m.max(1),
            beta,
            samples: consts.pair_samples,
            all_limit: consts.all_pairs_limit,
            sampled: false,
            pairs: PairPotential::new(Vec::new(), &[], |_| true, beta, 0.0),
            rng: GameRng::seed_from_u64(seed),
            started: false,
        }
    }

    fn family(&self) -> f64 {
        binom(self.t, self.m) * binom(self.t.saturating_sub(self.m), self.m)
    }

    fn set_edges(&self, a: &[usize], b: &[usize]) -> Vec<EdgeId> {
        let mut out = Vec::new();
        for &p in a {
            for &q in b {
                if let Some(es) = self.by_arc.get(&(p as u32, q as u32)) {
                    out.extend_from_slice(es);
                }
            }
        }
        out
    }

    fn draw(&mut self, board: &Board) {
        let (t, m) = (self.t, self.m);
        let family = self.family();
        let mut chosen: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        if 2 * m > t {
            self.pairs = PairPotential::new(Vec::new(), &[], |_| true, self.beta, 0.0);
            return;
        }
        if family <= self.all_limit as f64 {
            for a in combinations(t, m) {
                for b in combinations(t, m) {
                    if b.iter().all(|x| !a.contains(x)) {
                        chosen.push((a.clone(), b));
                    }
                }
            }
            self.sampled = false;
        } else {
            let all: Vec<usize> = (0..t).collect();
            for _ in 0..self.samples {
                let both: Vec<usize> = all.choose_multiple(&mut self.rng, 2 * m).copied().collect();
                chosen.push((both[..m].to_vec(), both[m..].to_vec()));
            }
            self.sampled = true;
        }
        let mut sets = Vec::with_capacity(chosen.len());
        let mut hit = Vec::with_capacity(chosen.len());
        for (a, b) in &chosen {
            let edges = self.set_edges(a, b);
            hit.push(edges.iter().any(|&e| board.is_maker(e)));
            sets.push(edges.into_iter().filter(|&e| !board.is_breaker(e)).collect());
        }
        self.pairs = PairPotential::new(sets, &hit, |e| board.is_free(e), self.beta, family);
    }
}

impl MakerStrategy for WindowGame {
    fn name(&self) -> String {
        "window-game".into()
    }

    fn observe(&mut self, side: Side, e: EdgeId) {
        self.pairs.observe(side, e);
    }

    fn next_move(&mut self, board: &Board, _rng: &mut GameRng) -> MakerAction {
        if !self.started {
            self.started = true;
            self.draw(board);
        }
        let mut best = self.pairs.best(|e| board.is_free(e));
        if best.is_none() && self.sampled {
            self.draw(board);
            best = self.pairs.best(|e| board.is_free(e));
        }
        match best {
            Some(e) => MakerAction::Claim(Claim::new(e, "stage-3")),
            None => MakerAction::Done,
        }
    }
}

/// Summary of the connecting stage.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct WindowReport {
    pub paths: usize,
    pub discarded: usize,
    pub window_edges: usize,
    pub arcs: usize,
    pub d_path: usize,
    pub virtual_claims: usize,
    pub fallback_moves: usize,
}

pub(crate) struct WindowStage {
    host: Arc<Graph>,
    paths: Vec<Vec<Vertex>>,
    /// Host vertex -> position in its path, for windowed vertices.
    pos: Vec<u32>,
    local: HashMap<EdgeId, u32>,
    xs: Vec<EdgeId>,
    arcs: Vec<(u32, u32)>,
    arc_seen: Vec<bool>,
    maker_x: Vec<bool>,
    digraph: Digraph,
    game: Option<FakeMoves<WindowGame>>,
    best: Vec<Vertex>,
    stall: usize,
    restarts: usize,
    min_len: usize,
    report: WindowReport,
    rng: GameRng,
}

impl WindowStage {
    /// `paths` are the merged paths; those with at most `discard_len`
    /// vertices are dropped. `min_len` is the splice length that allows
    /// stopping before every path is covered.
    pub(crate) fn new(
        host: Arc<Graph>,
        paths: Vec<Vec<Vertex>>,
        board: &Board,
        b: usize,
        th: &Thresholds,
        consts: &StrategyConstants,
        min_len: usize,
        rng: &mut GameRng,
    ) -> Self {
        let total = paths.len();
        let w = th.window;
        let paths: Vec<Vec<Vertex>> = paths.into_iter().filter(|p| p.len() > th.discard_len).collect();
        let discarded = total - paths.len();
        let n = host.n();
        let t = paths.len();
        // side[v]: path index and whether v sits in the exit window
        let mut owner = vec![NONE; n];
        let mut exit = vec![false; n];
        let mut pos = vec![NONE; n];
        for (i, p) in paths.iter().enumerate() {
            for (j, &v) in p.iter().enumerate() {
                pos[v] = j as u32;
            }
            for &v in &p[..w] {
                owner[v] = i as u32;
            }
            for &v in &p[p.len() - w..] {
                owner[v] = i as u32;
                exit[v] = true;
            }
        }
        let mut xs = Vec::new();
        let mut arcs = Vec::new();
        for p in &paths {
            for &u in p[..w].iter().chain(&p[p.len() - w..]) {
                for (v, e) in host.incident(u) {
                    if v <= u || owner[v] == NONE || owner[v] == owner[u] || exit[u] == exit[v] || board.is_breaker(e) {
                        continue;
                    }
                    let (r, l) = if exit[u] { (u, v) } else { (v, u) };
                    xs.push(e);
                    arcs.push((owner[r], owner[l]));
                }
            }
        }
        let mut order: Vec<usize> = (0..xs.len()).collect();
        order.sort_by_key(|&i| xs[i]);
        let xs: Vec<EdgeId> = order.iter().map(|&i| xs[i]).collect();
        let arcs: Vec<(u32, u32)> = order.iter().map(|&i| arcs[i]).collect();
        let local: HashMap<EdgeId, u32> = xs.iter().enumerate().map(|(i, &e)| (e, i as u32)).collect();

        let m = th.pair_m.min(t / 2).max(1);
        let seed = rng.gen();
        let inner = WindowGame::new(&arcs, t, m, th.window_bias as f64, consts, derive_seed(seed, 1));
        let mut game = FakeMoves::new(inner, xs.len(), b, th.window_bias.max(b), true, derive_seed(seed, 2));
        let mut digraph = Digraph::new(t);
        let mut arc_seen = vec![false; t * t];
        let maker_x: Vec<bool> = xs.iter().map(|&e| board.is_maker(e)).collect();
        for (i, &e) in xs.iter().enumerate() {
            if board.is_maker(e) {
                game.observe(Side::Maker, i as EdgeId);
                let (p, q) = arcs[i];
                arc_seen[p as usize * t + q as usize] = true;
                digraph.add_arc(p as usize, q as usize);
            }
        }
        let report = WindowReport { paths: t, discarded, window_edges: xs.len(), ..Default::default() };
        let mut st = WindowStage {
            host,
            paths,
            pos,
            local,
            xs,
            arcs,
            arc_seen,
            maker_x,
            digraph,
            game: Some(game),
            best: Vec::new(),
            stall: 0,
            restarts: consts.dpath_restarts,
            min_len,
            report,
            rng: GameRng::seed_from_u64(derive_seed(seed, 3)),
        };
        st.search();
        st
    }

    pub(crate) fn report(&self) -> &WindowReport {
        &self.report
    }

    fn search(&mut self) {
        let t = self.paths.len();
        let mut best = long_directed_path(&self.digraph, 1);
        let mut order: Vec<Vertex> = (0..t).collect();
        for _ in 0..self.restarts {
            if best.len() == t {
                break;
            }
            order.shuffle(&mut self.rng);
            let cand = dfs_longest_stack(&self.digraph, &order, 1);
            if cand.len() > best.len() {
                best = cand;
            }
        }
        if best.len() > self.best.len() {
            self.best = best;
            self.stall = 0;
        }
        self.report.d_path = self.best.len();
    }

    pub(crate) fn observe(&mut self, side: Side, e: EdgeId) {
        let Some(&i) = self.local.get(&e) else { return };
        if let Some(g) = self.game.as_mut() {
            g.observe(side, i);
        }
        if side == Side::Maker {
            self.maker_x[i as usize] = true;
            let (p, q) = self.arcs[i as usize];
            let t = self.paths.len();
            let slot = p as usize * t + q as usize;
            if !self.arc_seen[slot] {
                self.arc_seen[slot] = true;
                self.report.arcs += 1;
                self.digraph.add_arc(p as usize, q as usize);
                self.search();
            }
        }
    }

    fn covered(&self) -> bool {
        self.best.len() >= self.paths.len()
    }

    /// Next connecting claim, or `None` once the digraph path is final.
    pub(crate) fn next(&mut self, board: &Board, rng: &mut GameRng) -> Option<EdgeId> {
        if self.covered() {
            return None;
        }
        self.stall += 1;
        // a long stall with an acceptable splice is good enough
        if self.stall > 2 * self.paths.len() + 8 && self.splice().len() >= self.min_len {
            return None;
        }
        if let Some(game) = self.game.as_mut() {
            match game.next_move(board, rng) {
                MakerAction::Claim(c) => return Some(self.xs[c.edge as usize]),
                _ => {
                    self.report.virtual_claims = game.virtual_claims();
                    self.game = None;
                }
            }
        }
        let t = self.paths.len();
        let i = (0..self.xs.len()).find(|&i| {
            let (p, q) = self.arcs[i];
            board.is_free(self.xs[i]) && !self.arc_seen[p as usize * t + q as usize]
        })?;
        self.report.fallback_moves += 1;
        Some(self.xs[i])
    }

    pub(crate) fn virtual_claims(&self) -> usize {
        self.game.as_ref().map_or(self.report.virtual_claims, |g| g.virtual_claims())
    }

    /// The long path through the paths of the best digraph path, joined by
    /// the Maker edges that waste the fewest vertices.
    pub(crate) fn splice(&self) -> Vec<Vertex> {
        let seq = &self.best;
        if seq.is_empty() {
            return Vec::new();
        }
        let last = seq.len() - 1;
        let mut entries = vec![0usize; seq.len()];
        let mut exits = vec![0usize; seq.len()];
        exits[last] = self.paths[seq[last]].len() - 1;
        for k in 0..last {
            let (p, q) = (seq[k], seq[k + 1]);
            let len_p = self.paths[p].len();
            let mut best: Option<(usize, usize, usize)> = None;
            for i in (0..self.xs.len()).filter(|&i| self.maker_x[i] && self.arcs[i] == (p as u32, q as u32)) {
                let (a, c) = self.host.endpoints(self.xs[i]);
                let (r, l) = if self.pos_in(a, p) { (a, c) } else { (c, a) };
                let (ir, il) = (self.pos[r] as usize, self.pos[l] as usize);
                let loss = (len_p - 1 - ir) + il;
                if best.is_none_or(|(bl, _, _)| loss < bl) {
                    best = Some((loss, ir, il));
                }
            }
            let (_, ir, il) = best.expect("digraph arcs come from Maker edges");
            exits[k] = ir;
            entries[k + 1] = il;
        }
        let mut out = Vec::new();
        for (k, &p) in seq.iter().enumerate() {
            out.extend_from_slice(&self.paths[p][entries[k]..=exits[k]]);
        }
        out
    }

    fn pos_in(&self, v: Vertex, p: usize) -> bool {
        let path = &self.paths[p];
        let i = self.pos[v] as usize;
        i < path.len() && path[i] == v
    }
}
