//! The expander builder: on a residual host `H = (G - B)[V_H]` Maker
//! alternates a degree game (odd moves) with the sampled pair potential
//! (even moves) on a sparsified edge set `E_1`, and stops as soon as the
//! stage goal holds in his graph.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use super::augment::Augmenter;
use super::consts::StrategyConstants;
use super::pairs::PairPotential;
use super::stage1::StageStep;
use crate::box_degree::DegreeGameView;
use crate::engine::{Board, Claim, MakerAction, MakerStrategy, Side};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, EdgeId, Graph, Vertex};
use crate::oracles::{
    expander_check, max_bipartite_matching, max_matching, posa_ham_path, ExpanderParams, PosaConfig,
};
use crate::rng::GameRng;

const NONE: u32 = u32::MAX;

/// What the builder is after; it keeps claiming until this holds in Maker's
/// graph on `V_H`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "goal", rename_all = "kebab-case")]
pub enum BuildGoal {
    Expander { r: usize, c: f64 },
    /// A matching covering all of `V_H` but at most one vertex.
    PerfectMatching,
    /// Perfect matching between the two sides (host vertices below `half`
    /// form the left side).
    BipartiteMatching { half: usize },
    /// Hamilton path of Maker's graph on `V_H` from `x` to `y`.
    HamPath { x: Vertex, y: Vertex },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlanStep {
    Claim(EdgeId, &'static str),
    Complete,
    Stuck(String),
}

/// Move and check counters, reported in transcripts and tests.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanStats {
    pub degree_moves: usize,
    pub pair_moves: usize,
    /// Claims on augmenting paths (matching goals only).
    pub augment_moves: usize,
    /// Claims on a planned Hamilton route (path goal only).
    #[serde(default)]
    pub route_moves: usize,
    pub yields: usize,
    pub resamples: usize,
    pub goal_checks: usize,
}

/// Inputs of [`sparsify`]: the residual host and the degree targets.
pub struct SparsifyInput<'a> {
    pub host: &'a Graph,
    /// Host vertex -> index in `V_H`, or `u32::MAX`.
    pub local: &'a [u32],
    pub vh: &'a [Vertex],
    pub h_edges: &'a [EdgeId],
    pub free: &'a dyn Fn(EdgeId) -> bool,
    pub a2: &'a [Vertex],
}

/// Keeps every edge of `H` independently with probability `rho` and checks
/// the sparse graph: every `A_2` vertex keeps about half its expected free
/// degree, sampled set pairs keep half their expected cross edges, and no
/// sampled set becomes too dense. Resamples up to `attempts` times.
pub fn sparsify(input: &SparsifyInput<'_>, rho: f64, attempts: usize, rng: &mut GameRng) -> Result<Vec<EdgeId>> {
    if !(0.0..=1.0).contains(&rho) {
        return Err(Error::Setup(format!("sampling rate {rho} outside [0,1]")));
    }
    if rho >= 1.0 {
        return Ok(input.h_edges.to_vec());
    }
    for _ in 0..attempts.max(1) {
        let e1: Vec<EdgeId> = input.h_edges.iter().copied().filter(|_| rng.gen_bool(rho)).collect();
        if sparse_ok(input, &e1, rho, rng) {
            return Ok(e1);
        }
    }
    Err(Error::Setup(format!("sparsification at rate {rho:.3} failed {attempts} validations")))
}

fn sparse_ok(input: &SparsifyInput<'_>, e1: &[EdgeId], rho: f64, rng: &mut GameRng) -> bool {
    let h = input.vh.len();
    if e1.is_empty() {
        return input.h_edges.is_empty();
    }
    let mut free_h = vec![0usize; h];
    let mut free_1 = vec![0usize; h];
    let mut in_e1 = std::collections::HashSet::with_capacity(e1.len());
    in_e1.extend(e1.iter().copied());
    for &e in input.h_edges {
        if !(input.free)(e) {
            continue;
        }
        let (u, v) = input.host.endpoints(e);
        let kept = in_e1.contains(&e);
        for x in [u, v] {
            let l = input.local[x] as usize;
            free_h[l] += 1;
            if kept {
                free_1[l] += 1;
            }
        }
    }
    // free degrees of A_2
    let degrees_ok = input.a2.iter().all(|&v| {
        let l = input.local[v] as usize;
        free_1[l] >= ((rho * free_h[l] as f64 / 2.0).floor() as usize).max(1)
    });
    if !degrees_ok {
        return false;
    }
    // cross edges and density on sampled sets
    let s = (h as f64 / (2.0 * (h.max(3) as f64).ln())).ceil() as usize;
    if s == 0 || 2 * s > h {
        return true;
    }
    let ln_n = (input.host.n().max(3) as f64).ln();
    let mut order: Vec<Vertex> = input.vh.to_vec();
    let mut mark = vec![0u8; input.host.n()];
    for _ in 0..32 {
        order.shuffle(rng);
        let (a, b) = (&order[..s], &order[s..2 * s]);
        a.iter().for_each(|&v| mark[v] = 1);
        b.iter().for_each(|&v| mark[v] = 2);
        let (mut cross_h, mut cross_1, mut inner_1) = (0usize, 0usize, 0usize);
        for &u in a {
            for (w, e) in input.host.incident(u) {
                if input.local[w] == NONE || (!(input.free)(e) && !in_e1.contains(&e)) {
                    continue;
                }
                let kept = in_e1.contains(&e);
                match mark[w] {
                    2 => {
                        cross_h += 1;
                        cross_1 += kept as usize;
                    }
                    1 if w > u => inner_1 += kept as usize,
                    _ => {}
                }
            }
        }
        a.iter().chain(b).for_each(|&v| mark[v] = 0);
        if (cross_1 as f64) < (rho * cross_h as f64 / 2.0).floor() {
            return false;
        }
        if inner_1 as f64 > 1000.0 * s as f64 * ln_n {
            return false;
        }
    }
    true
}

/// State of one expander-builder run.
pub struct ExpanderPlan {
    host: Arc<Graph>,
    vh: Vec<Vertex>,
    local: Vec<u32>,
    goal: BuildGoal,
    h_edges: usize,
    e1: usize,
    rho: f64,
    e1_mask: Arc<Vec<bool>>,
    a1: Vec<Vertex>,
    a2: Vec<Vertex>,
    in_a2: Vec<bool>,
    view: DegreeGameView,
    target: u32,
    pairs: PairPotential,
    pair_size: usize,
    pair_sampled: bool,
    beta: f64,
    consts: StrategyConstants,
    maker_edges: Vec<(u32, u32)>,
    maker_deg: Vec<u32>,
    moves: usize,
    budget: usize,
    pair_turn: bool,
    dirty: bool,
    complete: bool,
    matching: Vec<(Vertex, Vertex)>,
    path: Vec<Vertex>,
    stats: PlanStats,
    augment: Option<Augmenter>,
    augment_live: bool,
    /// Planned Hamilton path of `H` (local ids) and its edges Maker still
    /// has to claim.
    route: Vec<usize>,
    route_todo: Vec<EdgeId>,
    route_live: bool,
    rng: GameRng,
}

impl ExpanderPlan {
    /// Builds the plan on `V_H = vh` from the current board. `b` is
    /// Breaker's bias; the pair game is played against bias `2b`.
    pub fn new(
        host: Arc<Graph>,
        vh: Vec<Vertex>,
        goal: BuildGoal,
        board: &Board,
        b: usize,
        consts: &StrategyConstants,
        rng: &mut GameRng,
    ) -> Result<Self> {
        let n = host.n();
        let mut vh = vh;
        vh.sort_unstable();
        vh.dedup();
        if let BuildGoal::BipartiteMatching { half } = goal {
            // left side first so that local ids form a bipartite layout
            vh.sort_by_key(|&v| (v >= half, v));
        }
        if vh.iter().any(|&v| v >= n) {
            return Err(Error::Setup("residual vertex outside the host".into()));
        }
        let mut local = vec![NONE; n];
        for (i, &v) in vh.iter().enumerate() {
            local[v] = i as u32;
        }
        let h = vh.len();
        let mut h_edges = Vec::new();
        let mut maker_edges = Vec::new();
        let mut maker_deg = vec![0u32; h];
        let mut free_deg = vec![0usize; h];
        for &v in &vh {
            for (w, e) in host.incident(v) {
                if w <= v || local[w] == NONE || board.is_breaker(e) {
                    continue;
                }
                h_edges.push(e);
                let (lu, lw) = (local[v], local[w]);
                if board.is_maker(e) {
                    maker_edges.push((lu.min(lw), lu.max(lw)));
                    maker_deg[lu as usize] += 1;
                    maker_deg[lw as usize] += 1;
                } else {
                    free_deg[lu as usize] += 1;
                    free_deg[lw as usize] += 1;
                }
            }
        }
        h_edges.sort_unstable();

        let avg_free = if h == 0 { 0.0 } else { free_deg.iter().sum::<usize>() as f64 / h as f64 };
        let a2_min = (consts.c2 * avg_free).max(1.0);
        let (a2, a1): (Vec<Vertex>, Vec<Vertex>) =
            vh.iter().partition(|&&v| free_deg[local[v] as usize] as f64 >= a2_min);

        let rho = if avg_free > 0.0 {
            let floor = 1.0 / (n.max(3) as f64).ln();
            (consts.rho_degree / avg_free).max(floor).min(1.0)
        } else {
            1.0
        };
        let is_free = |e: EdgeId| board.is_free(e);
        let input = SparsifyInput { host: &host, local: &local, vh: &vh, h_edges: &h_edges, free: &is_free, a2: &a2 };
        let e1 = sparsify(&input, rho, consts.sparsify_attempts, rng)?;

        let mut mask = vec![false; host.edge_count()];
        e1.iter().for_each(|&e| mask[e as usize] = true);
        let mask = Arc::new(mask);
        let view = DegreeGameView::new(Arc::clone(&host), &a2, &vh)
            .with_allowed(Arc::clone(&mask))
            .with_pick(consts.pick);
        let mut view = view;
        for &e in &e1 {
            if board.is_maker(e) {
                view.observe(Side::Maker, e);
            }
        }
        let mut in_a2 = vec![false; n];
        a2.iter().for_each(|&v| in_a2[v] = true);
        let target = 1;
        for &v in &a2 {
            view.set_v1(v, view.maker_degree(v) < target);
        }

        let pair_size = match goal {
            BuildGoal::Expander { r, .. } => r,
            BuildGoal::BipartiteMatching { .. } => ((h / 2) as f64 / (h.max(3) as f64).ln()).floor() as usize,
            _ => (h as f64 / (h.max(3) as f64).ln()).floor() as usize,
        }
        .max(1);
        let pair_every_turn = matches!(goal, BuildGoal::Expander { .. });
        let budget = ((consts.expander_budget * h as f64).ceil() as usize).min(e1.len().max(1));
        let mut plan = ExpanderPlan {
            host,
            vh,
            local,
            goal,
            h_edges: h_edges.len(),
            e1: e1.len(),
            rho,
            e1_mask: mask,
            a1,
            a2,
            in_a2,
            view,
            target,
            pairs: PairPotential::new(Vec::new(), &[], |_| true, 1.0, 0.0),
            pair_size,
            pair_sampled: false,
            // pair moves on every turn face bias b, alternating ones 2b
            beta: if pair_every_turn { b as f64 } else { 2.0 * b as f64 },
            consts: consts.clone(),
            maker_edges,
            maker_deg,
            moves: 0,
            budget,
            pair_turn: false,
            dirty: true,
            complete: false,
            matching: Vec::new(),
            path: Vec::new(),
            stats: PlanStats::default(),
            augment: None,
            augment_live: true,
            route: Vec::new(),
            route_todo: Vec::new(),
            route_live: true,
            rng: GameRng::seed_from_u64(rng.gen()),
        };
        plan.sample_pairs(board);
        Ok(plan)
    }

    pub fn vh(&self) -> &[Vertex] {
        &self.vh
    }

    pub fn goal(&self) -> &BuildGoal {
        &self.goal
    }

    /// `(|E_H|, |E_1|, rho)`.
    pub fn sparse_sizes(&self) -> (usize, usize, f64) {
        (self.h_edges, self.e1, self.rho)
    }

    pub fn partition(&self) -> (&[Vertex], &[Vertex]) {
        (&self.a1, &self.a2)
    }

    pub fn moves(&self) -> usize {
        self.moves
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn stats(&self) -> &PlanStats {
        &self.stats
    }

    pub fn degree_view(&self) -> &DegreeGameView {
        &self.view
    }

    /// Maker's graph on `V_H` in local indices.
    pub fn maker_graph(&self) -> Graph {
        Graph::from_edges(self.vh.len(), self.maker_edges.iter().map(|&(u, v)| (u as usize, v as usize)))
            .expect("local maker edges are valid")
    }

    /// Matching found for a matching goal, in host vertices.
    pub fn matching(&self) -> &[(Vertex, Vertex)] {
        &self.matching
    }

    /// Hamilton path found for a path goal, in host vertices.
    pub fn path(&self) -> &[Vertex] {
        &self.path
    }

    fn in_h(&self, e: EdgeId) -> Option<(u32, u32)> {
        let (u, v) = self.host.endpoints(e);
        let (lu, lv) = (self.local[u], self.local[v]);
        (lu != NONE && lv != NONE).then_some((lu.min(lv), lu.max(lv)))
    }

    pub fn observe(&mut self, side: Side, e: EdgeId) {
        let Some((lu, lv)) = self.in_h(e) else { return };
        self.view.observe(side, e);
        self.pairs.observe(side, e);
        if side == Side::Maker {
            self.maker_edges.push((lu, lv));
            self.maker_deg[lu as usize] += 1;
            self.maker_deg[lv as usize] += 1;
            self.dirty = true;
            let (u, v) = self.host.endpoints(e);
            for x in [u, v] {
                if self.in_a2[x] && self.view.maker_degree(x) >= self.target {
                    self.view.set_v1(x, false);
                }
            }
        }
    }

    /// Next claim of the plan, or completion / failure.
    pub fn next(&mut self, board: &Board) -> PlanStep {
        if self.dirty {
            self.dirty = false;
            self.check_goal();
        }
        if self.complete {
            return PlanStep::Complete;
        }
        if self.moves >= self.budget {
            return PlanStep::Stuck(format!("expander-incomplete: budget of {} claims spent", self.budget));
        }
        // expander goal: blocking pairs comes first while the whole family
        // is tracked; sampled families alternate with the degree game
        let pair_turn = match self.goal {
            BuildGoal::Expander { .. } => self.pair_turn || !self.pair_sampled,
            _ => self.pair_turn && !self.consts.lazy_pairs,
        };
        self.pair_turn = !self.pair_turn;
        let pick = if pair_turn {
            self.pair_move(board).or_else(|| self.degree_move(board))
        } else {
            self.degree_move(board).or_else(|| self.pair_move(board))
        };
        match pick {
            Some((e, note)) => {
                self.moves += 1;
                PlanStep::Claim(e, note)
            }
            None => PlanStep::Stuck("expander-incomplete: no free edge left in E_1".into()),
        }
    }

    fn degree_move(&mut self, board: &Board) -> Option<(EdgeId, &'static str)> {
        loop {
            if let Some((e, _)) = self.view.next_claim(board) {
                self.stats.degree_moves += 1;
                return Some((e, "expander-degree"));
            }
            // matching goals: once every vertex is covered, augmenting paths
            // are cheaper than raising every degree target
            if self.is_matching_goal() && self.augment_live {
                if let Some(e) = self.augment_move(board) {
                    self.stats.augment_moves += 1;
                    return Some((e, "expander-augment"));
                }
            }
            // path goal: likewise, route a Hamilton path through Maker's
            // edges and claim only the missing links
            if matches!(self.goal, BuildGoal::HamPath { .. }) && self.route_live {
                if let Some(e) = self.route_move(board) {
                    self.stats.route_moves += 1;
                    return Some((e, "expander-route"));
                }
            }
            if self.target as usize >= self.vh.len() {
                return None;
            }
            self.target += 1;
            for i in 0..self.a2.len() {
                let v = self.a2[i];
                let below = self.view.maker_degree(v) < self.target;
                self.view.set_v1(v, below);
            }
        }
    }

    fn is_matching_goal(&self) -> bool {
        matches!(self.goal, BuildGoal::PerfectMatching | BuildGoal::BipartiteMatching { .. })
    }

    fn augment_move(&mut self, board: &Board) -> Option<EdgeId> {
        if self.augment.is_none() {
            let m = max_matching(&self.maker_graph());
            let pairs: Vec<(Vertex, Vertex)> = m.into_iter().map(|(u, v)| (self.vh[u], self.vh[v])).collect();
            self.augment = Some(Augmenter::new(self.host.n(), Some(&self.vh), &pairs));
        }
        let aug = self.augment.as_mut().expect("just built");
        match aug.next(&self.host, board) {
            StageStep::Claim(e) => Some(e),
            StageStep::Complete | StageStep::Stuck(_) => {
                self.augment_live = false;
                None
            }
        }
    }

    fn route_move(&mut self, board: &Board) -> Option<EdgeId> {
        if self.route_todo.iter().any(|&e| board.is_breaker(e)) {
            self.route_todo.clear();
        }
        self.route_todo.retain(|&e| board.is_free(e));
        if self.route_todo.is_empty() && !self.plan_route(board) {
            self.route_live = false;
            return None;
        }
        self.route_todo.pop()
    }

    /// Finds a Hamilton `x`-`y` path in Maker's graph plus a random share of
    /// the free edges of `H`, growing the share until a path shows up, so
    /// that the path leans on edges Maker already owns.
    fn plan_route(&mut self, board: &Board) -> bool {
        let BuildGoal::HamPath { x, y } = self.goal else { return false };
        let h = self.vh.len();
        let (lx, ly) = (self.local[x] as usize, self.local[y] as usize);
        if h < 2 {
            return false;
        }
        let mut free: Vec<(usize, usize, EdgeId)> = Vec::new();
        for (i, &v) in self.vh.iter().enumerate() {
            for (w, e) in self.host.incident(v) {
                let lw = self.local[w];
                if lw != NONE && (lw as usize) > i && board.is_free(e) {
                    free.push((i, lw as usize, e));
                }
            }
        }
        let maker: Vec<(usize, usize)> = self.maker_edges.iter().map(|&(u, v)| (u as usize, v as usize)).collect();
        let mut share = 0.5 * h as f64 / free.len().max(1) as f64;
        loop {
            let share_now = share.min(1.0);
            let picked: Vec<(usize, usize, EdgeId)> =
                free.iter().copied().filter(|_| share_now >= 1.0 || self.rng.gen_bool(share_now)).collect();
            let g = Graph::from_edges(h, maker.iter().copied().chain(picked.iter().map(|&(u, v, _)| (u, v))))
                .expect("local edges are valid");
            let cfg = PosaConfig { budget_factor: self.consts.posa_budget, seed: self.rng.gen(), ..Default::default() };
            if let Some(p) = posa_ham_path(&g, lx, ly, &cfg) {
                let owned = self.maker_graph();
                self.route_todo = p
                    .windows(2)
                    .filter(|w| owned.edge_id(w[0], w[1]).is_none())
                    .map(|w| self.host.edge_id(self.vh[w[0]], self.vh[w[1]]).expect("route edge is in the host"))
                    .collect();
                self.route = p;
                return true;
            }
            if share_now >= 1.0 {
                return false;
            }
            share *= 2.0;
        }
    }

    fn pair_move(&mut self, board: &Board) -> Option<(EdgeId, &'static str)> {
        if self.pairs.is_empty() {
            return None;
        }
        if self.pairs.potential() < self.consts.yield_eps && (self.pairs.live() > 0 || !self.pair_sampled) {
            self.stats.yields += 1;
            return None;
        }
        let mut best = self.pairs.best(|e| board.is_free(e));
        if best.is_none() && self.pair_sampled {
            self.stats.resamples += 1;
            self.sample_pairs(board);
            if self.pairs.potential() < self.consts.yield_eps {
                self.stats.yields += 1;
                return None;
            }
            best = self.pairs.best(|e| board.is_free(e));
        }
        best.map(|e| {
            self.stats.pair_moves += 1;
            (e, "expander-pair")
        })
    }


    /// Draws the pair family: disjoint `pair_size`-sets of `V_H` (one per
    /// side for the bipartite goal). Every pair is used when the family is
    /// small enough, otherwise a seeded sample.
    fn sample_pairs(&mut self, board: &Board) {
        let k = self.pair_size;
        let (pool_a, pool_b): (Vec<Vertex>, Vec<Vertex>) = match self.goal {
            BuildGoal::BipartiteMatching { half } => self.vh.iter().partition(|&&v| v < half),
            _ => (self.vh.clone(), self.vh.clone()),
        };
        let bipartite = matches!(self.goal, BuildGoal::BipartiteMatching { .. });
        if pool_a.len() < k || pool_b.len() < k || (!bipartite && pool_a.len() < 2 * k) {
            self.pairs = PairPotential::new(Vec::new(), &[], |_| true, self.beta, 0.0);
            return;
        }
        let family = if bipartite {
            binom(pool_a.len(), k) * binom(pool_b.len(), k)
        } else {
            binom(pool_a.len(), k) * binom(pool_a.len() - k, k) / 2.0
        };
        let mut chosen: Vec<(Vec<Vertex>, Vec<Vertex>)> = Vec::new();
        if family <= self.consts.all_pairs_limit as f64 && pool_a.len() <= 32 && pool_b.len() <= 32 {
            for a in combinations(pool_a.len(), k) {
                let set_a: Vec<Vertex> = a.iter().map(|&i| pool_a[i]).collect();
                for b in combinations(pool_b.len(), k) {
                    let set_b: Vec<Vertex> = b.iter().map(|&i| pool_b[i]).collect();
                    // unordered pairs of disjoint sets, counted once
                    if !bipartite && (set_b.iter().any(|v| set_a.contains(v)) || set_b[0] < set_a[0]) {
                        continue;
                    }
                    chosen.push((set_a.clone(), set_b));
                }
            }
            self.pair_sampled = false;
        } else {
            for _ in 0..self.consts.pair_samples {
                if bipartite {
                    let a = pool_a.choose_multiple(&mut self.rng, k).copied().collect();
                    let b = pool_b.choose_multiple(&mut self.rng, k).copied().collect();
                    chosen.push((a, b));
                } else {
                    let both: Vec<Vertex> = pool_a.choose_multiple(&mut self.rng, 2 * k).copied().collect();
                    chosen.push((both[..k].to_vec(), both[k..].to_vec()));
                }
            }
            self.pair_sampled = true;
        }
        let mut mark = vec![false; self.host.n()];
        let mut sets = Vec::with_capacity(chosen.len());
        let mut hit = Vec::with_capacity(chosen.len());
        for (a, b) in &chosen {
            b.iter().for_each(|&v| mark[v] = true);
            let mut edges = Vec::new();
            let mut h = false;
            for &u in a {
                for (w, e) in self.host.incident(u) {
                    if !mark[w] {
                        continue;
                    }
                    if board.is_maker(e) {
                        h = true;
                    } else if board.is_free(e) && self.e1_mask[e as usize] {
                        edges.push(e);
                    }
                }
            }
            b.iter().for_each(|&v| mark[v] = false);
            sets.push(edges);
            hit.push(h);
        }
        self.pairs = PairPotential::new(sets, &hit, |e| board.is_free(e), self.beta, family);
    }

    fn check_goal(&mut self) {
        let h = self.vh.len();
        if h == 0 {
            self.complete = true;
            return;
        }
        self.stats.goal_checks += 1;
        match self.goal.clone() {
            BuildGoal::Expander { r, c } => {
                let need = c.ceil() as u32;
                if self.maker_deg.iter().any(|&d| d < need) {
                    return;
                }
                let params = ExpanderParams::new(r.min(h), c);
                let params = ExpanderParams { seed: self.rng.gen(), ..params };
                if expander_check(&self.maker_graph(), &params).is_ok_and(|v| v.pass) {
                    self.complete = true;
                }
            }
            BuildGoal::PerfectMatching => {
                if self.maker_deg.iter().filter(|&&d| d == 0).count() > h % 2 {
                    return;
                }
                let m = max_matching(&self.maker_graph());
                if m.len() == h / 2 {
                    self.matching = m.into_iter().map(|(u, v)| (self.vh[u], self.vh[v])).collect();
                    self.complete = true;
                }
            }
            BuildGoal::BipartiteMatching { .. } => {
                if self.maker_deg.contains(&0) || h % 2 == 1 {
                    return;
                }
                let Ok(bg) = BipartiteGraph::new(self.maker_graph(), h / 2) else { return };
                let m = max_bipartite_matching(&bg);
                if m.len() == h / 2 {
                    self.matching = m.pairs.iter().map(|&(u, v)| (self.vh[u], self.vh[v])).collect();
                    self.complete = true;
                }
            }
            BuildGoal::HamPath { x, y } => {
                let (lx, ly) = (self.local[x] as usize, self.local[y] as usize);
                let low = (0..h).any(|i| {
                    let need = if i == lx || i == ly { 1 } else { 2 };
                    self.maker_deg[i] < need
                });
                if low || h < 2 {
                    return;
                }
                if !self.route.is_empty() {
                    let owned = self.maker_graph();
                    if self.route.windows(2).all(|w| owned.edge_id(w[0], w[1]).is_some()) {
                        self.path = self.route.iter().map(|&i| self.vh[i]).collect();
                        self.complete = true;
                        return;
                    }
                }
                let cfg = PosaConfig { budget_factor: self.consts.posa_budget, seed: self.rng.gen(), ..Default::default() };
                if let Some(p) = posa_ham_path(&self.maker_graph(), lx, ly, &cfg) {
                    self.path = p.into_iter().map(|i| self.vh[i]).collect();
                    self.complete = true;
                }
            }
        }
    }
}

/// The builder as a stand-alone Maker strategy on `V_H`; the plan is drawn
/// from the board at Maker's first move.
pub struct ExpanderStrategy {
    host: Arc<Graph>,
    vh: Vec<Vertex>,
    goal: BuildGoal,
    b: usize,
    consts: StrategyConstants,
    plan: Option<ExpanderPlan>,
}

impl ExpanderStrategy {
    pub fn new(host: Arc<Graph>, vh: Vec<Vertex>, goal: BuildGoal, b: usize, consts: &StrategyConstants) -> Result<Self> {
        consts.validate()?;
        if let Some(&v) = vh.iter().find(|&&v| v >= host.n()) {
            return Err(crate::error::invalid(format!("vertex {v} outside the host")));
        }
        Ok(ExpanderStrategy { host, vh, goal, b, consts: consts.clone(), plan: None })
    }

    pub fn plan(&self) -> Option<&ExpanderPlan> {
        self.plan.as_ref()
    }
}

impl MakerStrategy for ExpanderStrategy {
    fn name(&self) -> String {
        "expander-builder".into()
    }

    fn observe(&mut self, side: Side, e: EdgeId) {
        if let Some(plan) = self.plan.as_mut() {
            plan.observe(side, e);
        }
    }

    fn next_move(&mut self, board: &Board, rng: &mut GameRng) -> MakerAction {
        if self.plan.is_none() {
            let vh = self.vh.clone();
            match ExpanderPlan::new(Arc::clone(&self.host), vh, self.goal.clone(), board, self.b, &self.consts, rng) {
                Ok(plan) => self.plan = Some(plan),
                Err(err) => return MakerAction::Forfeit(format!("setup: {err}")),
            }
        }
        match self.plan.as_mut().expect("plan drawn").next(board) {
            PlanStep::Claim(e, note) => MakerAction::Claim(Claim::new(e, note)),
            PlanStep::Complete => MakerAction::Done,
            PlanStep::Stuck(reason) => MakerAction::Forfeit(reason),
        }
    }
}

pub(crate) fn binom(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// All `k`-subsets of `0..n` as sorted index lists, in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else { break };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from;

    fn run_passive(g: Graph, goal: BuildGoal) -> (ExpanderPlan, Board) {
        let host = Arc::new(g);
        let mut board = Board::new(host.edge_count());
        let mut rng = rng_from(1, 2);
        let vh: Vec<Vertex> = (0..host.n()).collect();
        let mut plan =
            ExpanderPlan::new(Arc::clone(&host), vh, goal, &board, 1, &StrategyConstants::default(), &mut rng).unwrap();
        loop {
            match plan.next(&board) {
                PlanStep::Claim(e, _) => {
                    board.claim(e, Side::Maker).unwrap();
                    plan.observe(Side::Maker, e);
                }
                PlanStep::Complete => break,
                PlanStep::Stuck(r) => panic!("{r}"),
            }
        }
        (plan, board)
    }

    #[test]
    fn combinations_enumerate_all() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(binom(12, 3), 220.0);
    }

    #[test]
    fn passive_breaker_expander_on_k12() {
        let (plan, _) = run_passive(Graph::complete(12), BuildGoal::Expander { r: 3, c: 1.0 });
        let g = plan.maker_graph();
        assert!(expander_check(&g, &ExpanderParams::new(3, 1.0).exact()).unwrap().pass);
    }

    #[test]
    fn passive_breaker_reaches_degree_two() {
        // every A_2 vertex reaches Maker degree 2 within 2 |V_H| claims
        let (plan, _) = run_passive(Graph::complete(10), BuildGoal::HamPath { x: 0, y: 9 });
        assert!(plan.moves() <= 20);
        assert!(plan.maker_graph().min_degree() >= 1);
        assert_eq!(plan.path().len(), 10);
        assert_eq!((plan.path()[0], plan.path()[9]), (0, 9));
    }

    #[test]
    fn matching_goal_on_complete_graph() {
        let (plan, _) = run_passive(Graph::complete(9), BuildGoal::PerfectMatching);
        assert_eq!(plan.matching().len(), 4);
        assert!(plan.moves() <= 9);
    }

    #[test]
    fn sparsify_extremes() {
        let g = Graph::complete(30);
        let vh: Vec<Vertex> = (0..30).collect();
        let local: Vec<u32> = (0..30).collect();
        let edges: Vec<EdgeId> = (0..g.edge_count() as EdgeId).collect();
        let free = |_: EdgeId| true;
        let input = SparsifyInput { host: &g, local: &local, vh: &vh, h_edges: &edges, free: &free, a2: &vh };
        let mut rng = rng_from(3, 2);
        assert_eq!(sparsify(&input, 1.0, 10, &mut rng).unwrap(), edges);
        assert!(matches!(sparsify(&input, 0.0, 10, &mut rng), Err(Error::Setup(_))));
        let half = sparsify(&input, 0.5, 10, &mut rng).unwrap();
        assert!(half.len() < edges.len());
    }
}
