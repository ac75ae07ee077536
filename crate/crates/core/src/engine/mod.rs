//! The `(a:b)` referee. A game runs over an edge universe `0..len`; Maker
//! and Breaker strategies are consulted alternately, every claim is
//! validated against the [`Board`], and the whole game is logged into a
//! replayable [`Transcript`].
//!
//! Strategies read the board but never write it: the engine applies each
//! accepted claim and then notifies both strategies and the [`Objective`]
//! through `observe` / `on_claim`.

mod board;
mod fake;
mod multiboard;
mod objective;
mod transcript;

pub use board::{Board, ClaimError, Owner, Side};
pub use fake::FakeMoves;
pub use multiboard::{MultiBoard, SubBoard};
pub use objective::{maker_graph, GraphGoal, GraphObjective, NoObjective, Objective};
pub use transcript::{MoveRecord, Outcome, Transcript, TranscriptFinal, TranscriptHeader};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::{EdgeId, Vertex};
use crate::rng::{rng_from, stream, GameRng};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameConfig {
    pub a: usize,
    pub b: usize,
    #[serde(default)]
    pub maker_first: bool,
    /// Cap on Maker claims; reaching it ends the game as exhausted.
    #[serde(default)]
    pub move_limit: Option<usize>,
}

impl GameConfig {
    pub fn new(a: usize, b: usize) -> Self {
        GameConfig { a, b, maker_first: false, move_limit: None }
    }

    pub fn validate(&self) -> Result<()> {
        if self.a == 0 || self.b == 0 {
            return Err(invalid(format!("biases must be >= 1, got ({}:{})", self.a, self.b)));
        }
        Ok(())
    }
}

impl Default for GameConfig {
    fn default() -> Self {
        GameConfig::new(1, 1)
    }
}

/// A single Maker claim with its attribution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Claim {
    pub edge: EdgeId,
    /// Stage or sub-game that produced the move.
    pub note: &'static str,
    /// Sub-board index when several boards are multiplexed.
    pub board: Option<u32>,
}

impl Claim {
    pub fn new(edge: EdgeId, note: &'static str) -> Self {
        Claim { edge, note, board: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MakerAction {
    Claim(Claim),
    /// Maker considers the goal reached; the engine verifies the certificate.
    Done,
    Forfeit(String),
}

/// Structure Maker presents as proof of a win.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    Matching { pairs: Vec<(Vertex, Vertex)> },
    HamiltonCycle { cycle: Vec<Vertex> },
    /// Maker's whole graph is claimed to be `k`-vertex-connected.
    Connectivity { k: usize },
    WinningSet { edges: Vec<EdgeId> },
}

pub trait MakerStrategy {
    fn name(&self) -> String;

    /// Called after every accepted claim of either side.
    fn observe(&mut self, side: Side, edge: EdgeId);

    fn next_move(&mut self, board: &Board, rng: &mut GameRng) -> MakerAction;

    fn certificate(&self) -> Option<Certificate> {
        None
    }
}

pub trait BreakerStrategy {
    fn name(&self) -> String;

    fn observe(&mut self, _side: Side, _edge: EdgeId) {}

    /// Exactly `count` distinct free edges are expected.
    fn next_moves(&mut self, board: &Board, count: usize, rng: &mut GameRng) -> Vec<EdgeId>;
}

impl<T: MakerStrategy + ?Sized> MakerStrategy for Box<T> {
    fn name(&self) -> String {
        (**self).name()
    }
    fn observe(&mut self, side: Side, edge: EdgeId) {
        (**self).observe(side, edge)
    }
    fn next_move(&mut self, board: &Board, rng: &mut GameRng) -> MakerAction {
        (**self).next_move(board, rng)
    }
    fn certificate(&self) -> Option<Certificate> {
        (**self).certificate()
    }
}

impl<T: BreakerStrategy + ?Sized> BreakerStrategy for Box<T> {
    fn name(&self) -> String {
        (**self).name()
    }
    fn observe(&mut self, side: Side, edge: EdgeId) {
        (**self).observe(side, edge)
    }
    fn next_moves(&mut self, board: &Board, count: usize, rng: &mut GameRng) -> Vec<EdgeId> {
        (**self).next_moves(board, count, rng)
    }
}

/// Maker strategy that replays a fixed list of claims, then declares done.
#[derive(Clone, Debug)]
pub struct Scripted {
    moves: Vec<EdgeId>,
    next: usize,
}

impl Scripted {
    pub fn new(moves: Vec<EdgeId>) -> Self {
        Scripted { moves, next: 0 }
    }
}

impl MakerStrategy for Scripted {
    fn name(&self) -> String {
        "scripted".into()
    }

    fn observe(&mut self, _side: Side, _edge: EdgeId) {}

    fn next_move(&mut self, _board: &Board, _rng: &mut GameRng) -> MakerAction {
        match self.moves.get(self.next) {
            Some(&e) => {
                self.next += 1;
                MakerAction::Claim(Claim::new(e, "script"))
            }
            None => MakerAction::Done,
        }
    }
}

struct Game<'a> {
    board: Board,
    cfg: &'a GameConfig,
    maker: &'a mut dyn MakerStrategy,
    breaker: &'a mut dyn BreakerStrategy,
    objective: &'a mut dyn Objective,
    moves: Vec<MoveRecord>,
    maker_moves: usize,
    round: usize,
}

impl Game<'_> {
    fn apply(&mut self, side: Side, e: EdgeId) -> Option<Side> {
        self.board.claim(e, side).expect("validated claim");
        self.maker.observe(side, e);
        self.breaker.observe(side, e);
        self.objective.on_claim(side, e, &self.board)
    }

    fn maker_turn(&mut self, maker_rng: &mut GameRng) -> Option<Outcome> {
        for _ in 0..self.cfg.a {
            if self.board.free_count() == 0 {
                return None;
            }
            if let Some(limit) = self.cfg.move_limit {
                if self.maker_moves >= limit {
                    return Some(Outcome::Exhausted);
                }
            }
            match self.maker.next_move(&self.board, maker_rng) {
                MakerAction::Claim(c) => {
                    if let Err(err) = claimable(&self.board, c.edge) {
                        return Some(Outcome::forfeit(Side::Maker, format!("illegal-claim: {err}")));
                    }
                    self.moves.push(MoveRecord {
                        r: self.round,
                        side: Side::Maker,
                        edges: vec![c.edge],
                        board: c.board,
                        note: c.note.to_string(),
                    });
                    self.maker_moves += 1;
                    if let Some(w) = self.apply(Side::Maker, c.edge) {
                        return Some(Outcome::won_by(w));
                    }
                }
                MakerAction::Done => {
                    let cert = self.maker.certificate();
                    let verdict = self.objective.verify(&self.board, cert.as_ref());
                    return Some(if verdict.pass {
                        Outcome::MakerWin
                    } else {
                        Outcome::forfeit(Side::Maker, format!("certificate-rejected: {}", verdict.detail))
                    });
                }
                MakerAction::Forfeit(reason) => return Some(Outcome::forfeit(Side::Maker, reason)),
            }
        }
        None
    }

    fn breaker_turn(&mut self, breaker_rng: &mut GameRng) -> Option<Outcome> {
        let count = self.cfg.b.min(self.board.free_count());
        if count == 0 {
            return None;
        }
        let picks = self.breaker.next_moves(&self.board, count, breaker_rng);
        if picks.len() != count {
            return Some(Outcome::forfeit(
                Side::Breaker,
                format!("illegal-claim: {} edges offered, {count} required", picks.len()),
            ));
        }
        let mut seen = picks.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != picks.len() {
            return Some(Outcome::forfeit(Side::Breaker, "illegal-claim: duplicate edge".into()));
        }
        if let Some(err) = picks.iter().find_map(|&e| claimable(&self.board, e).err()) {
            return Some(Outcome::forfeit(Side::Breaker, format!("illegal-claim: {err}")));
        }
        self.moves.push(MoveRecord {
            r: self.round,
            side: Side::Breaker,
            edges: picks.clone(),
            board: None,
            note: String::new(),
        });
        let mut winner = None;
        for e in picks {
            if let Some(w) = self.apply(Side::Breaker, e) {
                winner.get_or_insert(w);
            }
        }
        winner.map(Outcome::won_by)
    }
}

fn claimable(board: &Board, e: EdgeId) -> std::result::Result<(), ClaimError> {
    if e as usize >= board.len() {
        Err(ClaimError::Foreign(e))
    } else if !board.is_free(e) {
        Err(ClaimError::Owned(e))
    } else {
        Ok(())
    }
}

/// Plays a full game on the universe `0..universe` and returns the transcript
/// together with the final board.
pub fn play(
    universe: usize,
    cfg: &GameConfig,
    maker: &mut dyn MakerStrategy,
    breaker: &mut dyn BreakerStrategy,
    objective: &mut dyn Objective,
    seed: u64,
) -> Result<(Transcript, Board)> {
    cfg.validate()?;
    let mut maker_rng = rng_from(seed, stream::MAKER);
    let mut breaker_rng = rng_from(seed, stream::BREAKER);
    let header = TranscriptHeader {
        config: cfg.clone(),
        seed,
        universe,
        maker: maker.name(),
        breaker: breaker.name(),
        game: String::new(),
        params: serde_json::Value::Null,
    };
    let mut game = Game {
        board: Board::new(universe),
        cfg,
        maker,
        breaker,
        objective,
        moves: Vec::new(),
        maker_moves: 0,
        round: 0,
    };
    let outcome = loop {
        game.round += 1;
        if game.board.free_count() == 0 {
            break Outcome::Exhausted;
        }
        let first = if cfg.maker_first { Side::Maker } else { Side::Breaker };
        let mut decided = None;
        for side in [first, first.other()] {
            decided = match side {
                Side::Maker => game.maker_turn(&mut maker_rng),
                Side::Breaker => game.breaker_turn(&mut breaker_rng),
            };
            if decided.is_some() {
                break;
            }
        }
        if let Some(o) = decided {
            break o;
        }
    };
    let certificate = match outcome {
        Outcome::MakerWin => game.maker.certificate(),
        _ => None,
    };
    let transcript = Transcript {
        header,
        moves: game.moves,
        last: TranscriptFinal { outcome, maker_moves: game.maker_moves, certificate },
    };
    Ok((transcript, game.board))
}
