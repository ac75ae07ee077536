use super::{Board, Certificate, MakerAction, MakerStrategy, Side};
use crate::graph::EdgeId;
use crate::rng::{rng_from, stream, GameRng};

/// Plays a strategy built for bias `(1:b_virtual)` in a `(1:b_real)` game.
///
/// Before each inner move the adapter tops up the Breaker claims seen since
/// the previous inner move to `b_virtual` by marking uniformly random free
/// edges as Breaker's in the inner strategy's private board. The real board
/// never sees these virtual claims, and the inner strategy never claims them.
pub struct FakeMoves<S> {
    inner: S,
    view: Board,
    b_real: usize,
    b_virtual: usize,
    since: usize,
    pad_first: bool,
    started: bool,
    virtual_claims: usize,
    rng: GameRng,
}

impl<S: MakerStrategy> FakeMoves<S> {
    /// `pad_first` controls whether the very first inner move is preceded by
    /// virtual claims (true when Breaker moves first).
    pub fn new(inner: S, universe: usize, b_real: usize, b_virtual: usize, pad_first: bool, seed: u64) -> Self {
        FakeMoves {
            inner,
            view: Board::new(universe),
            b_real,
            b_virtual,
            since: 0,
            pad_first,
            started: false,
            virtual_claims: 0,
            rng: rng_from(seed, stream::VIRTUAL),
        }
    }

    pub fn inner(&self) -> &S {
        &self.inner
    }

    /// The board as the inner strategy sees it.
    pub fn view(&self) -> &Board {
        &self.view
    }

    pub fn virtual_claims(&self) -> usize {
        self.virtual_claims
    }

    pub fn is_virtual(&self, e: EdgeId, real: &Board) -> bool {
        self.view.is_breaker(e) && real.is_free(e)
    }
}

impl<S: MakerStrategy> MakerStrategy for FakeMoves<S> {
    fn name(&self) -> String {
        if self.b_virtual > self.b_real {
            format!("fake({}:{} as 1:{})", self.inner.name(), self.b_real, self.b_virtual)
        } else {
            self.inner.name()
        }
    }

    fn observe(&mut self, side: Side, edge: EdgeId) {
        if side == Side::Breaker {
            self.since += 1;
        }
        // a real claim of an edge already marked virtual changes nothing
        if self.view.is_free(edge) {
            self.view.claim(edge, side).expect("free in view");
            self.inner.observe(side, edge);
        }
    }

    fn next_move(&mut self, _board: &Board, rng: &mut GameRng) -> MakerAction {
        if self.b_virtual > self.b_real && (self.started || self.pad_first) {
            let extra = self.b_virtual.saturating_sub(self.since);
            for _ in 0..extra {
                let Some(e) = self.view.random_free(&mut self.rng) else { break };
                self.view.claim(e, Side::Breaker).expect("free in view");
                self.virtual_claims += 1;
                self.inner.observe(Side::Breaker, e);
            }
        }
        self.since = 0;
        self.started = true;
        let action = self.inner.next_move(&self.view, rng);
        if let MakerAction::Claim(c) = &action {
            debug_assert!(self.view.is_free(c.edge), "inner strategy claimed a virtual edge");
        }
        action
    }

    fn certificate(&self) -> Option<Certificate> {
        self.inner.certificate()
    }
}
