use super::{Board, Claim, MakerAction, MakerStrategy, Side};
use crate::error::{invalid, Result};
use crate::graph::EdgeId;
use crate::rng::GameRng;

const NO_BOARD: u32 = u32::MAX;

/// One multiplexed sub-game with its own local edge ids `0..edges.len()`.
pub struct SubBoard {
    pub name: String,
    /// Local id -> global edge id.
    pub edges: Vec<EdgeId>,
    strategy: Box<dyn MakerStrategy>,
    board: Board,
    done: bool,
    visits: usize,
    breaker_since: usize,
    max_breaker_gap: usize,
}

impl SubBoard {
    pub fn new(name: impl Into<String>, edges: Vec<EdgeId>, strategy: Box<dyn MakerStrategy>) -> Self {
        let board = Board::new(edges.len());
        SubBoard {
            name: name.into(),
            edges,
            strategy,
            board,
            done: false,
            visits: 0,
            breaker_since: 0,
            max_breaker_gap: 0,
        }
    }

    pub fn is_done(&self) -> bool {
        self.done
    }

    /// Maker claims attributed to this board.
    pub fn visits(&self) -> usize {
        self.visits
    }

    /// Largest number of Breaker claims on this board between two
    /// consecutive Maker visits.
    pub fn max_breaker_gap(&self) -> usize {
        self.max_breaker_gap
    }

    pub fn board(&self) -> &Board {
        &self.board
    }

    pub fn strategy(&self) -> &dyn MakerStrategy {
        self.strategy.as_ref()
    }
}

/// Round-robin multiplexer over sub-boards with disjoint edge universes. A
/// board that reports completion is never offered again.
pub struct MultiBoard {
    boards: Vec<SubBoard>,
    board_of: Vec<u32>,
    local_of: Vec<u32>,
    cursor: usize,
}

impl MultiBoard {
    pub fn new(universe: usize, boards: Vec<SubBoard>) -> Result<Self> {
        let mut board_of = vec![NO_BOARD; universe];
        let mut local_of = vec![0u32; universe];
        for (i, sb) in boards.iter().enumerate() {
            for (l, &e) in sb.edges.iter().enumerate() {
                let slot = board_of
                    .get_mut(e as usize)
                    .ok_or_else(|| invalid(format!("edge {e} outside universe")))?;
                if *slot != NO_BOARD {
                    return Err(invalid(format!("edge {e} belongs to two sub-boards")));
                }
                *slot = i as u32;
                local_of[e as usize] = l as u32;
            }
        }
        Ok(MultiBoard { boards, board_of, local_of, cursor: 0 })
    }

    pub fn boards(&self) -> &[SubBoard] {
        &self.boards
    }

    pub fn len(&self) -> usize {
        self.boards.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boards.is_empty()
    }

    pub fn board_of(&self, e: EdgeId) -> Option<usize> {
        let b = self.board_of[e as usize];
        (b != NO_BOARD).then_some(b as usize)
    }

    pub fn all_done(&self) -> bool {
        self.boards.iter().all(|b| b.done)
    }

    /// Next unfinished board in round-robin order, or `None` when every
    /// board is done.
    pub fn dispatch(&self) -> Option<usize> {
        let t = self.boards.len();
        (0..t).map(|k| (self.cursor + k) % t).find(|&i| !self.boards[i].done)
    }

    pub fn mark_done(&mut self, i: usize) {
        self.boards[i].done = true;
    }

    fn visited(&mut self, i: usize) {
        let sb = &mut self.boards[i];
        sb.visits += 1;
        sb.max_breaker_gap = sb.max_breaker_gap.max(sb.breaker_since);
        sb.breaker_since = 0;
        self.cursor = (i + 1) % self.boards.len();
    }
}

impl MakerStrategy for MultiBoard {
    fn name(&self) -> String {
        format!("multiboard[{}]", self.boards.len())
    }

    fn observe(&mut self, side: Side, edge: EdgeId) {
        let Some(i) = self.board_of(edge) else { return };
        let local = self.local_of[edge as usize];
        let sb = &mut self.boards[i];
        sb.board.claim(local, side).expect("sub-board mirrors the real board");
        if side == Side::Breaker {
            sb.breaker_since += 1;
        }
        if !sb.done {
            sb.strategy.observe(side, local);
        }
    }

    fn next_move(&mut self, _board: &Board, rng: &mut GameRng) -> MakerAction {
        while let Some(i) = self.dispatch() {
            let sb = &mut self.boards[i];
            match sb.strategy.next_move(&sb.board, rng) {
                MakerAction::Claim(c) => {
                    let global = sb.edges[c.edge as usize];
                    self.visited(i);
                    return MakerAction::Claim(Claim { edge: global, note: c.note, board: Some(i as u32) });
                }
                MakerAction::Done => self.mark_done(i),
                MakerAction::Forfeit(reason) => {
                    return MakerAction::Forfeit(format!("{}: {reason}", sb.name));
                }
            }
        }
        MakerAction::Done
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Scripted;
    use crate::rng::rng_from;

    fn scripted(n: usize) -> Box<dyn MakerStrategy> {
        Box::new(Scripted::new((0..n as EdgeId).collect()))
    }

    #[test]
    fn round_robin_skips_finished_boards() {
        // board 1 has 4 moves, the others more
        let boards = vec![
            SubBoard::new("a", (0..10).collect(), scripted(10)),
            SubBoard::new("b", (10..14).collect(), scripted(4)),
            SubBoard::new("c", (14..24).collect(), scripted(10)),
        ];
        let mut mb = MultiBoard::new(24, boards).unwrap();
        let board = Board::new(24);
        let mut rng = rng_from(0, 0);
        let mut order = Vec::new();
        for _ in 0..16 {
            match mb.next_move(&board, &mut rng) {
                MakerAction::Claim(c) => {
                    order.push(c.board.unwrap());
                    mb.observe(Side::Maker, c.edge);
                }
                other => panic!("{other:?}"),
            }
        }
        assert_eq!(order, vec![0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 1, 2, 0, 2, 0, 2]);
        assert!(mb.boards()[1].is_done());
    }

    #[test]
    fn overlapping_boards_rejected() {
        let boards = vec![
            SubBoard::new("a", vec![0, 1], scripted(1)),
            SubBoard::new("b", vec![1, 2], scripted(1)),
        ];
        assert!(MultiBoard::new(3, boards).is_err());
    }
}
