//! The path system of the merging stage: vertex-disjoint Maker paths,
//! their free endpoints, and the retirement of long paths.

use std::collections::VecDeque;
use std::sync::Arc;

use super::stage1::StageStep;
use crate::engine::{Board, Side};
use crate::graph::{EdgeId, Graph, Vertex};

const NONE: u32 = u32::MAX;

/// Merges paths through free edges between endpoints of distinct live
/// paths, always taking the lowest-id such edge, until at most `target`
/// paths remain.
pub(crate) struct PathStage {
    host: Arc<Graph>,
    paths: Vec<VecDeque<Vertex>>,
    alive: Vec<bool>,
    retired: Vec<bool>,
    path_of: Vec<u32>,
    in_end: Vec<bool>,
    count: usize,
    target: usize,
    retire_len: usize,
    cursor: usize,
    pos: usize,
    pending: Option<EdgeId>,
}

impl PathStage {
    /// Starts from the single-edge paths of `matching`.
    pub(crate) fn new(host: Arc<Graph>, matching: &[(Vertex, Vertex)], target: usize, retire_len: usize) -> Self {
        let n = host.n();
        let mut path_of = vec![NONE; n];
        let mut in_end = vec![false; n];
        let mut paths = Vec::with_capacity(matching.len());
        for (i, &(u, v)) in matching.iter().enumerate() {
            path_of[u] = i as u32;
            path_of[v] = i as u32;
            in_end[u] = true;
            in_end[v] = true;
            paths.push(VecDeque::from([u, v]));
        }
        let count = paths.len();
        let mut st = PathStage {
            host,
            alive: vec![true; count],
            retired: vec![false; count],
            paths,
            path_of,
            in_end,
            count,
            target,
            retire_len,
            cursor: 0,
            pos: 0,
            pending: None,
        };
        for i in 0..count {
            st.maybe_retire(i);
        }
        st
    }

    #[cfg(test)]
    pub(crate) fn count(&self) -> usize {
        self.count
    }

    pub(crate) fn retired(&self) -> usize {
        (0..self.paths.len()).filter(|&i| self.alive[i] && self.retired[i]).count()
    }

    /// The current paths, in id order.
    pub(crate) fn paths(&self) -> Vec<Vec<Vertex>> {
        (0..self.paths.len()).filter(|&i| self.alive[i]).map(|i| self.paths[i].iter().copied().collect()).collect()
    }

    #[cfg(test)]
    pub(crate) fn is_end(&self, v: Vertex) -> bool {
        self.in_end[v]
    }

    fn maybe_retire(&mut self, i: usize) {
        if !self.retired[i] && self.paths[i].len() >= self.retire_len {
            self.retired[i] = true;
            let (a, b) = (self.paths[i][0], *self.paths[i].back().expect("non-empty path"));
            self.in_end[a] = false;
            self.in_end[b] = false;
        }
    }

    fn eligible(&self, u: Vertex, w: Vertex, e: EdgeId, board: &Board) -> bool {
        self.in_end[w] && self.path_of[w] != self.path_of[u] && board.is_free(e)
    }

    pub(crate) fn observe(&mut self, side: Side, e: EdgeId) {
        if side != Side::Maker || self.pending != Some(e) {
            return;
        }
        self.pending = None;
        let (u, v) = self.host.endpoints(e);
        self.merge(u, v);
    }

    /// Joins the paths ending at `u` and `v` through the edge `uv`.
    pub(crate) fn merge(&mut self, u: Vertex, v: Vertex) {
        let (pu, pv) = (self.path_of[u] as usize, self.path_of[v] as usize);
        assert!(pu != pv && self.in_end[u] && self.in_end[v], "merge must join two distinct path ends");
        let (big, small, eb, es) =
            if self.paths[pu].len() >= self.paths[pv].len() { (pu, pv, u, v) } else { (pv, pu, v, u) };
        let piece = std::mem::take(&mut self.paths[small]);
        for &x in &piece {
            self.path_of[x] = big as u32;
        }
        let target = &mut self.paths[big];
        if target.back() == Some(&eb) {
            if piece.front() == Some(&es) {
                target.extend(piece);
            } else {
                target.extend(piece.into_iter().rev());
            }
        } else if piece.back() == Some(&es) {
            piece.into_iter().rev().for_each(|x| target.push_front(x));
        } else {
            piece.into_iter().for_each(|x| target.push_front(x));
        }
        self.alive[small] = false;
        self.in_end[u] = false;
        self.in_end[v] = false;
        self.count -= 1;
        self.maybe_retire(big);
    }

    pub(crate) fn next(&mut self, board: &Board) -> StageStep {
        if self.count <= self.target {
            return StageStep::Complete;
        }
        // eligibility only ever shrinks, so the scan position never moves back
        let n = self.host.n();
        while self.cursor < n {
            let u = self.cursor;
            if self.in_end[u] {
                let inc = self.host.incident_edges(u);
                let nb = self.host.neighbors(u);
                while self.pos < inc.len() {
                    let (w, e) = (nb[self.pos] as usize, inc[self.pos]);
                    if w > u && self.eligible(u, w, e, board) {
                        self.pending = Some(e);
                        return StageStep::Claim(e);
                    }
                    self.pos += 1;
                }
            }
            self.cursor += 1;
            self.pos = 0;
        }
        StageStep::Stuck(format!("stage-2-stuck: {} paths left, target {}", self.count, self.target))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merging_two_edges_gives_a_three_edge_path() {
        let host = Arc::new(Graph::complete(4));
        let mut st = PathStage::new(Arc::clone(&host), &[(0, 1), (2, 3)], 1, 100);
        let board = Board::new(host.edge_count());
        let StageStep::Claim(e) = st.next(&board) else { panic!("expected a claim") };
        assert_eq!(host.endpoints(e), (0, 2));
        st.observe(Side::Maker, e);
        assert_eq!(st.count(), 1);
        let p = &st.paths()[0];
        assert!(p == &vec![1, 0, 2, 3] || p == &vec![3, 2, 0, 1], "{p:?}");
        assert!(!st.is_end(0) && st.is_end(1) && st.is_end(3));
        assert!(matches!(st.next(&board), StageStep::Complete));
    }

    #[test]
    fn long_paths_retire_and_leave_the_end_set() {
        let host = Arc::new(Graph::complete(6));
        let mut st = PathStage::new(Arc::clone(&host), &[(0, 1), (2, 3), (4, 5)], 1, 4);
        st.merge(1, 2);
        assert_eq!(st.retired(), 1);
        assert!(!st.is_end(0) && !st.is_end(3));
        // only one live path has free ends now
        let board = Board::new(host.edge_count());
        assert!(matches!(st.next(&board), StageStep::Stuck(_)));
    }

    #[test]
    fn orientation_is_kept_under_all_merge_shapes() {
        let host = Arc::new(Graph::complete(8));
        let mut st = PathStage::new(Arc::clone(&host), &[(0, 1), (2, 3), (4, 5), (6, 7)], 1, 100);
        st.merge(0, 2);
        st.merge(7, 1);
        st.merge(4, 6);
        let p = &st.paths()[0];
        for w in p.windows(2) {
            assert!([(0, 1), (2, 3), (4, 5), (6, 7), (0, 2), (1, 7), (4, 6)]
                .contains(&(w[0].min(w[1]), w[0].max(w[1]))));
        }
        assert_eq!(p.len(), 8);
    }
}
