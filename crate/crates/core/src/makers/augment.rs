//! Growing Maker's matching along augmenting paths whose unmatched links
//! are Maker or free edges; the free links are claimed one at a time.

use std::collections::VecDeque;

use super::stage1::StageStep;
use crate::engine::Board;
use crate::graph::{EdgeId, Graph, Vertex};

const UNMATCHED: usize = usize::MAX;

pub(crate) struct Augmenter {
    mate: Vec<usize>,
    allowed: Vec<bool>,
    size: usize,
    pending: Vec<Vertex>,
}

impl Augmenter {
    /// Works inside `within` (every vertex when `None`), starting from the
    /// Maker matching `pairs`.
    pub(crate) fn new(n: usize, within: Option<&[Vertex]>, pairs: &[(Vertex, Vertex)]) -> Self {
        let mut mate = vec![UNMATCHED; n];
        for &(u, v) in pairs {
            mate[u] = v;
            mate[v] = u;
        }
        let allowed = match within {
            Some(vs) => {
                let mut a = vec![false; n];
                vs.iter().for_each(|&v| a[v] = true);
                a
            }
            None => vec![true; n],
        };
        let size = allowed.iter().filter(|&&a| a).count();
        Augmenter { mate, allowed, size, pending: Vec::new() }
    }

    pub(crate) fn pairs(&self) -> Vec<(Vertex, Vertex)> {
        (0..self.mate.len())
            .filter(|&v| self.mate[v] != UNMATCHED && v < self.mate[v])
            .map(|v| (v, self.mate[v]))
            .collect()
    }

    fn open(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.mate.len()).filter(|&v| self.allowed[v] && self.mate[v] == UNMATCHED)
    }

    pub(crate) fn next(&mut self, g: &Graph, board: &Board) -> StageStep {
        loop {
            if self.open().count() <= self.size % 2 {
                return StageStep::Complete;
            }
            if !self.pending.is_empty() {
                // unmatched links sit at even positions of the pending path
                let links: Vec<EdgeId> =
                    self.pending.chunks(2).map(|w| g.edge_id(w[0], w[1]).expect("path edge")).collect();
                if links.iter().any(|&e| board.is_breaker(e)) {
                    self.pending.clear();
                } else if let Some(&e) = links.iter().find(|&&e| board.is_free(e)) {
                    return StageStep::Claim(e);
                } else {
                    for w in self.pending.chunks(2) {
                        self.mate[w[0]] = w[1];
                        self.mate[w[1]] = w[0];
                    }
                    self.pending.clear();
                    continue;
                }
            }
            let roots: Vec<Vertex> = self.open().collect();
            match roots.into_iter().find_map(|u| self.augmenting_path(g, board, u)) {
                Some(p) => self.pending = p,
                None => return StageStep::Stuck("no augmenting path".into()),
            }
        }
    }

    /// Shortest alternating path by BFS, without blossom handling, so on
    /// non-bipartite graphs it may miss paths.
    fn augmenting_path(&self, g: &Graph, board: &Board, root: Vertex) -> Option<Vec<Vertex>> {
        let n = g.n();
        let mut from = vec![UNMATCHED; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(x) = queue.pop_front() {
            for (y, e) in g.incident(x) {
                if seen[y] || !self.allowed[y] || self.mate[x] == y || board.is_breaker(e) {
                    continue;
                }
                seen[y] = true;
                if self.mate[y] == UNMATCHED {
                    let mut path = vec![y, x];
                    let mut cur = x;
                    while cur != root {
                        let odd = self.mate[cur];
                        let even = from[odd];
                        path.push(odd);
                        path.push(even);
                        cur = even;
                    }
                    return Some(path);
                }
                from[y] = x;
                let z = self.mate[y];
                if !seen[z] {
                    seen[z] = true;
                    queue.push_back(z);
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Side;

    #[test]
    fn augments_through_a_matched_edge() {
        // path 0-1-2-3 with 1-2 matched: augmenting path 0-1=2-3
        let g = Graph::path(4);
        let mut board = Board::new(g.edge_count());
        let mid = g.edge_id(1, 2).unwrap();
        board.claim(mid, Side::Maker).unwrap();
        let mut aug = Augmenter::new(4, None, &[(1, 2)]);
        let mut claimed = Vec::new();
        loop {
            match aug.next(&g, &board) {
                StageStep::Claim(e) => {
                    board.claim(e, Side::Maker).unwrap();
                    claimed.push(g.endpoints(e));
                }
                StageStep::Complete => break,
                StageStep::Stuck(r) => panic!("{r}"),
            }
        }
        claimed.sort();
        assert_eq!(claimed, vec![(0, 1), (2, 3)]);
        assert_eq!(aug.pairs(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn breaker_edges_block_and_mask_restricts() {
        let g = Graph::path(4);
        let mut board = Board::new(g.edge_count());
        board.claim(g.edge_id(0, 1).unwrap(), Side::Breaker).unwrap();
        let mut aug = Augmenter::new(4, None, &[]);
        // 1-2 is found, then 0 and 3 stay open
        let StageStep::Claim(e) = aug.next(&g, &board) else { panic!() };
        board.claim(e, Side::Maker).unwrap();
        assert!(matches!(aug.next(&g, &board), StageStep::Stuck(_)));
        let mut within = Augmenter::new(4, Some(&[2, 3]), &[(2, 3)]);
        assert!(matches!(within.next(&g, &board), StageStep::Complete));
    }
}
