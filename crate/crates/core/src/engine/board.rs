use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::graph::EdgeId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "M")]
    Maker,
    #[serde(rename = "B")]
    Breaker,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Maker => Side::Breaker,
            Side::Breaker => Side::Maker,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Owner {
    Free,
    Maker,
    Breaker,
}

impl From<Side> for Owner {
    fn from(s: Side) -> Self {
        match s {
            Side::Maker => Owner::Maker,
            Side::Breaker => Owner::Breaker,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ClaimError {
    #[error("edge {0} is outside the board")]
    Foreign(EdgeId),
    #[error("edge {0} is already owned")]
    Owned(EdgeId),
}

/// Ownership of an edge universe `0..len`. Free edges sit in a dense list so
/// that uniform sampling and iteration over free edges are cheap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Board {
    owner: Vec<Owner>,
    free: Vec<EdgeId>,
    free_pos: Vec<u32>,
    maker: usize,
    breaker: usize,
}

impl Board {
    pub fn new(len: usize) -> Self {
        Board {
            owner: vec![Owner::Free; len],
            free: (0..len as EdgeId).collect(),
            free_pos: (0..len as u32).collect(),
            maker: 0,
            breaker: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.owner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_empty()
    }

    pub fn owner(&self, e: EdgeId) -> Owner {
        self.owner[e as usize]
    }

    pub fn is_free(&self, e: EdgeId) -> bool {
        self.owner[e as usize] == Owner::Free
    }

    pub fn is_maker(&self, e: EdgeId) -> bool {
        self.owner[e as usize] == Owner::Maker
    }

    pub fn is_breaker(&self, e: EdgeId) -> bool {
        self.owner[e as usize] == Owner::Breaker
    }

    pub fn maker_count(&self) -> usize {
        self.maker
    }

    pub fn breaker_count(&self) -> usize {
        self.breaker
    }

    pub fn free_count(&self) -> usize {
        self.free.len()
    }

    /// Free edges in no particular order.
    pub fn free_edges(&self) -> &[EdgeId] {
        &self.free
    }

    pub fn maker_edges(&self) -> Vec<EdgeId> {
        self.edges_of(Owner::Maker)
    }

    pub fn breaker_edges(&self) -> Vec<EdgeId> {
        self.edges_of(Owner::Breaker)
    }

    fn edges_of(&self, who: Owner) -> Vec<EdgeId> {
        (0..self.len() as EdgeId).filter(|&e| self.owner(e) == who).collect()
    }

    pub fn random_free(&self, rng: &mut impl Rng) -> Option<EdgeId> {
        (!self.free.is_empty()).then(|| self.free[rng.gen_range(0..self.free.len())])
    }

    pub fn claim(&mut self, e: EdgeId, side: Side) -> Result<(), ClaimError> {
        let i = e as usize;
        if i >= self.owner.len() {
            return Err(ClaimError::Foreign(e));
        }
        if self.owner[i] != Owner::Free {
            return Err(ClaimError::Owned(e));
        }
        self.owner[i] = side.into();
        let pos = self.free_pos[i] as usize;
        let last = *self.free.last().unwrap();
        self.free.swap_remove(pos);
        if last != e {
            self.free_pos[last as usize] = pos as u32;
        }
        match side {
            Side::Maker => self.maker += 1,
            Side::Breaker => self.breaker += 1,
        }
        debug_assert_eq!(self.maker + self.breaker + self.free.len(), self.owner.len());
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claims_keep_counters_consistent() {
        let mut b = Board::new(5);
        b.claim(2, Side::Maker).unwrap();
        b.claim(4, Side::Breaker).unwrap();
        assert_eq!(b.claim(2, Side::Breaker), Err(ClaimError::Owned(2)));
        assert_eq!(b.claim(9, Side::Maker), Err(ClaimError::Foreign(9)));
        assert_eq!((b.maker_count(), b.breaker_count(), b.free_count()), (1, 1, 3));
        let mut free = b.free_edges().to_vec();
        free.sort_unstable();
        assert_eq!(free, vec![0, 1, 3]);
        assert_eq!(b.maker_edges(), vec![2]);
    }
}
