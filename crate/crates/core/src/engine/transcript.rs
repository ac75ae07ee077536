use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::{Board, Certificate, GameConfig, Side};
use crate::error::{Error, Result};
use crate::graph::EdgeId;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TranscriptHeader {
    pub config: GameConfig,
    pub seed: u64,
    pub universe: usize,
    /// Game kind, filled in by the harness.
    #[serde(default)]
    pub game: String,
    pub maker: String,
    pub breaker: String,
    /// Board parameters and resolved strategy constants.
    #[serde(default)]
    pub params: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub r: usize,
    pub side: Side,
    pub edges: Vec<EdgeId>,
    pub board: Option<u32>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Outcome {
    MakerWin,
    BreakerWin,
    Forfeit { side: Side, reason: String },
    Exhausted,
}

impl Outcome {
    pub fn forfeit(side: Side, reason: String) -> Self {
        Outcome::Forfeit { side, reason }
    }

    pub fn won_by(side: Side) -> Self {
        match side {
            Side::Maker => Outcome::MakerWin,
            Side::Breaker => Outcome::BreakerWin,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Outcome::MakerWin => "maker-win",
            Outcome::BreakerWin => "breaker-win",
            Outcome::Forfeit { .. } => "forfeit",
            Outcome::Exhausted => "exhausted",
        }
    }

    pub fn is_certificate_failure(&self) -> bool {
        matches!(self, Outcome::Forfeit { side: Side::Maker, reason } if reason.starts_with("certificate-rejected"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptFinal {
    #[serde(flatten)]
    pub outcome: Outcome,
    pub maker_moves: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

/// Seed-stamped game log: header line, one line per move, final line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Transcript {
    pub header: TranscriptHeader,
    pub moves: Vec<MoveRecord>,
    pub last: TranscriptFinal,
}

impl Transcript {
    pub fn outcome(&self) -> &Outcome {
        &self.last.outcome
    }

    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<()> {
        serde_json::to_writer(&mut out, &self.header)?;
        out.write_all(b"\n")?;
        for m in &self.moves {
            serde_json::to_writer(&mut out, m)?;
            out.write_all(b"\n")?;
        }
        serde_json::to_writer(&mut out, &self.last)?;
        out.write_all(b"\n")?;
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("in-memory write");
        String::from_utf8(buf).expect("json is utf-8")
    }

    pub fn read_jsonl<R: BufRead>(input: R) -> Result<Self> {
        let lines: Vec<String> = input
            .lines()
            .collect::<std::io::Result<Vec<_>>>()?
            .into_iter()
            .filter(|l| !l.trim().is_empty())
            .collect();
        if lines.len() < 2 {
            return Err(Error::Parse("transcript needs a header and a final line".into()));
        }
        let header = serde_json::from_str(&lines[0])?;
        let last = serde_json::from_str(&lines[lines.len() - 1])?;
        let moves = lines[1..lines.len() - 1]
            .iter()
            .map(|l| serde_json::from_str(l))
            .collect::<std::result::Result<Vec<MoveRecord>, _>>()?;
        Ok(Transcript { header, moves, last })
    }

    /// Rebuilds the final board from the move records alone. Fails with a
    /// replay mismatch at the first record that is not a legal claim.
    pub fn rebuild_board(&self) -> Result<Board> {
        let mut board = Board::new(self.header.universe);
        for (i, m) in self.moves.iter().enumerate() {
            for &e in &m.edges {
                board.claim(e, m.side).map_err(|err| Error::ReplayMismatch {
                    index: i,
                    detail: err.to_string(),
                })?;
            }
        }
        Ok(board)
    }

    /// Index of the first move record where `self` and `other` differ.
    pub fn first_difference(&self, other: &Transcript) -> Option<usize> {
        let common = self.moves.len().min(other.moves.len());
        (0..common)
            .find(|&i| self.moves[i] != other.moves[i])
            .or_else(|| (self.moves.len() != other.moves.len()).then_some(common))
    }
}
