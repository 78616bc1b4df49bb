//! Chess rules: position representation, legal move generation and the
//! FEN, SAN, PGN and EPD text formats.

mod epd;
mod fen;
mod pgn;
mod position;
mod san;
mod types;

pub use epd::{parse_epd, parse_epd_file, EpdRecord};
pub use fen::{format_fen, parse_fen};
pub use pgn::{parse_pgn, parse_pgn_games, write_pgn, PgnGame};
pub use position::{Position, Undo, START_FEN};
pub use san::{parse_san, to_san};
pub use types::{CastlingRights, Color, Move, MoveKind, Piece, PieceKind, Square};

pub(crate) use position::{BISHOP_DIRS, KNIGHT_STEPS, ROOK_DIRS};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum ChessError {
    #[error("invalid FEN ({field}): {reason}")]
    Fen { field: &'static str, reason: String },
    #[error("cannot resolve SAN `{san}`: {reason}")]
    San { san: String, reason: String },
    #[error("PGN game {game}, ply {ply}: {reason}")]
    Pgn { game: usize, ply: usize, reason: String },
    #[error("EPD opcode `{opcode}`: {reason}")]
    Epd { opcode: String, reason: String },
}

/// Legal moves of `p` in from/to/promotion order.
pub fn generate_moves(p: &Position) -> Vec<Move> {
    p.legal_moves()
}
