use super::position::Position;
use super::types::{CastlingRights, Color, Piece, PieceKind, Square};
use super::ChessError;

fn fen_err(field: &'static str, reason: impl Into<String>) -> ChessError {
    ChessError::Fen {
        field,
        reason: reason.into(),
    }
}

impl Position {
    /// Parses a FEN string with 4 to 6 fields; missing clocks default to `0 1`.
    pub fn from_fen(text: &str) -> Result<Position, ChessError> {
        let fields: Vec<&str> = text.split_whitespace().collect();
        if !(4..=6).contains(&fields.len()) {
            return Err(fen_err(
                "fen",
                format!("expected 4 to 6 fields, found {}", fields.len()),
            ));
        }
        let mut pos = Position::empty();
        parse_placement(fields[0], &mut pos)?;

        pos.side_to_move = match fields[1] {
            "w" => Color::White,
            "b" => Color::Black,
            other => return Err(fen_err("side to move", format!("unexpected `{other}`"))),
        };

        pos.castling = parse_castling(fields[2])?;

        pos.en_passant = match fields[3] {
            "-" => None,
            s => Some(Square::parse(s).ok_or_else(|| fen_err("en passant", format!("bad square `{s}`")))?),
        };

        if let Some(s) = fields.get(4) {
            pos.halfmove_clock = s
                .parse()
                .map_err(|_| fen_err("halfmove clock", format!("not a number: `{s}`")))?;
        }
        if let Some(s) = fields.get(5) {
            pos.fullmove_number = s
                .parse()
                .map_err(|_| fen_err("fullmove number", format!("not a number: `{s}`")))?;
            if pos.fullmove_number == 0 {
                return Err(fen_err("fullmove number", "must be at least 1"));
            }
        }

        pos.validate()?;
        Ok(pos)
    }

    /// Checks the structural invariants every position must satisfy.
    pub(crate) fn validate(&self) -> Result<(), ChessError> {
        for color in [Color::White, Color::Black] {
            let kings = self.count(color, PieceKind::King);
            if kings != 1 {
                return Err(fen_err(
                    "piece placement",
                    format!("{color:?} has {kings} kings, expected exactly one"),
                ));
            }
            let pawns = self.count(color, PieceKind::Pawn);
            if pawns > 8 {
                return Err(fen_err("piece placement", format!("{color:?} has {pawns} pawns")));
            }
            let total = self.pieces().filter(|(_, p)| p.color == color).count();
            if total > 16 {
                return Err(fen_err("piece placement", format!("{color:?} has {total} pieces")));
            }
        }
        for (sq, p) in self.pieces() {
            if p.kind == PieceKind::Pawn && (sq.rank() == 0 || sq.rank() == 7) {
                return Err(fen_err("piece placement", format!("pawn on back rank at {sq}")));
            }
        }
        let c = self.castling;
        let home_ok = |flag: u8, king: &str, rook: &str, color: Color| {
            !c.has(flag)
                || (self.piece_at(Square::parse(king).unwrap()) == Some(Piece::new(color, PieceKind::King))
                    && self.piece_at(Square::parse(rook).unwrap()) == Some(Piece::new(color, PieceKind::Rook)))
        };
        if !(home_ok(CastlingRights::WHITE_KING, "e1", "h1", Color::White)
            && home_ok(CastlingRights::WHITE_QUEEN, "e1", "a1", Color::White)
            && home_ok(CastlingRights::BLACK_KING, "e8", "h8", Color::Black)
            && home_ok(CastlingRights::BLACK_QUEEN, "e8", "a8", Color::Black))
        {
            return Err(fen_err("castling", "right set without king and rook on home squares"));
        }
        if let Some(ep) = self.en_passant {
            // White to move: Black just double-pushed, target on the sixth rank.
            let (rank, pawn_rank, mover) = match self.side_to_move {
                Color::White => (5, 4, Color::Black),
                Color::Black => (2, 3, Color::White),
            };
            let pawn_sq = Square::from_coords(ep.file(), pawn_rank);
            if ep.rank() != rank || self.piece_at(pawn_sq) != Some(Piece::new(mover, PieceKind::Pawn)) {
                return Err(fen_err("en passant", format!("{ep} is not a valid target")));
            }
        }
        let waiting = self.side_to_move.flip();
        if self.is_attacked(self.king_square(waiting), self.side_to_move) {
            return Err(fen_err("side to move", "side not to move is in check"));
        }
        Ok(())
    }

    /// Canonical six-field FEN.
    pub fn to_fen(&self) -> String {
        let mut out = self.placement_fen();
        out.push(' ');
        out.push(if self.side_to_move == Color::White { 'w' } else { 'b' });
        out.push(' ');
        out.push_str(&castling_fen(self.castling));
        out.push(' ');
        match self.en_passant {
            Some(sq) => out.push_str(&sq.to_string()),
            None => out.push('-'),
        }
        out.push_str(&format!(" {} {}", self.halfmove_clock, self.fullmove_number));
        out
    }

    /// First four FEN fields, as used by EPD.
    pub fn to_epd_fields(&self) -> String {
        let fen = self.to_fen();
        fen.split(' ').take(4).collect::<Vec<_>>().join(" ")
    }

    fn placement_fen(&self) -> String {
        let mut out = String::with_capacity(72);
        for rank in (0..8).rev() {
            let mut empty = 0;
            for file in 0..8 {
                match self.piece_at(Square::from_coords(file, rank)) {
                    Some(p) => {
                        if empty > 0 {
                            out.push((b'0' + empty) as char);
                            empty = 0;
                        }
                        out.push(p.fen_char());
                    }
                    None => empty += 1,
                }
            }
            if empty > 0 {
                out.push((b'0' + empty) as char);
            }
            if rank > 0 {
                out.push('/');
            }
        }
        out
    }
}

fn parse_placement(field: &str, pos: &mut Position) -> Result<(), ChessError> {
    let ranks: Vec<&str> = field.split('/').collect();
    if ranks.len() != 8 {
        return Err(fen_err("piece placement", format!("expected 8 ranks, found {}", ranks.len())));
    }
    for (i, row) in ranks.iter().enumerate() {
        let rank = 7 - i as u8;
        let mut file = 0u8;
        for c in row.chars() {
            if let Some(d) = c.to_digit(10) {
                if !(1..=8).contains(&d) {
                    return Err(fen_err("piece placement", format!("bad empty count `{c}`")));
                }
                file += d as u8;
            } else {
                let piece = Piece::from_fen_char(c)
                    .ok_or_else(|| fen_err("piece placement", format!("bad piece letter `{c}`")))?;
                if file >= 8 {
                    return Err(fen_err("piece placement", format!("rank {} overflows", rank + 1)));
                }
                pos.put(Square::from_coords(file, rank), Some(piece));
                file += 1;
            }
            if file > 8 {
                return Err(fen_err("piece placement", format!("rank {} overflows", rank + 1)));
            }
        }
        if file != 8 {
            return Err(fen_err("piece placement", format!("rank {} has {file} squares", rank + 1)));
        }
    }
    Ok(())
}

fn parse_castling(field: &str) -> Result<CastlingRights, ChessError> {
    let mut rights = CastlingRights::NONE;
    if field == "-" {
        return Ok(rights);
    }
    for c in field.chars() {
        let flag = match c {
            'K' => CastlingRights::WHITE_KING,
            'Q' => CastlingRights::WHITE_QUEEN,
            'k' => CastlingRights::BLACK_KING,
            'q' => CastlingRights::BLACK_QUEEN,
            _ => return Err(fen_err("castling", format!("unexpected `{c}`"))),
        };
        if rights.has(flag) {
            return Err(fen_err("castling", format!("duplicate `{c}`")));
        }
        rights.set(flag);
    }
    Ok(rights)
}

fn castling_fen(rights: CastlingRights) -> String {
    let mut s = String::new();
    for (flag, c) in [
        (CastlingRights::WHITE_KING, 'K'),
        (CastlingRights::WHITE_QUEEN, 'Q'),
        (CastlingRights::BLACK_KING, 'k'),
        (CastlingRights::BLACK_QUEEN, 'q'),
    ] {
        if rights.has(flag) {
            s.push(c);
        }
    }
    if s.is_empty() {
        s.push('-');
    }
    s
}

/// Parses a FEN string.
pub fn parse_fen(text: &str) -> Result<Position, ChessError> {
    Position::from_fen(text)
}

/// Formats a position as canonical six-field FEN.
pub fn format_fen(pos: &Position) -> String {
    pos.to_fen()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn start_position_round_trips() {
        let p = parse_fen(super::super::position::START_FEN).unwrap();
        assert_eq!(format_fen(&p), super::super::position::START_FEN);
        assert_eq!(p.pieces().count(), 32);
    }

    #[test]
    fn missing_kings_rejected() {
        let err = parse_fen("8/8/8/8/8/8/8/8 w - - 0 1").unwrap_err();
        assert!(matches!(err, ChessError::Fen { field: "piece placement", .. }), "{err}");
    }

    #[test]
    fn minimal_position() {
        let p = parse_fen("4k3/8/8/8/8/8/4P3/4K3 w - - 0 1").unwrap();
        assert_eq!(p.pieces().count(), 3);
        assert_eq!(p.side_to_move(), Color::White);
    }

    #[test]
    fn four_field_form_gets_default_clocks() {
        let p = parse_fen("4k3/8/8/8/8/8/4P3/4K3 b - -").unwrap();
        assert_eq!(format_fen(&p), "4k3/8/8/8/8/8/4P3/4K3 b - - 0 1");
    }

    #[test]
    fn errors_name_the_field() {
        let cases = [
            ("4k3/8/8/8/8/8/4P3/4K3 x - - 0 1", "side to move"),
            ("4k3/8/8/8/8/8/4P3/4K3 w X - 0 1", "castling"),
            ("4k3/8/8/8/8/8/4P3/4K3 w K - 0 1", "castling"),
            ("4k3/8/8/8/8/8/4P3/4K3 w - e9 0 1", "en passant"),
            ("4k3/8/8/8/8/8/4P3/4K3 w - e3 0 1", "en passant"),
            ("4k3/8/8/8/8/8/4P3/4K3 w - - x 1", "halfmove clock"),
            ("4k3/8/8/8/8/8/8/P3K3 w - - 0 1", "piece placement"),
            ("4k3/8/8/8/8/8/4P3 w - - 0 1", "piece placement"),
            ("4k3/9/8/8/8/8/4P3/4K3 w - - 0 1", "piece placement"),
            ("4k3/8/8/8/8/8/4P3/4K3", "fen"),
        ];
        for (fen, field) in cases {
            match parse_fen(fen) {
                Err(ChessError::Fen { field: f, .. }) => assert_eq!(f, field, "{fen}"),
                other => panic!("{fen}: {other:?}"),
            }
        }
    }

    #[test]
    fn en_passant_field_kept() {
        let fen = "rnbqkbnr/ppp1p1pp/8/3pPp2/8/8/PPPP1PPP/RNBQKBNR w KQkq f6 0 3";
        assert_eq!(format_fen(&parse_fen(fen).unwrap()), fen);
    }
}
