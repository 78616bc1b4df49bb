use super::types::{CastlingRights, Color, Move, MoveKind, Piece, PieceKind, Square};

pub(crate) const KNIGHT_STEPS: [(i8, i8); 8] = [
    (1, 2),
    (2, 1),
    (2, -1),
    (1, -2),
    (-1, -2),
    (-2, -1),
    (-2, 1),
    (-1, 2),
];

pub(crate) const KING_STEPS: [(i8, i8); 8] = [
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
    (-1, 0),
    (-1, -1),
    (0, -1),
    (1, -1),
];

pub(crate) const ROOK_DIRS: [(i8, i8); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];
pub(crate) const BISHOP_DIRS: [(i8, i8); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

/// Full chess state. Treat as a value: `play` returns a new position, while
/// `make_move`/`unmake_move` mutate in place for search.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Position {
    pub(crate) board: [Option<Piece>; 64],
    pub(crate) side_to_move: Color,
    pub(crate) castling: CastlingRights,
    pub(crate) en_passant: Option<Square>,
    pub(crate) halfmove_clock: u32,
    pub(crate) fullmove_number: u32,
    pub(crate) kings: [Square; 2],
}

/// State needed to take back a move.
#[derive(Debug, Clone, Copy)]
pub struct Undo {
    captured: Option<Piece>,
    castling: CastlingRights,
    en_passant: Option<Square>,
    halfmove_clock: u32,
    fullmove_number: u32,
}

pub const START_FEN: &str = "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1";

impl Position {
    pub fn startpos() -> Position {
        Position::from_fen(START_FEN).expect("start position parses")
    }

    pub(crate) fn empty() -> Position {
        Position {
            board: [None; 64],
            side_to_move: Color::White,
            castling: CastlingRights::NONE,
            en_passant: None,
            halfmove_clock: 0,
            fullmove_number: 1,
            kings: [Square::new(0); 2],
        }
    }

    #[inline]
    pub fn piece_at(&self, sq: Square) -> Option<Piece> {
        self.board[sq.index()]
    }

    #[inline]
    pub fn side_to_move(&self) -> Color {
        self.side_to_move
    }

    pub fn castling_rights(&self) -> CastlingRights {
        self.castling
    }

    pub fn en_passant(&self) -> Option<Square> {
        self.en_passant
    }

    pub fn halfmove_clock(&self) -> u32 {
        self.halfmove_clock
    }

    pub fn fullmove_number(&self) -> u32 {
        self.fullmove_number
    }

    #[inline]
    pub fn king_square(&self, color: Color) -> Square {
        self.kings[color.index()]
    }

    /// Occupied squares with their pieces, a1 first.
    pub fn pieces(&self) -> impl Iterator<Item = (Square, Piece)> + '_ {
        Square::all().filter_map(move |sq| self.board[sq.index()].map(|p| (sq, p)))
    }

    pub fn count(&self, color: Color, kind: PieceKind) -> usize {
        self.board
            .iter()
            .filter(|p| **p == Some(Piece::new(color, kind)))
            .count()
    }

    /// Places or removes a piece without any validation.
    pub(crate) fn put(&mut self, sq: Square, piece: Option<Piece>) {
        self.board[sq.index()] = piece;
        if let Some(Piece {
            kind: PieceKind::King,
            color,
        }) = piece
        {
            self.kings[color.index()] = sq;
        }
    }

    /// Board flipped top to bottom with colors swapped.
    pub fn mirrored(&self) -> Position {
        let mut out = Position::empty();
        for sq in Square::all() {
            if let Some(p) = self.board[sq.index()] {
                out.put(sq.flip_rank(), Some(Piece::new(p.color.flip(), p.kind)));
            }
        }
        out.side_to_move = self.side_to_move.flip();
        out.castling = self.castling.mirrored();
        out.en_passant = self.en_passant.map(Square::flip_rank);
        out.halfmove_clock = self.halfmove_clock;
        out.fullmove_number = self.fullmove_number;
        out
    }

    /// Is `sq` attacked by any piece of color `by`?
    pub fn is_attacked(&self, sq: Square, by: Color) -> bool {
        // a pawn of `by` attacks sq from one rank behind (relative to `by`)
        let back = -by.forward();
        for df in [-1, 1] {
            if let Some(s) = sq.offset(df, back) {
                if self.board[s.index()] == Some(Piece::new(by, PieceKind::Pawn)) {
                    return true;
                }
            }
        }
        for &(df, dr) in &KNIGHT_STEPS {
            if let Some(s) = sq.offset(df, dr) {
                if self.board[s.index()] == Some(Piece::new(by, PieceKind::Knight)) {
                    return true;
                }
            }
        }
        for &(df, dr) in &KING_STEPS {
            if let Some(s) = sq.offset(df, dr) {
                if self.board[s.index()] == Some(Piece::new(by, PieceKind::King)) {
                    return true;
                }
            }
        }
        for (dirs, slider) in [(ROOK_DIRS, PieceKind::Rook), (BISHOP_DIRS, PieceKind::Bishop)] {
            for &(df, dr) in &dirs {
                let mut cur = sq;
                while let Some(s) = cur.offset(df, dr) {
                    if let Some(p) = self.board[s.index()] {
                        if p.color == by && (p.kind == slider || p.kind == PieceKind::Queen) {
                            return true;
                        }
                        break;
                    }
                    cur = s;
                }
            }
        }
        false
    }

    pub fn in_check(&self) -> bool {
        let us = self.side_to_move;
        self.is_attacked(self.king_square(us), us.flip())
    }

    /// Pseudo-legal moves: legal except that the own king may be left in check.
    pub fn pseudo_moves(&self, out: &mut Vec<Move>) {
        self.generate(out, false);
    }

    /// Pseudo-legal captures, en passant included.
    pub fn pseudo_captures(&self, out: &mut Vec<Move>) {
        self.generate(out, true);
    }

    fn generate(&self, out: &mut Vec<Move>, captures: bool) {
        let us = self.side_to_move;
        for sq in Square::all() {
            let Some(piece) = self.board[sq.index()] else {
                continue;
            };
            if piece.color != us {
                continue;
            }
            match piece.kind {
                PieceKind::Pawn => self.pawn_moves(sq, out, captures),
                PieceKind::Knight => self.step_moves(sq, &KNIGHT_STEPS, out, captures),
                PieceKind::Bishop => self.slide_moves(sq, &BISHOP_DIRS, out, captures),
                PieceKind::Rook => self.slide_moves(sq, &ROOK_DIRS, out, captures),
                PieceKind::Queen => {
                    self.slide_moves(sq, &ROOK_DIRS, out, captures);
                    self.slide_moves(sq, &BISHOP_DIRS, out, captures);
                }
                PieceKind::King => {
                    self.step_moves(sq, &KING_STEPS, out, captures);
                    if !captures {
                        self.castle_moves(sq, out);
                    }
                }
            }
        }
    }

    fn target_kind(&self, to: Square) -> Option<MoveKind> {
        match self.board[to.index()] {
            None => Some(MoveKind::Normal),
            Some(p) if p.color != self.side_to_move => Some(MoveKind::Capture),
            Some(_) => None,
        }
    }

    fn step_moves(&self, from: Square, steps: &[(i8, i8)], out: &mut Vec<Move>, captures: bool) {
        for &(df, dr) in steps {
            if let Some(to) = from.offset(df, dr) {
                match self.target_kind(to) {
                    Some(MoveKind::Normal) if captures => {}
                    Some(kind) => out.push(Move::new(from, to, kind)),
                    None => {}
                }
            }
        }
    }

    fn slide_moves(&self, from: Square, dirs: &[(i8, i8)], out: &mut Vec<Move>, captures: bool) {
        for &(df, dr) in dirs {
            let mut cur = from;
            while let Some(to) = cur.offset(df, dr) {
                match self.target_kind(to) {
                    Some(MoveKind::Normal) => {
                        if !captures {
                            out.push(Move::new(from, to, MoveKind::Normal));
                        }
                    }
                    Some(kind) => {
                        out.push(Move::new(from, to, kind));
                        break;
                    }
                    None => break,
                }
                cur = to;
            }
        }
    }

    fn push_pawn_move(from: Square, to: Square, kind: MoveKind, out: &mut Vec<Move>) {
        if to.rank() == 0 || to.rank() == 7 {
            for promo in PieceKind::PROMOTIONS {
                out.push(Move {
                    from,
                    to,
                    promotion: Some(promo),
                    kind: MoveKind::Promotion,
                });
            }
        } else {
            out.push(Move::new(from, to, kind));
        }
    }

    fn pawn_moves(&self, from: Square, out: &mut Vec<Move>, captures: bool) {
        let us = self.side_to_move;
        let fwd = us.forward();
        if let Some(one) = from.offset(0, fwd) {
            if !captures && self.board[one.index()].is_none() {
                Self::push_pawn_move(from, one, MoveKind::Normal, out);
                let home = if us == Color::White { 1 } else { 6 };
                if from.rank() == home {
                    let two = one.offset(0, fwd).expect("double push stays on board");
                    if self.board[two.index()].is_none() {
                        out.push(Move::new(from, two, MoveKind::Normal));
                    }
                }
            }
        }
        for df in [-1, 1] {
            let Some(to) = from.offset(df, fwd) else {
                continue;
            };
            match self.board[to.index()] {
                Some(p) if p.color != us => Self::push_pawn_move(from, to, MoveKind::Capture, out),
                None if self.en_passant == Some(to) => {
                    out.push(Move::new(from, to, MoveKind::EnPassant))
                }
                _ => {}
            }
        }
    }

    fn castle_moves(&self, from: Square, out: &mut Vec<Move>) {
        let us = self.side_to_move;
        let home = Square::from_coords(4, 0).relative_to(us);
        if from != home {
            return;
        }
        let them = us.flip();
        let rank = home.rank();
        let empty = |f: u8| self.board[Square::from_coords(f, rank).index()].is_none();
        let safe = |f: u8| !self.is_attacked(Square::from_coords(f, rank), them);
        if self.castling.has(CastlingRights::kingside(us)) && empty(5) && empty(6) && safe(4) && safe(5) && safe(6) {
            out.push(Move::new(from, Square::from_coords(6, rank), MoveKind::Castle));
        }
        if self.castling.has(CastlingRights::queenside(us))
            && empty(3)
            && empty(2)
            && empty(1)
            && safe(4)
            && safe(3)
            && safe(2)
        {
            out.push(Move::new(from, Square::from_coords(2, rank), MoveKind::Castle));
        }
    }

    /// Legal moves ordered by from-square, to-square, then promotion piece.
    pub fn legal_moves(&self) -> Vec<Move> {
        let mut moves = Vec::with_capacity(48);
        self.pseudo_moves(&mut moves);
        let mut scratch = self.clone();
        let us = self.side_to_move;
        moves.retain(|&m| {
            let undo = scratch.make_move(m);
            let ok = !scratch.is_attacked(scratch.king_square(us), us.flip());
            scratch.unmake_move(m, undo);
            ok
        });
        moves.sort_unstable_by_key(Move::sort_key);
        moves
    }

    pub fn is_legal(&self, m: Move) -> bool {
        self.legal_moves().contains(&m)
    }

    /// Finds the legal move matching a UCI string such as `e7e8q`.
    pub fn parse_uci_move(&self, s: &str) -> Option<Move> {
        self.legal_moves().into_iter().find(|m| m.uci() == s)
    }

    pub fn is_capture(&self, m: Move) -> bool {
        m.kind == MoveKind::EnPassant || self.board[m.to.index()].is_some()
    }

    /// Applies a move assumed to be pseudo-legal for this position.
    pub fn make_move(&mut self, m: Move) -> Undo {
        let us = self.side_to_move;
        let undo = Undo {
            captured: self.board[m.to.index()],
            castling: self.castling,
            en_passant: self.en_passant,
            halfmove_clock: self.halfmove_clock,
            fullmove_number: self.fullmove_number,
        };
        let piece = self.board[m.from.index()].expect("move from an occupied square");

        self.halfmove_clock += 1;
        if piece.kind == PieceKind::Pawn || undo.captured.is_some() {
            self.halfmove_clock = 0;
        }
        self.en_passant = None;

        self.board[m.from.index()] = None;
        match m.kind {
            MoveKind::EnPassant => {
                let victim = Square::from_coords(m.to.file(), m.from.rank());
                self.board[victim.index()] = None;
                self.halfmove_clock = 0;
            }
            MoveKind::Castle => {
                let rank = m.from.rank();
                let (rook_from, rook_to) = if m.to.file() == 6 { (7, 5) } else { (0, 3) };
                let rook = self.board[Square::from_coords(rook_from, rank).index()].take();
                self.board[Square::from_coords(rook_to, rank).index()] = rook;
            }
            _ => {}
        }
        let placed = match m.promotion {
            Some(kind) => Piece::new(us, kind),
            None => piece,
        };
        self.put(m.to, Some(placed));

        if piece.kind == PieceKind::Pawn && m.from.rank().abs_diff(m.to.rank()) == 2 {
            self.en_passant = Some(Square::from_coords(m.from.file(), (m.from.rank() + m.to.rank()) / 2));
        }
        for sq in [m.from, m.to] {
            self.castling.clear(castling_mask(sq));
        }
        if us == Color::Black {
            self.fullmove_number += 1;
        }
        self.side_to_move = us.flip();
        undo
    }

    pub fn unmake_move(&mut self, m: Move, undo: Undo) {
        self.side_to_move = self.side_to_move.flip();
        let us = self.side_to_move;
        let moved = self.board[m.to.index()].expect("moved piece present");
        let original = if m.promotion.is_some() {
            Piece::new(us, PieceKind::Pawn)
        } else {
            moved
        };
        self.put(m.from, Some(original));
        self.board[m.to.index()] = undo.captured;
        match m.kind {
            MoveKind::EnPassant => {
                let victim = Square::from_coords(m.to.file(), m.from.rank());
                self.board[victim.index()] = Some(Piece::new(us.flip(), PieceKind::Pawn));
            }
            MoveKind::Castle => {
                let rank = m.from.rank();
                let (rook_from, rook_to) = if m.to.file() == 6 { (7, 5) } else { (0, 3) };
                let rook = self.board[Square::from_coords(rook_to, rank).index()].take();
                self.board[Square::from_coords(rook_from, rank).index()] = rook;
            }
            _ => {}
        }
        self.castling = undo.castling;
        self.en_passant = undo.en_passant;
        self.halfmove_clock = undo.halfmove_clock;
        self.fullmove_number = undo.fullmove_number;
    }

    /// Returns the position after `m`, leaving `self` untouched.
    pub fn play(&self, m: Move) -> Position {
        let mut next = self.clone();
        next.make_move(m);
        next
    }

    /// Identity for repetition detection: placement, side, castling and en passant.
    pub fn repetition_key(&self) -> (Vec<u8>, u8, u8, Option<Square>) {
        let cells = self
            .board
            .iter()
            .map(|p| p.map_or(0, |p| 1 + p.kind.index() as u8 + 6 * p.color.index() as u8))
            .collect();
        (
            cells,
            self.side_to_move.index() as u8,
            self.castling.bits(),
            self.en_passant,
        )
    }

    /// Number of leaf nodes of the legal move tree at `depth`.
    pub fn perft(&self, depth: u32) -> u64 {
        if depth == 0 {
            return 1;
        }
        let moves = self.legal_moves();
        if depth == 1 {
            return moves.len() as u64;
        }
        let mut scratch = self.clone();
        moves
            .into_iter()
            .map(|m| {
                let undo = scratch.make_move(m);
                let n = scratch.perft(depth - 1);
                scratch.unmake_move(m, undo);
                n
            })
            .sum()
    }
}

fn castling_mask(sq: Square) -> u8 {
    match sq.index() {
        0 => CastlingRights::WHITE_QUEEN,
        4 => CastlingRights::WHITE_KING | CastlingRights::WHITE_QUEEN,
        7 => CastlingRights::WHITE_KING,
        56 => CastlingRights::BLACK_QUEEN,
        60 => CastlingRights::BLACK_KING | CastlingRights::BLACK_QUEEN,
        63 => CastlingRights::BLACK_KING,
        _ => 0,
    }
}
