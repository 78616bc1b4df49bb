use crate::chess::{Color, Piece, PieceKind, Position, Square, BISHOP_DIRS, KNIGHT_STEPS, ROOK_DIRS};

use super::params::{EvalParams, Param, PARAM_COUNT, PARAM_SIGNS};

/// One signed count per parameter: White's feature count minus Black's.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FeatureVector(pub [i32; PARAM_COUNT]);

impl Default for FeatureVector {
    fn default() -> Self {
        FeatureVector([0; PARAM_COUNT])
    }
}

impl FeatureVector {
    #[inline]
    pub fn get(&self, p: Param) -> i32 {
        self.0[p as usize]
    }

    /// Score in centipawns, White's perspective.
    #[inline]
    pub fn dot(&self, params: &EvalParams) -> i32 {
        let v = params.values();
        let mut sum = 0i32;
        for i in 0..PARAM_COUNT {
            sum += PARAM_SIGNS[i] * v[i] as i32 * self.0[i];
        }
        sum
    }

    pub fn negated(&self) -> FeatureVector {
        FeatureVector(self.0.map(|x| -x))
    }
}

/// Pawn occupancy per file as a bitmask of absolute ranks.
#[derive(Clone, Copy, Default)]
struct PawnFiles([u8; 8]);

impl PawnFiles {
    #[inline]
    fn on(&self, file: i8) -> u8 {
        if (0..8).contains(&file) {
            self.0[file as usize]
        } else {
            0
        }
    }

    #[inline]
    fn adjacent(&self, file: u8) -> u8 {
        self.on(file as i8 - 1) | self.on(file as i8 + 1)
    }

    #[inline]
    fn around(&self, file: u8) -> u8 {
        self.adjacent(file) | self.0[file as usize]
    }
}

/// Absolute ranks strictly ahead of `rank` for `color`.
#[inline]
fn ahead(color: Color, rank: u8) -> u8 {
    match color {
        Color::White => (0xFFu16 << (rank + 1)) as u8,
        Color::Black => ((1u16 << rank) - 1) as u8,
    }
}

/// Absolute ranks strictly behind `rank` for `color`.
#[inline]
fn behind(color: Color, rank: u8) -> u8 {
    ahead(color.flip(), rank)
}

#[inline]
fn relative_rank(color: Color, rank: u8) -> u8 {
    match color {
        Color::White => rank,
        Color::Black => 7 - rank,
    }
}

#[inline]
fn edge_distance(x: u8) -> i32 {
    x.min(7 - x).min(3) as i32
}

struct Board<'a> {
    pos: &'a Position,
    pawns: [PawnFiles; 2],
}

impl Board<'_> {
    fn pawn_at(&self, color: Color, sq: Option<Square>) -> bool {
        sq.is_some_and(|s| self.pos.piece_at(s) == Some(Piece::new(color, PieceKind::Pawn)))
    }

    fn is_passed(&self, color: Color, sq: Square) -> bool {
        self.pawns[color.flip().index()].around(sq.file()) & ahead(color, sq.rank()) == 0
    }

    fn is_isolated(&self, color: Color, sq: Square) -> bool {
        self.pawns[color.index()].adjacent(sq.file()) == 0
    }

    /// Behind every friendly pawn on the adjacent files, with its stop square
    /// covered by an enemy pawn.
    fn is_backward(&self, color: Color, sq: Square) -> bool {
        let adj = self.pawns[color.index()].adjacent(sq.file());
        if adj == 0 || adj & !ahead(color, sq.rank()) != 0 {
            return false;
        }
        let fwd = color.forward();
        let enemy = color.flip();
        self.pawn_at(enemy, sq.offset(-1, 2 * fwd)) || self.pawn_at(enemy, sq.offset(1, 2 * fwd))
    }

    /// Visits every square attacked by a slider or leaper on `from`.
    fn for_each_attack(&self, kind: PieceKind, from: Square, mut f: impl FnMut(Square)) {
        let slide = |dirs: &[(i8, i8)], f: &mut dyn FnMut(Square)| {
            for &(df, dr) in dirs {
                let mut cur = from;
                while let Some(s) = cur.offset(df, dr) {
                    f(s);
                    if self.pos.piece_at(s).is_some() {
                        break;
                    }
                    cur = s;
                }
            }
        };
        match kind {
            PieceKind::Knight => {
                for &(df, dr) in &KNIGHT_STEPS {
                    if let Some(s) = from.offset(df, dr) {
                        f(s);
                    }
                }
            }
            PieceKind::Bishop => slide(&BISHOP_DIRS, &mut f),
            PieceKind::Rook => slide(&ROOK_DIRS, &mut f),
            PieceKind::Queen => {
                slide(&ROOK_DIRS, &mut f);
                slide(&BISHOP_DIRS, &mut f);
            }
            PieceKind::Pawn | PieceKind::King => {}
        }
    }

    fn side(&self, color: Color) -> [i32; PARAM_COUNT] {
        use Param::*;
        let mut f = [0i32; PARAM_COUNT];
        let pos = self.pos;
        let enemy = color.flip();
        let own_pawns = &self.pawns[color.index()];
        let enemy_pawns = &self.pawns[enemy.index()];
        let enemy_king = pos.king_square(enemy);
        let own_king = pos.king_square(color);
        let fwd = color.forward();

        let mut bishops = 0;
        let mut rooks: Vec<Square> = Vec::with_capacity(2);

        for (sq, piece) in pos.pieces() {
            if piece.color != color {
                continue;
            }
            let rel = relative_rank(color, sq.rank()) as i32;
            match piece.kind {
                PieceKind::Pawn => {
                    f[PawnValue as usize] += 1;
                    if self.is_passed(color, sq) {
                        f[PawnAdvanceB as usize] += rel - 1;
                        f[PassedPawnMult as usize] += rel;
                        f[PassedPawnEnemyKingDist as usize] += enemy_king.chebyshev(sq) as i32;
                    } else {
                        f[PawnAdvanceA as usize] += rel - 1;
                    }
                    if self.is_isolated(color, sq) {
                        f[IsolatedPawnPenalty as usize] += 1;
                    } else if self.is_backward(color, sq) {
                        f[BackwardPawnPenalty as usize] += 1;
                    }
                }
                PieceKind::Knight => {
                    f[KnightValue as usize] += 1;
                    f[KnightSqMult as usize] += edge_distance(sq.file()) + edge_distance(sq.rank());
                    let defended = self.pawn_at(color, sq.offset(-1, -fwd)) || self.pawn_at(color, sq.offset(1, -fwd));
                    let safe = enemy_pawns.adjacent(sq.file()) & ahead(color, sq.rank()) == 0;
                    if (3..=5).contains(&rel) && defended && safe {
                        f[KnightOutpostMult as usize] += rel;
                    }
                }
                PieceKind::Bishop => {
                    f[BishopValue as usize] += 1;
                    bishops += 1;
                    self.for_each_attack(PieceKind::Bishop, sq, |s| {
                        if pos.piece_at(s).is_none_or(|p| p.color != color) {
                            f[BishopMobility as usize] += 1;
                        }
                    });
                }
                PieceKind::Rook => {
                    f[RookValue as usize] += 1;
                    rooks.push(sq);
                    self.for_each_attack(PieceKind::Rook, sq, |s| {
                        if pos.piece_at(s).is_none_or(|p| p.color != color) {
                            f[RookMobility as usize] += 1;
                        }
                    });
                }
                PieceKind::Queen => {
                    f[QueenValue as usize] += 1;
                    self.for_each_attack(PieceKind::Queen, sq, |s| {
                        if pos.piece_at(s).is_none_or(|p| p.color != color) {
                            f[QueenMobility as usize] += 1;
                        }
                    });
                }
                PieceKind::King => {}
            }
            if matches!(
                piece.kind,
                PieceKind::Knight | PieceKind::Bishop | PieceKind::Rook | PieceKind::Queen
            ) {
                self.for_each_attack(piece.kind, sq, |s| {
                    if s.chebyshev(enemy_king) <= 1 {
                        f[KingPressureMult as usize] += 1;
                    }
                });
            }
        }

        if bishops >= 2 {
            f[BishopPair as usize] = 1;
        }

        for file in 0..8u8 {
            let n = own_pawns.0[file as usize].count_ones() as i32;
            if n > 1 {
                f[DoubledPawnPenalty as usize] += n - 1;
            }
        }

        // c..f files, relative ranks 2..4
        for file in 2..6u8 {
            let supporters = own_pawns.adjacent(file);
            for rel in 1..4u8 {
                let sq = Square::from_coords(file, relative_rank(color, rel));
                if supporters & behind(color, sq.rank()) == 0 {
                    f[WeakSquarePenalty as usize] += 1;
                }
            }
        }

        for (i, &rook) in rooks.iter().enumerate() {
            let file = rook.file();
            let file_diff = file.abs_diff(enemy_king.file());
            if file_diff == 0 {
                f[RookAttackKingFile as usize] += 1;
            } else if file_diff == 1 {
                f[RookAttackKingAdjFile as usize] += 1;
                if matches!(enemy_king.file(), 0 | 1 | 6 | 7) {
                    f[RookAttackKingAdjFileAbgh as usize] += 1;
                }
            }
            if relative_rank(color, rook.rank()) == 6 {
                f[Rook7thRank as usize] += 1;
            }
            for &other in &rooks[i + 1..] {
                if self.clear_line(rook, other) {
                    f[RookConnected as usize] += 1;
                }
            }
            let own_on_file = own_pawns.0[file as usize];
            let enemy_on_file = enemy_pawns.0[file as usize];
            let passed_ahead = (0..8).any(|r| {
                own_on_file & (1 << r) != 0
                    && ahead(color, rook.rank()) & (1 << r) != 0
                    && self.is_passed(color, Square::from_coords(file, r))
            });
            if passed_ahead {
                f[RookBehindPassedPawn as usize] += 1;
            }
            if own_on_file == 0 {
                if enemy_on_file == 0 {
                    f[RookOpenFile as usize] += 1;
                } else {
                    f[RookSemiOpenFile as usize] += 1;
                }
            }
            if self.rook_hits_weak_pawn(color, rook) {
                f[RookAtckWeakPawnOpenColumn as usize] += 1;
            }
            f[RookColumnMult as usize] += edge_distance(file);
        }

        let kf = own_king.file();
        if own_pawns.0[kf as usize] == 0 {
            f[KingNoFriendlyPawn as usize] += 1;
        }
        if enemy_pawns.0[kf as usize] == 0 {
            f[KingNoEnemyPawn as usize] += 1;
        }
        for adj in [kf as i8 - 1, kf as i8 + 1] {
            if !(0..8).contains(&adj) {
                continue;
            }
            if own_pawns.on(adj) == 0 {
                f[KingNoFriendlyPawnAdj as usize] += 1;
            }
            if enemy_pawns.on(adj) == 0 {
                f[KingNoEnemyPawnAdj as usize] += 1;
            }
        }
        let advanced_rank = relative_rank(color, 2);
        f[KingFriendlyPawnAdvanced1 as usize] += (kf.saturating_sub(1)..=(kf + 1).min(7))
            .filter(|&file| own_pawns.0[file as usize] & (1 << advanced_rank) != 0)
            .count() as i32;

        f
    }

    /// No piece strictly between two squares on a shared rank or file.
    fn clear_line(&self, a: Square, b: Square) -> bool {
        let (df, dr) = if a.rank() == b.rank() {
            ((b.file() as i8 - a.file() as i8).signum(), 0)
        } else if a.file() == b.file() {
            (0, (b.rank() as i8 - a.rank() as i8).signum())
        } else {
            return false;
        };
        let mut cur = a.offset(df, dr).expect("line stays on board");
        while cur != b {
            if self.pos.piece_at(cur).is_some() {
                return false;
            }
            cur = cur.offset(df, dr).expect("line stays on board");
        }
        true
    }

    /// The nearest pawn along the rook's file, in either direction, is an
    /// isolated or backward enemy pawn.
    fn rook_hits_weak_pawn(&self, color: Color, rook: Square) -> bool {
        let enemy = color.flip();
        for dr in [1i8, -1] {
            let mut cur = rook;
            while let Some(s) = cur.offset(0, dr) {
                if let Some(p) = self.pos.piece_at(s) {
                    if p.kind == PieceKind::Pawn {
                        if p.color == enemy && (self.is_isolated(enemy, s) || self.is_backward(enemy, s)) {
                            return true;
                        }
                        break;
                    }
                }
                cur = s;
            }
        }
        false
    }
}

/// Feature counts for `pos`, White minus Black.
pub fn extract_features(pos: &Position) -> FeatureVector {
    let mut pawns = [PawnFiles::default(); 2];
    for (sq, p) in pos.pieces() {
        if p.kind == PieceKind::Pawn {
            pawns[p.color.index()].0[sq.file() as usize] |= 1 << sq.rank();
        }
    }
    let board = Board { pos, pawns };
    let white = board.side(Color::White);
    let black = board.side(Color::Black);
    FeatureVector(std::array::from_fn(|i| white[i] - black[i]))
}

/// Static evaluation in centipawns from White's point of view.
pub fn evaluate(pos: &Position, params: &EvalParams) -> i32 {
    extract_features(pos).dot(params)
}

/// Static evaluation from the side to move's point of view.
pub fn evaluate_relative(pos: &Position, params: &EvalParams) -> i32 {
    evaluate(pos, params) * pos.side_to_move().sign()
}
