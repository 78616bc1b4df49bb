use std::cmp::Reverse;

use crate::chess::{Move, MoveKind, PieceKind, Position};
use crate::eval::{evaluate_relative, EvalParams};

/// Score magnitude of a checkmate at the root.
pub const MATE: i32 = 1_000_000;
const INF: i32 = MATE + 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("side to move is checkmated")]
    Checkmate,
    #[error("side to move is stalemated")]
    Stalemate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub depth: u32,
    /// Extend leaves with a capture-only search.
    pub quiescence: bool,
}

impl SearchConfig {
    pub fn new(depth: u32) -> SearchConfig {
        SearchConfig {
            depth,
            quiescence: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchResult {
    pub best: Move,
    /// Side-to-move relative score.
    pub score: i32,
    pub nodes: u64,
}

fn victim_value(kind: Option<PieceKind>) -> u8 {
    kind.map_or(0, |k| k.index() as u8 + 1)
}

/// Captures first (most valuable victim, least valuable attacker), then promotions,
/// then quiet moves by from/to squares seen from the mover's side. Using relative
/// squares keeps the order identical for color-mirrored positions.
fn order_moves(pos: &Position, moves: &mut [Move]) {
    let us = pos.side_to_move();
    moves.sort_by_key(|m| {
        let victim = if m.kind == MoveKind::EnPassant {
            Some(PieceKind::Pawn)
        } else {
            pos.piece_at(m.to).map(|p| p.kind)
        };
        let attacker = pos.piece_at(m.from).map_or(0, |p| p.kind.index() as u8);
        let promo = m.promotion.map_or(0, |k| k.index() as u8 + 1);
        (
            Reverse(victim_value(victim)),
            Reverse(promo),
            attacker,
            m.from.relative_to(us),
            m.to.relative_to(us),
        )
    });
}

struct Searcher<'a> {
    params: &'a EvalParams,
    quiescence: bool,
    nodes: u64,
}

impl Searcher<'_> {
    fn legal(&self, pos: &mut Position, captures_only: bool) -> Vec<Move> {
        let mut moves = Vec::with_capacity(48);
        if captures_only {
            pos.pseudo_captures(&mut moves);
        } else {
            pos.pseudo_moves(&mut moves);
        }
        let us = pos.side_to_move();
        moves.retain(|&m| {
            let undo = pos.make_move(m);
            let ok = !pos.is_attacked(pos.king_square(us), us.flip());
            pos.unmake_move(m, undo);
            ok
        });
        order_moves(pos, &mut moves);
        moves
    }

    fn quiesce(&mut self, pos: &mut Position, mut alpha: i32, beta: i32) -> i32 {
        self.nodes += 1;
        let stand = evaluate_relative(pos, self.params);
        if stand >= beta {
            return stand;
        }
        alpha = alpha.max(stand);
        let mut best = stand;
        for m in self.legal(pos, true) {
            let undo = pos.make_move(m);
            let score = -self.quiesce(pos, -beta, -alpha);
            pos.unmake_move(m, undo);
            if score > best {
                best = score;
                if score > alpha {
                    alpha = score;
                    if alpha >= beta {
                        break;
                    }
                }
            }
        }
        best
    }

    fn negamax(&mut self, pos: &mut Position, depth: u32, mut alpha: i32, beta: i32, ply: i32) -> i32 {
        if depth == 0 {
            if self.quiescence {
                return self.quiesce(pos, alpha, beta);
            }
            self.nodes += 1;
            return evaluate_relative(pos, self.params);
        }
        self.nodes += 1;
        let moves = self.legal(pos, false);
        if moves.is_empty() {
            return if pos.in_check() { -MATE + ply } else { 0 };
        }
        let mut best = -INF;
        for m in moves {
            let undo = pos.make_move(m);
            let score = -self.negamax(pos, depth - 1, -beta, -alpha, ply + 1);
            pos.unmake_move(m, undo);
            if score > best {
                best = score;
                if score > alpha {
                    alpha = score;
                    if alpha >= beta {
                        break;
                    }
                }
            }
        }
        best
    }
}

/// Fixed-depth alpha-beta negamax. Ties go to the earlier move in search order.
pub fn search(pos: &Position, params: &EvalParams, cfg: SearchConfig) -> Result<SearchResult, SearchError> {
    let depth = cfg.depth.max(1);
    let mut s = Searcher {
        params,
        quiescence: cfg.quiescence,
        nodes: 1,
    };
    let mut work = pos.clone();
    let moves = s.legal(&mut work, false);
    if moves.is_empty() {
        return Err(if pos.in_check() {
            SearchError::Checkmate
        } else {
            SearchError::Stalemate
        });
    }
    let mut alpha = -INF;
    let mut best = moves[0];
    for m in moves {
        let undo = work.make_move(m);
        let score = -s.negamax(&mut work, depth - 1, -INF, -alpha, 1);
        work.unmake_move(m, undo);
        if score > alpha {
            alpha = score;
            best = m;
        }
    }
    Ok(SearchResult {
        best,
        score: alpha,
        nodes: s.nodes,
    })
}

/// Every legal move scoring within `margin` of the best one, with exact
/// side-to-move relative scores, in search order. Moves further below the
/// best are only bounded, which keeps this much cheaper than scoring all.
pub fn near_best_moves(pos: &Position, params: &EvalParams, cfg: SearchConfig, margin: i32) -> Vec<(Move, i32)> {
    let depth = cfg.depth.max(1);
    let mut s = Searcher {
        params,
        quiescence: cfg.quiescence,
        nodes: 1,
    };
    let mut work = pos.clone();
    let mut kept: Vec<(Move, i32)> = Vec::new();
    let mut best = -INF;
    for m in s.legal(&mut work, false) {
        let floor = (best - margin).max(-INF) - 1;
        let undo = work.make_move(m);
        let score = -s.negamax(&mut work, depth - 1, -INF, -floor, 1);
        work.unmake_move(m, undo);
        if score > floor {
            kept.push((m, score));
            if score > best {
                best = score;
                kept.retain(|&(_, sc)| sc >= best - margin);
            }
        }
    }
    kept
}

/// Best move at `depth` plies with quiescence at the leaves.
pub fn search_best_move(pos: &Position, params: &EvalParams, depth: u32) -> Result<Move, SearchError> {
    search(pos, params, SearchConfig::new(depth)).map(|r| r.best)
}

/// Negamax value of `pos` at `depth` from White's point of view. Depth 0 is
/// the static evaluation; terminal positions score as mate or draw.
pub fn search_score_white(pos: &Position, params: &EvalParams, depth: u32, quiescence: bool) -> i32 {
    let mut s = Searcher {
        params,
        quiescence,
        nodes: 0,
    };
    let mut work = pos.clone();
    let rel = s.negamax(&mut work, depth, -INF, INF, 0);
    rel * pos.side_to_move().sign()
}
