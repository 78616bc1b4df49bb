use super::position::Position;
use super::types::{Move, MoveKind, PieceKind, Square};
use super::ChessError;

fn san_err(san: &str, reason: &str) -> ChessError {
    ChessError::San {
        san: san.to_string(),
        reason: reason.to_string(),
    }
}

/// Resolves a SAN token (e.g. `Nbd7`, `exd6`, `O-O`, `e8=Q+`) against the legal moves of `pos`.
pub fn parse_san(pos: &Position, token: &str) -> Result<Move, ChessError> {
    let san = token.trim_end_matches(['+', '#', '!', '?']);
    if san.is_empty() {
        return Err(san_err(token, "empty move"));
    }
    let legal = pos.legal_moves();

    if matches!(san, "O-O" | "0-0" | "O-O-O" | "0-0-0") {
        let file = if san.len() == 3 { 6 } else { 2 };
        return legal
            .into_iter()
            .find(|m| m.kind == MoveKind::Castle && m.to.file() == file)
            .ok_or_else(|| san_err(token, "castling not legal"));
    }

    let mut chars: Vec<char> = san.chars().collect();
    let mut promotion = None;
    if let Some(eq) = chars.iter().position(|&c| c == '=') {
        let letter = chars.get(eq + 1).copied().ok_or_else(|| san_err(token, "missing promotion piece"))?;
        promotion = Some(PieceKind::from_letter(letter).ok_or_else(|| san_err(token, "bad promotion piece"))?);
        chars.truncate(eq);
    } else if let Some(&last) = chars.last() {
        // bare promotion suffix, e.g. `e8Q`
        if chars.len() >= 3 && "NBRQ".contains(last) && chars[chars.len() - 2].is_ascii_digit() {
            promotion = PieceKind::from_letter(last);
            chars.pop();
        }
    }

    let kind = match chars.first().copied() {
        Some(c) if "NBRQK".contains(c) => {
            chars.remove(0);
            PieceKind::from_letter(c).expect("piece letter")
        }
        _ => PieceKind::Pawn,
    };

    if chars.len() < 2 {
        return Err(san_err(token, "missing destination square"));
    }
    let dest: String = chars[chars.len() - 2..].iter().collect();
    let to = Square::parse(&dest).ok_or_else(|| san_err(token, "bad destination square"))?;
    let mut disamb: Vec<char> = chars[..chars.len() - 2].to_vec();
    let capture = disamb.last() == Some(&'x');
    if capture {
        disamb.pop();
    }
    let (mut from_file, mut from_rank) = (None, None);
    for c in disamb {
        match c {
            'a'..='h' => from_file = Some(c as u8 - b'a'),
            '1'..='8' => from_rank = Some(c as u8 - b'1'),
            _ => return Err(san_err(token, "unexpected character")),
        }
    }

    let candidates: Vec<Move> = legal
        .into_iter()
        .filter(|m| {
            m.to == to
                && m.kind != MoveKind::Castle
                && pos.piece_at(m.from).map(|p| p.kind) == Some(kind)
                && m.promotion == promotion
                && from_file.is_none_or(|f| m.from.file() == f)
                && from_rank.is_none_or(|r| m.from.rank() == r)
        })
        .collect();
    match candidates.as_slice() {
        [m] => Ok(*m),
        [] => Err(san_err(token, "no legal move matches")),
        _ => Err(san_err(token, "ambiguous")),
    }
}

/// Standard algebraic notation for a legal move, including check/mate suffix.
pub fn to_san(pos: &Position, m: Move) -> String {
    let mut s = String::new();
    let piece = pos.piece_at(m.from).expect("move from occupied square");
    if m.kind == MoveKind::Castle {
        s.push_str(if m.to.file() == 6 { "O-O" } else { "O-O-O" });
    } else {
        let capture = pos.is_capture(m);
        if piece.kind == PieceKind::Pawn {
            if capture {
                s.push((b'a' + m.from.file()) as char);
            }
        } else {
            s.push(piece.kind.letter());
            let rivals: Vec<Move> = pos
                .legal_moves()
                .into_iter()
                .filter(|o| o.to == m.to && o.from != m.from && pos.piece_at(o.from) == Some(piece))
                .collect();
            if !rivals.is_empty() {
                let same_file = rivals.iter().any(|o| o.from.file() == m.from.file());
                let same_rank = rivals.iter().any(|o| o.from.rank() == m.from.rank());
                if !same_file {
                    s.push((b'a' + m.from.file()) as char);
                } else if !same_rank {
                    s.push((b'1' + m.from.rank()) as char);
                } else {
                    s.push_str(&m.from.to_string());
                }
            }
        }
        if capture {
            s.push('x');
        }
        s.push_str(&m.to.to_string());
        if let Some(p) = m.promotion {
            s.push('=');
            s.push(p.letter());
        }
    }
    let next = pos.play(m);
    if next.in_check() {
        s.push(if next.legal_moves().is_empty() { '#' } else { '+' });
    }
    s
}
