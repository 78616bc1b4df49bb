use std::collections::BTreeMap;

use super::position::Position;
use super::san::{parse_san, to_san};
use super::types::Move;
use super::ChessError;

/// One mainline game: tag pairs, the starting position and its moves.
#[derive(Debug, Clone, PartialEq)]
pub struct PgnGame {
    pub headers: BTreeMap<String, String>,
    pub start: Position,
    pub moves: Vec<Move>,
}

impl PgnGame {
    /// Every position of the game, starting position first.
    pub fn positions(&self) -> Vec<Position> {
        let mut out = Vec::with_capacity(self.moves.len() + 1);
        let mut cur = self.start.clone();
        out.push(cur.clone());
        for &m in &self.moves {
            cur = cur.play(m);
            out.push(cur.clone());
        }
        out
    }

    pub fn result(&self) -> &str {
        self.headers.get("Result").map(String::as_str).unwrap_or("*")
    }
}

const RESULTS: [&str; 4] = ["1-0", "0-1", "1/2-1/2", "*"];

#[derive(Default)]
struct Pending {
    headers: BTreeMap<String, String>,
    tokens: Vec<String>,
    result: Option<String>,
    touched: bool,
}

/// Parses every game of a PGN export. Comments, NAGs and variations are skipped.
pub fn parse_pgn_games(text: &str) -> Result<Vec<(BTreeMap<String, String>, Vec<Move>)>, ChessError> {
    Ok(parse_pgn(text)?
        .into_iter()
        .map(|g| (g.headers, g.moves))
        .collect())
}

/// Like [`parse_pgn_games`] but keeps the starting position of each game.
pub fn parse_pgn(text: &str) -> Result<Vec<PgnGame>, ChessError> {
    let mut games = Vec::new();
    let mut cur = Pending::default();
    let mut in_movetext = false;

    let mut chars = text.chars();
    let mut depth = 0usize; // variation nesting
    let mut word = String::new();

    let flush_word = |word: &mut String, cur: &mut Pending, depth: usize| {
        if !word.is_empty() && depth == 0 {
            cur.tokens.push(std::mem::take(word));
            cur.touched = true;
        }
        word.clear();
    };

    while let Some(c) = chars.next() {
        match c {
            '[' if depth == 0 && word.is_empty() => {
                if in_movetext {
                    games.push(finish(std::mem::take(&mut cur), games.len())?);
                    in_movetext = false;
                }
                let mut tag = String::new();
                let mut in_quote = false;
                for t in chars.by_ref() {
                    match t {
                        '"' => {
                            in_quote = !in_quote;
                            tag.push(t);
                        }
                        '\\' if in_quote => tag.push(t),
                        ']' if !in_quote => break,
                        _ => tag.push(t),
                    }
                }
                let (key, value) = parse_tag(&tag);
                cur.headers.insert(key, value);
                cur.touched = true;
            }
            '{' => {
                flush_word(&mut word, &mut cur, depth);
                for t in chars.by_ref() {
                    if t == '}' {
                        break;
                    }
                }
            }
            ';' => {
                flush_word(&mut word, &mut cur, depth);
                for t in chars.by_ref() {
                    if t == '\n' {
                        break;
                    }
                }
            }
            '(' => {
                flush_word(&mut word, &mut cur, depth);
                depth += 1;
            }
            ')' => {
                word.clear();
                depth = depth.saturating_sub(1);
            }
            c if c.is_whitespace() => {
                flush_word(&mut word, &mut cur, depth);
            }
            c => {
                if depth == 0 {
                    word.push(c);
                    in_movetext = true;
                }
            }
        }
        if let Some(r) = cur.tokens.pop_if(|last| RESULTS.contains(&last.as_str())) {
            cur.result = Some(r);
            games.push(finish(std::mem::take(&mut cur), games.len())?);
            in_movetext = false;
        }
    }
    flush_word(&mut word, &mut cur, depth);
    if let Some(last) = cur.tokens.last() {
        if RESULTS.contains(&last.as_str()) {
            cur.result = cur.tokens.pop();
        }
    }
    if cur.touched {
        games.push(finish(cur, games.len())?);
    }
    Ok(games)
}

fn parse_tag(tag: &str) -> (String, String) {
    let tag = tag.trim();
    let (key, rest) = tag.split_once(char::is_whitespace).unwrap_or((tag, ""));
    let value = rest.trim().trim_matches('"').replace("\\\"", "\"");
    (key.to_string(), value)
}

fn finish(pending: Pending, index: usize) -> Result<PgnGame, ChessError> {
    let mut headers = pending.headers;
    let start = match headers.get("FEN") {
        Some(fen) => Position::from_fen(fen).map_err(|e| ChessError::Pgn {
            game: index,
            ply: 0,
            reason: format!("bad FEN tag: {e}"),
        })?,
        None => Position::startpos(),
    };
    let mut pos = start.clone();
    let mut moves = Vec::new();
    for token in pending.tokens {
        let Some(san) = move_token(&token) else {
            continue;
        };
        let m = parse_san(&pos, san).map_err(|e| ChessError::Pgn {
            game: index,
            ply: moves.len() + 1,
            reason: e.to_string(),
        })?;
        pos.make_move(m);
        moves.push(m);
    }
    if let Some(r) = pending.result {
        headers.entry("Result".to_string()).or_insert(r);
    }
    Ok(PgnGame { headers, start, moves })
}

/// Strips move numbers and annotation glyphs; `None` for non-move tokens.
fn move_token(token: &str) -> Option<&str> {
    if token.starts_with('$') || token == "e.p." || token == "ep" {
        return None;
    }
    // "12." / "12..." / "12.e4"
    let t = token.trim_start_matches(|c: char| c.is_ascii_digit());
    let t = if t.len() != token.len() { t.trim_start_matches('.') } else { token };
    let t = t.trim_end_matches(['!', '?']);
    if t.is_empty() || t.chars().all(|c| c == '.') {
        None
    } else {
        Some(t)
    }
}

/// Writes a game in PGN export format with the seven-tag roster first.
pub fn write_pgn(headers: &[(&str, String)], start: &Position, moves: &[Move], result: &str) -> String {
    let mut out = String::new();
    for (k, v) in headers {
        out.push_str(&format!("[{k} \"{}\"]\n", v.replace('"', "\\\"")));
    }
    out.push('\n');
    let mut pos = start.clone();
    let mut line = String::new();
    let push = |line: &mut String, out: &mut String, tok: &str| {
        if !line.is_empty() && line.len() + tok.len() + 1 > 79 {
            out.push_str(line);
            out.push('\n');
            line.clear();
        }
        if !line.is_empty() {
            line.push(' ');
        }
        line.push_str(tok);
    };
    for (i, &m) in moves.iter().enumerate() {
        let number = pos.fullmove_number();
        if pos.side_to_move() == super::Color::White {
            push(&mut line, &mut out, &format!("{number}."));
        } else if i == 0 {
            push(&mut line, &mut out, &format!("{number}..."));
        }
        push(&mut line, &mut out, &to_san(&pos, m));
        pos.make_move(m);
    }
    push(&mut line, &mut out, result);
    out.push_str(&line);
    out.push_str("\n\n");
    out
}
