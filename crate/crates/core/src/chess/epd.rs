use std::collections::BTreeMap;

use super::position::Position;
use super::san::parse_san;
use super::types::Move;
use super::ChessError;

/// A parsed EPD line. `bm` holds the resolved best moves (empty when absent).
#[derive(Debug, Clone, PartialEq)]
pub struct EpdRecord {
    pub position: Position,
    pub ops: BTreeMap<String, String>,
    pub bm: Vec<Move>,
}

impl EpdRecord {
    pub fn id(&self) -> Option<&str> {
        self.ops.get("id").map(String::as_str)
    }
}

fn epd_err(opcode: &str, reason: impl Into<String>) -> ChessError {
    ChessError::Epd {
        opcode: opcode.to_string(),
        reason: reason.into(),
    }
}

/// Parses `<4 FEN fields> op1 operands; op2 operands; ...`.
pub fn parse_epd(line: &str) -> Result<EpdRecord, ChessError> {
    let line = line.trim();
    let mut rest = line;
    let mut fields = Vec::with_capacity(4);
    for _ in 0..4 {
        rest = rest.trim_start();
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        if end == 0 {
            return Err(ChessError::Fen {
                field: "fen",
                reason: "EPD needs four position fields".into(),
            });
        }
        fields.push(&rest[..end]);
        rest = &rest[end..];
    }
    let position = Position::from_fen(&fields.join(" "))?;

    let mut ops = BTreeMap::new();
    for raw in split_ops(rest) {
        let op = raw.trim();
        if op.is_empty() {
            continue;
        }
        let (name, operand) = op.split_once(char::is_whitespace).unwrap_or((op, ""));
        let valid_name = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid_name {
            return Err(epd_err(name, "malformed opcode name"));
        }
        let operand = operand.trim();
        if operand.is_empty() {
            return Err(epd_err(name, "missing operand"));
        }
        let operand = operand
            .strip_prefix('"')
            .and_then(|s| s.strip_suffix('"'))
            .unwrap_or(operand);
        ops.insert(name.to_string(), operand.to_string());
    }

    let bm = match ops.get("bm") {
        Some(list) => list
            .split_whitespace()
            .map(|san| parse_san(&position, san).map_err(|e| epd_err("bm", e.to_string())))
            .collect::<Result<Vec<_>, _>>()?,
        None => Vec::new(),
    };
    Ok(EpdRecord { position, ops, bm })
}

/// Splits on `;` outside double quotes. An unterminated quote is an error for the caller
/// to notice via the operand, so it is simply kept.
fn split_ops(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut quoted = false;
    for (i, c) in s.char_indices() {
        match c {
            '"' => quoted = !quoted,
            ';' if !quoted => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Parses every non-blank, non-comment line of an EPD file.
pub fn parse_epd_file(text: &str) -> Result<Vec<EpdRecord>, ChessError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_epd)
        .collect()
}
