use crate::chess::{parse_san, ChessError, Position};

const BUNDLED: &str = include_str!("../../data/openings.txt");

/// Parses one opening per line (SAN moves from the start position). Blank
/// lines and `#` comments are skipped.
pub fn parse_openings(text: &str) -> Result<Vec<Position>, ChessError> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut pos = Position::startpos();
        for tok in line.split_whitespace() {
            let m = parse_san(&pos, tok)?;
            pos.make_move(m);
        }
        out.push(pos);
    }
    Ok(out)
}

/// The fifty built-in opening positions.
pub fn bundled_openings() -> Vec<Position> {
    parse_openings(BUNDLED).expect("bundled openings are valid")
}
