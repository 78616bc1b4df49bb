//! Brute-force legality check sharing no code with the library: it reads a
//! position back from FEN text, tries every from/to pair, applies the move on
//! its own board and asks whether the mover's king is attacked afterwards.

use std::collections::BTreeSet;

#[derive(Clone, Copy, PartialEq, Eq)]
struct Man {
    white: bool,
    kind: char,
}

pub struct Oracle {
    board: [Option<Man>; 64],
    white: bool,
    castling: String,
    ep: Option<usize>,
}

fn idx(file: i32, rank: i32) -> usize {
    (rank * 8 + file) as usize
}

fn coords(sq: usize) -> (i32, i32) {
    ((sq % 8) as i32, (sq / 8) as i32)
}

fn name(sq: usize) -> String {
    let (f, r) = coords(sq);
    format!("{}{}", (b'a' + f as u8) as char, r + 1)
}

impl Oracle {
    pub fn from_fen(fen: &str) -> Oracle {
        let fields: Vec<&str> = fen.split_whitespace().collect();
        let mut board = [None; 64];
        for (row, text) in fields[0].split('/').enumerate() {
            let rank = 7 - row as i32;
            let mut file = 0;
            for c in text.chars() {
                if let Some(d) = c.to_digit(10) {
                    file += d as i32;
                } else {
                    board[idx(file, rank)] = Some(Man {
                        white: c.is_ascii_uppercase(),
                        kind: c.to_ascii_lowercase(),
                    });
                    file += 1;
                }
            }
        }
        let ep = match fields[3] {
            "-" => None,
            s => {
                let b = s.as_bytes();
                Some(idx((b[0] - b'a') as i32, (b[1] - b'1') as i32))
            }
        };
        Oracle {
            board,
            white: fields[1] == "w",
            castling: fields[2].to_string(),
            ep,
        }
    }

    fn clear_between(board: &[Option<Man>; 64], from: usize, to: usize) -> bool {
        let (ff, fr) = coords(from);
        let (tf, tr) = coords(to);
        let (sf, sr) = ((tf - ff).signum(), (tr - fr).signum());
        let (mut f, mut r) = (ff + sf, fr + sr);
        while (f, r) != (tf, tr) {
            if board[idx(f, r)].is_some() {
                return false;
            }
            f += sf;
            r += sr;
        }
        true
    }

    /// Whether the piece on `from` attacks `to`, by geometry alone.
    fn hits(board: &[Option<Man>; 64], from: usize, to: usize) -> bool {
        let Some(man) = board[from] else {
            return false;
        };
        let (ff, fr) = coords(from);
        let (tf, tr) = coords(to);
        let (df, dr) = (tf - ff, tr - fr);
        if df == 0 && dr == 0 {
            return false;
        }
        let diagonal = df.abs() == dr.abs();
        let straight = df == 0 || dr == 0;
        match man.kind {
            'p' => df.abs() == 1 && dr == if man.white { 1 } else { -1 },
            'n' => (df.abs(), dr.abs()) == (1, 2) || (df.abs(), dr.abs()) == (2, 1),
            'k' => df.abs() <= 1 && dr.abs() <= 1,
            'b' => diagonal && Self::clear_between(board, from, to),
            'r' => straight && Self::clear_between(board, from, to),
            'q' => (diagonal || straight) && Self::clear_between(board, from, to),
            _ => unreachable!(),
        }
    }

    fn attacked(board: &[Option<Man>; 64], sq: usize, by_white: bool) -> bool {
        (0..64).any(|from| matches!(board[from], Some(m) if m.white == by_white) && Self::hits(board, from, sq))
    }

    fn king(board: &[Option<Man>; 64], white: bool) -> usize {
        (0..64)
            .find(|&s| board[s] == Some(Man { white, kind: 'k' }))
            .expect("king on board")
    }

    fn castles(&self, from: usize, to: usize) -> bool {
        let home = if self.white { 0 } else { 7 };
        if from != idx(4, home) || coords(to).1 != home {
            return false;
        }
        let (flag, rook_file, path, empty): (char, i32, [i32; 2], &[i32]) = match coords(to).0 {
            6 => ('k', 7, [5, 6], &[5, 6]),
            2 => ('q', 0, [3, 2], &[1, 2, 3]),
            _ => return false,
        };
        let flag = if self.white { flag.to_ascii_uppercase() } else { flag };
        self.castling.contains(flag)
            && self.board[idx(rook_file, home)] == Some(Man { white: self.white, kind: 'r' })
            && empty.iter().all(|&f| self.board[idx(f, home)].is_none())
            && !Self::attacked(&self.board, from, !self.white)
            && path.iter().all(|&f| !Self::attacked(&self.board, idx(f, home), !self.white))
    }

    /// Pseudo-moves from `from` to `to` as (promotion letter, board after).
    fn try_move(&self, from: usize, to: usize) -> Vec<(Option<char>, [Option<Man>; 64])> {
        let Some(man) = self.board[from] else {
            return vec![];
        };
        if man.white != self.white || matches!(self.board[to], Some(t) if t.white == self.white) {
            return vec![];
        }
        let (ff, fr) = coords(from);
        let (tf, tr) = coords(to);
        let mut after = self.board;
        after[to] = Some(man);
        after[from] = None;
        match man.kind {
            'p' => {
                let fwd = if self.white { 1 } else { -1 };
                let start = if self.white { 1 } else { 6 };
                let ok = if tf == ff {
                    self.board[to].is_none()
                        && (tr - fr == fwd
                            || (tr - fr == 2 * fwd && fr == start && self.board[idx(ff, fr + fwd)].is_none()))
                } else if (tf - ff).abs() == 1 && tr - fr == fwd {
                    if self.board[to].is_some() {
                        true
                    } else if self.ep == Some(to) {
                        after[idx(tf, fr)] = None;
                        true
                    } else {
                        false
                    }
                } else {
                    false
                };
                if !ok {
                    return vec![];
                }
                if tr == 0 || tr == 7 {
                    return ['n', 'b', 'r', 'q']
                        .iter()
                        .map(|&k| {
                            let mut promoted = after;
                            promoted[to] = Some(Man { white: self.white, kind: k });
                            (Some(k), promoted)
                        })
                        .collect();
                }
                vec![(None, after)]
            }
            'k' if (tf - ff).abs() == 2 => {
                if !self.castles(from, to) {
                    return vec![];
                }
                let (rook_from, rook_to) = if tf == 6 { (7, 5) } else { (0, 3) };
                after[idx(rook_to, fr)] = after[idx(rook_from, fr)].take();
                vec![(None, after)]
            }
            _ if Self::hits(&self.board, from, to) => vec![(None, after)],
            _ => vec![],
        }
    }

    pub fn legal_uci(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for from in 0..64 {
            for to in 0..64 {
                for (promo, after) in self.try_move(from, to) {
                    if !Self::attacked(&after, Self::king(&after, self.white), !self.white) {
                        let suffix = promo.map(String::from).unwrap_or_default();
                        out.insert(format!("{}{}{}", name(from), name(to), suffix));
                    }
                }
            }
        }
        out
    }
}
