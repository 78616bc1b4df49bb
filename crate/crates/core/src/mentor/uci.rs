use std::collections::VecDeque;
use std::io::{BufRead, BufReader, Write};
use std::process::{Child, ChildStdin, Command, Stdio};
use std::sync::mpsc::{self, Receiver, RecvTimeoutError};
use std::thread;
use std::time::{Duration, Instant};

use crate::arena::{search, SearchConfig, SearchError, MATE};
use crate::chess::Position;
use crate::eval::EvalParams;

use super::{MentorError, SCORE_CLAMP};

const TRANSCRIPT_LINES: usize = 24;

/// A UCI engine running as a child process.
pub struct UciEngine {
    child: Child,
    stdin: ChildStdin,
    lines: Receiver<String>,
    transcript: VecDeque<String>,
    timeout: Duration,
    ready: bool,
}

impl UciEngine {
    /// Starts `command` (split with shell quoting rules). `timeout` bounds the
    /// wait for every expected reply.
    pub fn spawn(command: &str, timeout: Duration) -> Result<UciEngine, MentorError> {
        let argv = shlex::split(command).filter(|a| !a.is_empty()).ok_or_else(|| {
            MentorError::Config(format!("cannot split engine command `{command}`"))
        })?;
        let mut child = Command::new(&argv[0])
            .args(&argv[1..])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|source| MentorError::Spawn {
                command: command.to_string(),
                source,
            })?;
        let stdin = child.stdin.take().expect("piped stdin");
        let stdout = child.stdout.take().expect("piped stdout");
        let (tx, rx) = mpsc::channel();
        thread::spawn(move || {
            for line in BufReader::new(stdout).lines() {
                let Ok(line) = line else { break };
                if tx.send(line).is_err() {
                    break;
                }
            }
        });
        Ok(UciEngine {
            child,
            stdin,
            lines: rx,
            transcript: VecDeque::new(),
            timeout,
            ready: false,
        })
    }

    fn log(&mut self, entry: String) {
        if self.transcript.len() == TRANSCRIPT_LINES {
            self.transcript.pop_front();
        }
        self.transcript.push_back(entry);
    }

    /// The most recent lines exchanged, prefixed `>` (sent) or `<` (received).
    pub fn transcript(&self) -> String {
        self.transcript.iter().cloned().collect::<Vec<_>>().join("\n")
    }

    fn send(&mut self, cmd: &str) -> Result<(), MentorError> {
        self.log(format!("> {cmd}"));
        if writeln!(self.stdin, "{cmd}").and_then(|_| self.stdin.flush()).is_err() {
            return Err(MentorError::Crashed {
                transcript: self.transcript(),
            });
        }
        Ok(())
    }

    fn recv(&mut self, deadline: Instant) -> Result<String, MentorError> {
        let left = deadline.saturating_duration_since(Instant::now());
        match self.lines.recv_timeout(left) {
            Ok(line) => {
                self.log(format!("< {line}"));
                Ok(line)
            }
            Err(RecvTimeoutError::Timeout) => Err(MentorError::Timeout {
                transcript: self.transcript(),
            }),
            Err(RecvTimeoutError::Disconnected) => Err(MentorError::Crashed {
                transcript: self.transcript(),
            }),
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), MentorError> {
        let deadline = Instant::now() + self.timeout;
        loop {
            if self.recv(deadline)?.trim() == token {
                return Ok(());
            }
        }
    }

    /// `uci`/`uciok` then `isready`/`readyok`. Called once per process.
    pub fn handshake(&mut self) -> Result<(), MentorError> {
        if self.ready {
            return Ok(());
        }
        self.send("uci")?;
        self.expect("uciok")?;
        self.send("isready")?;
        self.expect("readyok")?;
        self.ready = true;
        Ok(())
    }

    /// Searches `fen` to `depth` and returns the last reported score before
    /// `bestmove`, from White's point of view and clamped to ±3000.
    pub fn score(&mut self, fen: &str, depth: u32) -> Result<i32, MentorError> {
        let black_to_move = fen.split_whitespace().nth(1) == Some("b");
        self.handshake()?;
        self.send("ucinewgame")?;
        self.send("isready")?;
        self.expect("readyok")?;
        self.send(&format!("position fen {fen}"))?;
        self.send(&format!("go depth {depth}"))?;
        let deadline = Instant::now() + self.timeout;
        let mut last = None;
        loop {
            let line = self.recv(deadline)?;
            let mut words = line.split_whitespace();
            match words.next() {
                Some("info") => match parse_info_score(&line) {
                    Ok(Some(s)) => last = Some(s),
                    Ok(None) => {}
                    Err(()) => {
                        return Err(MentorError::Protocol {
                            reason: "unparseable score".into(),
                            line,
                            transcript: self.transcript(),
                        })
                    }
                },
                Some("bestmove") => {
                    let Some(score) = last else {
                        return Err(MentorError::Protocol {
                            reason: "no score before bestmove".into(),
                            line,
                            transcript: self.transcript(),
                        });
                    };
                    return Ok(if black_to_move { -score } else { score });
                }
                _ => {}
            }
        }
    }
}

impl Drop for UciEngine {
    fn drop(&mut self) {
        let _ = writeln!(self.stdin, "quit");
        let _ = self.stdin.flush();
        let deadline = Instant::now() + Duration::from_millis(200);
        while Instant::now() < deadline {
            if let Ok(Some(_)) = self.child.try_wait() {
                return;
            }
            thread::sleep(Duration::from_millis(5));
        }
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

/// Side-to-move relative score of an `info` line, clamped to ±3000.
/// `Ok(None)` when the line carries no score.
pub fn parse_info_score(line: &str) -> Result<Option<i32>, ()> {
    let words: Vec<&str> = line.split_whitespace().collect();
    let Some(i) = words.iter().position(|&w| w == "score") else {
        return Ok(None);
    };
    let (kind, value) = (words.get(i + 1).ok_or(())?, words.get(i + 2).ok_or(())?);
    let value: i64 = value.parse().map_err(|_| ())?;
    let clamp = i64::from(SCORE_CLAMP);
    match *kind {
        "cp" => Ok(Some(value.clamp(-clamp, clamp) as i32)),
        // mate 0 means the side to move is already mated
        "mate" => Ok(Some(if value > 0 { SCORE_CLAMP } else { -SCORE_CLAMP })),
        _ => Err(()),
    }
}

/// Handshakes with `engine` if needed and scores one position.
pub fn uci_handshake_and_score(engine: &mut UciEngine, fen: &str, depth: u32) -> Result<i32, MentorError> {
    engine.handshake()?;
    engine.score(fen, depth)
}

fn score_words(score: i32) -> String {
    if score.abs() > MATE - 1000 {
        let plies = MATE - score.abs();
        let moves = (plies + 1) / 2;
        format!("mate {}", if score > 0 { moves } else { -moves })
    } else {
        format!("cp {score}")
    }
}

/// Minimal UCI engine loop over `input`/`output` backed by the built-in search.
pub fn serve_uci<R: BufRead, W: Write>(input: R, mut output: W, params: &EvalParams, default_depth: u32) -> std::io::Result<()> {
    let mut pos = Position::startpos();
    for line in input.lines() {
        let line = line?;
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.first().copied() {
            Some("uci") => {
                writeln!(output, "id name mentor-tune {}", env!("CARGO_PKG_VERSION"))?;
                writeln!(output, "uciok")?;
            }
            Some("isready") => writeln!(output, "readyok")?,
            Some("ucinewgame") => pos = Position::startpos(),
            Some("position") => {
                if let Some(p) = parse_position_command(&words[1..]) {
                    pos = p;
                }
            }
            Some("go") => {
                let depth = words
                    .iter()
                    .position(|&w| w == "depth")
                    .and_then(|i| words.get(i + 1))
                    .and_then(|d| d.parse().ok())
                    .unwrap_or(default_depth)
                    .max(1);
                match search(&pos, params, SearchConfig::new(depth)) {
                    Ok(r) => {
                        writeln!(
                            output,
                            "info depth {depth} score {} nodes {} pv {}",
                            score_words(r.score),
                            r.nodes,
                            r.best.uci()
                        )?;
                        writeln!(output, "bestmove {}", r.best.uci())?;
                    }
                    Err(e) => {
                        let words = if e == SearchError::Checkmate { "mate 0" } else { "cp 0" };
                        writeln!(output, "info depth 0 score {words}")?;
                        writeln!(output, "bestmove 0000")?;
                    }
                }
            }
            Some("quit") => break,
            _ => {}
        }
        output.flush()?;
    }
    Ok(())
}

fn parse_position_command(words: &[&str]) -> Option<Position> {
    let (mut pos, rest) = match words.first().copied()? {
        "startpos" => (Position::startpos(), &words[1..]),
        "fen" => {
            let end = words.iter().position(|&w| w == "moves").unwrap_or(words.len());
            (Position::from_fen(&words[1..end].join(" ")).ok()?, &words[end..])
        }
        _ => return None,
    };
    if rest.first() == Some(&"moves") {
        for w in &rest[1..] {
            let m = pos.parse_uci_move(w)?;
            pos.make_move(m);
        }
    }
    Some(pos)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn info_score_forms() {
        assert_eq!(parse_info_score("info depth 2 score cp 35 nodes 9 pv e2e4"), Ok(Some(35)));
        assert_eq!(parse_info_score("info depth 9 score mate 3"), Ok(Some(3000)));
        assert_eq!(parse_info_score("info depth 9 score mate -2"), Ok(Some(-3000)));
        assert_eq!(parse_info_score("info depth 9 score cp 99999"), Ok(Some(3000)));
        assert_eq!(parse_info_score("info depth 4 score cp 12 lowerbound"), Ok(Some(12)));
        assert_eq!(parse_info_score("info string hello"), Ok(None));
        assert_eq!(parse_info_score("info score cp abc"), Err(()));
        assert_eq!(parse_info_score("info score wdl 1 2 3"), Err(()));
    }

    #[test]
    fn server_answers_protocol() {
        let input = "uci\nisready\nposition fen 6k1/5ppp/8/8/8/8/5PPP/R5K1 w - - 0 1\ngo depth 2\nposition startpos moves e2e4\ngo depth 1\nquit\n";
        let mut out = Vec::new();
        serve_uci(input.as_bytes(), &mut out, &EvalParams::material_only(), 2).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines.contains(&"uciok"));
        assert!(lines.contains(&"readyok"));
        assert!(text.contains("score mate 1 "), "{text}");
        assert!(lines.contains(&"bestmove a1a8"));
        assert_eq!(lines.iter().filter(|l| l.starts_with("bestmove")).count(), 2);
    }
}
