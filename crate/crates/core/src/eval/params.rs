use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Number of tunable evaluation parameters.
pub const PARAM_COUNT: usize = 35;

/// Number of material parameters at the front of the list.
pub const MATERIAL_COUNT: usize = 5;

pub const MATERIAL_MAX: u16 = 1023;
pub const POSITIONAL_MAX: u16 = 63;

/// Parameter names in layout order.
pub const PARAM_NAMES: [&str; PARAM_COUNT] = [
    "PAWN_VALUE",
    "KNIGHT_VALUE",
    "BISHOP_VALUE",
    "ROOK_VALUE",
    "QUEEN_VALUE",
    "PAWN_ADVANCE_A",
    "PAWN_ADVANCE_B",
    "PASSED_PAWN_MULT",
    "DOUBLED_PAWN_PENALTY",
    "ISOLATED_PAWN_PENALTY",
    "BACKWARD_PAWN_PENALTY",
    "WEAK_SQUARE_PENALTY",
    "PASSED_PAWN_ENEMY_KING_DIST",
    "KNIGHT_SQ_MULT",
    "KNIGHT_OUTPOST_MULT",
    "BISHOP_MOBILITY",
    "BISHOP_PAIR",
    "ROOK_ATTACK_KING_FILE",
    "ROOK_ATTACK_KING_ADJ_FILE",
    "ROOK_ATTACK_KING_ADJ_FILE_ABGH",
    "ROOK_7TH_RANK",
    "ROOK_CONNECTED",
    "ROOK_MOBILITY",
    "ROOK_BEHIND_PASSED_PAWN",
    "ROOK_OPEN_FILE",
    "ROOK_SEMI_OPEN_FILE",
    "ROOK_ATCK_WEAK_PAWN_OPEN_COLUMN",
    "ROOK_COLUMN_MULT",
    "QUEEN_MOBILITY",
    "KING_NO_FRIENDLY_PAWN",
    "KING_NO_FRIENDLY_PAWN_ADJ",
    "KING_FRIENDLY_PAWN_ADVANCED1",
    "KING_NO_ENEMY_PAWN",
    "KING_NO_ENEMY_PAWN_ADJ",
    "KING_PRESSURE_MULT",
];

/// Index of each parameter inside [`EvalParams`] and [`super::FeatureVector`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(usize)]
pub enum Param {
    PawnValue,
    KnightValue,
    BishopValue,
    RookValue,
    QueenValue,
    PawnAdvanceA,
    PawnAdvanceB,
    PassedPawnMult,
    DoubledPawnPenalty,
    IsolatedPawnPenalty,
    BackwardPawnPenalty,
    WeakSquarePenalty,
    PassedPawnEnemyKingDist,
    KnightSqMult,
    KnightOutpostMult,
    BishopMobility,
    BishopPair,
    RookAttackKingFile,
    RookAttackKingAdjFile,
    RookAttackKingAdjFileAbgh,
    Rook7thRank,
    RookConnected,
    RookMobility,
    RookBehindPassedPawn,
    RookOpenFile,
    RookSemiOpenFile,
    RookAtckWeakPawnOpenColumn,
    RookColumnMult,
    QueenMobility,
    KingNoFriendlyPawn,
    KingNoFriendlyPawnAdj,
    KingFriendlyPawnAdvanced1,
    KingNoEnemyPawn,
    KingNoEnemyPawnAdj,
    KingPressureMult,
}

/// `-1` for penalties, `+1` for bonuses. The king-shelter and open-line
/// parameters are penalties even though their names lack the word.
pub const PARAM_SIGNS: [i32; PARAM_COUNT] = {
    let mut signs = [1; PARAM_COUNT];
    signs[Param::DoubledPawnPenalty as usize] = -1;
    signs[Param::IsolatedPawnPenalty as usize] = -1;
    signs[Param::BackwardPawnPenalty as usize] = -1;
    signs[Param::WeakSquarePenalty as usize] = -1;
    signs[Param::KingNoFriendlyPawn as usize] = -1;
    signs[Param::KingNoFriendlyPawnAdj as usize] = -1;
    signs[Param::KingFriendlyPawnAdvanced1 as usize] = -1;
    signs[Param::KingNoEnemyPawn as usize] = -1;
    signs[Param::KingNoEnemyPawnAdj as usize] = -1;
    signs
};

/// Largest encodable value of parameter `index`.
pub const fn param_max(index: usize) -> u16 {
    if index < MATERIAL_COUNT {
        MATERIAL_MAX
    } else {
        POSITIONAL_MAX
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParamsError {
    #[error("{name} = {value} is out of range 0..={max}")]
    OutOfRange { name: &'static str, value: i64, max: u16 },
    #[error("line {line}: unknown parameter `{name}`")]
    UnknownName { line: usize, name: String },
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("parameter {0} missing")]
    Missing(&'static str),
    #[error("parameter {name} given twice (line {line})")]
    Duplicate { line: usize, name: &'static str },
}

/// The 35 evaluation weights, all non-negative integers.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct EvalParams([u16; PARAM_COUNT]);

impl EvalParams {
    pub const fn zero() -> EvalParams {
        EvalParams([0; PARAM_COUNT])
    }

    /// A well-tuned reference set; the default hidden parameters of the synthetic mentor.
    pub const fn reference() -> EvalParams {
        EvalParams([
            83, 322, 323, 478, 954, // material
            2, 4, 5, 21, 10, 3, 7, 5, // pawns
            7, 8, // knights
            5, 44, // bishops
            30, 1, 21, 32, 2, 2, 48, 12, 6, 7, 3, // rooks
            0, // queen
            27, 17, 12, 11, 3, 8, // king
        ])
    }

    /// Material values only; all positional terms zero.
    pub fn material_only() -> EvalParams {
        let mut p = EvalParams::zero();
        p.0[..MATERIAL_COUNT].copy_from_slice(&Self::reference().0[..MATERIAL_COUNT]);
        p
    }

    /// Builds from raw values, checking every range.
    pub fn new(values: [u16; PARAM_COUNT]) -> Result<EvalParams, ParamsError> {
        let p = EvalParams(values);
        p.check()?;
        Ok(p)
    }

    pub fn check(&self) -> Result<(), ParamsError> {
        for (i, &v) in self.0.iter().enumerate() {
            if v > param_max(i) {
                return Err(ParamsError::OutOfRange {
                    name: PARAM_NAMES[i],
                    value: v as i64,
                    max: param_max(i),
                });
            }
        }
        Ok(())
    }

    #[inline]
    pub fn get(&self, p: Param) -> u16 {
        self.0[p as usize]
    }

    /// Sets a value without range checking; `encode` and `check` report violations.
    pub fn set(&mut self, p: Param, value: u16) {
        self.0[p as usize] = value;
    }

    pub fn values(&self) -> &[u16; PARAM_COUNT] {
        &self.0
    }

    pub fn values_mut(&mut self) -> &mut [u16; PARAM_COUNT] {
        &mut self.0
    }

    pub fn by_name(&self, name: &str) -> Option<u16> {
        PARAM_NAMES.iter().position(|n| *n == name).map(|i| self.0[i])
    }

    /// Signed weight applied to each feature.
    pub fn signed_weights(&self) -> [i32; PARAM_COUNT] {
        std::array::from_fn(|i| PARAM_SIGNS[i] * self.0[i] as i32)
    }

    /// `NAME=value` lines in layout order.
    pub fn to_kv_text(&self) -> String {
        let mut out = String::new();
        for (name, v) in PARAM_NAMES.iter().zip(self.0) {
            out.push_str(&format!("{name}={v}\n"));
        }
        out
    }

    /// Parses `NAME=value` lines; blank lines and `#` comments are ignored.
    /// Every parameter must appear exactly once.
    pub fn from_kv_text(text: &str) -> Result<EvalParams, ParamsError> {
        let mut values = [None::<u16>; PARAM_COUNT];
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .or_else(|| line.split_once(char::is_whitespace))
                .ok_or_else(|| ParamsError::Syntax {
                    line: line_no,
                    reason: format!("expected NAME=value, got `{line}`"),
                })?;
            let key = key.trim();
            let idx = PARAM_NAMES
                .iter()
                .position(|n| *n == key)
                .ok_or_else(|| ParamsError::UnknownName {
                    line: line_no,
                    name: key.to_string(),
                })?;
            let v: i64 = value.trim().parse().map_err(|_| ParamsError::Syntax {
                line: line_no,
                reason: format!("`{}` is not an integer", value.trim()),
            })?;
            if v < 0 || v > param_max(idx) as i64 {
                return Err(ParamsError::OutOfRange {
                    name: PARAM_NAMES[idx],
                    value: v,
                    max: param_max(idx),
                });
            }
            if values[idx].replace(v as u16).is_some() {
                return Err(ParamsError::Duplicate {
                    line: line_no,
                    name: PARAM_NAMES[idx],
                });
            }
        }
        let mut out = [0u16; PARAM_COUNT];
        for (i, v) in values.iter().enumerate() {
            out[i] = v.ok_or(ParamsError::Missing(PARAM_NAMES[i]))?;
        }
        Ok(EvalParams(out))
    }
}

impl Default for EvalParams {
    fn default() -> Self {
        EvalParams::zero()
    }
}

impl fmt::Debug for EvalParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (name, v) in PARAM_NAMES.iter().zip(self.0) {
            m.entry(name, &v);
        }
        m.finish()
    }
}

impl Serialize for EvalParams {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(PARAM_COUNT))?;
        for (name, v) in PARAM_NAMES.iter().zip(self.0) {
            m.serialize_entry(name, &v)?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for EvalParams {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let map = BTreeMap::<String, i64>::deserialize(d)?;
        let text: String = map.iter().map(|(k, v)| format!("{k}={v}\n")).collect();
        EvalParams::from_kv_text(&text).map_err(serde::de::Error::custom)
    }
}

impl FromStr for EvalParams {
    type Err = ParamsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EvalParams::from_kv_text(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        let p = EvalParams::reference();
        p.check().unwrap();
        assert_eq!(p.get(Param::PawnValue), 83);
        assert_eq!(p.get(Param::KnightValue), 322);
        assert_eq!(p.get(Param::BishopValue), 323);
        assert_eq!(p.get(Param::RookValue), 478);
        assert_eq!(p.get(Param::QueenValue), 954);
        assert_eq!(p.get(Param::RookBehindPassedPawn), 48);
        assert_eq!(p.get(Param::QueenMobility), 0);
        assert_eq!(p.get(Param::KingPressureMult), 8);
        assert_eq!(p.by_name("BISHOP_PAIR"), Some(44));
        assert_eq!(p.by_name("ROOK_7TH_RANK"), Some(32));
    }

    #[test]
    fn enum_matches_names() {
        assert_eq!(PARAM_NAMES[Param::KingPressureMult as usize], "KING_PRESSURE_MULT");
        assert_eq!(PARAM_NAMES[Param::RookAtckWeakPawnOpenColumn as usize], "ROOK_ATCK_WEAK_PAWN_OPEN_COLUMN");
        assert_eq!(PARAM_NAMES[Param::QueenMobility as usize], "QUEEN_MOBILITY");
    }

    #[test]
    fn kv_round_trip() {
        let p = EvalParams::reference();
        assert_eq!(EvalParams::from_kv_text(&p.to_kv_text()).unwrap(), p);
    }

    #[test]
    fn kv_errors() {
        let text = EvalParams::reference().to_kv_text();
        let missing: String = text.lines().skip(1).map(|l| format!("{l}\n")).collect();
        assert_eq!(EvalParams::from_kv_text(&missing), Err(ParamsError::Missing("PAWN_VALUE")));
        let big = text.replace("QUEEN_VALUE=954", "QUEEN_VALUE=1024");
        assert!(matches!(
            EvalParams::from_kv_text(&big),
            Err(ParamsError::OutOfRange { name: "QUEEN_VALUE", .. })
        ));
        let unknown = format!("{text}FOO=1\n");
        assert!(matches!(EvalParams::from_kv_text(&unknown), Err(ParamsError::UnknownName { .. })));
        let dup = format!("{text}PAWN_VALUE=1\n");
        assert!(matches!(EvalParams::from_kv_text(&dup), Err(ParamsError::Duplicate { .. })));
    }

    #[test]
    fn accepts_whitespace_separated_table() {
        let text: String = EvalParams::reference()
            .to_kv_text()
            .lines()
            .map(|l| format!("     {}\n", l.replace('=', "      ")))
            .collect();
        assert_eq!(EvalParams::from_kv_text(&text).unwrap(), EvalParams::reference());
    }

    #[test]
    fn positional_range_enforced() {
        let mut v = [0u16; PARAM_COUNT];
        v[5] = 64;
        assert!(EvalParams::new(v).is_err());
        v[5] = 63;
        v[4] = 1023;
        assert!(EvalParams::new(v).is_ok());
    }

    #[test]
    fn json_round_trip_checks_ranges() {
        let p = EvalParams::reference();
        let json = serde_json::to_string(&p).unwrap();
        assert!(json.starts_with("{\"PAWN_VALUE\":83,"), "{json}");
        assert_eq!(serde_json::from_str::<EvalParams>(&json).unwrap(), p);
        let bad = json.replace("\"PAWN_VALUE\":83", "\"PAWN_VALUE\":1024");
        assert!(serde_json::from_str::<EvalParams>(&bad).is_err());
    }
}
