//! Logistic Elo mapping between rating difference and expected score.

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
#[error("winning rate {0} has no finite rating difference (must be strictly between 0 and 1)")]
pub struct UndefinedRating(pub f64);

/// Expected score of a player rated `rd` points above the opponent.
pub fn elo_expected_score(rd: f64) -> f64 {
    1.0 / (10f64.powf(-rd / 400.0) + 1.0)
}

/// Rating difference implied by a winning rate `w` in (0, 1).
pub fn elo_diff(w: f64) -> Result<f64, UndefinedRating> {
    if !(w > 0.0 && w < 1.0) {
        return Err(UndefinedRating(w));
    }
    Ok(400.0 * (w / (1.0 - w)).log10())
}
