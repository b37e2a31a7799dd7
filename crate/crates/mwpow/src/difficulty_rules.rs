//! Per-round retargeting of the acceptance and entrance difficulties.

/// Result of a difficulty update; `clamped` marks a degenerate timestamp
/// interval that was clamped to one time unit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DifficultyUpdate {
    pub value: f64,
    pub clamped: bool,
}

/// Retarget the acceptance difficulty from the time the previous round
/// consumed: `AD_x = BI * AD_{x-1} / (ts_{x-1} - ts_{x-2})`.
pub fn update_acceptance_difficulty(
    prev_ad: f64,
    ts_prev_ms: u64,
    ts_prev_prev_ms: u64,
    block_interval_ms: u64,
) -> DifficultyUpdate {
    let elapsed = ts_prev_ms.saturating_sub(ts_prev_prev_ms);
    let (elapsed, clamped) = if elapsed == 0 { (1, true) } else { (elapsed, false) };
    DifficultyUpdate {
        value: block_interval_ms as f64 * prev_ad / elapsed as f64,
        clamped,
    }
}

/// Retarget the entrance difficulty from the number of blocks that
/// reached it last round: `ED_x = min((NE/DN) * ED_{x-1}, AD_x / 2)`.
/// A round where nothing reached the entrance difficulty halves it so the
/// game cannot deadlock.
pub fn update_entrance_difficulty(prev_ed: f64, ne_prev: u32, new_ad: f64, dn: f64) -> f64 {
    let factor = if ne_prev == 0 { 0.5 } else { ne_prev as f64 / dn };
    (factor * prev_ed).min(new_ad / 2.0)
}
