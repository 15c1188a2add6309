use crate::oracle::SubstringOracle;

/// Largest `x` in `[start, limit]` with `ok(x)`, for a predicate that holds
/// on a prefix of the integers and is known to hold at `start`.
///
/// Probes `2·start, 4·start, ...` until the first failure (or the limit),
/// then binary-searches the last bracket. For `start = 1` and answer `l`
/// this asks at most `2·ceil(log2 l) + 2` questions.
pub fn gallop(start: usize, limit: Option<usize>, mut ok: impl FnMut(usize) -> bool) -> usize {
    let limit = limit.unwrap_or(usize::MAX);
    let mut lo = start;
    if limit <= lo {
        return lo;
    }
    let mut x = lo.max(1).saturating_mul(2);
    let mut hi = loop {
        let probe = x.min(limit);
        if ok(probe) {
            lo = probe;
            if probe == limit {
                return lo;
            }
            x = x.saturating_mul(2);
        } else {
            break probe;
        }
    };
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Largest symbol occurring in the hidden string, found with single-symbol
/// substring queries.
///
/// Assumes every symbol `1..=sigma` occurs; otherwise the result may be an
/// underestimate. Symbol 1 is taken as present without asking.
pub fn discover_alphabet<O: SubstringOracle + ?Sized>(oracle: &mut O) -> u32 {
    let sigma = gallop(1, Some(u32::MAX as usize), |c| {
        oracle.contains_substring(&[c as u32])
    });
    sigma as u32
}
