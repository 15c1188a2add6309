//! Input fixtures shared by the criterion benches.

use strlearn::{generate, Family, Text};

/// Named inputs of length `n`: random over two and sixteen letters, plus
/// the highly repetitive families.
pub fn fixtures(n: usize) -> Vec<(&'static str, Text)> {
    let make = |family, sigma| generate(family, n, sigma, 7).expect("valid fixture");
    vec![
        ("random-2", make(Family::Random, 2)),
        ("random-16", make(Family::Random, 16)),
        ("fibonacci", make(Family::Fibonacci, 2)),
        ("runs", make(Family::Runs(8), 4)),
    ]
}
