//! Deterministic generators for test strings.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::text::{Symbol, Text};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Uniform symbols.
    Random,
    /// `a^n`.
    Unary,
    /// A random block of length `max(sigma, 2)` repeated.
    Periodic,
    /// Prefix of the Fibonacci word `abaababaabaab...`.
    Fibonacci,
    /// Prefix of the Thue-Morse sequence `abbabaab...`.
    ThueMorse,
    /// Runs of uniform length in `1..=k`, each with a new symbol.
    Runs(usize),
    /// `r` random symbols followed by copies of random earlier substrings.
    CopyPaste(usize),
}

impl Family {
    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Random => f.write_str("random"),
            Family::Unary => f.write_str("unary"),
            Family::Periodic => f.write_str("periodic"),
            Family::Fibonacci => f.write_str("fibonacci"),
            Family::ThueMorse => f.write_str("thue-morse"),
            Family::Runs(k) => write!(f, "runs({k})"),
            Family::CopyPaste(r) => write!(f, "copy-paste({r})"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts the names printed by `Display`; `runs` and `copy-paste` also
    /// accept `name:k` and default to `k = 8` without a parameter.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, param) = match s.find(['(', ':']) {
            Some(i) => {
                let rest = s[i + 1..].trim_end_matches(')');
                let k = rest
                    .parse::<usize>()
                    .map_err(|_| Error::FamilyParameter(format!("`{rest}` in `{s}`")))?;
                (&s[..i], Some(k))
            }
            None => (s, None),
        };
        let plain = |f: Family| match param {
            None => Ok(f),
            Some(_) => Err(Error::FamilyParameter(format!(
                "`{name}` takes no parameter"
            ))),
        };
        match name {
            "random" => plain(Family::Random),
            "unary" => plain(Family::Unary),
            "periodic" => plain(Family::Periodic),
            "fibonacci" => plain(Family::Fibonacci),
            "thue-morse" => plain(Family::ThueMorse),
            "runs" => Ok(Family::Runs(param.unwrap_or(8))),
            "copy-paste" => Ok(Family::CopyPaste(param.unwrap_or(8))),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

/// A string of length `n` over `[1..sigma]` from `family`. The same
/// arguments always give the same string.
pub fn generate(family: Family, n: usize, sigma: u32, seed: u64) -> Result<Text> {
    if n == 0 {
        return Err(Error::EmptyText);
    }
    if sigma == 0 {
        return Err(Error::EmptyAlphabet);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let needs_binary = |what: &str| {
        if sigma < 2 {
            Err(Error::FamilyParameter(format!("{what} needs sigma >= 2")))
        } else {
            Ok(())
        }
    };
    let symbols: Vec<Symbol> = match family {
        Family::Random => (0..n).map(|_| rng.gen_range(1..=sigma)).collect(),
        Family::Unary => vec![1; n],
        Family::Periodic => {
            let p = (sigma.max(2) as usize).min(n);
            let block: Vec<Symbol> = (0..p).map(|_| rng.gen_range(1..=sigma)).collect();
            block.iter().copied().cycle().take(n).collect()
        }
        Family::Fibonacci => {
            needs_binary("fibonacci")?;
            let (mut prev, mut cur) = (vec![1], vec![1, 2]);
            while cur.len() < n {
                let next = [cur.as_slice(), prev.as_slice()].concat();
                prev = std::mem::replace(&mut cur, next);
            }
            cur.truncate(n);
            cur
        }
        Family::ThueMorse => {
            needs_binary("thue-morse")?;
            (0..n).map(|i| 1 + (i.count_ones() % 2)).collect()
        }
        Family::Runs(k) => {
            if k == 0 {
                return Err(Error::FamilyParameter("runs needs k >= 1".into()));
            }
            let mut out = Vec::with_capacity(n);
            let mut last = 0;
            while out.len() < n {
                let mut c = rng.gen_range(1..=sigma);
                if sigma > 1 {
                    while c == last {
                        c = rng.gen_range(1..=sigma);
                    }
                }
                let len = rng.gen_range(1..=k).min(n - out.len());
                out.extend(std::iter::repeat_n(c, len));
                last = c;
            }
            out
        }
        Family::CopyPaste(r) => {
            if r == 0 {
                return Err(Error::FamilyParameter("copy-paste needs r >= 1".into()));
            }
            let mut out: Vec<Symbol> = (0..r.min(n)).map(|_| rng.gen_range(1..=sigma)).collect();
            while out.len() < n {
                let len = rng.gen_range(1..=out.len()).min(n - out.len());
                let src = rng.gen_range(0..=out.len() - len);
                out.extend_from_within(src..src + len);
            }
            out
        }
    };
    Text::new(symbols, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::measure;

    #[test]
    fn unary_example() {
        assert_eq!(
            generate(Family::Unary, 5, 1, 0).unwrap().to_letters(),
            "aaaaa"
        );
    }

    #[test]
    fn fibonacci_prefix() {
        let t = generate(Family::Fibonacci, 8, 2, 0).unwrap();
        assert_eq!(t.to_letters(), "abaababa");
        // Recurrence check: F(k) = F(k-1) F(k-2).
        let long = generate(Family::Fibonacci, 55, 2, 0).unwrap();
        let f8 = &long.symbols()[..21];
        let f7 = &long.symbols()[..13];
        let f6 = &long.symbols()[..8];
        assert_eq!(f8, [f7, f6].concat());
    }

    #[test]
    fn thue_morse_prefix() {
        assert_eq!(
            generate(Family::ThueMorse, 8, 2, 0).unwrap().to_letters(),
            "abbabaab"
        );
    }

    #[test]
    fn generators_are_deterministic() {
        for family in [
            Family::Random,
            Family::Periodic,
            Family::Runs(5),
            Family::CopyPaste(4),
        ] {
            let a = generate(family, 100, 4, 7).unwrap();
            let b = generate(family, 100, 4, 7).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.len(), 100);
            assert!(a.symbols().iter().all(|&c| (1..=4).contains(&c)));
        }
        assert_ne!(
            generate(Family::Random, 100, 4, 7).unwrap(),
            generate(Family::Random, 100, 4, 8).unwrap()
        );
    }

    #[test]
    fn structured_families_are_compressible() {
        let runs = measure(&generate(Family::Runs(50), 10_000, 4, 1).unwrap()).unwrap();
        assert!(runs.rle < 1_000);
        let cp = measure(&generate(Family::CopyPaste(8), 10_000, 4, 1).unwrap()).unwrap();
        assert!(cp.z < 200, "z = {}", cp.z);
    }

    #[test]
    fn parse_and_display() {
        for f in [
            Family::Random,
            Family::Unary,
            Family::Periodic,
            Family::Fibonacci,
            Family::ThueMorse,
            Family::Runs(3),
            Family::CopyPaste(12),
        ] {
            assert_eq!(f.to_string().parse::<Family>(), Ok(f));
        }
        assert_eq!("runs:4".parse::<Family>(), Ok(Family::Runs(4)));
        assert!(matches!(
            "zipf".parse::<Family>(),
            Err(Error::UnknownFamily(_))
        ));
        assert!(matches!(
            "unary(3)".parse::<Family>(),
            Err(Error::FamilyParameter(_))
        ));
    }

    #[test]
    fn invalid_arguments() {
        assert_eq!(generate(Family::Random, 0, 2, 0), Err(Error::EmptyText));
        assert_eq!(generate(Family::Random, 3, 0, 0), Err(Error::EmptyAlphabet));
        assert!(generate(Family::Fibonacci, 3, 1, 0).is_err());
    }
}
