use crate::error::{Error, Result};
use crate::oracle::{Oracle, RecordingOracle, ReplayOracle};
use crate::reconstruct::Algorithm;
use crate::text::{Symbol, Text};

/// An injective map from strings to bit strings, with its inverse.
pub trait Compressor {
    fn name(&self) -> String;
    fn compress(&self, s: &Text) -> Result<Vec<bool>>;
    fn decompress(&self, code: &[bool]) -> Result<Text>;
}

impl<C: Compressor + ?Sized> Compressor for &C {
    fn name(&self) -> String {
        (**self).name()
    }

    fn compress(&self, s: &Text) -> Result<Vec<bool>> {
        (**self).compress(s)
    }

    fn decompress(&self, code: &[bool]) -> Result<Text> {
        (**self).decompress(code)
    }
}

fn binary_bits(s: &Text) -> Result<impl Iterator<Item = bool> + '_> {
    if s.symbols().iter().any(|&c| c > 2) {
        return Err(Error::NotBinary);
    }
    Ok(s.symbols().iter().map(|&c| c == 2))
}

fn from_bits(bits: impl IntoIterator<Item = bool>) -> Result<Text> {
    Text::new(bits.into_iter().map(|b| 1 + Symbol::from(b)).collect(), 2)
}

/// One bit per symbol: the incompressible baseline.
#[derive(Clone, Copy, Debug, Default)]
pub struct IdentityBits;

impl Compressor for IdentityBits {
    fn name(&self) -> String {
        "identity".into()
    }

    fn compress(&self, s: &Text) -> Result<Vec<bool>> {
        Ok(binary_bits(s)?.collect())
    }

    fn decompress(&self, code: &[bool]) -> Result<Text> {
        from_bits(code.iter().copied())
    }
}

/// The first symbol as one bit, then every run length in Elias gamma code.
#[derive(Clone, Copy, Debug, Default)]
pub struct RleBits;

fn push_gamma(out: &mut Vec<bool>, x: usize) {
    let width = x.ilog2();
    out.extend(std::iter::repeat_n(false, width as usize));
    out.extend((0..=width).rev().map(|i| (x >> i) & 1 == 1));
}

impl Compressor for RleBits {
    fn name(&self) -> String {
        "rle-bits".into()
    }

    fn compress(&self, s: &Text) -> Result<Vec<bool>> {
        let bits: Vec<bool> = binary_bits(s)?.collect();
        let Some(&first) = bits.first() else {
            return Err(Error::EmptyText);
        };
        let mut out = vec![first];
        let mut run = 1;
        for w in bits.windows(2) {
            if w[0] == w[1] {
                run += 1;
            } else {
                push_gamma(&mut out, run);
                run = 1;
            }
        }
        push_gamma(&mut out, run);
        Ok(out)
    }

    fn decompress(&self, code: &[bool]) -> Result<Text> {
        let (&first, mut rest) = code
            .split_first()
            .ok_or(Error::MalformedCode("empty code"))?;
        if rest.is_empty() {
            return Err(Error::MalformedCode("no run lengths"));
        }
        let mut bit = first;
        let mut out = Vec::new();
        while !rest.is_empty() {
            let width = rest
                .iter()
                .position(|&b| b)
                .ok_or(Error::MalformedCode("unterminated run length"))?;
            if width >= usize::BITS as usize || rest.len() < 2 * width + 1 {
                return Err(Error::MalformedCode("truncated run length"));
            }
            let len = rest[width..=2 * width]
                .iter()
                .fold(0usize, |acc, &b| acc << 1 | usize::from(b));
            out.extend(std::iter::repeat_n(bit, len));
            bit = !bit;
            rest = &rest[2 * width + 1..];
        }
        from_bits(out)
    }
}

/// Turns a deterministic reconstructor into a compressor: the code of `S` is
/// the sequence of oracle answers observed while reconstructing `S`, and
/// decoding replays the reconstructor against those answers.
#[derive(Clone, Copy, Debug)]
pub struct ReconstructorCompressor {
    algorithm: Algorithm,
    sigma: u32,
}

pub fn compressor_from_reconstructor(algorithm: Algorithm, sigma: u32) -> ReconstructorCompressor {
    ReconstructorCompressor { algorithm, sigma }
}

impl ReconstructorCompressor {
    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }
}

impl Compressor for ReconstructorCompressor {
    fn name(&self) -> String {
        self.algorithm.name().to_string()
    }

    fn compress(&self, s: &Text) -> Result<Vec<bool>> {
        let hidden = Text::new(s.symbols().to_vec(), self.sigma)?;
        let mut oracle = RecordingOracle::new(Oracle::new(hidden)?);
        let report = self.algorithm.run(&mut oracle, self.sigma)?;
        if report.recovered.symbols() != s.symbols() {
            return Err(Error::RoundTrip);
        }
        Ok(oracle.into_parts().1)
    }

    fn decompress(&self, code: &[bool]) -> Result<Text> {
        let mut oracle = ReplayOracle::new(code);
        let report = self.algorithm.run(&mut oracle, self.sigma)?;
        if oracle.overrun() {
            return Err(Error::CodeExhausted);
        }
        if oracle.remaining() > 0 {
            return Err(Error::TrailingBits(oracle.remaining()));
        }
        if report.recovered.is_empty() {
            return Err(Error::MalformedCode("decodes to the empty string"));
        }
        Ok(report.recovered)
    }
}
