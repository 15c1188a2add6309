use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use strlearn::structures::centroid_decompose;
use strlearn::universal::Compressor;
use strlearn::{
    compressor_from_reconstructor, discover_alphabet, generate, lz77, measure, Algorithm, Family,
    IdentityBits, Oracle, QueryCounter, RleBits, SuffixTree, Text,
};
use strlearn_cli::{
    emit_csv, reference_lines, run_experiments, run_one, run_universal, ExperimentRow, Sweep,
};

#[derive(Parser)]
#[command(
    name = "strlearn",
    version,
    about = "Reconstruct hidden strings from membership queries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print run count and LZ77 phrase counts of a string.
    Measure {
        #[command(flatten)]
        input: Input,
        /// Also print both factorizations.
        #[arg(long)]
        parses: bool,
    },
    /// Reconstruct a string and print one CSV row.
    Reconstruct {
        #[arg(long, value_parser = parse_algo)]
        algo: Algorithm,
        #[command(flatten)]
        input: Input,
        /// Learn sigma with single-symbol queries (on a separate oracle)
        /// instead of taking it from the input.
        #[arg(long)]
        discover: bool,
    },
    /// Run the compressor-driven algorithm on binary strings of length n.
    Universal {
        #[arg(long, value_enum)]
        compressor: CompressorArg,
        #[arg(long)]
        n: usize,
        /// Hidden string as 0/1 characters; every string of length n if absent.
        #[arg(long)]
        hidden: Option<String>,
    },
    /// Run a sweep described by a key=value file and print CSV.
    Bench {
        #[arg(long)]
        sweep: PathBuf,
    },
    /// Print the suffix tree and its centroid decomposition.
    Dump {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Args)]
struct Input {
    /// Raw byte file; bytes are mapped to symbols by first occurrence.
    file: Option<PathBuf>,
    /// Literal string of ASCII letters (a = 1, b = 2, ...).
    #[arg(long, conflicts_with = "file")]
    text: Option<String>,
    /// Generate the string from a family instead.
    #[arg(long, conflicts_with_all = ["file", "text"], value_parser = parse_family)]
    family: Option<Family>,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    sigma: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum CompressorArg {
    Identity,
    RleBits,
    Naive,
    Rle,
    LzPrefix,
    LzSubstring,
}

fn parse_algo(s: &str) -> Result<Algorithm, String> {
    s.parse()
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: strlearn::Error| e.to_string())
}

impl Input {
    fn load(&self) -> Result<(String, Text)> {
        if let Some(path) = &self.file {
            let bytes =
                std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
            return Ok(("file".into(), Text::from_bytes_dense(&bytes)));
        }
        if let Some(text) = &self.text {
            return Ok(("text".into(), Text::from_letters(text)?));
        }
        let family = self.family.unwrap_or(Family::Random);
        Ok((
            family.to_string(),
            generate(family, self.n, self.sigma, self.seed)?,
        ))
    }
}

fn compressor(arg: CompressorArg) -> Box<dyn Compressor> {
    match arg {
        CompressorArg::Identity => Box::new(IdentityBits),
        CompressorArg::RleBits => Box::new(RleBits),
        CompressorArg::Naive => Box::new(compressor_from_reconstructor(Algorithm::Naive, 2)),
        CompressorArg::Rle => Box::new(compressor_from_reconstructor(Algorithm::Rle, 2)),
        CompressorArg::LzPrefix => Box::new(compressor_from_reconstructor(Algorithm::LzPrefix, 2)),
        CompressorArg::LzSubstring => {
            Box::new(compressor_from_reconstructor(Algorithm::LzSubstring, 2))
        }
    }
}

fn finish(rows: &[ExperimentRow]) -> Result<ExitCode> {
    emit_csv(rows, io::stdout().lock())?;
    let failed = rows.iter().filter(|r| !r.passed()).count();
    if failed > 0 {
        eprintln!(
            "{failed} of {} rows inexact or over their bound",
            rows.len()
        );
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Measure { input, parses } => {
            let (_, text) = input.load()?;
            let m = measure(&text)?;
            println!("n = {}", m.n);
            println!("sigma = {}", m.sigma);
            println!("rle = {}", m.rle);
            println!("z = {}", m.z);
            println!("z_no = {}", m.z_no);
            if parses {
                println!("lz77 = {}", lz77(text.symbols(), true)?.render());
                println!(
                    "lz77_no_overlap = {}",
                    lz77(text.symbols(), false)?.render()
                );
            }
            for line in reference_lines(&m) {
                println!("# {line}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Reconstruct {
            algo,
            input,
            discover,
        } => {
            let (family, text) = input.load()?;
            let text = if discover {
                let mut probe = Oracle::new(text.clone())?;
                let sigma = discover_alphabet(&mut probe);
                eprintln!(
                    "discovered sigma = {sigma} with {} substring queries",
                    probe.stats().total_queries()
                );
                Text::new(text.into_symbols(), sigma)
                    .context("input uses symbols beyond the discovered alphabet")?
            } else {
                text
            };
            let row = run_one(algo, &family, &text)?;
            for line in reference_lines(&measure(&text)?) {
                eprintln!("{line}");
            }
            finish(&[row])
        }
        Command::Universal {
            compressor: arg,
            n,
            hidden,
        } => {
            let c = compressor(arg);
            let rows = match hidden {
                Some(bits) => {
                    let text = Text::from_bits(&bits)?;
                    if text.len() != n {
                        bail!("--hidden has length {}, expected {n}", text.len());
                    }
                    vec![run_universal(c.as_ref(), "given", &text)?]
                }
                None => {
                    if n == 0 || n > strlearn::universal::DEFAULT_CAP {
                        bail!("n must be in 1..={}", strlearn::universal::DEFAULT_CAP);
                    }
                    (0..1u32 << n)
                        .map(|code| {
                            let s = Text::new(
                                (0..n).rev().map(|i| 1 + ((code >> i) & 1)).collect(),
                                2,
                            )?;
                            run_universal(c.as_ref(), "all", &s)
                        })
                        .collect::<Result<_>>()?
                }
            };
            finish(&rows)
        }
        Command::Bench { sweep } => {
            let spec = std::fs::read_to_string(&sweep)
                .with_context(|| format!("reading {}", sweep.display()))?;
            let sweep: Sweep = spec.parse()?;
            let rows = run_experiments(&sweep)?;
            finish(&rows)
        }
        Command::Dump { input } => {
            let (_, text) = input.load()?;
            let st = SuffixTree::from_symbols(text.sigma(), text.symbols())?;
            println!("suffix tree ({} nodes)", st.node_count());
            print!("{}", st.dump());
            let ct = centroid_decompose(&st);
            println!("centroid decomposition (height {})", ct.height());
            print!("{}", ct.dump(&st));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
