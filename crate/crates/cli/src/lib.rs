//! Experiment harness: sweeps, per-run rows and CSV output.

use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use strlearn::universal::{reconstruct_universal, Compressor};
use strlearn::{generate, measure, Algorithm, Family, MeasureReport, Oracle, QueryCounter, Text};

pub const CSV_HEADER: &str =
    "algo,family,n,sigma,rle,z,z_no,phrases,sub_q,pre_q,sym_total,ms,exact,bound_ok";

/// One reconstruction run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub algo: String,
    pub family: String,
    pub n: usize,
    pub sigma: u32,
    pub rle: usize,
    pub z: usize,
    pub z_no: usize,
    /// Phrases for LZ runs, runs or symbols for rle/naive, splitter queries
    /// for universal runs.
    pub phrases: usize,
    pub sub_q: u64,
    pub pre_q: u64,
    pub sym_total: u64,
    pub ms: u64,
    #[serde(with = "flag")]
    pub exact: bool,
    #[serde(with = "flag")]
    pub bound_ok: bool,
}

mod flag {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &bool, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(u8::from(*v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<bool, D::Error> {
        match u8::deserialize(d)? {
            0 => Ok(false),
            1 => Ok(true),
            other => Err(D::Error::custom(format!("expected 0 or 1, got {other}"))),
        }
    }
}

impl ExperimentRow {
    pub fn passed(&self) -> bool {
        self.exact && self.bound_ok
    }
}

/// Runs `algo` on a fresh oracle for `hidden`.
pub fn run_one(algo: Algorithm, family: &str, hidden: &Text) -> Result<ExperimentRow> {
    let m = measure(hidden)?;
    let started = Instant::now();
    let mut oracle = Oracle::new(hidden.clone())?;
    let report = algo.run(&mut oracle, hidden.sigma())?;
    let ms = started.elapsed().as_millis() as u64;
    let stats = oracle.stats();
    Ok(ExperimentRow {
        algo: algo.name().to_string(),
        family: family.to_string(),
        n: m.n,
        sigma: m.sigma,
        rle: m.rle,
        z: m.z,
        z_no: m.z_no,
        phrases: report.units(),
        sub_q: stats.substring_queries,
        pre_q: stats.prefix_queries,
        sym_total: stats.total_queried_symbols,
        ms,
        exact: report.recovered == *hidden,
        bound_ok: report.within_bound(m.rle),
    })
}

/// Runs the universal algorithm on a binary `hidden`; the bound is
/// `15 |C(S)| + 25` substring queries.
pub fn run_universal(c: &dyn Compressor, family: &str, hidden: &Text) -> Result<ExperimentRow> {
    let m = measure(hidden)?;
    let code = c.compress(hidden)?.len();
    let started = Instant::now();
    let mut oracle = Oracle::new(hidden.clone())?;
    let report = reconstruct_universal(&mut oracle, hidden.len(), c)?;
    let ms = started.elapsed().as_millis() as u64;
    let stats = oracle.stats();
    Ok(ExperimentRow {
        algo: format!("universal:{}", c.name()),
        family: family.to_string(),
        n: m.n,
        sigma: m.sigma,
        rle: m.rle,
        z: m.z,
        z_no: m.z_no,
        phrases: report.splits().count(),
        sub_q: stats.substring_queries,
        pre_q: stats.prefix_queries,
        sym_total: stats.total_queried_symbols,
        ms,
        exact: report.recovered == *hidden,
        bound_ok: stats.substring_queries as usize <= 15 * code + 25,
    })
}

/// Reference values printed next to a run; never checked.
pub fn reference_lines(m: &MeasureReport) -> Vec<String> {
    vec![
        format!(
            "worst-case lower bound sigma*n/4 = {:.0}",
            m.worst_case_lower_bound()
        ),
        format!(
            "lz lower-bound shape sigma*z_no*log_sigma(n) = {:.0}",
            m.lz_lower_bound_shape()
        ),
        format!(
            "grammar size reference z_no*log2(n/z_no) = {:.1}",
            m.grammar_bound()
        ),
        format!("z_no / (z log2 n) = {:.3}", m.z_no_ratio()),
    ]
}

/// A grid of runs: every algorithm on every (family, n, sigma, seed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sweep {
    pub algos: Vec<Algorithm>,
    pub families: Vec<Family>,
    pub n: Vec<usize>,
    pub sigma: Vec<u32>,
    pub seeds: Vec<u64>,
}

impl Default for Sweep {
    fn default() -> Self {
        Self {
            algos: Algorithm::ALL.to_vec(),
            families: vec![Family::Random],
            n: vec![1_000],
            sigma: vec![2],
            seeds: vec![0],
        }
    }
}

fn list<T>(value: &str, parse: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(parse)
        .collect()
}

fn numbers<T: FromStr>(value: &str) -> Result<Vec<T>>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    list(value, |s| {
        s.parse::<T>().with_context(|| format!("bad number `{s}`"))
    })
}

impl FromStr for Sweep {
    type Err = anyhow::Error;

    /// Line-oriented `key = value` pairs; values are comma-separated lists.
    /// Keys: `algos`, `families`, `n`, `sigma`, `seeds` (a list, or `a..b`).
    /// `#` starts a comment. Missing keys keep their defaults.
    fn from_str(spec: &str) -> Result<Self> {
        let mut sweep = Sweep::default();
        for (i, raw) in spec.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .with_context(|| format!("line {}: expected key=value", i + 1))?;
            let value = value.trim();
            let at = || format!("line {}", i + 1);
            match key.trim() {
                "algos" => {
                    sweep.algos = list(value, |s| {
                        s.parse::<Algorithm>().map_err(anyhow::Error::msg)
                    })
                    .with_context(at)?
                }
                "families" => {
                    sweep.families = list(value, |s| Ok(s.parse::<Family>()?)).with_context(at)?
                }
                "n" => sweep.n = numbers(value).with_context(at)?,
                "sigma" => sweep.sigma = numbers(value).with_context(at)?,
                "seeds" => {
                    sweep.seeds = match value.split_once("..") {
                        Some((a, b)) => {
                            let a: u64 = a.trim().parse().with_context(at)?;
                            let b: u64 = b.trim().parse().with_context(at)?;
                            (a..b).collect()
                        }
                        None => numbers(value).with_context(at)?,
                    }
                }
                other => bail!("line {}: unknown key `{other}`", i + 1),
            }
        }
        if sweep.algos.is_empty()
            || sweep.families.is_empty()
            || sweep.n.is_empty()
            || sweep.sigma.is_empty()
            || sweep.seeds.is_empty()
        {
            bail!("every sweep dimension needs at least one value");
        }
        Ok(sweep)
    }
}

/// Runs the sweep in order. Stops at the first inexact reconstruction.
pub fn run_experiments(sweep: &Sweep) -> Result<Vec<ExperimentRow>> {
    let mut rows = Vec::new();
    for &family in &sweep.families {
        for &n in &sweep.n {
            for &sigma in &sweep.sigma {
                for &seed in &sweep.seeds {
                    let hidden = generate(family, n, sigma, seed)
                        .with_context(|| format!("generating {family} n={n} sigma={sigma}"))?;
                    for &algo in &sweep.algos {
                        let row = run_one(algo, &family.to_string(), &hidden)?;
                        if !row.exact {
                            bail!(
                                "{algo} failed to reconstruct {family} n={n} sigma={sigma} seed={seed}"
                            );
                        }
                        rows.push(row);
                    }
                }
            }
        }
    }
    Ok(rows)
}

pub fn emit_csv<W: Write>(rows: &[ExperimentRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn parse_csv(data: &str) -> Result<Vec<ExperimentRow>> {
    let mut r = csv::Reader::from_reader(data.as_bytes());
    let header: Vec<String> = r.headers()?.iter().map(String::from).collect();
    if header.join(",") != CSV_HEADER {
        bail!("unexpected header `{}`", header.join(","));
    }
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}
