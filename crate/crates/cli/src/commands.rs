use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use inplace_tft::{
    audited_call, fft_pow2_with, itft, multiply, tft, tft_with, Residue, RingConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff_file::{CoeffFile, RingOverrides};
use crate::error::CliError;

fn read(path: &Path) -> Result<CoeffFile, CliError> {
    let text = fs::read_to_string(path).map_err(|e| {
        CliError::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })?;
    CoeffFile::parse(&text)
}

fn transform_file(
    input: &Path,
    output: &Path,
    overrides: RingOverrides,
    op: fn(&mut [Residue], &RingConfig) -> inplace_tft::Result<()>,
) -> Result<(), CliError> {
    let file = read(input)?;
    let cfg = file.ring(overrides)?;
    let mut buf = file.residues(&cfg)?;
    op(&mut buf, &cfg)?;
    fs::write(output, file.with_coeffs(&cfg, overrides, &buf).render())?;
    Ok(())
}

pub fn cmd_tft(input: &Path, output: &Path, overrides: RingOverrides) -> Result<(), CliError> {
    transform_file(input, output, overrides, tft)
}

pub fn cmd_itft(input: &Path, output: &Path, overrides: RingOverrides) -> Result<(), CliError> {
    transform_file(input, output, overrides, itft)
}

pub fn cmd_multiply(
    lhs: &Path,
    rhs: &Path,
    output: &Path,
    overrides: RingOverrides,
) -> Result<(), CliError> {
    let (fa, fb) = (read(lhs)?, read(rhs)?);
    let cfg = fa.ring(overrides)?;
    let other = fb.ring(overrides)?;
    if cfg.modulus() != other.modulus() {
        return Err(CliError::Config(format!(
            "modulus mismatch: {} vs {}",
            cfg.modulus(),
            other.modulus()
        )));
    }
    let a = fa.residues(&cfg)?;
    let b = fb.residues(&cfg)?;
    let mut out = vec![Residue::ZERO; a.len() + b.len() - 1];
    multiply(&a, &b, &mut out, &cfg)?;
    fs::write(output, fa.with_coeffs(&cfg, overrides, &out).render())?;
    Ok(())
}

pub const BENCH_HEADER: &str = "n,mulcount_tft,mulcount_fft_padded,wall_ns_tft,wall_ns_multiply";

/// One CSV row of [`cmd_bench`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub n: usize,
    pub mulcount_tft: u64,
    pub mulcount_fft_padded: u64,
    pub wall_ns_tft: u128,
    pub wall_ns_multiply: u128,
}

impl BenchRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.n,
            self.mulcount_tft,
            self.mulcount_fft_padded,
            self.wall_ns_tft,
            self.wall_ns_multiply
        )
    }
}

/// Measures one length. Operation counts come from instrumented runs,
/// timings are the minimum over `trials` uninstrumented runs.
pub fn bench_row(
    cfg: &RingConfig,
    n: usize,
    trials: usize,
    rng: &mut ChaCha8Rng,
) -> Result<BenchRow, CliError> {
    let input: Vec<Residue> = (0..n).map(|_| cfg.reduce(rng.gen())).collect();

    let mut buf = input.clone();
    let (res, tft_report) = audited_call(cfg, |a| tft_with(&mut buf, a));
    res?;
    let mut padded = vec![Residue::ZERO; n.next_power_of_two()];
    padded[..n].copy_from_slice(&input);
    let (res, fft_report) = audited_call(cfg, |a| fft_pow2_with(&mut padded, a));
    res?;

    // factors of lengths n/2 + 1 and ceil(n/2): the product has length n
    let a = &input[..n / 2 + 1];
    let b = &input[..n.div_ceil(2)];
    let mut product = vec![Residue::ZERO; a.len() + b.len() - 1];

    let mut wall_tft = u128::MAX;
    let mut wall_mul = u128::MAX;
    for _ in 0..trials.max(1) {
        buf.copy_from_slice(&input);
        let start = Instant::now();
        tft(&mut buf, cfg)?;
        wall_tft = wall_tft.min(start.elapsed().as_nanos());

        let start = Instant::now();
        multiply(a, b, &mut product, cfg)?;
        wall_mul = wall_mul.min(start.elapsed().as_nanos());
    }
    Ok(BenchRow {
        n,
        mulcount_tft: tft_report.mults,
        mulcount_fft_padded: fft_report.mults,
        wall_ns_tft: wall_tft,
        wall_ns_multiply: wall_mul,
    })
}

/// Writes the benchmark CSV for every `n` in `nmin..=nmax`.
pub fn cmd_bench(
    cfg: &RingConfig,
    nmin: usize,
    nmax: usize,
    trials: usize,
    out: &mut impl Write,
) -> Result<(), CliError> {
    if nmin == 0 || nmin > nmax {
        return Err(CliError::Size(format!("empty range {nmin}..={nmax}")));
    }
    if nmax > cfg.max_len() {
        return Err(CliError::Size(format!(
            "{nmax} exceeds the largest supported length {}",
            cfg.max_len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    writeln!(out, "{BENCH_HEADER}")?;
    for n in nmin..=nmax {
        writeln!(out, "{}", bench_row(cfg, n, trials, &mut rng)?.to_csv())?;
    }
    Ok(())
}
