//! Reduced-size versions of the library's oracle, round-trip and audit
//! checks, runnable from the shipped binary.

use inplace_tft::oracle::{naive_dft, schoolbook_mul};
use inplace_tft::{audited_call, itft, itft_with, multiply, tft, tft_with, Residue, RingConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;

const WORD_BOUND: usize = 64;

/// Runs every check; returns the name of the first one that fails.
pub fn run(cfg: &RingConfig, seed: u64, log: &mut impl FnMut(&str)) -> Result<(), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fail = |check: String| CliError::Selftest { check, seed };
    let max_n = cfg.max_len();
    let mut poly =
        |len: usize| -> Vec<Residue> { (0..len).map(|_| cfg.reduce(rng.gen())).collect() };

    for n in 1..=64.min(max_n) {
        for _ in 0..2 {
            let f = poly(n);
            let mut x = f.clone();
            tft(&mut x, cfg)?;
            if x != naive_dft(&f, cfg) {
                return Err(fail(format!(
                    "forward transform differs from naive evaluation at n = {n}"
                )));
            }
        }
    }
    log("oracle equivalence ok");

    for n in 1..=256.min(max_n) {
        for _ in 0..2 {
            let f = poly(n);
            let mut x = f.clone();
            tft(&mut x, cfg)?;
            itft(&mut x, cfg)?;
            if x != f {
                return Err(fail(format!("round trip failed at n = {n}")));
            }
        }
    }
    log("round trip ok");

    for m in 1..=16 {
        for n in 1..=16 {
            if m + n - 1 > max_n {
                continue;
            }
            let (a, b) = (poly(m), poly(n));
            let mut out = vec![Residue::ZERO; m + n - 1];
            multiply(&a, &b, &mut out, cfg)?;
            if out != schoolbook_mul(&a, &b, cfg) {
                return Err(fail(format!(
                    "product differs from schoolbook at m = {m}, n = {n}"
                )));
            }
        }
    }
    log("multiplication ok");

    let mut peaks = Vec::new();
    for n in [16usize, 1024].into_iter().filter(|&n| n <= max_n) {
        let mut x = poly(n);
        let (res, fwd) = audited_call(cfg, |a| tft_with(&mut x, a));
        res?;
        let (res, inv) = audited_call(cfg, |a| itft_with(&mut x, a));
        res?;
        for report in [fwd, inv] {
            if report.allocs.is_some_and(|a| a > 0) {
                return Err(fail(format!("transform of length {n} allocated")));
            }
            if report.peak_aux_words > WORD_BOUND {
                return Err(fail(format!(
                    "transform of length {n} used {} auxiliary words",
                    report.peak_aux_words
                )));
            }
        }
        peaks.push((fwd.peak_aux_words, inv.peak_aux_words));
    }
    if peaks.windows(2).any(|w| w[0] != w[1]) {
        return Err(fail(format!("auxiliary words depend on length: {peaks:?}")));
    }
    log("space audit ok");
    Ok(())
}
