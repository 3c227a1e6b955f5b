//! Out-of-place polynomial multiplication with constant auxiliary space.
//!
//! The inputs are read-only and the only writable memory is the output
//! buffer of length `r = m + n - 1`. The output is cut into power-of-two
//! blocks `[q, q + L)` with `L | q` and `q + 2L <= r`. For each block both
//! inputs are twisted and folded into `L` slots (`A(w_q x) mod x^L - 1`), so a
//! length-`L` FFT of the fold yields exactly the Fourier coefficients
//! `A^(q), ..., A^(q + L - 1)`. The second half of the block is scratch for
//! `B`. The last coefficient is evaluated directly and one in-place inverse
//! truncated transform recovers the product.

use crate::error::{Result, TftError};
use crate::modring::{words_of, Arith, Residue, RingConfig};
use crate::transforms::{fft_pow2_with, itft_with};

/// One block of the output decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    /// Offset of the block.
    pub q: usize,
    /// Block exponent.
    pub level: u32,
    /// `2^level`.
    pub len: usize,
}

/// Iterator over the blocks covering `[0, r - 1)`.
///
/// Each block takes the largest power of two `L` with `q + 2L <= r`.
#[derive(Clone, Debug)]
pub struct BlockSchedule {
    q: usize,
    r: usize,
}

impl BlockSchedule {
    pub fn new(r: usize) -> Self {
        BlockSchedule { q: 0, r }
    }
}

impl Iterator for BlockSchedule {
    type Item = Block;

    fn next(&mut self) -> Option<Block> {
        if self.q + 1 >= self.r {
            return None;
        }
        let level = (self.r - self.q).ilog2() - 1;
        let block = Block {
            q: self.q,
            level,
            len: 1 << level,
        };
        self.q += block.len;
        Some(block)
    }
}

/// `poly(point)` by Horner's rule.
pub fn horner_eval<A: Arith>(poly: &[Residue], point: Residue, arith: A) -> Result<Residue> {
    let (&top, rest) = poly
        .split_last()
        .ok_or_else(|| TftError::Domain("cannot evaluate an empty polynomial".into()))?;
    Ok(rest
        .iter()
        .rev()
        .fold(top, |acc, &c| arith.add(arith.mul(acc, point), c)))
}

/// Accumulates the coefficients of `src(w_q x) mod (x^L - 1)` into `dest`,
/// where `L = dest.len()`. The caller zeroes `dest` first.
pub fn fold_twist<A: Arith>(
    src: &[Residue],
    dest: &mut [Residue],
    q: usize,
    arith: A,
) -> Result<()> {
    #[allow(dead_code)]
    struct FoldState {
        twist: Residue,
        power: Residue,
        slot: usize,
        i: usize,
    }
    let len = dest.len();
    if len == 0 {
        return Err(TftError::Domain("cannot fold into an empty block".into()));
    }
    arith.enter(words_of::<FoldState>());
    let mut st = FoldState {
        twist: arith.omega(q as u64)?,
        power: Residue::ONE,
        slot: 0,
        i: 0,
    };
    while st.i < src.len() {
        let c = src[st.i];
        let term = if q == 0 { c } else { arith.mul(c, st.power) };
        dest[st.slot] = arith.add(dest[st.slot], term);
        st.i += 1;
        if q != 0 && st.i < src.len() {
            st.power = arith.mul(st.power, st.twist);
        }
        st.slot += 1;
        if st.slot == len {
            st.slot = 0;
        }
    }
    arith.leave(words_of::<FoldState>());
    Ok(())
}

/// Writes `a * b` into `out`, which must have length `a.len() + b.len() - 1`.
pub fn multiply(a: &[Residue], b: &[Residue], out: &mut [Residue], cfg: &RingConfig) -> Result<()> {
    multiply_with(a, b, out, cfg)
}

/// [`multiply`] over any [`Arith`] implementation.
pub fn multiply_with<A: Arith>(
    a: &[Residue],
    b: &[Residue],
    out: &mut [Residue],
    arith: A,
) -> Result<()> {
    product_spectrum_with(a, b, out, &arith)?;
    itft_with(out, &arith)
}

/// Everything [`multiply_with`] does except the final inverse transform:
/// leaves `out[s] = C(omega(s))` for the product `C = a * b`.
pub fn product_spectrum_with<A: Arith>(
    a: &[Residue],
    b: &[Residue],
    out: &mut [Residue],
    arith: A,
) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return Err(TftError::Domain(
            "factors must have at least one coefficient".into(),
        ));
    }
    let r = a.len() + b.len() - 1;
    if out.len() != r {
        return Err(TftError::Domain(format!(
            "output buffer has length {}, product needs {r}",
            out.len()
        )));
    }
    let ring = arith.ring();
    if r > ring.max_len() {
        return Err(TftError::LevelUnsupported {
            level: usize::BITS - (r - 1).leading_zeros(),
            max: ring.max_level(),
        });
    }

    let frame = words_of::<BlockSchedule>() + words_of::<Block>();
    arith.enter(frame);
    for Block { q, len, .. } in BlockSchedule::new(r) {
        let (lhs, rhs) = out[q..q + 2 * len].split_at_mut(len);
        lhs.fill(Residue::ZERO);
        rhs.fill(Residue::ZERO);
        fold_twist(a, lhs, q, &arith)?;
        fft_pow2_with(lhs, &arith)?;
        fold_twist(b, rhs, q, &arith)?;
        fft_pow2_with(rhs, &arith)?;
        for (x, &y) in lhs.iter_mut().zip(rhs.iter()) {
            *x = arith.mul(*x, y);
        }
    }
    let last = arith.omega((r - 1) as u64)?;
    out[r - 1] = arith.mul(horner_eval(a, last, &arith)?, horner_eval(b, last, &arith)?);
    arith.leave(frame);
    Ok(())
}
