//! Prime-field arithmetic, the compatible chain of 2-power roots of unity and
//! the bit-reversed root enumeration shared by every transform loop.
//!
//! Roots are indexed the way the transforms consume them: `omega(s)` is
//! `w_[k]^rev_k(s)` where `w_[k]` is a primitive `2^k`-th root and the chain
//! satisfies `w_[k+1]^2 = w_[k]`. With that ordering the value of `omega(s)`
//! does not depend on the transform length, so a length-`n` truncated
//! transform is simply "evaluate at `omega(0), ..., omega(n - 1)`".

use std::fmt;
use std::mem::size_of;

use crate::error::{Result, TftError};
use crate::tree::{Node, Visit};

/// Largest supported modulus is below `2^62`, so sums of two residues never
/// overflow and products fit a `u128`.
pub const MAX_MODULUS_BITS: u32 = 62;

/// `998244353 = 119 * 2^23 + 1`.
pub const DEFAULT_MODULUS: u64 = 998_244_353;

/// A canonical residue in `[0, p)` for the governing [`RingConfig`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct Residue(u64);

impl Residue {
    pub const ZERO: Residue = Residue(0);
    pub const ONE: Residue = Residue(1);

    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }
}

impl From<Residue> for u64 {
    fn from(r: Residue) -> u64 {
        r.0
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Immutable arithmetic context: the prime, the top-level root `w_[K]`, and
/// the inverse of two.
///
/// The chain `w_[0], ..., w_[K]` is derived from `w_[K]` by repeated squaring
/// once, at construction, and kept in a fixed 63-entry array. Its size does
/// not depend on any transform length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingConfig {
    p: u64,
    max_level: u32,
    inv2: u64,
    levels: [u64; MAX_MODULUS_BITS as usize + 1],
}

impl RingConfig {
    /// Builds a configuration from a prime `p`, a primitive `2^k`-th root
    /// `omega_k` and the exponent `k`. Every invariant is checked.
    pub fn new(p: u64, omega_k: u64, k: u32) -> Result<Self> {
        check_modulus(p)?;
        if k > MAX_MODULUS_BITS || (p - 1) & ((1u64 << k) - 1) != 0 {
            return Err(TftError::InvalidConfig(format!(
                "2^{k} does not divide p - 1 = {}",
                p - 1
            )));
        }
        if omega_k >= p {
            return Err(TftError::InvalidConfig(format!(
                "root {omega_k} is not reduced modulo {p}"
            )));
        }
        let mut levels = [0u64; MAX_MODULUS_BITS as usize + 1];
        levels[k as usize] = omega_k;
        for level in (0..k as usize).rev() {
            levels[level] = mulmod(levels[level + 1], levels[level + 1], p);
        }
        let primitive = if k == 0 {
            omega_k == 1
        } else {
            levels[1] == p - 1 && levels[0] == 1
        };
        if !primitive {
            return Err(TftError::InvalidConfig(format!(
                "{omega_k} is not a primitive 2^{k}-th root of unity modulo {p}"
            )));
        }
        Ok(RingConfig {
            p,
            max_level: k,
            inv2: p.div_ceil(2),
            levels,
        })
    }

    /// Derives the largest supported level and a primitive root for a prime
    /// `p`: `K` is the 2-adic valuation of `p - 1` and `w_[K] = g^((p-1)/2^K)`
    /// for the smallest quadratic non-residue `g`.
    pub fn from_modulus(p: u64) -> Result<Self> {
        check_modulus(p)?;
        let k = (p - 1).trailing_zeros();
        let half = (p - 1) / 2;
        let g = (2..p)
            .find(|&g| powmod(g, half, p) == p - 1)
            .ok_or_else(|| TftError::InvalidConfig(format!("no non-residue modulo {p}")))?;
        Self::new(p, powmod(g, (p - 1) >> k, p), k)
    }

    /// `p = 998244353`, `K = 23`, root derived from the generator 3.
    pub fn ntt_default() -> Self {
        Self::from_modulus(DEFAULT_MODULUS).expect("998244353 is an NTT prime")
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// `K`: transforms support lengths up to `2^K`.
    #[inline]
    pub fn max_level(&self) -> u32 {
        self.max_level
    }

    /// Largest supported transform length `2^K`.
    #[inline]
    pub fn max_len(&self) -> usize {
        1usize << self.max_level
    }

    /// The configured primitive `2^K`-th root `w_[K]`.
    #[inline]
    pub fn top_root(&self) -> Residue {
        Residue(self.levels[self.max_level as usize])
    }

    #[inline]
    pub fn inv2(&self) -> Residue {
        Residue(self.inv2)
    }

    /// Checked conversion of a canonical value.
    pub fn element(&self, v: u64) -> Result<Residue> {
        if v < self.p {
            Ok(Residue(v))
        } else {
            Err(TftError::Domain(format!(
                "{v} is not a canonical residue modulo {}",
                self.p
            )))
        }
    }

    /// Reduces an arbitrary integer.
    #[inline]
    pub fn reduce(&self, v: u64) -> Residue {
        Residue(v % self.p)
    }

    /// Checked conversion of a whole slice of canonical values.
    pub fn elements(&self, values: &[u64]) -> Result<Vec<Residue>> {
        values.iter().map(|&v| self.element(v)).collect()
    }

    /// `w_[k]`, the primitive `2^k`-th root in the compatible chain.
    pub fn root_of_level(&self, k: u32) -> Result<Residue> {
        if k > self.max_level {
            return Err(TftError::LevelUnsupported {
                level: k,
                max: self.max_level,
            });
        }
        Ok(Residue(self.levels[k as usize]))
    }

    /// Test hook: replaces `w_[level]` with a wrong value so that harnesses
    /// can prove they notice a broken root.
    #[doc(hidden)]
    pub fn with_corrupted_level(mut self, level: u32) -> Self {
        let slot = &mut self.levels[level as usize];
        *slot = if *slot + 1 < self.p { *slot + 1 } else { 2 };
        self
    }

    #[inline]
    fn add_mod(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn sub_mod(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    fn mul_mod(&self, a: u64, b: u64) -> u64 {
        mulmod(a, b, self.p)
    }
}

fn check_modulus(p: u64) -> Result<()> {
    if p < 3 || p.is_multiple_of(2) {
        return Err(TftError::InvalidConfig(format!("{p} is not an odd prime")));
    }
    if p >> MAX_MODULUS_BITS != 0 {
        return Err(TftError::InvalidConfig(format!(
            "{p} does not fit in {MAX_MODULUS_BITS} bits"
        )));
    }
    if !is_prime(p) {
        return Err(TftError::InvalidConfig(format!("{p} is not prime")));
    }
    Ok(())
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Number of machine words occupied by a value of type `T`.
#[inline]
pub fn words_of<T>() -> usize {
    size_of::<T>().div_ceil(size_of::<usize>())
}

/// Ring operations as seen by the transforms.
///
/// [`RingConfig`] implements this with no-op hooks. Instrumented wrappers
/// (see [`crate::oracle::Audit`]) override the hooks to count operations,
/// record the traversal and track auxiliary words.
pub trait Arith {
    fn ring(&self) -> &RingConfig;

    /// Called once per ring multiplication.
    #[inline]
    fn on_mul(&self) {}

    /// Called once per ring addition, subtraction or negation.
    #[inline]
    fn on_add(&self) {}

    /// Called once per iteration of a tree traversal loop.
    #[inline]
    fn visit(&self, _node: Node, _kind: Visit) {}

    /// A routine has brought `words` words of local state to life.
    #[inline]
    fn enter(&self, _words: usize) {}

    /// The matching release for [`Arith::enter`].
    #[inline]
    fn leave(&self, _words: usize) {}

    #[inline]
    fn add(&self, a: Residue, b: Residue) -> Residue {
        self.on_add();
        Residue(self.ring().add_mod(a.0, b.0))
    }

    #[inline]
    fn sub(&self, a: Residue, b: Residue) -> Residue {
        self.on_add();
        Residue(self.ring().sub_mod(a.0, b.0))
    }

    #[inline]
    fn neg(&self, a: Residue) -> Residue {
        self.on_add();
        Residue(self.ring().sub_mod(0, a.0))
    }

    #[inline]
    fn mul(&self, a: Residue, b: Residue) -> Residue {
        self.on_mul();
        Residue(self.ring().mul_mod(a.0, b.0))
    }

    /// Left-to-right square-and-multiply: `bitlen(e) - 1` squarings plus
    /// `popcount(e) - 1` multiplications.
    fn pow(&self, base: Residue, e: u64) -> Residue {
        struct PowState {
            acc: Residue,
            base: Residue,
            mask: u64,
        }
        if e == 0 {
            return Residue(1 % self.ring().modulus());
        }
        self.enter(words_of::<PowState>());
        let mut st = PowState {
            acc: base,
            base,
            mask: (1u64 << (63 - e.leading_zeros())) >> 1,
        };
        while st.mask != 0 {
            st.acc = self.mul(st.acc, st.acc);
            if e & st.mask != 0 {
                st.acc = self.mul(st.acc, st.base);
            }
            st.mask >>= 1;
        }
        self.leave(words_of::<PowState>());
        st.acc
    }

    /// `omega(s) = w_[k]^rev_k(s)` with `k` the bit length of `s`.
    fn omega(&self, s: u64) -> Result<Residue> {
        let bits = u64::BITS - s.leading_zeros();
        let root = self.ring().root_of_level(bits)?;
        Ok(self.pow(root, revbin(s, bits)?))
    }
}

impl Arith for RingConfig {
    #[inline]
    fn ring(&self) -> &RingConfig {
        self
    }
}

impl<A: Arith + ?Sized> Arith for &A {
    #[inline]
    fn ring(&self) -> &RingConfig {
        (**self).ring()
    }
    #[inline]
    fn on_mul(&self) {
        (**self).on_mul()
    }
    #[inline]
    fn on_add(&self) {
        (**self).on_add()
    }
    #[inline]
    fn visit(&self, node: Node, kind: Visit) {
        (**self).visit(node, kind)
    }
    #[inline]
    fn enter(&self, words: usize) {
        (**self).enter(words)
    }
    #[inline]
    fn leave(&self, words: usize) {
        (**self).leave(words)
    }
}

/// Length-`k` bit reversal of `s`.
pub fn revbin(s: u64, k: u32) -> Result<u64> {
    if k > u64::BITS || (k < u64::BITS && s >> k != 0) {
        return Err(TftError::Domain(format!("{s} does not fit in {k} bits")));
    }
    Ok(if k == 0 {
        0
    } else {
        s.reverse_bits() >> (u64::BITS - k)
    })
}

/// Maps `rev_k(t)` to `rev_k(t + 1)` by propagating the carry from the high
/// bit downwards. Amortized O(1). Past `t = 2^k - 1` the counter wraps to 0.
#[inline]
pub fn revbin_increment(counter: u64, k: u32) -> u64 {
    if k == 0 {
        return 0;
    }
    let mut counter = counter;
    let mut bit = 1u64 << (k - 1);
    while counter & bit != 0 {
        counter ^= bit;
        bit >>= 1;
    }
    counter | bit
}

/// Whether a root enumeration walks `w_{2j}` or `w_{2j}^{-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Constant-space enumeration of `(j, w_{2j})` (or `(j, w_{2j}^{-1})`) for
/// `0 <= j < floor(m/2)`.
///
/// With `k - 1 = ceil(lg floor(m/2))`, step `t` holds `j = rev_{k-1}(t)` and
/// `theta = w_[k]^t`, which equals `w_{2j}`. Every advance costs one ring
/// multiplication. Counter values `j >= floor(m/2)` are skipped.
#[derive(Clone, Debug)]
pub struct RootPairIterator<A: Arith> {
    arith: A,
    bits: u32,
    t: u64,
    j: u64,
    theta: Residue,
    step: Residue,
    bound: u64,
    remaining: u64,
}

/// Root pairs for a block of length `m` (`m <= 2^K`).
pub fn root_pairs<A: Arith>(arith: A, m: usize, direction: Direction) -> RootPairIterator<A> {
    let half = (m / 2) as u64;
    let bits = if half <= 1 {
        0
    } else {
        u64::BITS - (half - 1).leading_zeros()
    };
    let one = Residue(1 % arith.ring().modulus());
    let step = if half <= 1 {
        one
    } else {
        let root = arith
            .ring()
            .root_of_level(bits + 1)
            .expect("block length exceeds 2^K");
        match direction {
            Direction::Forward => root,
            // w^(2^k - 1) = w^(-1)
            Direction::Inverse => arith.pow(root, (1u64 << (bits + 1)) - 1),
        }
    };
    RootPairIterator {
        arith,
        bits,
        t: 0,
        j: 0,
        theta: one,
        step,
        bound: half,
        remaining: half,
    }
}

impl<A: Arith> RootPairIterator<A> {
    /// Steps taken so far in natural order.
    pub fn steps(&self) -> u64 {
        self.t
    }

    #[inline]
    fn advance(&mut self) {
        self.t += 1;
        self.j = revbin_increment(self.j, self.bits);
        self.theta = self.arith.mul(self.theta, self.step);
    }
}

impl<A: Arith> Iterator for RootPairIterator<A> {
    type Item = (usize, Residue);

    #[inline]
    fn next(&mut self) -> Option<Self::Item> {
        if self.remaining == 0 {
            return None;
        }
        while self.j >= self.bound {
            self.advance();
        }
        let item = (self.j as usize, self.theta);
        self.remaining -= 1;
        if self.remaining > 0 {
            self.advance();
        }
        Some(item)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining as usize, Some(self.remaining as usize))
    }
}
