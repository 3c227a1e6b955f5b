//! In-place truncated Fourier transforms.
//!
//! `tft` overwrites `F_0, ..., F_{n-1}` with `F(omega(0)), ..., F(omega(n-1))`
//! for any `1 <= n <= 2^K`; `itft` undoes it. Both walk the implicit tree of
//! [`Node`]s iteratively, carrying only the current node, the previously
//! visited node and a handful of registers. No recursion, no scratch buffer,
//! no root table.
//!
//! When an internal node has odd length `m`, its odd child is one element
//! short of what the butterfly for the last output needs. That coefficient is
//! fixed up directly by evaluating the odd half-polynomial at one root before
//! the odd child is transformed (forward) or after it has been inverted
//! (inverse).

use crate::error::{Result, TftError};
use crate::modring::{
    root_pairs, words_of, Arith, Direction, Residue, RingConfig, RootPairIterator,
};
use crate::tree::{Node, Visit};

/// Registers of the tree walk.
#[derive(Clone, Copy, Debug)]
struct TraversalState {
    node: Node,
    prev: Option<Node>,
    len: usize,
}

/// Registers of one odd-length correction.
#[allow(dead_code)]
struct OddTailState {
    v: Residue,
    half_root: Residue,
    tail_root: Residue,
    i: usize,
}

/// Registers of a butterfly sweep, on top of the root iterator.
#[allow(dead_code)]
struct ButterflyRegs {
    a: Residue,
    b: Residue,
    lo: usize,
    hi: usize,
}

fn check_len(n: usize, ring: &RingConfig) -> Result<()> {
    if n == 0 {
        return Err(TftError::Domain(
            "transform length must be at least 1".into(),
        ));
    }
    if n > ring.max_len() {
        return Err(TftError::LevelUnsupported {
            level: usize::BITS - (n - 1).leading_zeros(),
            max: ring.max_level(),
        });
    }
    Ok(())
}

fn butterfly_frame<A: Arith>() -> usize {
    words_of::<RootPairIterator<A>>() + words_of::<ButterflyRegs>()
}

/// Combines the transformed halves of `node`:
/// `(S_2j, S_2j+1) <- (S_2j + w_2j S_2j+1, S_2j - w_2j S_2j+1)` for
/// `j < floor(m/2)`. A trailing element of an odd-length node is untouched.
pub fn butterfly_block_forward<A: Arith>(buf: &mut [Residue], node: Node, arith: A) {
    let m = node.span(buf.len());
    if m < 2 {
        return;
    }
    let frame = butterfly_frame::<&A>();
    arith.enter(frame);
    for (j, theta) in root_pairs(&arith, m, Direction::Forward) {
        let lo = node.index(2 * j);
        let hi = node.index(2 * j + 1);
        let t = arith.mul(theta, buf[hi]);
        let a = buf[lo];
        buf[lo] = arith.add(a, t);
        buf[hi] = arith.sub(a, t);
    }
    arith.leave(frame);
}

/// Exact inverse of [`butterfly_block_forward`]:
/// `(S_2j, S_2j+1) <- ((S_2j + S_2j+1)/2, w_2j^-1 (S_2j - S_2j+1)/2)`.
pub fn butterfly_block_inverse<A: Arith>(buf: &mut [Residue], node: Node, arith: A) {
    let m = node.span(buf.len());
    if m < 2 {
        return;
    }
    let frame = butterfly_frame::<&A>();
    arith.enter(frame);
    let inv2 = arith.ring().inv2();
    for (j, theta) in root_pairs(&arith, m, Direction::Inverse) {
        let lo = node.index(2 * j);
        let hi = node.index(2 * j + 1);
        let (a, b) = (buf[lo], buf[hi]);
        buf[lo] = arith.mul(arith.add(a, b), inv2);
        buf[hi] = arith.mul(theta, arith.mul(arith.sub(a, b), inv2));
    }
    arith.leave(frame);
}

/// Adds (forward) or subtracts (inverse) `H(w_h) * w_{m-1}` to the last
/// element of an odd-length node `S` of length `m = 2h + 1`, where `H` is the
/// polynomial whose coefficients sit at the odd local positions `S_1, S_3,
/// ..., S_{2h-1}`. `H(w_h)` is evaluated by Horner's rule.
pub fn odd_tail_correction<A: Arith>(
    buf: &mut [Residue],
    node: Node,
    direction: Direction,
    arith: A,
) -> Result<()> {
    let m = node.span(buf.len());
    if m < 3 || m.is_multiple_of(2) {
        return Ok(());
    }
    arith.enter(words_of::<OddTailState>());
    let h = (m - 1) / 2;
    let mut st = OddTailState {
        v: buf[node.index(2 * h - 1)],
        half_root: arith.omega(h as u64)?,
        tail_root: arith.omega((m - 1) as u64)?,
        i: h - 1,
    };
    while st.i > 0 {
        st.i -= 1;
        st.v = arith.add(arith.mul(st.v, st.half_root), buf[node.index(2 * st.i + 1)]);
    }
    let last = node.index(m - 1);
    let delta = arith.mul(st.v, st.tail_root);
    buf[last] = match direction {
        Direction::Forward => arith.add(buf[last], delta),
        Direction::Inverse => arith.sub(buf[last], delta),
    };
    arith.leave(words_of::<OddTailState>());
    Ok(())
}

/// In-place truncated Fourier transform over `cfg`.
pub fn tft(buf: &mut [Residue], cfg: &RingConfig) -> Result<()> {
    tft_with(buf, cfg)
}

/// [`tft`] over any [`Arith`] implementation (e.g. an instrumented one).
pub fn tft_with<A: Arith>(buf: &mut [Residue], arith: A) -> Result<()> {
    let n = buf.len();
    check_len(n, arith.ring())?;
    arith.enter(words_of::<TraversalState>());
    let mut st = TraversalState {
        node: Node::ROOT.first_leaf(n),
        prev: None,
        len: 1,
    };
    loop {
        st.len = st.node.span(n);
        if st.len == 1 || st.prev == Some(st.node.odd()) {
            if st.len == 1 {
                arith.visit(st.node, Visit::Leaf);
            } else {
                arith.visit(st.node, Visit::Combine);
                butterfly_block_forward(buf, st.node, &arith);
            }
            if st.node.is_root() {
                break;
            }
            st.prev = Some(st.node);
            st.node = st.node.parent();
        } else {
            debug_assert_eq!(st.prev, Some(st.node.even()));
            arith.visit(st.node, Visit::Descend);
            if st.len % 2 == 1 {
                odd_tail_correction(buf, st.node, Direction::Forward, &arith)?;
            }
            st.prev = Some(st.node);
            st.node = st.node.odd().first_leaf(n);
        }
    }
    arith.leave(words_of::<TraversalState>());
    Ok(())
}

/// In-place inverse truncated Fourier transform over `cfg`.
pub fn itft(buf: &mut [Residue], cfg: &RingConfig) -> Result<()> {
    itft_with(buf, cfg)
}

/// [`itft`] over any [`Arith`] implementation. Walks the tree in exactly the
/// reverse order of [`tft_with`].
pub fn itft_with<A: Arith>(buf: &mut [Residue], arith: A) -> Result<()> {
    let n = buf.len();
    check_len(n, arith.ring())?;
    arith.enter(words_of::<TraversalState>());
    let spine_leaf = Node::ROOT.first_leaf(n);
    let mut st = TraversalState {
        node: Node::ROOT,
        prev: None,
        len: n,
    };
    while st.node != spine_leaf {
        if st.node.single(n) {
            arith.visit(st.node, Visit::Leaf);
            st.node = st.node.rising_parent().parent();
            st.len = st.node.span(n);
            arith.visit(st.node, Visit::Descend);
            if st.len % 2 == 1 {
                odd_tail_correction(buf, st.node, Direction::Inverse, &arith)?;
            }
            st.node = st.node.even();
        } else {
            st.len = st.node.span(n);
            arith.visit(st.node, Visit::Combine);
            butterfly_block_inverse(buf, st.node, &arith);
            st.node = st.node.odd();
        }
    }
    arith.visit(spine_leaf, Visit::Leaf);
    arith.leave(words_of::<TraversalState>());
    Ok(())
}

/// Power-of-two transform with the same output order as [`tft`].
pub fn fft_pow2(buf: &mut [Residue], cfg: &RingConfig) -> Result<()> {
    fft_pow2_with(buf, cfg)
}

/// [`fft_pow2`] over any [`Arith`] implementation.
///
/// Runs level by level from the deepest internal nodes up to the root, so it
/// needs no traversal state beyond the level and the offset.
pub fn fft_pow2_with<A: Arith>(buf: &mut [Residue], arith: A) -> Result<()> {
    let len = buf.len();
    if !len.is_power_of_two() {
        return Err(TftError::Domain(format!(
            "power-of-two transform called on length {len}"
        )));
    }
    check_len(len, arith.ring())?;
    arith.enter(words_of::<Node>());
    let levels = len.trailing_zeros();
    for r in (0..levels).rev() {
        for q in 0..1usize << r {
            butterfly_block_forward(buf, Node::new(q, r), &arith);
        }
    }
    arith.leave(words_of::<Node>());
    Ok(())
}
