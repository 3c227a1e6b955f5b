//! Brute-force references and instrumentation.
//!
//! The references here share no code with the fast paths: they do their own
//! modular arithmetic, their own bit reversal, and raise the top-level root
//! to full exponents term by term.

use std::alloc::{GlobalAlloc, Layout, System};
use std::cell::{Cell, RefCell};
use std::sync::atomic::{AtomicBool, Ordering};

use crate::modring::{Arith, Residue, RingConfig};
use crate::tree::{Node, Visit};

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(base: u64, e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    for bit in (0..64).rev() {
        acc = mulmod(acc, acc, p);
        if (e >> bit) & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
    }
    acc
}

/// `omega(s)` computed as `w_[K]^(2^(K-k) * rev_k(s))` with `k` the smallest
/// width holding `s`.
pub fn naive_root(s: u64, cfg: &RingConfig) -> Residue {
    let mut k = 0;
    while k < 64 && (s >> k) != 0 {
        k += 1;
    }
    assert!(k <= cfg.max_level(), "root index {s} beyond 2^K");
    let mut rev = 0u64;
    for bit in 0..k {
        if (s >> bit) & 1 == 1 {
            rev |= 1 << (k - 1 - bit);
        }
    }
    let p = cfg.modulus();
    let exponent = rev << (cfg.max_level() - k);
    cfg.reduce(powmod(cfg.top_root().value(), exponent, p))
}

/// `out[s] = sum_i f[i] * omega(s)^i`, O(n^2).
pub fn naive_dft(f: &[Residue], cfg: &RingConfig) -> Vec<Residue> {
    let p = cfg.modulus();
    (0..f.len() as u64)
        .map(|s| {
            let root = naive_root(s, cfg).value();
            let sum = f.iter().enumerate().fold(0u128, |acc, (i, c)| {
                acc + mulmod(c.value(), powmod(root, i as u64, p), p) as u128
            });
            cfg.reduce((sum % p as u128) as u64)
        })
        .collect()
}

/// Schoolbook convolution.
pub fn schoolbook_mul(a: &[Residue], b: &[Residue], cfg: &RingConfig) -> Vec<Residue> {
    assert!(!a.is_empty() && !b.is_empty(), "empty factor");
    let p = cfg.modulus() as u128;
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            acc[i + j] = (acc[i + j] + x.value() as u128 * y.value() as u128) % p;
        }
    }
    acc.into_iter().map(|c| cfg.reduce(c as u64)).collect()
}

/// Counts gathered by [`audited_call`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCountReport {
    pub mults: u64,
    pub adds: u64,
    /// Heap allocations made by the calling thread during the call, or
    /// `None` when [`CountingAllocator`] is not the global allocator.
    pub allocs: Option<u64>,
    /// Largest number of auxiliary words live at once.
    pub peak_aux_words: usize,
}

/// Instrumented [`Arith`]: counts ring operations and tracks the words of
/// local state reported by the routines it is passed to. Allocation-free.
#[derive(Debug)]
pub struct Audit<'a> {
    cfg: &'a RingConfig,
    mults: Cell<u64>,
    adds: Cell<u64>,
    live_words: Cell<usize>,
    peak_words: Cell<usize>,
}

impl<'a> Audit<'a> {
    pub fn new(cfg: &'a RingConfig) -> Self {
        Audit {
            cfg,
            mults: Cell::new(0),
            adds: Cell::new(0),
            live_words: Cell::new(0),
            peak_words: Cell::new(0),
        }
    }

    pub fn mults(&self) -> u64 {
        self.mults.get()
    }

    pub fn report(&self) -> OpCountReport {
        OpCountReport {
            mults: self.mults.get(),
            adds: self.adds.get(),
            allocs: None,
            peak_aux_words: self.peak_words.get(),
        }
    }
}

impl Arith for Audit<'_> {
    fn ring(&self) -> &RingConfig {
        self.cfg
    }

    fn on_mul(&self) {
        self.mults.set(self.mults.get() + 1);
    }

    fn on_add(&self) {
        self.adds.set(self.adds.get() + 1);
    }

    fn enter(&self, words: usize) {
        let live = self.live_words.get() + words;
        self.live_words.set(live);
        self.peak_words.set(self.peak_words.get().max(live));
    }

    fn leave(&self, words: usize) {
        self.live_words.set(self.live_words.get() - words);
    }
}

/// Runs `op` against a fresh [`Audit`] and reports what it counted, plus the
/// allocations the current thread made meanwhile.
pub fn audited_call<R>(cfg: &RingConfig, op: impl FnOnce(&Audit<'_>) -> R) -> (R, OpCountReport) {
    let audit = Audit::new(cfg);
    let before = CountingAllocator::thread_allocations();
    let out = op(&audit);
    let after = CountingAllocator::thread_allocations();
    let mut report = audit.report();
    report.allocs = before.zip(after).map(|(b, a)| a - b);
    (out, report)
}

/// Records the sequence of traversal visits. Allocates, so it is kept apart
/// from [`Audit`].
#[derive(Debug)]
pub struct Trace<'a> {
    cfg: &'a RingConfig,
    visits: RefCell<Vec<(Node, Visit)>>,
}

impl<'a> Trace<'a> {
    pub fn new(cfg: &'a RingConfig) -> Self {
        Trace {
            cfg,
            visits: RefCell::new(Vec::new()),
        }
    }

    pub fn visits(&self) -> Vec<(Node, Visit)> {
        self.visits.borrow().clone()
    }
}

impl Arith for Trace<'_> {
    fn ring(&self) -> &RingConfig {
        self.cfg
    }

    fn visit(&self, node: Node, kind: Visit) {
        self.visits.borrow_mut().push((node, kind));
    }
}

thread_local! {
    static THREAD_ALLOCS: Cell<u64> = const { Cell::new(0) };
}

static COUNTING_ACTIVE: AtomicBool = AtomicBool::new(false);

/// Global allocator wrapper counting allocations per thread.
///
/// ```ignore
/// #[global_allocator]
/// static ALLOC: inplace_tft::oracle::CountingAllocator = inplace_tft::oracle::CountingAllocator;
/// ```
pub struct CountingAllocator;

impl CountingAllocator {
    /// Allocations made so far by the current thread, if this allocator is
    /// installed.
    pub fn thread_allocations() -> Option<u64> {
        if !COUNTING_ACTIVE.load(Ordering::Relaxed) {
            return None;
        }
        THREAD_ALLOCS.try_with(Cell::get).ok()
    }

    fn bump() {
        COUNTING_ACTIVE.store(true, Ordering::Relaxed);
        let _ = THREAD_ALLOCS.try_with(|c| c.set(c.get() + 1));
    }
}

unsafe impl GlobalAlloc for CountingAllocator {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        Self::bump();
        System.alloc(layout)
    }

    unsafe fn alloc_zeroed(&self, layout: Layout) -> *mut u8 {
        Self::bump();
        System.alloc_zeroed(layout)
    }

    unsafe fn realloc(&self, ptr: *mut u8, layout: Layout, new_size: usize) -> *mut u8 {
        Self::bump();
        System.realloc(ptr, layout, new_size)
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        System.dealloc(ptr, layout)
    }
}
