//! In-place truncated Fourier transforms over prime fields.
//!
//! * [`tft`] / [`itft`]: forward and inverse truncated transforms of any
//!   length `n <= 2^K`, in place, with a constant number of auxiliary words.
//! * [`fft_pow2`]: the power-of-two special case with the same output order.
//! * [`multiply`]: polynomial product into a caller-provided buffer of
//!   length `m + n - 1`, reading the factors only, again with constant
//!   auxiliary space.
//!
//! Output order: position `s` of a transformed buffer holds `F(omega(s))`,
//! where `omega(s) = w_[k]^rev_k(s)` (see [`modring`]).
//!
//! ```
//! use inplace_tft::{itft, multiply, tft, Residue, RingConfig};
//!
//! let cfg = RingConfig::ntt_default();
//! let f = cfg.elements(&[1, 2, 3, 4, 5]).unwrap();
//! let mut x = f.clone();
//! tft(&mut x, &cfg).unwrap();
//! itft(&mut x, &cfg).unwrap();
//! assert_eq!(x, f);
//!
//! let a = cfg.elements(&[2, 3]).unwrap();
//! let b = cfg.elements(&[4, 5, 6]).unwrap();
//! let mut c = vec![Residue::ZERO; 4];
//! multiply(&a, &b, &mut c, &cfg).unwrap();
//! assert_eq!(c, cfg.elements(&[8, 22, 27, 18]).unwrap());
//! ```

pub mod error;
pub mod modring;
pub mod oracle;
pub mod polymul;
pub mod transforms;
pub mod tree;

pub use error::{Result, TftError};
pub use modring::{
    revbin, revbin_increment, root_pairs, Arith, Direction, Residue, RingConfig, RootPairIterator,
    DEFAULT_MODULUS,
};
pub use oracle::{audited_call, Audit, OpCountReport};
pub use polymul::{fold_twist, horner_eval, multiply, multiply_with, Block, BlockSchedule};
pub use transforms::{fft_pow2, fft_pow2_with, itft, itft_with, tft, tft_with};
pub use tree::{Node, Visit};
