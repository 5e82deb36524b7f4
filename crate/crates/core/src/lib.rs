//! Learning sparse mixtures of rankings over the symmetric group from
//! noise-corrupted samples.
//!
//! The library is organized bottom-up:
//!
//! - [`perm`], [`partition`], [`character`]: exact combinatorics of S_n —
//!   permutation arithmetic, Young diagrams, and integer characters.
//! - [`dist`]: sparse mixtures and dense pmfs on S_n with exact convolution,
//!   marginals, and total variation; the brute-force oracle layer.
//! - [`noise`]: the three parametric noise families (symmetric scrambles,
//!   heat-kernel transposition walks, Cayley-Mallows / Ewens) with samplers,
//!   exact pmfs, and analytic Fourier multipliers.
//! - [`tabloid`]: the permutation representation on ordered tuples whose
//!   Fourier coefficients are exactly the low-order marginal matrices.
//! - [`estimator`]: recovery of marginal matrices from noisy samples by
//!   inverting the noise's Fourier action.
//! - [`learner`] and [`junta`]: stage-wise support reconstruction with LP
//!   weight recovery, and the correlated-junta process behind its analysis.
//! - [`lowerbound`]: the character-based pair of mixtures that becomes
//!   statistically indistinguishable under Cayley-Mallows noise when
//!   `e^theta` sits near an integer.

pub mod character;
pub mod dist;
pub mod error;
pub mod estimator;
pub mod junta;
pub mod learner;
pub mod lowerbound;
pub mod lp;
pub mod noise;
pub mod partition;
pub mod perm;
pub mod tabloid;
pub mod verify;

pub use error::{Error, Result};
pub use perm::{enumerate_sn, CycleType, Permutation, ENUMERATION_CAP};
pub use partition::{all_partitions, hook_partition, lattice_paths, Partition};
