//! Two-photon excitation (TPE) of a two-particle acceptor by SPDC photon pairs.
//!
//! * [`specfun`]: Faddeeva-based `erfi`, plasma dispersion function and `𝔽∓`.
//! * [`acceptor`]: coupled two-level pair and its eigen-representation.
//! * [`source`]: the four joint spectral amplitudes and their normalization.
//! * [`tpe`]: closed-form TPE probabilities.
//! * [`oracle`]: brute-force second-order perturbation theory in the time domain.
//! * [`harness`]: parameter sweeps, figure presets, ratio reports and file I/O.

pub mod acceptor;
pub mod error;
pub mod harness;
pub mod oracle;
pub mod quadrature;
pub mod source;
pub mod specfun;
pub mod tpe;
pub mod units;

pub use acceptor::{diagonalize, transform_dipoles, AcceptorPair, EigenAcceptor};
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use source::{classify, jsa, norm, CorrelationRegime, SpdcSource, StateKind};
pub use tpe::{p_tpe, p_tpe_with_policy, resonance_prefactor, ResonancePolicy, TpeResult};
