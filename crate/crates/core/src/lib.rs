//! Classical and quantum correlations of two-qubit states.
//!
//! The crate computes mutual information, classical correlations, quantum
//! discord and the non-commutativity measure `d_A` for two-qubit states,
//! with closed forms for Bell-diagonal states and numerical searches over
//! local measurements for everything else. It also evolves Bell-diagonal
//! states under identical local Pauli dephasing channels, which is where
//! discord can freeze while `d_A` keeps decaying.
//!
//! ```
//! use bdcorr_core::{states::BdState, correlations::CorrelationReport, ncmqc::d_a_optimized};
//!
//! let c = BdState::new([1.0, -0.6, 0.6]).unwrap();
//! let r = CorrelationReport::for_bd(&c);
//! assert!((r.discord - 0.278072).abs() < 1e-6);
//! assert!((d_a_optimized(&c) - 0.706905).abs() < 1e-6);
//! ```

pub mod correlations;
pub mod decoherence;
pub mod error;
pub mod measurement;
pub mod ncmqc;
pub mod optim;
pub mod oracle;
pub mod qmat;
pub mod sampling;
pub mod states;

pub use error::{Error, Result};
