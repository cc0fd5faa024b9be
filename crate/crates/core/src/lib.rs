//! Exact arithmetic for Rudin-Shapiro-like polynomials: correlations and
//! demerit factors, the stem recursion, closed-form limits, the symmetry
//! group acting on seeds, and exhaustive searches over ±1 seeds.
//!
//! ```
//! use rsl_core::hex::decode_hex;
//! use rsl_core::asymptotics::limiting_adf;
//!
//! let f = decode_hex("1", 4).unwrap();
//! assert_eq!(f.to_string(), "+++-");
//! assert_eq!(limiting_adf(&f.to_poly()).unwrap().to_string(), "1/3");
//! ```

pub mod asymptotics;
pub mod correlation;
pub mod error;
pub mod hex;
pub mod littlewood;
pub mod poly;
pub mod report;
pub mod search;
pub mod stem;
pub mod symmetry;

pub use error::{Error, Result};
pub use littlewood::LittlewoodSeq;
pub use poly::{GaussInt, GaussLaurentPoly, IntLaurentPoly, LaurentPoly};
pub use stem::{Sign, StemSpec};
