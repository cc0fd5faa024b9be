//! Exhaustive searches over ±1 seeds for the smallest limiting demerit
//! factors.
//!
//! Three objectives are supported:
//!
//! - [`Objective::MinAdf`]: the smallest limiting ADF over all `2^ℓ` seeds;
//! - [`Objective::MinPsc`]: the smallest limiting PSC over all `4^ℓ` ordered
//!   seed pairs;
//! - [`Objective::RestrictedPsc`]: the smallest limiting PSC over pairs whose
//!   members both attain the minimum ADF.
//!
//! Only one canonical seed (or pair) per symmetry orbit is evaluated, and
//! every comparison is exact. Work is split into fixed prefix ranges that run
//! on a rayon pool; partial results merge associatively, so the report does
//! not depend on the number of workers or on interruptions.
//!
//! ```
//! use rsl_core::search::scan_min_adf;
//!
//! let report = scan_min_adf(8, 1, None).unwrap();
//! assert_eq!(report.min_value.adf_f.to_string(), "1/3");
//! assert_eq!((report.seq_count, report.orbit_count), (32, 4));
//! ```

mod checkpoint;
pub mod kernel;
mod scan;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Serialize;

use crate::asymptotics::{limiting_adf, limits, LimitReport};
use crate::error::{Error, Result};
use crate::hex::{decode_hex, encode_hex};
use crate::littlewood::LittlewoodSeq;
use crate::report::{decimal_f64, decimal_string, fraction_string};

pub use scan::{ScanStatus, Scanner};

/// Longest seed length accepted by the single-seed scan.
pub const MAX_ADF_LEN: usize = 32;
/// Longest seed length accepted by the all-pairs scan.
pub const MAX_PSC_LEN: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Objective {
    MinAdf,
    MinPsc,
    RestrictedPsc,
}

impl Objective {
    pub fn name(self) -> &'static str {
        match self {
            Objective::MinAdf => "adf",
            Objective::MinPsc => "psc",
            Objective::RestrictedPsc => "psc-restricted",
        }
    }

    pub fn is_pair(self) -> bool {
        self != Objective::MinAdf
    }

    pub fn max_len(self) -> usize {
        match self {
            Objective::MinPsc => MAX_PSC_LEN,
            _ => MAX_ADF_LEN,
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Objective {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adf" => Ok(Objective::MinAdf),
            "psc" => Ok(Objective::MinPsc),
            "psc-restricted" => Ok(Objective::RestrictedPsc),
            _ => Err(Error::ObjectiveMismatch {
                expected: "adf, psc or psc-restricted".into(),
                found: s.into(),
            }),
        }
    }
}

/// Exact limiting values of one reported seed or pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Values {
    #[serde(serialize_with = "crate::report::ser_ratio")]
    pub adf_f: BigRational,
    #[serde(serialize_with = "crate::report::ser_opt_ratio", skip_serializing_if = "Option::is_none")]
    pub adf_g: Option<BigRational>,
    #[serde(serialize_with = "crate::report::ser_opt_ratio", skip_serializing_if = "Option::is_none")]
    pub cdf: Option<BigRational>,
    #[serde(serialize_with = "crate::report::ser_opt_ratio", skip_serializing_if = "Option::is_none")]
    pub psc_exact: Option<BigRational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psc_float: Option<f64>,
}

impl Values {
    fn single(f: LittlewoodSeq) -> Result<Self> {
        Ok(Values {
            adf_f: limiting_adf(&f.to_poly())?,
            adf_g: None,
            cdf: None,
            psc_exact: None,
            psc_float: None,
        })
    }

    fn pair(f: LittlewoodSeq, g: LittlewoodSeq) -> Result<Self> {
        let l = limits(&f.to_poly(), &g.to_poly())?;
        Ok(Values {
            adf_f: l.adf_f,
            adf_g: Some(l.adf_g),
            cdf: Some(l.cdf),
            psc_exact: l.psc.psc_exact,
            psc_float: Some(l.psc.psc_float),
        })
    }
}

/// One orbit at the minimum: its canonical seed (or pair) and size.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitRow {
    pub f: LittlewoodSeq,
    pub g: Option<LittlewoodSeq>,
    pub orbit_size: usize,
    pub values: Values,
}

impl OrbitRow {
    pub fn f_hex(&self) -> String {
        encode_hex(&self.f)
    }

    pub fn g_hex(&self) -> Option<String> {
        self.g.as_ref().map(encode_hex)
    }
}

#[derive(Serialize)]
struct OrbitRowWire<'a> {
    f: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    g: Option<String>,
    orbit_size: usize,
    #[serde(flatten)]
    values: &'a Values,
}

/// The outcome of a completed scan.
#[derive(Clone, Debug)]
pub struct ScanReport {
    pub len: usize,
    pub objective: Objective,
    /// Values of the first reported orbit; every orbit attains the same
    /// minimum criterion.
    pub min_value: Values,
    pub seq_count: u64,
    pub orbit_count: u64,
    /// One row per minimizing orbit, ordered by canonical hex.
    pub representatives: Vec<OrbitRow>,
    /// Seeds (or ordered pairs) covered by the scan.
    pub scanned: u128,
    pub elapsed: f64,
}

/// Reports compare equal when everything except the wall-clock time agrees.
impl PartialEq for ScanReport {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len
            && self.objective == other.objective
            && self.min_value == other.min_value
            && self.seq_count == other.seq_count
            && self.orbit_count == other.orbit_count
            && self.representatives == other.representatives
            && self.scanned == other.scanned
    }
}

#[derive(Serialize)]
struct ScanReportWire<'a> {
    len: usize,
    objective: &'static str,
    min_value: &'a Values,
    seq_count: u64,
    orbit_count: u64,
    representatives: Vec<OrbitRowWire<'a>>,
    scanned: String,
    elapsed: f64,
}

impl ScanReport {
    fn wire(&self) -> ScanReportWire<'_> {
        ScanReportWire {
            len: self.len,
            objective: self.objective.name(),
            min_value: &self.min_value,
            seq_count: self.seq_count,
            orbit_count: self.orbit_count,
            representatives: self
                .representatives
                .iter()
                .map(|r| OrbitRowWire {
                    f: r.f_hex(),
                    g: r.g_hex(),
                    orbit_size: r.orbit_size,
                    values: &r.values,
                })
                .collect(),
            scanned: self.scanned.to_string(),
            elapsed: self.elapsed,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.wire())?)
    }

    /// CSV with one row per orbit. Fractions are `p/q` strings with a
    /// ten-significant-digit decimal column next to each.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        if self.objective.is_pair() {
            w.write_record([
                "length", "adf_f", "adf_f_decimal", "adf_g", "adf_g_decimal", "cdf", "cdf_decimal",
                "psc", "psc_decimal", "seq_count", "orbit_count", "orbit_size", "f", "g",
            ])?;
        } else {
            w.write_record([
                "length", "adf", "adf_decimal", "seq_count", "orbit_count", "orbit_size", "seed",
            ])?;
        }
        for row in &self.representatives {
            let v = &row.values;
            let mut rec = vec![self.len.to_string(), fraction_string(&v.adf_f), decimal_string(&v.adf_f)];
            if self.objective.is_pair() {
                let adf_g = v.adf_g.as_ref().expect("pair rows carry adf_g");
                let cdf = v.cdf.as_ref().expect("pair rows carry cdf");
                rec.extend([
                    fraction_string(adf_g),
                    decimal_string(adf_g),
                    fraction_string(cdf),
                    decimal_string(cdf),
                    v.psc_exact.as_ref().map(fraction_string).unwrap_or_default(),
                    decimal_f64(v.psc_float.unwrap_or(f64::NAN)),
                ]);
            }
            rec.extend([
                self.seq_count.to_string(),
                self.orbit_count.to_string(),
                row.orbit_size.to_string(),
                row.f_hex(),
            ]);
            if let Some(g) = row.g_hex() {
                rec.push(g);
            }
            w.write_record(&rec)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Smallest limiting ADF over all seeds of length `len`.
pub fn scan_min_adf(len: usize, workers: usize, checkpoint: Option<&Path>) -> Result<ScanReport> {
    Scanner::new(Objective::MinAdf, len)
        .workers(workers)
        .checkpoint(checkpoint)
        .run_to_end()
}

/// Smallest limiting PSC over all ordered pairs of seeds of length `len`.
pub fn scan_min_psc_pairs(len: usize, workers: usize, checkpoint: Option<&Path>) -> Result<ScanReport> {
    Scanner::new(Objective::MinPsc, len)
        .workers(workers)
        .checkpoint(checkpoint)
        .run_to_end()
}

/// Smallest limiting PSC over pairs drawn from the ADF minimizers.
pub fn scan_min_psc_restricted(len: usize, workers: usize) -> Result<ScanReport> {
    Scanner::new(Objective::RestrictedPsc, len)
        .workers(workers)
        .run_to_end()
}

/// Continues an interrupted scan from its checkpoint file.
pub fn resume(checkpoint: &Path) -> Result<ScanReport> {
    Scanner::from_checkpoint(checkpoint)?.run_to_end()
}

/// Exact limiting values of one hex seed.
pub fn verify_seed(hex: &str, len: usize) -> Result<LimitReport> {
    let f = decode_hex(hex, len)?.to_poly();
    limits(&f, &f)
}

/// Exact limiting values of a pair of hex seeds.
pub fn verify_pair(hex_f: &str, hex_g: &str, len: usize) -> Result<LimitReport> {
    let f = decode_hex(hex_f, len)?.to_poly();
    let g = decode_hex(hex_g, len)?.to_poly();
    limits(&f, &g)
}
