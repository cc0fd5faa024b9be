//! Per-length minimizer tables in the layout of the golden fixtures.
//!
//! - table 1: `length,adf,seq_count,orbit_count,sample_seed`, one row per
//!   length, the sample being the smallest canonical minimizer;
//! - table 2: `length,adf_f,adf_g,cdf,orbit_size,f,g`, one row per
//!   PSC-minimizing orbit;
//! - table 3: `length,cdf,orbit_size,f,g`, one row per orbit minimizing PSC
//!   among pairs of ADF minimizers.

use rsl_core::report::fraction_string;
use rsl_core::search::{scan_min_adf, scan_min_psc_pairs, scan_min_psc_restricted, Objective, ScanReport};
use serde_json::{Map, Value};

use crate::commands::usage;
use crate::{CliError, CliResult, Format};

fn header(table: u8) -> &'static [&'static str] {
    match table {
        1 => &["length", "adf", "seq_count", "orbit_count", "sample_seed"],
        2 => &["length", "adf_f", "adf_g", "cdf", "orbit_size", "f", "g"],
        _ => &["length", "cdf", "orbit_size", "f", "g"],
    }
}

fn rows(table: u8, r: &ScanReport) -> Vec<Vec<String>> {
    let len = r.len.to_string();
    if table == 1 {
        let sample = r.representatives.first().map(|row| row.f_hex()).unwrap_or_default();
        return vec![vec![
            len,
            fraction_string(&r.min_value.adf_f),
            r.seq_count.to_string(),
            r.orbit_count.to_string(),
            sample,
        ]];
    }
    r.representatives
        .iter()
        .map(|row| {
            let v = &row.values;
            let cdf = fraction_string(v.cdf.as_ref().expect("pair rows carry cdf"));
            let (f, g) = (row.f_hex(), row.g_hex().expect("pair rows carry g"));
            if table == 2 {
                let adf_g = fraction_string(v.adf_g.as_ref().expect("pair rows carry adf_g"));
                vec![len.clone(), fraction_string(&v.adf_f), adf_g, cdf, row.orbit_size.to_string(), f, g]
            } else {
                vec![len.clone(), cdf, row.orbit_size.to_string(), f, g]
            }
        })
        .collect()
}

pub fn emit(table: u8, from: usize, to: usize, workers: usize, fmt: Format) -> CliResult<String> {
    let objective = match table {
        1 => Objective::MinAdf,
        2 => Objective::MinPsc,
        _ => Objective::RestrictedPsc,
    };
    if from == 0 || from > to {
        return Err(usage("from", from, format_args!("need 1 <= --from <= --to ({to})")));
    }
    if to > objective.max_len() {
        return Err(usage("to", to, format_args!("table {table} supports lengths up to {}", objective.max_len())));
    }
    let mut all = Vec::new();
    for len in from..=to {
        let report = match objective {
            Objective::MinAdf => scan_min_adf(len, workers, None)?,
            Objective::MinPsc => scan_min_psc_pairs(len, workers, None)?,
            Objective::RestrictedPsc => scan_min_psc_restricted(len, workers)?,
        };
        all.extend(rows(table, &report));
    }
    let head = header(table);
    match fmt {
        Format::Json => {
            let objs: Vec<Value> = all
                .iter()
                .map(|r| {
                    let m: Map<String, Value> =
                        head.iter().zip(r).map(|(k, v)| (k.to_string(), Value::String(v.clone()))).collect();
                    Value::Object(m)
                })
                .collect();
            Ok(serde_json::to_string_pretty(&objs).expect("json values serialize"))
        }
        // the table layout is already human-readable
        Format::Csv | Format::Pretty => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| CliError::Compute(e.to_string());
            w.write_record(head).map_err(io)?;
            for r in &all {
                w.write_record(r).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Compute(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}
