use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use rsl_core::asymptotics::{reciprocal_cdf_pair, finite_cdf_closed_form, limits as exact_limits, LimitReport};
use rsl_core::hex::{decode_hex, encode_hex};
use rsl_core::report::{decimal_f64, decimal_string, fraction_string};
use rsl_core::search::{Objective, ScanReport, ScanStatus, Scanner};
use rsl_core::stem::{stem as build_stem, Sign, StemSpec, MAX_DEPTH};
use rsl_core::symmetry::{orbit as seq_orbit, orbit_pair};
use rsl_core::{IntLaurentPoly, LittlewoodSeq};

use crate::{CliError, CliResult, Format};

pub(crate) fn usage(flag: &str, value: impl std::fmt::Display, why: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("invalid value '{value}' for '--{flag}': {why}"))
}

pub(crate) fn seed_arg(flag: &str, hex: &str, len: usize) -> CliResult<LittlewoodSeq> {
    decode_hex(hex, len).map_err(|e| usage(flag, hex, e))
}

fn csv_string(header: &[&str], rows: &[Vec<String>]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Compute(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Compute(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn json_string(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn frac(r: &BigRational) -> Value {
    Value::String(fraction_string(r))
}

/// Coefficients as `+`/`-` when every entry is ±1, else comma-separated.
fn coeff_string(p: &IntLaurentPoly) -> String {
    if p.is_littlewood() {
        p.coeffs().iter().map(|c| if *c == BigInt::from(1) { '+' } else { '-' }).collect()
    } else {
        p.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }
}

pub fn decode(hex: &str, len: usize, fmt: Format) -> CliResult<String> {
    let f = seed_arg("hex", hex, len)?;
    let coeffs: Vec<i8> = f.signs();
    Ok(match fmt {
        Format::Pretty => format!("{f}\n"),
        Format::Json => json_string(&json!({ "hex": hex, "len": len, "signs": f.to_string(), "coefficients": coeffs })),
        Format::Csv => csv_string(&["hex", "len", "signs"], &[vec![hex.into(), len.to_string(), f.to_string()]])?,
    })
}

pub fn encode(seq: &str, fmt: Format) -> CliResult<String> {
    let signs: Vec<i8> = seq
        .chars()
        .map(|c| match c {
            '+' => Ok(1),
            '-' => Ok(-1),
            other => Err(usage("seq", seq, format_args!("unexpected character {other:?}; use + and -"))),
        })
        .collect::<CliResult<_>>()?;
    let f = LittlewoodSeq::from_signs(&signs).map_err(|e| usage("seq", seq, e))?;
    let hex = encode_hex(&f);
    Ok(match fmt {
        Format::Pretty => format!("{hex}\n"),
        Format::Json => json_string(&json!({ "signs": seq, "len": f.len(), "hex": hex })),
        Format::Csv => csv_string(&["signs", "len", "hex"], &[vec![seq.into(), f.len().to_string(), hex]])?,
    })
}

pub fn stem(
    seed: &str,
    seed2: Option<&str>,
    len: usize,
    signs: Option<&str>,
    depth: usize,
    fmt: Format,
) -> CliResult<String> {
    let f0 = seed_arg("seed", seed, len)?.to_poly();
    let g0 = seed2.map(|s| seed_arg("seed2", s, len)).transpose()?.map(|g| g.to_poly());
    if depth > MAX_DEPTH {
        return Err(usage("depth", depth, format_args!("at most {MAX_DEPTH}")));
    }
    let signs = match signs {
        None => vec![Sign::Plus; depth],
        Some(text) => {
            let s = Sign::parse_sequence(text).map_err(|e| usage("signs", text, e))?;
            if s.len() < depth {
                return Err(usage("signs", text, format_args!("{} signs for depth {depth}", s.len())));
            }
            s
        }
    };
    let fs = build_stem(&StemSpec::new(f0.clone(), signs.clone())?, depth)?;
    let gs = match &g0 {
        Some(g) => Some(build_stem(&StemSpec::new(g.clone(), signs.clone())?, depth)?),
        None => None,
    };
    let one = BigRational::from_integer(1.into());
    // one sign sequence drives both stems, so every sign product is +1
    let plus = vec![Sign::Plus; depth];
    let mut steps = Vec::new();
    for n in 0..=depth {
        let adf_f = finite_cdf_closed_form(&f0, &f0, n, &plus)? - &one;
        let (adf_g, cdf) = match &g0 {
            Some(g) => (
                Some(finite_cdf_closed_form(g, g, n, &plus)? - &one),
                Some(finite_cdf_closed_form(&f0, g, n, &plus)?),
            ),
            None => (None, None),
        };
        steps.push((n, adf_f, adf_g, cdf));
    }
    let sign_text: String = signs[..depth].iter().map(ToString::to_string).collect();
    Ok(match fmt {
        Format::Pretty => {
            let mut out = String::new();
            for (n, adf_f, adf_g, cdf) in &steps {
                write!(out, "n={n} len={} adf_f={}", fs[*n].len(), fraction_string(adf_f)).unwrap();
                if let (Some(a), Some(c)) = (adf_g, cdf) {
                    write!(out, " adf_g={} cdf={}", fraction_string(a), fraction_string(c)).unwrap();
                }
                writeln!(out, "\n  f={}", coeff_string(&fs[*n])).unwrap();
                if let Some(gs) = &gs {
                    writeln!(out, "  g={}", coeff_string(&gs[*n])).unwrap();
                }
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = steps
                .iter()
                .map(|(n, adf_f, adf_g, cdf)| {
                    let mut m = Map::new();
                    m.insert("n".into(), json!(n));
                    m.insert("len".into(), json!(fs[*n].len()));
                    m.insert("adf_f".into(), frac(adf_f));
                    if let (Some(a), Some(c), Some(gs)) = (adf_g, cdf, &gs) {
                        m.insert("adf_g".into(), frac(a));
                        m.insert("cdf".into(), frac(c));
                        m.insert("g".into(), json!(coeff_string(&gs[*n])));
                    }
                    m.insert("f".into(), json!(coeff_string(&fs[*n])));
                    Value::Object(m)
                })
                .collect();
            json_string(&json!({
                "seed": seed, "seed2": seed2, "len": len, "signs": sign_text, "depth": depth, "steps": rows,
            }))
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = steps
                .iter()
                .map(|(n, adf_f, adf_g, cdf)| {
                    let opt = |r: &Option<BigRational>| r.as_ref().map(fraction_string).unwrap_or_default();
                    vec![
                        n.to_string(),
                        fs[*n].len().to_string(),
                        fraction_string(adf_f),
                        decimal_string(adf_f),
                        opt(adf_g),
                        opt(cdf),
                        coeff_string(&fs[*n]),
                        gs.as_ref().map(|g| coeff_string(&g[*n])).unwrap_or_default(),
                    ]
                })
                .collect();
            csv_string(&["n", "length", "adf_f", "adf_f_decimal", "adf_g", "cdf", "f", "g"], &rows)?
        }
    })
}

fn plain(v: &Value) -> String {
    v.as_str().map_or_else(|| v.to_string(), str::to_owned)
}

fn limit_fields(r: &LimitReport) -> Vec<(&'static str, String, String)> {
    let mut v = vec![
        ("adf_f", fraction_string(&r.adf_f), decimal_string(&r.adf_f)),
        ("adf_g", fraction_string(&r.adf_g), decimal_string(&r.adf_g)),
        ("cdf", fraction_string(&r.cdf), decimal_string(&r.cdf)),
    ];
    let exact = r.psc.psc_exact.as_ref().map(fraction_string).unwrap_or_default();
    v.push(("psc", exact, decimal_f64(r.psc.psc_float)));
    v
}

fn render_limits(head: Vec<(&str, Value)>, r: &LimitReport, fmt: Format) -> CliResult<String> {
    let fields = limit_fields(r);
    Ok(match fmt {
        Format::Pretty => {
            let mut out = String::new();
            for (k, v) in &head {
                writeln!(out, "{k:<6} {}", plain(v)).unwrap();
            }
            for (k, exact, dec) in &fields {
                let exact = if exact.is_empty() { "-" } else { exact };
                writeln!(out, "{k:<6} {exact}  ({dec})").unwrap();
            }
            out
        }
        Format::Json => {
            let mut m = Map::new();
            for (k, v) in head {
                m.insert(k.into(), v);
            }
            for (k, exact, dec) in fields {
                m.insert(k.into(), if exact.is_empty() { Value::Null } else { json!(exact) });
                m.insert(format!("{k}_decimal"), json!(dec));
            }
            json_string(&Value::Object(m))
        }
        Format::Csv => {
            let mut header: Vec<String> = head.iter().map(|(k, _)| k.to_string()).collect();
            let mut row: Vec<String> = head.iter().map(|(_, v)| plain(v)).collect();
            for (k, exact, dec) in fields {
                header.push(k.into());
                header.push(format!("{k}_decimal"));
                row.push(exact);
                row.push(dec);
            }
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            csv_string(&header, &[row])?
        }
    })
}

fn limit_report(seed: &str, seed2: Option<&str>, len: usize) -> CliResult<LimitReport> {
    let f = seed_arg("seed", seed, len)?;
    let g = match seed2 {
        Some(s) => seed_arg("seed2", s, len)?,
        None => f,
    };
    Ok(exact_limits(&f.to_poly(), &g.to_poly())?)
}

pub fn limits(seed: &str, seed2: Option<&str>, len: usize, fmt: Format) -> CliResult<String> {
    let r = limit_report(seed, seed2, len)?;
    let head = vec![
        ("len", json!(len)),
        ("f", json!(seed)),
        ("g", json!(seed2.unwrap_or(seed))),
    ];
    render_limits(head, &r, fmt)
}

pub fn scan(
    objective: Objective,
    len: usize,
    workers: usize,
    checkpoint: Option<&Path>,
    resume: bool,
    fmt: Format,
) -> CliResult<String> {
    if len == 0 || len > objective.max_len() {
        return Err(usage("len", len, format_args!("the {objective} scan supports 1..={}", objective.max_len())));
    }
    let resume = resume && checkpoint.is_some_and(Path::exists);
    let status = Scanner::new(objective, len)
        .workers(workers)
        .checkpoint(checkpoint)
        .resume(resume)
        .run()?;
    let ScanStatus::Complete(report) = status else {
        unreachable!("no range budget was set")
    };
    render_scan(&report, fmt)
}

pub fn render_scan(report: &ScanReport, fmt: Format) -> CliResult<String> {
    Ok(match fmt {
        Format::Json => report.to_json()?,
        Format::Csv => report.to_csv()?,
        Format::Pretty => {
            let v = &report.min_value;
            let mut out = String::new();
            writeln!(out, "objective {} len {}", report.objective, report.len).unwrap();
            match (&v.psc_exact, v.psc_float) {
                (Some(p), _) if report.objective.is_pair() => {
                    writeln!(out, "min psc {}  ({})", fraction_string(p), decimal_string(p)).unwrap()
                }
                (None, Some(x)) => writeln!(out, "min psc {}", decimal_f64(x)).unwrap(),
                _ => writeln!(out, "min adf {}  ({})", fraction_string(&v.adf_f), decimal_string(&v.adf_f)).unwrap(),
            }
            writeln!(out, "{} sequences in {} orbits", report.seq_count, report.orbit_count).unwrap();
            for row in &report.representatives {
                let rv = &row.values;
                write!(out, "  {}", row.f_hex()).unwrap();
                if let Some(g) = row.g_hex() {
                    write!(out, " {g}").unwrap();
                }
                write!(out, "  orbit {}  adf {}", row.orbit_size, fraction_string(&rv.adf_f)).unwrap();
                if let (Some(a), Some(c)) = (&rv.adf_g, &rv.cdf) {
                    write!(out, " {}  cdf {}", fraction_string(a), fraction_string(c)).unwrap();
                }
                out.push('\n');
            }
            out
        }
    })
}

pub fn orbit(seed: &str, seed2: Option<&str>, len: usize, fmt: Format) -> CliResult<String> {
    let f = seed_arg("seed", seed, len)?;
    let (canonical, members): (Vec<String>, Vec<Vec<String>>) = match seed2 {
        None => {
            let o = seq_orbit(f);
            (vec![encode_hex(&o.canonical)], o.members.iter().map(|m| vec![encode_hex(m)]).collect())
        }
        Some(s) => {
            let g = seed_arg("seed2", s, len)?;
            let o = orbit_pair((f, g));
            let (cf, cg) = o.canonical;
            (
                vec![encode_hex(&cf), encode_hex(&cg)],
                o.members.iter().map(|(a, b)| vec![encode_hex(a), encode_hex(b)]).collect(),
            )
        }
    };
    Ok(match fmt {
        Format::Pretty => {
            let mut out = format!("canonical {}\nsize {}\n", canonical.join(" "), members.len());
            for m in &members {
                writeln!(out, "  {}", m.join(" ")).unwrap();
            }
            out
        }
        Format::Json => json_string(&json!({
            "len": len,
            "canonical": canonical,
            "size": members.len(),
            "members": members,
        })),
        Format::Csv => {
            let header: &[&str] = if seed2.is_some() { &["f", "g", "canonical"] } else { &["f", "canonical"] };
            let rows: Vec<Vec<String>> = members
                .iter()
                .map(|m| {
                    let mut r = m.clone();
                    r.push((*m == canonical).to_string());
                    r
                })
                .collect();
            csv_string(header, &rows)?
        }
    })
}

pub fn cdf_family(k: usize, fmt: Format) -> CliResult<String> {
    if k == 0 {
        return Err(usage("k", k, "must be a positive integer"));
    }
    let (f, g) = reciprocal_cdf_pair(k)?;
    let r = exact_limits(&f, &g)?;
    let head = vec![
        ("k", json!(k)),
        ("len", json!(4 * k)),
        ("f", json!(coeff_string(&f))),
        ("g", json!(coeff_string(&g))),
    ];
    render_limits(head, &r, fmt)
}
