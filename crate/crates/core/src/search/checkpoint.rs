//! Line-oriented checkpoint files.
//!
//! ```text
//! rsl-scan-checkpoint 1
//! objective adf
//! len 16
//! width 64
//! range 0 best=44,0 hits=1b:0,2c:0
//! range 1 best=none hits=
//! cursor 2
//! best 44,0 hits=2
//! end sha256=<hex digest of everything above>
//! ```
//!
//! `range` lines hold completed ranges, `cursor` is the first range still
//! pending and `best` is the minimum over completed ranges so far.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use super::kernel::Score;
use super::scan::Partial;
use super::Objective;
use crate::error::{Error, Result};

const MAGIC: &str = "rsl-scan-checkpoint 1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Header {
    pub objective: Objective,
    pub len: usize,
    pub width: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct State {
    pub header: Header,
    pub ranges: BTreeMap<usize, Partial>,
}

impl State {
    fn cursor(&self) -> usize {
        (0..self.header.width)
            .find(|i| !self.ranges.contains_key(i))
            .unwrap_or(self.header.width)
    }

    fn best(&self) -> Partial {
        self.ranges
            .values()
            .cloned()
            .fold(Partial::default(), Partial::merge)
    }
}

fn hex_digest(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    let mut out = String::with_capacity(64);
    for b in digest.iter() {
        write!(out, "{b:02x}").expect("writing to a string");
    }
    out
}

fn score_field(best: Option<Score>) -> String {
    match best {
        Some(s) => format!("{},{}", s.p, s.q),
        None => "none".into(),
    }
}

pub(crate) fn render(state: &State) -> String {
    let h = &state.header;
    let mut body = format!(
        "{MAGIC}\nobjective {}\nlen {}\nwidth {}\n",
        h.objective, h.len, h.width
    );
    for (i, part) in &state.ranges {
        let hits: Vec<String> = part.hits.iter().map(|(f, g)| format!("{f:x}:{g:x}")).collect();
        writeln!(body, "range {i} best={} hits={}", score_field(part.best), hits.join(","))
            .expect("writing to a string");
    }
    let best = state.best();
    writeln!(body, "cursor {}", state.cursor()).expect("writing to a string");
    writeln!(body, "best {} hits={}", score_field(best.best), best.hits.len())
        .expect("writing to a string");
    let digest = hex_digest(&body);
    body.push_str(&format!("end sha256={digest}\n"));
    body
}

/// Writes atomically via a sibling temporary file.
pub(crate) fn write(path: &Path, state: &State) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    fs::write(&tmp, render(state))?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn corrupt(msg: impl Into<String>) -> Error {
    Error::CorruptCheckpoint(msg.into())
}

fn field<'a>(line: Option<&'a str>, key: &str) -> Result<&'a str> {
    line.and_then(|l| l.strip_prefix(key))
        .and_then(|l| l.strip_prefix(' '))
        .ok_or_else(|| corrupt(format!("missing `{key}` line")))
}

fn number(text: &str, what: &str) -> Result<usize> {
    text.parse().map_err(|_| corrupt(format!("bad {what}: {text:?}")))
}

fn parse_score(text: &str) -> Result<Option<Score>> {
    if text == "none" {
        return Ok(None);
    }
    let (p, q) = text.split_once(',').ok_or_else(|| corrupt("bad score"))?;
    Ok(Some(Score {
        p: p.parse().map_err(|_| corrupt("bad score"))?,
        q: q.parse().map_err(|_| corrupt("bad score"))?,
    }))
}

fn parse_hits(text: &str) -> Result<Vec<(u64, u64)>> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|h| {
            let (f, g) = h.split_once(':').ok_or_else(|| corrupt("bad hit"))?;
            let f = u64::from_str_radix(f, 16).map_err(|_| corrupt("bad hit"))?;
            let g = u64::from_str_radix(g, 16).map_err(|_| corrupt("bad hit"))?;
            Ok((f, g))
        })
        .collect()
}

pub(crate) fn parse(text: &str) -> Result<State> {
    let body_end = text
        .rfind("end sha256=")
        .ok_or_else(|| corrupt("missing content hash"))?;
    let (body, tail) = text.split_at(body_end);
    let stated = tail
        .strip_prefix("end sha256=")
        .map(str::trim_end)
        .ok_or_else(|| corrupt("missing content hash"))?;
    if stated != hex_digest(body) {
        return Err(corrupt("content hash does not match"));
    }
    let mut lines = body.lines();
    if lines.next() != Some(MAGIC) {
        return Err(corrupt("unrecognized header"));
    }
    let objective = field(lines.next(), "objective")?
        .parse::<Objective>()
        .map_err(|_| corrupt("unknown objective"))?;
    let len = number(field(lines.next(), "len")?, "length")?;
    let width = number(field(lines.next(), "width")?, "width")?;
    let header = Header {
        objective,
        len,
        width,
    };
    let mut ranges = BTreeMap::new();
    let mut rest = lines.peekable();
    while let Some(line) = rest.next_if(|l| l.starts_with("range ")) {
        let mut parts = line["range ".len()..].splitn(3, ' ');
        let idx = number(parts.next().unwrap_or(""), "range index")?;
        let best = parse_score(
            parts
                .next()
                .and_then(|p| p.strip_prefix("best="))
                .ok_or_else(|| corrupt("bad range line"))?,
        )?;
        let hits = parse_hits(
            parts
                .next()
                .and_then(|p| p.strip_prefix("hits="))
                .ok_or_else(|| corrupt("bad range line"))?,
        )?;
        if idx >= width || ranges.insert(idx, Partial { best, hits }).is_some() {
            return Err(corrupt(format!("range {idx} is out of place")));
        }
    }
    let state = State { header, ranges };
    let cursor = number(field(rest.next(), "cursor")?, "cursor")?;
    if cursor != state.cursor() {
        return Err(corrupt("cursor disagrees with completed ranges"));
    }
    let best_line = field(rest.next(), "best")?;
    let expected = state.best();
    let expected_line = format!("{} hits={}", score_field(expected.best), expected.hits.len());
    if best_line != expected_line {
        return Err(corrupt("best-so-far snapshot disagrees with completed ranges"));
    }
    if rest.next().is_some() {
        return Err(corrupt("trailing lines"));
    }
    Ok(state)
}

pub(crate) fn read(path: &Path) -> Result<State> {
    parse(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> State {
        let mut ranges = BTreeMap::new();
        ranges.insert(
            0,
            Partial {
                best: Some(Score { p: 44, q: 0 }),
                hits: vec![(0x1b, 0), (0x2c, 0)],
            },
        );
        ranges.insert(1, Partial::default());
        ranges.insert(3, Partial { best: Some(Score { p: 50, q: 9 }), hits: vec![(1, 2)] });
        State {
            header: Header {
                objective: Objective::MinAdf,
                len: 16,
                width: 64,
            },
            ranges,
        }
    }

    #[test]
    fn round_trip() {
        let s = sample();
        let text = render(&s);
        assert!(text.contains("cursor 2\n"));
        assert!(text.contains("best 44,0 hits=2\n"));
        assert_eq!(parse(&text).unwrap(), s);
    }

    #[test]
    fn tampering_is_detected() {
        let text = render(&sample());
        let tampered = text.replace("cursor 2", "cursor 3");
        assert!(matches!(parse(&tampered), Err(Error::CorruptCheckpoint(_))));
        let tampered = text.replace("hits=1b:0", "hits=1a:0");
        assert!(matches!(parse(&tampered), Err(Error::CorruptCheckpoint(_))));
        assert!(parse(&text[..text.len() - 10]).is_err());
        assert!(parse("").is_err());
    }
}
