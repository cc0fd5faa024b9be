use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;

use super::checkpoint::{self, Header, State};
use super::kernel::{adf_key, Score, SeedStats};
use super::{scan_min_adf, Objective, OrbitRow, ScanReport, Values};
use crate::error::{Error, Result};
use crate::littlewood::LittlewoodSeq;
use crate::symmetry::{
    canonical, is_canonical, is_canonical_pair, orbit, orbit_pair_size, orbit_size,
};

/// Upper limit on the number of prefix ranges a scan is split into.
pub const MAX_RANGES: usize = 64;

/// Minimum score seen in some part of the search space, with every seed
/// (or pair) attaining it. Merging is associative and commutative once the
/// hits are sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Partial {
    pub best: Option<Score>,
    pub hits: Vec<(u64, u64)>,
}

impl Partial {
    #[inline]
    fn offer(&mut self, score: Score, hit: (u64, u64)) {
        match self.best {
            Some(b) if score > b => {}
            Some(b) if score == b => self.hits.push(hit),
            _ => {
                self.best = Some(score);
                self.hits.clear();
                self.hits.push(hit);
            }
        }
    }

    pub fn merge(mut self, other: Partial) -> Partial {
        match (self.best, other.best) {
            (_, None) => {}
            (None, Some(_)) => return other,
            (Some(a), Some(b)) => {
                if b < a {
                    return other;
                }
                if a == b {
                    self.hits.extend(other.hits);
                    self.hits.sort_unstable();
                }
            }
        }
        self
    }
}

enum Space {
    Singles,
    Pairs {
        stats: Vec<SeedStats>,
        canon: Vec<u64>,
    },
    Restricted {
        members: Vec<SeedStats>,
        canon: Vec<u64>,
        reps: Vec<usize>,
    },
}

struct Domain {
    objective: Objective,
    len: usize,
    space: Space,
    outer: usize,
    width: usize,
    scanned: u128,
}

impl Domain {
    fn prepare(objective: Objective, len: usize, workers: usize) -> Result<Domain> {
        if len == 0 || len > objective.max_len() {
            return Err(Error::UnsupportedLength {
                len,
                reason: format!(
                    "the {objective} scan supports 1 <= len <= {}",
                    objective.max_len()
                ),
            });
        }
        let all = 1usize << len;
        let (space, outer, scanned) = match objective {
            Objective::MinAdf => (Space::Singles, all, all as u128),
            Objective::MinPsc => {
                let stats: Vec<SeedStats> =
                    LittlewoodSeq::all(len).map(SeedStats::new).collect();
                let canon = LittlewoodSeq::all(len).map(|f| canonical(f).bits()).collect();
                (Space::Pairs { stats, canon }, all, (all as u128) * (all as u128))
            }
            Objective::RestrictedPsc => {
                let minimizers = scan_min_adf(len, workers, None)?;
                let mut seqs: Vec<LittlewoodSeq> = minimizers
                    .representatives
                    .iter()
                    .flat_map(|row| orbit(row.f).members)
                    .collect();
                seqs.sort_unstable();
                let canon: Vec<u64> = seqs.iter().map(|&f| canonical(f).bits()).collect();
                let reps = (0..seqs.len())
                    .filter(|&i| canon[i] == seqs[i].bits())
                    .collect::<Vec<_>>();
                let members: Vec<SeedStats> = seqs.into_iter().map(SeedStats::new).collect();
                let n = members.len() as u128;
                let outer = reps.len();
                (Space::Restricted { members, canon, reps }, outer, n * n)
            }
        };
        Ok(Domain {
            objective,
            len,
            space,
            outer,
            width: outer.min(MAX_RANGES),
            scanned,
        })
    }

    fn bounds(&self, range: usize) -> (usize, usize) {
        (
            range * self.outer / self.width,
            (range + 1) * self.outer / self.width,
        )
    }

    fn header(&self) -> Header {
        Header {
            objective: self.objective,
            len: self.len,
            width: self.width,
        }
    }

    fn process(&self, range: usize) -> Partial {
        let (start, end) = self.bounds(range);
        let len = self.len;
        let mut part = Partial::default();
        match &self.space {
            Space::Singles => {
                for x in start..end {
                    let f = LittlewoodSeq::from_raw(len, x as u64);
                    if is_canonical(f) {
                        part.offer(Score::adf(adf_key(f)), (f.bits(), 0));
                    }
                }
            }
            Space::Pairs { stats, canon } => {
                for a in start..end {
                    let sa = &stats[a];
                    if !is_canonical(sa.seq) {
                        continue;
                    }
                    for (sb, &cb) in stats.iter().zip(canon) {
                        if cb < a as u64 || !is_canonical_pair((sa.seq, sb.seq)) {
                            continue;
                        }
                        part.offer(Score::psc(sa, sb), (sa.seq.bits(), sb.seq.bits()));
                    }
                }
            }
            Space::Restricted {
                members,
                canon,
                reps,
            } => {
                for &ia in &reps[start..end] {
                    let sa = &members[ia];
                    let a = sa.seq.bits();
                    for (sb, &cb) in members.iter().zip(canon) {
                        if cb < a || !is_canonical_pair((sa.seq, sb.seq)) {
                            continue;
                        }
                        part.offer(Score::psc(sa, sb), (a, sb.seq.bits()));
                    }
                }
            }
        }
        part.hits.sort_unstable();
        part
    }

    fn report(&self, merged: Partial, elapsed: f64) -> Result<ScanReport> {
        let mut rows = Vec::with_capacity(merged.hits.len());
        for &(f, g) in &merged.hits {
            let f = LittlewoodSeq::from_raw(self.len, f);
            rows.push(if self.objective.is_pair() {
                let g = LittlewoodSeq::from_raw(self.len, g);
                OrbitRow {
                    f,
                    g: Some(g),
                    orbit_size: orbit_pair_size((f, g)),
                    values: Values::pair(f, g)?,
                }
            } else {
                OrbitRow {
                    f,
                    g: None,
                    orbit_size: orbit_size(f),
                    values: Values::single(f)?,
                }
            });
        }
        let first = rows
            .first()
            .expect("every nonempty search space has a minimum");
        Ok(ScanReport {
            len: self.len,
            objective: self.objective,
            min_value: first.values.clone(),
            seq_count: rows.iter().map(|r| r.orbit_size as u64).sum(),
            orbit_count: rows.len() as u64,
            scanned: self.scanned,
            elapsed,
            representatives: rows,
        })
    }
}

/// Result of [`Scanner::run`].
#[derive(Clone, Debug, PartialEq)]
pub enum ScanStatus {
    Complete(ScanReport),
    /// Stopped after the range budget ran out; the checkpoint (if any)
    /// holds the completed ranges.
    Interrupted { completed: usize, total: usize },
}

/// Configurable scan driver.
#[derive(Clone, Debug)]
pub struct Scanner {
    objective: Objective,
    len: usize,
    workers: usize,
    checkpoint: Option<PathBuf>,
    resume: bool,
    range_budget: Option<usize>,
}

impl Scanner {
    pub fn new(objective: Objective, len: usize) -> Self {
        Scanner {
            objective,
            len,
            workers: 1,
            checkpoint: None,
            resume: false,
            range_budget: None,
        }
    }

    /// A scanner that continues the scan recorded in `path`.
    pub fn from_checkpoint(path: &Path) -> Result<Self> {
        let state = checkpoint::read(path)?;
        let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
        Ok(Scanner::new(state.header.objective, state.header.len)
            .workers(workers)
            .checkpoint(Some(path))
            .resume(true))
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn checkpoint(mut self, path: Option<&Path>) -> Self {
        self.checkpoint = path.map(Path::to_path_buf);
        self
    }

    /// Continue from an existing checkpoint instead of overwriting it.
    pub fn resume(mut self, resume: bool) -> Self {
        self.resume = resume;
        self
    }

    /// Stop after this many newly completed ranges.
    pub fn range_budget(mut self, budget: Option<usize>) -> Self {
        self.range_budget = budget;
        self
    }

    pub fn objective(&self) -> Objective {
        self.objective
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn run_to_end(self) -> Result<ScanReport> {
        match self.range_budget(None).run()? {
            ScanStatus::Complete(r) => Ok(r),
            ScanStatus::Interrupted { .. } => unreachable!("no budget was set"),
        }
    }

    pub fn run(&self) -> Result<ScanStatus> {
        let started = Instant::now();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::Io(std::io::Error::other(e)))?;
        let domain = pool.install(|| Domain::prepare(self.objective, self.len, self.workers))?;
        let header = domain.header();
        let mut done = BTreeMap::new();
        if let (true, Some(path)) = (self.resume, &self.checkpoint) {
            let state = checkpoint::read(path)?;
            if (state.header.objective, state.header.len) != (header.objective, header.len) {
                return Err(Error::ObjectiveMismatch {
                    expected: format!("{} len {}", header.objective, header.len),
                    found: format!("{} len {}", state.header.objective, state.header.len),
                });
            }
            if state.header.width != header.width {
                return Err(Error::CorruptCheckpoint(format!(
                    "partition width {} does not match {}",
                    state.header.width, header.width
                )));
            }
            done = state.ranges;
        }
        let mut pending: Vec<usize> = (0..domain.width).filter(|i| !done.contains_key(i)).collect();
        if let Some(budget) = self.range_budget {
            pending.truncate(budget);
        }
        let state = Mutex::new(State { header, ranges: done });
        if let Some(path) = &self.checkpoint {
            checkpoint::write(path, &state.lock().expect("checkpoint lock"))?;
        }
        pool.install(|| {
            pending.par_iter().try_for_each(|&i| -> Result<()> {
                let part = domain.process(i);
                let mut st = state.lock().expect("checkpoint lock");
                st.ranges.insert(i, part);
                if let Some(path) = &self.checkpoint {
                    checkpoint::write(path, &st)?;
                }
                Ok(())
            })
        })?;
        let state = state.into_inner().expect("checkpoint lock");
        if state.ranges.len() < domain.width {
            return Ok(ScanStatus::Interrupted {
                completed: state.ranges.len(),
                total: domain.width,
            });
        }
        let merged = state
            .ranges
            .into_values()
            .fold(Partial::default(), Partial::merge);
        let report = pool.install(|| domain.report(merged, started.elapsed().as_secs_f64()))?;
        Ok(ScanStatus::Complete(report))
    }
}
