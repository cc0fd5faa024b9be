//! The symmetry groups acting on seeds and seed pairs.
//!
//! On a single seed of length `ℓ` the generators are
//!
//! - `n`: `f ↦ -f`
//! - `h`: `f ↦ f̃`, i.e. `f(-z)`
//! - `r`: `f ↦ f†`
//!
//! and on pairs `n` negates only the first component, `h` and `r` act on
//! both, and `s` swaps the components. Every element of these groups leaves
//! the limiting demerit factors unchanged, so searches only need one seed per
//! orbit.
//!
//! Words compose like functions: `"hr"` applies `r` first.
//!
//! ```
//! use rsl_core::hex::decode_hex;
//! use rsl_core::symmetry::{act, orbit, SymmetryWord};
//!
//! let f = decode_hex("0036", 14).unwrap();
//! assert_eq!(orbit(f).size, 8);
//! let w: SymmetryWord = "nhr".parse().unwrap();
//! assert_eq!(orbit(act(&w, f).unwrap()).canonical, orbit(f).canonical);
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hex::encode_hex;
use crate::littlewood::{low_mask, LittlewoodSeq};
use crate::poly::{Coeff, GaussInt, GaussLaurentPoly, LaurentPoly};

/// An ordered seed pair `(f, g)`.
pub type SeqPair = (LittlewoodSeq, LittlewoodSeq);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    N,
    H,
    R,
    S,
}

impl Generator {
    pub const SINGLE: [Generator; 3] = [Generator::N, Generator::H, Generator::R];
    pub const PAIR: [Generator; 4] = [Generator::N, Generator::H, Generator::R, Generator::S];

    pub fn symbol(self) -> char {
        match self {
            Generator::N => 'n',
            Generator::H => 'h',
            Generator::R => 'r',
            Generator::S => 's',
        }
    }

    pub fn on_seq(self, f: LittlewoodSeq) -> Result<LittlewoodSeq> {
        Ok(match self {
            Generator::N => f.negate(),
            Generator::H => f.alternate(),
            Generator::R => f.reverse(),
            Generator::S => return Err(Error::PairOnlyGenerator),
        })
    }

    pub fn on_pair(self, (f, g): SeqPair) -> SeqPair {
        match self {
            Generator::N => (f.negate(), g),
            Generator::H => (f.alternate(), g.alternate()),
            Generator::R => (f.reverse(), g.reverse()),
            Generator::S => (g, f),
        }
    }

    /// Action on arbitrary polynomials with nonzero constant coefficient.
    pub fn on_poly<C: Coeff>(self, f: &LaurentPoly<C>) -> Result<LaurentPoly<C>> {
        match self {
            Generator::N => Ok(-f),
            Generator::H => Ok(f.alternate()),
            Generator::R => f.conj_reciprocal(),
            Generator::S => Err(Error::PairOnlyGenerator),
        }
    }

    pub fn on_poly_pair<C: Coeff>(
        self,
        (f, g): &(LaurentPoly<C>, LaurentPoly<C>),
    ) -> Result<(LaurentPoly<C>, LaurentPoly<C>)> {
        Ok(match self {
            Generator::N => (-f, g.clone()),
            Generator::H => (f.alternate(), g.alternate()),
            Generator::R => (f.conj_reciprocal()?, g.conj_reciprocal()?),
            Generator::S => (g.clone(), f.clone()),
        })
    }
}

/// A product of generators, read right to left.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SymmetryWord(Vec<Generator>);

impl SymmetryWord {
    pub fn identity() -> Self {
        SymmetryWord(Vec::new())
    }

    pub fn new(generators: Vec<Generator>) -> Self {
        SymmetryWord(generators)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn uses_swap(&self) -> bool {
        self.0.contains(&Generator::S)
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &SymmetryWord) -> SymmetryWord {
        let mut g = self.0.clone();
        g.extend_from_slice(&other.0);
        SymmetryWord(g)
    }

    pub fn pow(&self, k: usize) -> SymmetryWord {
        SymmetryWord(self.0.iter().copied().cycle().take(self.0.len() * k).collect())
    }

    fn rightmost_first(&self) -> impl Iterator<Item = Generator> + '_ {
        self.0.iter().rev().copied()
    }
}

impl FromStr for SymmetryWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "id" || s == "e" {
            return Ok(SymmetryWord::identity());
        }
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != '·' && *c != '*')
            .map(|c| match c {
                'n' => Ok(Generator::N),
                'h' => Ok(Generator::H),
                'r' => Ok(Generator::R),
                's' => Ok(Generator::S),
                _ => Err(Error::BadWord(c.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(SymmetryWord)
    }
}

impl fmt::Display for SymmetryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("id");
        }
        for g in &self.0 {
            write!(f, "{}", g.symbol())?;
        }
        Ok(())
    }
}

pub fn act(word: &SymmetryWord, f: LittlewoodSeq) -> Result<LittlewoodSeq> {
    word.rightmost_first().try_fold(f, |acc, g| g.on_seq(acc))
}

pub fn act_pair(word: &SymmetryWord, p: SeqPair) -> SeqPair {
    word.rightmost_first().fold(p, |acc, g| g.on_pair(acc))
}

pub fn act_poly<C: Coeff>(word: &SymmetryWord, f: &LaurentPoly<C>) -> Result<LaurentPoly<C>> {
    word.rightmost_first()
        .try_fold(f.clone(), |acc, g| g.on_poly(&acc))
}

pub fn act_poly_pair<C: Coeff>(
    word: &SymmetryWord,
    p: &(LaurentPoly<C>, LaurentPoly<C>),
) -> Result<(LaurentPoly<C>, LaurentPoly<C>)> {
    word.rightmost_first()
        .try_fold(p.clone(), |acc, g| g.on_poly_pair(&acc))
}

/// An orbit, sorted, with its smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRecord<T> {
    pub canonical: T,
    pub members: Vec<T>,
    pub size: usize,
}

impl<T: Ord + Copy> OrbitRecord<T> {
    fn from_set(set: BTreeSet<T>) -> Self {
        let members: Vec<T> = set.into_iter().collect();
        OrbitRecord {
            canonical: members[0],
            size: members.len(),
            members,
        }
    }
}

fn closure<T: Ord + Copy>(start: T, mut images: impl FnMut(T) -> Vec<T>) -> BTreeSet<T> {
    let mut seen = BTreeSet::from([start]);
    let mut frontier = vec![start];
    while let Some(x) = frontier.pop() {
        for y in images(x) {
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    seen
}

/// Orbit of a seed under `⟨n, h, r⟩`, by closure.
pub fn orbit(f: LittlewoodSeq) -> OrbitRecord<LittlewoodSeq> {
    OrbitRecord::from_set(closure(f, |x| {
        vec![x.negate(), x.alternate(), x.reverse()]
    }))
}

/// Orbit of an ordered pair under `⟨s, n, h, r⟩`, by closure.
pub fn orbit_pair(p: SeqPair) -> OrbitRecord<SeqPair> {
    OrbitRecord::from_set(closure(p, |x| {
        Generator::PAIR.iter().map(|g| g.on_pair(x)).collect()
    }))
}

#[inline]
fn min_sign(x: LittlewoodSeq) -> LittlewoodSeq {
    let neg = x.bits() ^ low_mask(x.len());
    if neg < x.bits() {
        x.negate()
    } else {
        x
    }
}

#[inline]
fn transforms(x: LittlewoodSeq) -> [LittlewoodSeq; 4] {
    let r = x.reverse();
    [x, x.alternate(), r, r.alternate()]
}

/// Smallest member of the orbit of `f`, without building the orbit.
///
/// Every element is `±t(f)` with `t ∈ {id, h, r, hr}`.
pub fn canonical(f: LittlewoodSeq) -> LittlewoodSeq {
    transforms(f)
        .into_iter()
        .map(min_sign)
        .min()
        .expect("four transforms")
}

/// Smallest member of the pair orbit of `(f, g)`.
///
/// Members are `(±t f, ±t g)` and `(±t g, ±t f)` with independent signs.
pub fn canonical_pair((f, g): SeqPair) -> SeqPair {
    let (tf, tg) = (transforms(f), transforms(g));
    let mut best = (min_sign(f), min_sign(g));
    for i in 0..4 {
        let a = (min_sign(tf[i]), min_sign(tg[i]));
        let b = (a.1, a.0);
        best = best.min(a).min(b);
    }
    best
}

pub fn is_canonical(f: LittlewoodSeq) -> bool {
    canonical(f) == f
}

pub fn is_canonical_pair(p: SeqPair) -> bool {
    canonical_pair(p) == p
}

/// Size of the orbit of `f`, without building it.
pub fn orbit_size(f: LittlewoodSeq) -> usize {
    let mut images: Vec<LittlewoodSeq> = transforms(f)
        .into_iter()
        .flat_map(|x| [x, x.negate()])
        .collect();
    images.sort_unstable();
    images.dedup();
    images.len()
}

pub fn orbit_pair_size((f, g): SeqPair) -> usize {
    let (tf, tg) = (transforms(f), transforms(g));
    let mut images = Vec::with_capacity(32);
    for i in 0..4 {
        for a in [tf[i], tf[i].negate()] {
            for b in [tg[i], tg[i].negate()] {
                images.push((a, b));
                images.push((b, a));
            }
        }
    }
    images.sort_unstable();
    images.dedup();
    images.len()
}

fn distinct_images<T: PartialEq>(start: T, images: impl Fn(&T) -> Vec<T>) -> Vec<T> {
    let mut seen = vec![start];
    let mut i = 0;
    while i < seen.len() {
        for y in images(&seen[i]) {
            if !seen.contains(&y) {
                seen.push(y);
            }
        }
        i += 1;
    }
    seen
}

/// Number of distinct images of a polynomial under `⟨n, h, r⟩`.
pub fn poly_orbit_size<C: Coeff>(f: &LaurentPoly<C>) -> Result<usize> {
    for g in Generator::SINGLE {
        g.on_poly(f)?;
    }
    Ok(distinct_images(f.clone(), |x| {
        Generator::SINGLE
            .iter()
            .map(|g| g.on_poly(x).expect("checked above"))
            .collect()
    })
    .len())
}

/// Number of distinct images of a polynomial pair under `⟨s, n, h, r⟩`.
pub fn poly_pair_orbit_size<C: Coeff>(p: &(LaurentPoly<C>, LaurentPoly<C>)) -> Result<usize> {
    for g in Generator::PAIR {
        g.on_poly_pair(p)?;
    }
    Ok(distinct_images(p.clone(), |x| {
        Generator::PAIR
            .iter()
            .map(|g| g.on_poly_pair(x).expect("checked above"))
            .collect()
    })
    .len())
}

/// Number of distinct images of `f` under the powers of one word.
pub fn word_cycle_length<C: Coeff>(word: &SymmetryWord, f: &LaurentPoly<C>) -> Result<usize> {
    let mut x = act_poly(word, f)?;
    let mut k = 1;
    while &x != f {
        x = act_poly(word, &x)?;
        k += 1;
    }
    Ok(k)
}

fn gauss(re: i64, im: i64) -> GaussInt {
    GaussInt::new(re.into(), im.into())
}

/// `1 + i z^{ℓ-1}`: its images under the powers of `rh` are distinct for even `ℓ`.
pub fn rh_witness(len: usize) -> GaussLaurentPoly {
    assert!(len >= 2, "witness needs length at least 2");
    &GaussLaurentPoly::monomial(gauss(1, 0), 0) + &GaussLaurentPoly::monomial(gauss(0, 1), len as i64 - 1)
}

/// A Gaussian-integer polynomial of length `ℓ` with as many images under
/// `⟨n, h, r⟩` as the group has elements: 4 for `ℓ = 1`, 8 otherwise.
pub fn group_order_witness(len: usize) -> GaussLaurentPoly {
    assert!(len >= 1, "witness needs positive length");
    let top = len as i64 - 1;
    match len {
        1 => GaussLaurentPoly::monomial(gauss(1, 1), 0),
        _ if len % 2 == 1 => {
            let head = GaussLaurentPoly::from_coeffs(vec![gauss(1, 0), gauss(1, 0)]);
            &head + &GaussLaurentPoly::monomial(gauss(0, 1), top)
        }
        _ => &GaussLaurentPoly::monomial(gauss(1, 0), 0) + &GaussLaurentPoly::monomial(gauss(0, 2), top),
    }
}

/// A Gaussian-integer pair with as many images under `⟨s, n, h, r⟩` as the
/// pair group has elements: 16 for `ℓ = 1`, 32 otherwise.
pub fn pair_group_order_witness(len: usize) -> (GaussLaurentPoly, GaussLaurentPoly) {
    let f = group_order_witness(len);
    let g = &f.scale(&gauss(3, 0)) + &GaussLaurentPoly::monomial(gauss(1, 0), 0);
    let g = if len == 1 {
        GaussLaurentPoly::monomial(gauss(1, 0), 0)
    } else {
        g
    };
    (f, g)
}

/// Outcome of [`group_relations_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub len: usize,
    /// Relations verified on single seeds, with the number of seeds checked.
    pub single: Vec<(String, usize)>,
    /// Relations verified on pairs, with the number of pairs checked.
    pub pair: Vec<(String, usize)>,
    /// Whether the pair relations were checked on every pair.
    pub pairs_exhaustive: bool,
}

/// Longest length checked by [`group_relations_check`].
pub const RELATION_MAX_LEN: usize = 16;
/// Pair relations are checked on all `4^ℓ` pairs up to this length and on
/// a deterministic sample of `2^ℓ` pairs above it.
pub const PAIR_EXHAUSTIVE_MAX_LEN: usize = 8;

fn word(s: &str) -> SymmetryWord {
    s.parse().expect("static word")
}

fn single_relations(len: usize) -> Vec<(SymmetryWord, SymmetryWord)> {
    let mut rel = vec![
        (word("nn"), word("id")),
        (word("hh"), word("id")),
        (word("rr"), word("id")),
        (word("nh"), word("hn")),
        (word("nr"), word("rn")),
    ];
    if len % 2 == 1 {
        rel.push((word("hr"), word("rh")));
    } else {
        rel.push((word("hr"), word("nrh")));
    }
    rel
}

fn pair_relations(len: usize) -> Vec<(SymmetryWord, SymmetryWord)> {
    let ns = word("ns");
    let mut rel = single_relations(len)
        .into_iter()
        .filter(|(a, _)| a.to_string() != "hr")
        .collect::<Vec<_>>();
    rel.extend([
        (word("ss"), word("id")),
        (ns.pow(4), word("id")),
        (word("s").compose(&ns).compose(&word("s")), ns.pow(3)),
        (word("hs"), word("sh")),
        (word("rs"), word("sr")),
    ]);
    // on pairs (ns)² = (f, g) ↦ (-f, -g) plays the role of n
    if len % 2 == 1 {
        rel.push((word("hr"), word("rh")));
    } else {
        rel.push((word("hr"), ns.pow(2).compose(&word("rh"))));
    }
    rel
}

fn sample_pairs(len: usize) -> Box<dyn Iterator<Item = SeqPair>> {
    if len <= PAIR_EXHAUSTIVE_MAX_LEN {
        Box::new(LittlewoodSeq::all(len).flat_map(move |f| LittlewoodSeq::all(len).map(move |g| (f, g))))
    } else {
        let mask = low_mask(len);
        Box::new(LittlewoodSeq::all(len).map(move |f| {
            let mixed = f.bits().wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(29) & mask;
            (f, LittlewoodSeq::from_raw(len, mixed))
        }))
    }
}

/// Verifies the defining relations of both groups as permutations of the
/// Littlewood seeds (and pairs) of length `len`.
pub fn group_relations_check(len: usize) -> Result<RelationReport> {
    if len == 0 || len > RELATION_MAX_LEN {
        return Err(Error::UnsupportedLength {
            len,
            reason: format!("relations are checked for 1 <= len <= {RELATION_MAX_LEN}"),
        });
    }
    let mut single = Vec::new();
    for (lhs, rhs) in single_relations(len) {
        let mut count = 0;
        for f in LittlewoodSeq::all(len) {
            if act(&lhs, f)? != act(&rhs, f)? {
                return Err(Error::RelationViolation {
                    relation: format!("{lhs} = {rhs}"),
                    witness: encode_hex(&f),
                });
            }
            count += 1;
        }
        single.push((format!("{lhs} = {rhs}"), count));
    }
    let mut pair = Vec::new();
    for (lhs, rhs) in pair_relations(len) {
        let mut count = 0;
        for p in sample_pairs(len) {
            if act_pair(&lhs, p) != act_pair(&rhs, p) {
                return Err(Error::RelationViolation {
                    relation: format!("{lhs} = {rhs} on pairs"),
                    witness: format!("({}, {})", encode_hex(&p.0), encode_hex(&p.1)),
                });
            }
            count += 1;
        }
        pair.push((format!("{lhs} = {rhs}"), count));
    }
    Ok(RelationReport {
        len,
        single,
        pair,
        pairs_exhaustive: len <= PAIR_EXHAUSTIVE_MAX_LEN,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hex::decode_hex;

    fn seq(s: &[i8]) -> LittlewoodSeq {
        LittlewoodSeq::from_signs(s).unwrap()
    }

    #[test]
    fn generator_examples() {
        let f = decode_hex("0", 2).unwrap();
        assert_eq!(encode_hex(&act(&word("n"), f).unwrap()), "3");
        assert_eq!(act(&word("h"), seq(&[1, 1, 1, 1])).unwrap(), seq(&[1, -1, 1, -1]));
        assert_eq!(act(&word("r"), seq(&[1, 1, -1])).unwrap(), seq(&[-1, 1, 1]));
        assert!(matches!(act(&word("s"), f), Err(Error::PairOnlyGenerator)));
        assert_eq!(act_pair(&word("s"), (f, f.negate())), (f.negate(), f));
    }

    #[test]
    fn words_compose_right_to_left() {
        let f = seq(&[1, 1, -1, 1, -1]);
        let hr = act(&word("hr"), f).unwrap();
        assert_eq!(hr, f.reverse().alternate());
        assert_eq!(word("hr").to_string(), "hr");
        assert_eq!(word("ns").pow(2).to_string(), "nsns");
        assert!("nx".parse::<SymmetryWord>().is_err());
        assert!(word("id").is_identity());
    }

    #[test]
    fn orbit_examples() {
        let one = seq(&[1]);
        let o = orbit(one);
        assert_eq!(o.size, 2);
        assert_eq!(o.members, vec![one, one.negate()]);
        assert_eq!(orbit(decode_hex("0036", 14).unwrap()).size, 8);
        let p = (decode_hex("0071", 14).unwrap(), decode_hex("149B", 14).unwrap());
        assert_eq!(orbit_pair(p).size, 32);
        assert_eq!(orbit_pair((one, one)).size, 4);
    }

    #[test]
    fn fast_paths_agree_with_closure() {
        for len in 1..=8 {
            for f in LittlewoodSeq::all(len) {
                let o = orbit(f);
                assert_eq!(canonical(f), o.canonical);
                assert_eq!(orbit_size(f), o.size);
                assert_eq!(8 % o.size, 0);
            }
        }
        for len in 1..=4 {
            for f in LittlewoodSeq::all(len) {
                for g in LittlewoodSeq::all(len) {
                    let o = orbit_pair((f, g));
                    assert_eq!(canonical_pair((f, g)), o.canonical);
                    assert_eq!(orbit_pair_size((f, g)), o.size);
                    assert_eq!(32 % o.size, 0);
                }
            }
        }
    }

    #[test]
    fn canonical_is_orbit_invariant() {
        let f = decode_hex("1C9", 12).unwrap();
        for w in ["n", "h", "r", "hr", "nrh", "rhrh"] {
            assert_eq!(canonical(act(&word(w), f).unwrap()), canonical(f));
        }
        let p = (decode_hex("065", 12).unwrap(), decode_hex("6A3", 12).unwrap());
        for w in ["s", "ns", "nsns", "hsr", "snhr"] {
            assert_eq!(canonical_pair(act_pair(&word(w), p)), canonical_pair(p));
        }
    }

    #[test]
    fn relations_hold() {
        for len in 1..=6 {
            let report = group_relations_check(len).unwrap();
            assert!(report.pairs_exhaustive);
            assert!(report.single.iter().all(|(_, n)| *n == 1 << len));
        }
        let r = group_relations_check(4).unwrap();
        assert!(r.pair.iter().any(|(rel, n)| rel == "nsnsnsns = id" && *n == 256));
        assert!(group_relations_check(0).is_err());
        assert!(group_relations_check(17).is_err());
    }

    #[test]
    fn odd_relation_fails_for_even_length() {
        let f = seq(&[1, 1, -1, 1]);
        assert_ne!(act(&word("hr"), f).unwrap(), act(&word("rh"), f).unwrap());
    }

    #[test]
    fn gaussian_witness_orders() {
        assert_eq!(poly_orbit_size(&group_order_witness(1)).unwrap(), 4);
        for len in 2..=12 {
            assert_eq!(poly_orbit_size(&group_order_witness(len)).unwrap(), 8, "len {len}");
            assert_eq!(
                poly_pair_orbit_size(&pair_group_order_witness(len)).unwrap(),
                32,
                "len {len}"
            );
        }
        assert_eq!(poly_pair_orbit_size(&pair_group_order_witness(1)).unwrap(), 16);
        for len in [2, 4, 6, 10] {
            assert_eq!(word_cycle_length(&word("rh"), &rh_witness(len)).unwrap(), 4);
        }
    }
}
