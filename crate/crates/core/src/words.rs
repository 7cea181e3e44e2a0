//! Letters, annotated 1-sketches and their symmetric counterparts.
//!
//! A letter `i^s` stands for the quantity `x_i + s` with `x_{-i} = -x_i`.
//! A word records a total order on such quantities; the sketch conditions
//! restrict which orders can come from a point of the arrangement.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::counting::{LatticePath, Step};

/// The `s` in `x_i + s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Zero,
    One,
}

impl Level {
    pub fn flip(self) -> Level {
        match self {
            Level::Zero => Level::One,
            Level::One => Level::Zero,
        }
    }

    pub fn as_u8(self) -> u8 {
        match self {
            Level::Zero => 0,
            Level::One => 1,
        }
    }
}

/// One symbol: a signed nonzero index and a level.
///
/// Ordering is numeric on the index, then by level; this is the order used
/// for lexicographic enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    index: i32,
    level: Level,
}

impl Letter {
    /// Panics if `index == 0`.
    pub fn new(index: i32, level: Level) -> Letter {
        assert!(index != 0, "letter index must be nonzero");
        Letter { index, level }
    }

    pub fn zero(index: i32) -> Letter {
        Letter::new(index, Level::Zero)
    }

    pub fn one(index: i32) -> Letter {
        Letter::new(index, Level::One)
    }

    pub fn index(self) -> i32 {
        self.index
    }

    pub fn level(self) -> Level {
        self.level
    }

    pub fn is_zero(self) -> bool {
        self.level == Level::Zero
    }

    /// `i^s -> (-i)^(1-s)`.
    pub fn bar(self) -> Letter {
        Letter {
            index: -self.index,
            level: self.level.flip(),
        }
    }

    /// The same index at the other level.
    pub fn partner(self) -> Letter {
        Letter {
            index: self.index,
            level: self.level.flip(),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.index, self.level.as_u8())
    }
}

impl FromStr for Letter {
    type Err = SketchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SketchError::Parse(s.to_string());
        let (idx, lvl) = s.split_once('^').ok_or_else(bad)?;
        let index: i32 = idx.parse().map_err(|_| bad())?;
        let level = match lvl {
            "0" => Level::Zero,
            "1" => Level::One,
            _ => return Err(bad()),
        };
        if index == 0 {
            return Err(bad());
        }
        Ok(Letter { index, level })
    }
}

/// A finite sequence of letters, serialized as space-separated tokens.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SketchWord {
    letters: Vec<Letter>,
}

impl SketchWord {
    pub fn new(letters: Vec<Letter>) -> SketchWord {
        SketchWord { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    /// Position (0-based) of every letter, keyed by letter. Only meaningful
    /// once duplicates have been ruled out.
    fn positions(&self) -> std::collections::HashMap<Letter, usize> {
        self.letters
            .iter()
            .enumerate()
            .map(|(p, &l)| (l, p))
            .collect()
    }
}

impl fmt::Display for SketchWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for SketchWord {
    type Err = SketchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<Letter>, _>>()?;
        Ok(SketchWord { letters })
    }
}

impl FromIterator<Letter> for SketchWord {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        SketchWord {
            letters: iter.into_iter().collect(),
        }
    }
}

/// Sketch conditions, numbered as in the definition of a symmetric
/// annotated 1-sketch. For annotated 1-sketches `I` is the labeling
/// condition (level-0 indices cover `1..=n` up to sign, each paired with
/// its level-1 letter).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    I,
    II,
    III,
    IV,
}

impl Condition {
    pub fn roman(self) -> &'static str {
        match self {
            Condition::I => "i",
            Condition::II => "ii",
            Condition::III => "iii",
            Condition::IV => "iv",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Condition::I => "the letters do not form the required alphabet",
            Condition::II => "a level-1 letter precedes its level-0 letter",
            Condition::III => "level-1 letters are not in the order of their level-0 letters",
            Condition::IV => "the order is not closed under negation with reversal",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub witness: Vec<Letter>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "violation {} witness=", self.condition.roman())?;
        for (k, l) in self.witness.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Outcome of validating a well-formed word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Report {
    Ok,
    Violation(Violation),
}

impl Report {
    pub fn is_ok(&self) -> bool {
        matches!(self, Report::Ok)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Report::Ok => f.write_str("ok"),
            Report::Violation(v) => v.fmt(f),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SketchError {
    #[error("cannot parse letter `{0}`")]
    Parse(String),
    #[error("size must be at least 1")]
    ZeroSize,
    #[error("duplicate letter {0}")]
    Duplicate(Letter),
    #[error("letter {letter} has index out of range for n = {n}")]
    OutOfRange { letter: Letter, n: usize },
    #[error("expected a level-1 letter, found {0}")]
    NotLevelOne(Letter),
    #[error("{} ({})", .0, .0.condition.describe())]
    Invalid(Violation),
}

fn check_well_formed(w: &SketchWord, n: usize) -> Result<(), SketchError> {
    if n == 0 {
        return Err(SketchError::ZeroSize);
    }
    let mut seen = HashSet::new();
    for &l in w.letters() {
        if l.index().unsigned_abs() as usize > n {
            return Err(SketchError::OutOfRange { letter: l, n });
        }
        if !seen.insert(l) {
            return Err(SketchError::Duplicate(l));
        }
    }
    Ok(())
}

fn violation(condition: Condition, witness: Vec<Letter>) -> Report {
    Report::Violation(Violation { condition, witness })
}

/// Condition (ii): every level-0 letter precedes its level-1 letter.
/// Scans left to right and reports the first level-1 letter seen without
/// its partner.
fn check_ii(w: &SketchWord, pos: &std::collections::HashMap<Letter, usize>) -> Option<Report> {
    for (p, &l) in w.letters().iter().enumerate() {
        if !l.is_zero() {
            match pos.get(&l.partner()) {
                Some(&q) if q < p => {}
                _ => return Some(violation(Condition::II, vec![l.partner(), l])),
            }
        }
    }
    None
}

/// Condition (iii): level-1 letters appear in the order of their level-0
/// letters.
fn check_iii(w: &SketchWord, pos: &std::collections::HashMap<Letter, usize>) -> Option<Report> {
    let zeros: Vec<Letter> = w
        .letters()
        .iter()
        .copied()
        .filter(|l| l.is_zero())
        .collect();
    for (a, &li) in zeros.iter().enumerate() {
        for &lj in &zeros[a + 1..] {
            if pos[&li.partner()] > pos[&lj.partner()] {
                return Some(violation(Condition::III, vec![li, lj]));
            }
        }
    }
    None
}

/// Checks whether `w` is a symmetric annotated 1-sketch of size `2n`.
///
/// Malformed input (duplicates, indices outside `±1..=n`) is an error;
/// otherwise the report names the first failing condition in the order
/// (i), (ii), (iii), (iv). Each condition is checked literally.
pub fn validate_symmetric_sketch(w: &SketchWord, n: usize) -> Result<Report, SketchError> {
    check_well_formed(w, n)?;
    let present: HashSet<Letter> = w.letters().iter().copied().collect();
    if let Some(missing) = alphabet(n).into_iter().find(|l| !present.contains(l)) {
        return Ok(violation(Condition::I, vec![missing]));
    }
    let pos = w.positions();
    if let Some(r) = check_ii(w, &pos) {
        return Ok(r);
    }
    if let Some(r) = check_iii(w, &pos) {
        return Ok(r);
    }
    // (iv): a_i^0 before a_j^s implies a_{-j}^0 before a_{-i}^s, for all
    // pairs including i = -j.
    let letters = w.letters();
    for (p, &li) in letters.iter().enumerate() {
        if !li.is_zero() {
            continue;
        }
        for &lj in &letters[p + 1..] {
            let lhs = Letter::zero(-lj.index());
            let rhs = Letter::new(-li.index(), lj.level());
            if pos[&lhs] >= pos[&rhs] {
                return Ok(violation(Condition::IV, vec![li, lj]));
            }
        }
    }
    Ok(Report::Ok)
}

/// Checks whether `w` is an annotated 1-sketch of size `n`.
pub fn validate_annotated_sketch(w: &SketchWord, n: usize) -> Result<Report, SketchError> {
    check_well_formed(w, n)?;
    let present: HashSet<Letter> = w.letters().iter().copied().collect();
    let mut covered = vec![false; n + 1];
    for &l in w.letters() {
        if !present.contains(&l.partner()) {
            return Ok(violation(Condition::I, vec![l]));
        }
        let a = l.index().unsigned_abs() as usize;
        if l.is_zero() {
            if covered[a] {
                return Ok(violation(Condition::I, vec![Letter::zero(-l.index()), l]));
            }
            covered[a] = true;
        }
    }
    if let Some(a) = (1..=n).find(|&a| !covered[a]) {
        return Ok(violation(Condition::I, vec![Letter::zero(a as i32)]));
    }
    let pos = w.positions();
    if let Some(r) = check_ii(w, &pos) {
        return Ok(r);
    }
    if let Some(r) = check_iii(w, &pos) {
        return Ok(r);
    }
    Ok(Report::Ok)
}

/// All `4n` letters over indices `±1..=n`, sorted.
pub fn alphabet(n: usize) -> Vec<Letter> {
    let n = n as i32;
    let mut out: Vec<Letter> = (-n..=n)
        .filter(|&i| i != 0)
        .flat_map(|i| [Letter::zero(i), Letter::one(i)])
        .collect();
    out.sort();
    out
}

/// Reverses the word and maps each `k^s` to `(-k)^(1-s)`.
pub fn symmetric_word(w: &SketchWord) -> SketchWord {
    w.letters().iter().rev().map(|l| l.bar()).collect()
}

/// A validated annotated 1-sketch of size `n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AnnotatedSketch {
    word: SketchWord,
    n: usize,
}

impl AnnotatedSketch {
    pub fn new(word: SketchWord, n: usize) -> Result<AnnotatedSketch, SketchError> {
        match validate_annotated_sketch(&word, n)? {
            Report::Ok => Ok(AnnotatedSketch { word, n }),
            Report::Violation(v) => Err(SketchError::Invalid(v)),
        }
    }

    /// Infers `n` from the word length; an odd length is reported as a
    /// labeling violation by validation.
    pub fn parse(s: &str) -> Result<AnnotatedSketch, SketchError> {
        let word: SketchWord = s.parse()?;
        let n = word.len().div_ceil(2).max(1);
        AnnotatedSketch::new(word, n)
    }

    pub(crate) fn new_unchecked(word: SketchWord, n: usize) -> AnnotatedSketch {
        debug_assert!(validate_annotated_sketch(&word, n).is_ok_and(|r| r.is_ok()));
        AnnotatedSketch { word, n }
    }

    pub fn word(&self) -> &SketchWord {
        &self.word
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn into_word(self) -> SketchWord {
        self.word
    }

    /// 1-based position `s` of the rightmost level-0 letter; the sketch lies
    /// in `A_{n,s}` with `n <= s <= 2n - 1`.
    pub fn rightmost_zero_position(&self) -> usize {
        self.word
            .letters()
            .iter()
            .rposition(|l| l.is_zero())
            .expect("a valid sketch has level-0 letters")
            + 1
    }

    /// The symmetric word, which is again an annotated 1-sketch.
    pub fn symmetric(&self) -> AnnotatedSketch {
        AnnotatedSketch::new_unchecked(symmetric_word(&self.word), self.n)
    }

    /// One `U` per level-0 letter, one `D` per level-1 letter.
    pub fn to_dyck_path(&self) -> LatticePath {
        self.word
            .letters()
            .iter()
            .map(|l| if l.is_zero() { Step::U } else { Step::D })
            .collect()
    }
}

impl fmt::Display for AnnotatedSketch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

/// A validated symmetric annotated 1-sketch of size `2n` (`4n` letters).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymmetricSketch {
    word: SketchWord,
    n: usize,
}

impl SymmetricSketch {
    pub fn new(word: SketchWord, n: usize) -> Result<SymmetricSketch, SketchError> {
        match validate_symmetric_sketch(&word, n)? {
            Report::Ok => Ok(SymmetricSketch { word, n }),
            Report::Violation(v) => Err(SketchError::Invalid(v)),
        }
    }

    pub fn parse(s: &str) -> Result<SymmetricSketch, SketchError> {
        let word: SketchWord = s.parse()?;
        let n = word.len().div_ceil(4).max(1);
        SymmetricSketch::new(word, n)
    }

    pub(crate) fn new_unchecked(word: SketchWord, n: usize) -> SymmetricSketch {
        debug_assert!(validate_symmetric_sketch(&word, n).is_ok_and(|r| r.is_ok()));
        SymmetricSketch { word, n }
    }

    pub fn word(&self) -> &SketchWord {
        &self.word
    }

    /// Half the sketch size: the dimension of the ambient space.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn into_word(self) -> SketchWord {
        self.word
    }

    /// Splits into the annotated 1-sketch on the `n` leftmost level-0
    /// letters (with their level-1 partners) and the complementary subword.
    pub fn decompose(&self) -> (AnnotatedSketch, AnnotatedSketch) {
        let first_zeros: HashSet<i32> = self
            .word
            .letters()
            .iter()
            .filter(|l| l.is_zero())
            .take(self.n)
            .map(|l| l.index())
            .collect();
        let (left, right): (Vec<Letter>, Vec<Letter>) = self
            .word
            .letters()
            .iter()
            .partition(|l| first_zeros.contains(&l.index()));
        (
            AnnotatedSketch::new_unchecked(SketchWord::new(left), self.n),
            AnnotatedSketch::new_unchecked(SketchWord::new(right), self.n),
        )
    }
}

impl fmt::Display for SymmetricSketch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

/// The shuffle set of a run of level-1 letters with its symmetric, in the
/// order produced by the recursive definition. Has `2^k` elements.
pub fn tail_shuffles(psi: &[Letter]) -> Result<Vec<SketchWord>, SketchError> {
    if let Some(&bad) = psi.iter().find(|l| l.is_zero()) {
        return Err(SketchError::NotLevelOne(bad));
    }
    let out: Vec<SketchWord> = shuffle_rec(psi).into_iter().map(SketchWord::new).collect();
    let distinct: HashSet<&SketchWord> = out.iter().collect();
    assert_eq!(distinct.len(), out.len(), "duplicate word in shuffle set");
    Ok(out)
}

fn shuffle_rec(psi: &[Letter]) -> Vec<Vec<Letter>> {
    let k = psi.len();
    if k == 0 {
        return vec![Vec::new()];
    }
    let last = psi[k - 1];
    let mut out = Vec::with_capacity(1 << k);
    // i = 0 is the first case of the definition (nothing before a_{-j_k}^0);
    // 1 <= i <= k-1 the middle cases.
    for i in 0..k {
        let inner = shuffle_rec(&psi[i..k - 1]);
        for u in inner {
            let mut w = Vec::with_capacity(2 * k);
            w.extend_from_slice(&psi[..i]);
            w.push(last.bar());
            w.extend(u);
            w.push(last);
            w.extend(psi[..i].iter().rev().map(|l| l.bar()));
            out.push(w);
        }
    }
    let mut whole = psi.to_vec();
    whole.extend(psi.iter().rev().map(|l| l.bar()));
    out.push(whole);
    out
}

/// All shuffles of an annotated 1-sketch with its symmetric; each is a
/// symmetric annotated 1-sketch and there are `2^(2n - s)` of them.
pub fn sketch_shuffles(w1: &AnnotatedSketch) -> Vec<SymmetricSketch> {
    let letters = w1.word().letters();
    let s = w1.rightmost_zero_position();
    let head = &letters[..s];
    let tail = &letters[s..];
    let prefix = &head[..s - 1];
    let pivot = head[s - 1];
    let suffix: Vec<Letter> = prefix.iter().rev().map(|l| l.bar()).collect();
    tail_shuffles(tail)
        .expect("letters after the last level-0 letter are level 1")
        .into_iter()
        .map(|u| {
            let mut w = Vec::with_capacity(4 * w1.n());
            w.extend_from_slice(head);
            w.extend(u.into_letters());
            w.push(pivot.bar());
            w.extend_from_slice(&suffix);
            SymmetricSketch::new_unchecked(SketchWord::new(w), w1.n())
        })
        .collect()
}

/// Streams every annotated 1-sketch of size `n` exactly once, in
/// lexicographic order of letters.
pub fn enumerate_annotated_sketches(n: usize) -> AnnotatedSketches {
    AnnotatedSketches::new(n)
}

/// Depth-first generator. A prefix can be extended by any unused level-0
/// letter (while fewer than `n` are open) or by the level-1 partner of the
/// oldest unclosed level-0 letter; condition (iii) rules out any other
/// level-1 letter.
pub struct AnnotatedSketches {
    n: usize,
    word: Vec<Letter>,
    used: Vec<bool>,
    opened: usize,
    pending: VecDeque<Letter>,
    frames: Vec<(Vec<Letter>, usize)>,
}

impl AnnotatedSketches {
    fn new(n: usize) -> AnnotatedSketches {
        let mut it = AnnotatedSketches {
            n,
            word: Vec::with_capacity(2 * n),
            used: vec![false; n + 1],
            opened: 0,
            pending: VecDeque::new(),
            frames: Vec::new(),
        };
        if n > 0 {
            let c = it.candidates();
            it.frames.push((c, 0));
        }
        it
    }

    fn candidates(&self) -> Vec<Letter> {
        let mut c = Vec::new();
        if self.opened < self.n {
            for a in 1..=self.n {
                if !self.used[a] {
                    c.push(Letter::zero(-(a as i32)));
                    c.push(Letter::zero(a as i32));
                }
            }
        }
        if let Some(&front) = self.pending.front() {
            c.push(front.partner());
        }
        c.sort();
        c
    }

    fn push(&mut self, l: Letter) {
        if l.is_zero() {
            self.used[l.index().unsigned_abs() as usize] = true;
            self.opened += 1;
            self.pending.push_back(l);
        } else {
            self.pending.pop_front();
        }
        self.word.push(l);
    }

    fn pop(&mut self) {
        let l = self.word.pop().expect("pop on empty prefix");
        if l.is_zero() {
            self.used[l.index().unsigned_abs() as usize] = false;
            self.opened -= 1;
            self.pending.pop_back();
        } else {
            self.pending.push_front(l.partner());
        }
    }
}

impl Iterator for AnnotatedSketches {
    type Item = AnnotatedSketch;

    fn next(&mut self) -> Option<AnnotatedSketch> {
        loop {
            let depth = self.frames.len();
            let (cands, idx) = self.frames.last_mut()?;
            if *idx == cands.len() {
                self.frames.pop();
                if depth > 1 {
                    self.pop();
                }
                continue;
            }
            let l = cands[*idx];
            *idx += 1;
            self.push(l);
            if self.word.len() == 2 * self.n {
                let out = SketchWord::new(self.word.clone());
                self.pop();
                return Some(AnnotatedSketch::new_unchecked(out, self.n));
            }
            let c = self.candidates();
            self.frames.push((c, 0));
        }
    }
}

/// Every symmetric annotated 1-sketch of size `2n`, as the union of the
/// shuffle sets of all annotated 1-sketches of size `n`, sorted
/// lexicographically.
pub fn enumerate_symmetric_sketches(n: usize) -> Vec<SymmetricSketch> {
    let mut out: Vec<SymmetricSketch> = enumerate_annotated_sketches(n)
        .flat_map(|w1| sketch_shuffles(&w1))
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const OMEGA: &str = "-2^0 1^0 -2^1 3^0 -3^0 1^1 -1^0 3^1 -3^1 2^0 -1^1 2^1";
    const OMEGA1: &str = "-2^0 1^0 -2^1 3^0 1^1 3^1";

    fn w(s: &str) -> SketchWord {
        s.parse().unwrap()
    }

    fn set(ws: impl IntoIterator<Item = SketchWord>) -> std::collections::BTreeSet<SketchWord> {
        ws.into_iter().collect()
    }

    #[test]
    fn letter_round_trip() {
        let l: Letter = "-12^1".parse().unwrap();
        assert_eq!(l, Letter::one(-12));
        assert_eq!(l.to_string(), "-12^1");
        assert!("0^1".parse::<Letter>().is_err());
        assert!("3^2".parse::<Letter>().is_err());
        assert!("3".parse::<Letter>().is_err());
    }

    #[test]
    fn symmetric_examples() {
        assert!(validate_symmetric_sketch(&w(OMEGA), 3).unwrap().is_ok());
        assert!(validate_symmetric_sketch(&w("1^0 1^1 -1^0 -1^1"), 1)
            .unwrap()
            .is_ok());
        let r = validate_symmetric_sketch(&w("-1^0 1^0 1^1 -1^1"), 1).unwrap();
        assert_eq!(
            r,
            violation(Condition::III, vec![Letter::zero(-1), Letter::zero(1)])
        );
        assert_eq!(r.to_string(), "violation iii witness=-1^0,1^0");
    }

    #[test]
    fn malformed_is_distinct_from_violation() {
        assert_eq!(
            validate_symmetric_sketch(&w("1^0 1^0 -1^0 -1^1"), 1),
            Err(SketchError::Duplicate(Letter::zero(1)))
        );
        assert!(matches!(
            validate_symmetric_sketch(&w("2^0 1^1 -1^0 -1^1"), 1),
            Err(SketchError::OutOfRange { .. })
        ));
        // truncated input: a letter is missing
        let r = validate_symmetric_sketch(&w("1^0 1^1 -1^0"), 1).unwrap();
        assert_eq!(r, violation(Condition::I, vec![Letter::one(-1)]));
        // n = 2 claimed but the word only covers n = 1
        let r = validate_symmetric_sketch(&w("1^0 1^1 -1^0 -1^1"), 2).unwrap();
        assert!(matches!(
            r,
            Report::Violation(Violation {
                condition: Condition::I,
                ..
            })
        ));
    }

    #[test]
    fn condition_ii_and_iv() {
        let r = validate_symmetric_sketch(&w("1^1 1^0 -1^0 -1^1"), 1).unwrap();
        assert_eq!(
            r,
            violation(Condition::II, vec![Letter::zero(1), Letter::one(1)])
        );
        // (i)-(iii) hold but the order is not symmetric
        let r = validate_symmetric_sketch(&w("1^0 -1^0 2^0 -2^0 1^1 -1^1 2^1 -2^1"), 2).unwrap();
        assert!(matches!(
            r,
            Report::Violation(Violation {
                condition: Condition::IV,
                ..
            })
        ));
    }

    #[test]
    fn annotated_examples() {
        assert!(validate_annotated_sketch(&w(OMEGA1), 3).unwrap().is_ok());
        assert!(validate_annotated_sketch(&w("1^0 1^1"), 1).unwrap().is_ok());
        let r = validate_annotated_sketch(&w("1^0 2^0 2^1 1^1"), 2).unwrap();
        assert!(matches!(
            r,
            Report::Violation(Violation {
                condition: Condition::III,
                ..
            })
        ));
        // both signs of the same index
        let r = validate_annotated_sketch(&w("1^0 -1^0 1^1 -1^1"), 2).unwrap();
        assert!(matches!(
            r,
            Report::Violation(Violation {
                condition: Condition::I,
                ..
            })
        ));
        // unmatched level-1 letter
        let r = validate_annotated_sketch(&w("1^0 1^1 2^1"), 2).unwrap();
        assert_eq!(r, violation(Condition::I, vec![Letter::one(2)]));
    }

    #[test]
    fn symmetric_word_examples() {
        assert_eq!(symmetric_word(&w(OMEGA1)), w("-3^0 -1^0 -3^1 2^0 -1^1 2^1"));
        assert_eq!(symmetric_word(&w("")), w(""));
        assert_eq!(symmetric_word(&w("1^0 1^1")), w("-1^0 -1^1"));
    }

    #[test]
    fn rightmost_zero_examples() {
        let pos = |s: &str| AnnotatedSketch::parse(s).unwrap().rightmost_zero_position();
        assert_eq!(pos(OMEGA1), 4);
        assert_eq!(pos("1^0 1^1"), 1);
        assert_eq!(pos("1^0 2^0 1^1 2^1"), 2);
    }

    #[test]
    fn decompose_examples() {
        let cases = [
            (OMEGA, OMEGA1, "-3^0 -1^0 -3^1 2^0 -1^1 2^1"),
            ("1^0 1^1 -1^0 -1^1", "1^0 1^1", "-1^0 -1^1"),
            ("-1^0 1^0 -1^1 1^1", "-1^0 -1^1", "1^0 1^1"),
        ];
        for (sym, a, b) in cases {
            let (l, r) = SymmetricSketch::parse(sym).unwrap().decompose();
            assert_eq!(l.word(), &w(a));
            assert_eq!(r.word(), &w(b));
        }
    }

    #[test]
    fn tail_shuffle_examples() {
        // j1 = 5, j2 = 7 stand in for symbolic indices
        let got = tail_shuffles(w("5^1 7^1").letters()).unwrap();
        let want = [
            "-7^0 -5^0 5^1 7^1",
            "-7^0 5^1 -5^0 7^1",
            "5^1 -7^0 7^1 -5^0",
            "5^1 7^1 -7^0 -5^0",
        ];
        assert_eq!(got, want.iter().map(|s| w(s)).collect::<Vec<_>>());
        assert_eq!(tail_shuffles(&[]).unwrap(), vec![w("")]);
        assert_eq!(
            set(tail_shuffles(w("1^1").letters()).unwrap()),
            set([w("-1^0 1^1"), w("1^1 -1^0")])
        );
        assert_eq!(
            tail_shuffles(w("1^0").letters()),
            Err(SketchError::NotLevelOne(Letter::zero(1)))
        );
    }

    #[test]
    fn tail_shuffle_sizes() {
        for k in 0..=8 {
            let psi: Vec<Letter> = (1..=k).map(Letter::one).collect();
            assert_eq!(tail_shuffles(&psi).unwrap().len(), 1 << k);
        }
    }

    #[test]
    fn sketch_shuffle_examples() {
        let w1 = AnnotatedSketch::parse(OMEGA1).unwrap();
        let got = set(sketch_shuffles(&w1)
            .into_iter()
            .map(SymmetricSketch::into_word));
        let want = set([
            w(OMEGA),
            w("-2^0 1^0 -2^1 3^0 -3^0 -1^0 1^1 3^1 -3^1 2^0 -1^1 2^1"),
            w("-2^0 1^0 -2^1 3^0 1^1 -3^0 3^1 -1^0 -3^1 2^0 -1^1 2^1"),
            w("-2^0 1^0 -2^1 3^0 1^1 3^1 -3^0 -1^0 -3^1 2^0 -1^1 2^1"),
        ]);
        assert_eq!(got, want);

        let w1 = AnnotatedSketch::parse("1^0 1^1").unwrap();
        let got = set(sketch_shuffles(&w1)
            .into_iter()
            .map(SymmetricSketch::into_word));
        assert_eq!(got, set([w("1^0 -1^0 1^1 -1^1"), w("1^0 1^1 -1^0 -1^1")]));
    }

    #[test]
    fn enumeration_counts_and_order() {
        let one: Vec<String> = enumerate_annotated_sketches(1)
            .map(|s| s.to_string())
            .collect();
        assert_eq!(one, ["-1^0 -1^1", "1^0 1^1"]);
        assert_eq!(enumerate_annotated_sketches(2).count(), 16);
        assert_eq!(enumerate_annotated_sketches(3).count(), 240);
        assert_eq!(enumerate_annotated_sketches(0).count(), 0);
        let all: Vec<AnnotatedSketch> = enumerate_annotated_sketches(3).collect();
        assert!(all.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn symmetric_enumeration_small() {
        let got = set(enumerate_symmetric_sketches(1)
            .into_iter()
            .map(SymmetricSketch::into_word));
        let want = set([
            w("1^0 1^1 -1^0 -1^1"),
            w("1^0 -1^0 1^1 -1^1"),
            w("-1^0 1^0 -1^1 1^1"),
            w("-1^0 -1^1 1^0 1^1"),
        ]);
        assert_eq!(got, want);
        assert_eq!(enumerate_symmetric_sketches(2).len(), 48);
    }

    #[test]
    fn dyck_projection() {
        let p = |s: &str| {
            AnnotatedSketch::parse(s)
                .unwrap()
                .to_dyck_path()
                .to_string()
        };
        assert_eq!(p(OMEGA1), "UUDUDD");
        assert_eq!(p("1^0 1^1"), "UD");
    }

    #[test]
    fn dyck_path_tail_matches_rightmost_zero() {
        for n in 1..=4 {
            for w1 in enumerate_annotated_sketches(n) {
                let s = w1.rightmost_zero_position();
                let steps = w1.to_dyck_path().into_steps();
                assert!(LatticePath::from(steps.clone()).is_dyck());
                assert_eq!(steps[s - 1], Step::U);
                assert!(steps[s..].iter().all(|&d| d == Step::D));
                assert_eq!(steps.len() - s, 2 * n - s);
            }
        }
    }

    #[test]
    fn subword_structure_of_symmetric_sketches() {
        for n in 1..=3 {
            for sk in enumerate_symmetric_sketches(n) {
                let letters = sk.word().letters();
                let zeros: Vec<i32> = letters
                    .iter()
                    .filter(|l| l.is_zero())
                    .map(|l| l.index())
                    .collect();
                let ones: Vec<i32> = letters
                    .iter()
                    .filter(|l| !l.is_zero())
                    .map(|l| l.index())
                    .collect();
                assert_eq!(zeros, ones);
                for k in 0..n {
                    assert_eq!(zeros[2 * n - 1 - k], -zeros[k]);
                }
                // palindromic form
                for p in 0..4 * n {
                    assert_eq!(letters[4 * n - 1 - p], letters[p].bar());
                }
            }
        }
    }
}
