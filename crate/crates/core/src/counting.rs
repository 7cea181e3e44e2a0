//! Exact counts: forests by special leaves, shuffle counts, the region
//! count, and the cycle-lemma machinery behind the special-leaf formula.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("s = {s} is out of range 1..={n}")]
    OutOfRange { n: usize, s: usize },
    #[error("path has non-positive excess {0}")]
    NonPositiveExcess(i64),
    #[error("invalid step `{0}`")]
    BadStep(char),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    U,
    D,
}

/// A sequence of up/down steps.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePath {
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<Step> {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `#U - #D`.
    pub fn excess(&self) -> i64 {
        self.steps
            .iter()
            .map(|s| if *s == Step::U { 1 } else { -1 })
            .sum()
    }

    pub fn is_dyck(&self) -> bool {
        let mut h = 0i64;
        for s in &self.steps {
            h += if *s == Step::U { 1 } else { -1 };
            if h < 0 {
                return false;
            }
        }
        h == 0
    }

    /// Every nonempty prefix has strictly more `U` than `D`.
    pub fn is_strictly_dominating(&self) -> bool {
        let mut h = 0i64;
        self.steps.iter().all(|s| {
            h += if *s == Step::U { 1 } else { -1 };
            h > 0
        })
    }

    pub fn rotate(&self, k: usize) -> LatticePath {
        let mut steps = self.steps.clone();
        if !steps.is_empty() {
            let len = steps.len();
            steps.rotate_left(k % len);
        }
        LatticePath { steps }
    }
}

impl From<Vec<Step>> for LatticePath {
    fn from(steps: Vec<Step>) -> Self {
        LatticePath { steps }
    }
}

impl FromIterator<Step> for LatticePath {
    fn from_iter<T: IntoIterator<Item = Step>>(iter: T) -> Self {
        LatticePath {
            steps: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::U => "U",
                Step::D => "D",
            })?;
        }
        Ok(())
    }
}

impl FromStr for LatticePath {
    type Err = CountError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'U' => Ok(Step::U),
                'D' => Ok(Step::D),
                other => Err(CountError::BadStep(other)),
            })
            .collect()
    }
}

/// Counts indexed by the number of special leaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub n: usize,
    pub entries: BTreeMap<usize, BigUint>,
}

impl fmt::Display for CountTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, v) in &self.entries {
            writeln!(f, "s={s} count={v}")?;
        }
        Ok(())
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Exact binomial coefficient by the multiplicative formula; each partial
/// product is itself a binomial coefficient so every division is exact.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn catalan(n: usize) -> BigUint {
    binomial(2 * n, n) / (n + 1)
}

/// Number of unlabeled ordered forests of size `n` with `s` special
/// leaves: `s * C(2n - s, n) / (2n - s)`.
pub fn c_ns(n: usize, s: usize) -> Result<BigUint, CountError> {
    if s == 0 || s > n {
        return Err(CountError::OutOfRange { n, s });
    }
    let num = binomial(2 * n - s, n) * s;
    let den = BigUint::from(2 * n - s);
    assert!(
        (&num % &den).is_zero(),
        "C({n},{s}) numerator not divisible by {den}"
    );
    Ok(num / den)
}

/// Number of shuffles of a forest with `s` special leaves and its symmetric.
pub fn d_ns(s: usize) -> BigUint {
    BigUint::one() << s
}

/// `2^n n! C(2n, n)`.
pub fn region_count(n: usize) -> BigUint {
    (BigUint::one() << n) * factorial(n) * binomial(2 * n, n)
}

/// `2^n n! sum_s C_{n,s} D_{n,s}`.
pub fn region_count_via_sum(n: usize) -> BigUint {
    let sum: BigUint = (1..=n)
        .map(|s| c_ns(n, s).expect("s in range") * d_ns(s))
        .sum();
    (BigUint::one() << n) * factorial(n) * sum
}

/// `C_{n,s} = C_{n-1,s-1} + C_{n,s+1}` for `1 <= s <= n-1`, reading
/// `C_{n-1,0}` as zero.
pub fn check_recurrence(n: usize) -> bool {
    let c = |n: usize, s: usize| {
        if s == 0 {
            BigUint::zero()
        } else {
            c_ns(n, s).expect("s in range")
        }
    };
    (1..n).all(|s| c(n, s) == c(n - 1, s - 1) + c(n, s + 1))
}

/// Number of cyclic rotations (counted by offset, so repeats count
/// separately) in which every prefix has strictly more `U` than `D`. The
/// cycle lemma makes this the excess; the count is checked against it.
pub fn dominating_rotations(p: &LatticePath) -> Result<usize, CountError> {
    let excess = p.excess();
    if excess <= 0 {
        return Err(CountError::NonPositiveExcess(excess));
    }
    let count = (0..p.len())
        .filter(|&k| p.rotate(k).is_strictly_dominating())
        .count();
    assert_eq!(count as i64, excess, "cycle lemma failed on {p}");
    Ok(count)
}

/// Every Dyck path of semilength `n`, lexicographic with `U < D`.
pub fn dyck_paths(n: usize) -> Vec<LatticePath> {
    fn rec(n: usize, ups: usize, downs: usize, cur: &mut Vec<Step>, out: &mut Vec<LatticePath>) {
        if ups == n && downs == n {
            out.push(LatticePath::from(cur.clone()));
            return;
        }
        if ups < n {
            cur.push(Step::U);
            rec(n, ups + 1, downs, cur, out);
            cur.pop();
        }
        if downs < ups {
            cur.push(Step::D);
            rec(n, ups, downs + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 0, 0, &mut Vec::with_capacity(2 * n), &mut out);
    out
}

/// Dyck paths of semilength `n` ending in `U` followed by exactly `s`
/// down steps, counted by exhaustive generation.
pub fn count_paths_with_tail(n: usize, s: usize) -> Result<BigUint, CountError> {
    if s == 0 || s > n {
        return Err(CountError::OutOfRange { n, s });
    }
    let count = dyck_paths(n)
        .iter()
        .filter(|p| {
            let st = p.steps();
            let tail = st.iter().rev().take_while(|&&x| x == Step::D).count();
            tail == s
        })
        .count();
    Ok(BigUint::from(count))
}

/// Closed-form table `s -> C_{n,s}`.
pub fn c_table(n: usize) -> CountTable {
    CountTable {
        n,
        entries: (1..=n)
            .map(|s| (s, c_ns(n, s).expect("s in range")))
            .collect(),
    }
}
