//! Maps between points, sketches and forests.
//!
//! `sigma` reads the order of the `4n` quantities `x_i + s` off a point;
//! `representative_point` goes back; `phi` turns a sketch into a forest in
//! one left-to-right pass and `psi` inverts it by a BFS walk.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

use crate::forests::{
    validate_symmetric_forest, ForestError, ForestReport, NodeLabel, OrderedForest,
};
use crate::words::{AnnotatedSketch, Letter, Level, SketchError, SketchWord, SymmetricSketch};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BijectionError {
    #[error("point lies on the hyperplane {hyperplane}: x_{i} + {s} = x_{j} + {t}")]
    Collision {
        i: i32,
        s: u8,
        j: i32,
        t: u8,
        hyperplane: String,
    },
    #[error("cannot parse coordinate `{0}`")]
    BadCoordinate(String),
    #[error("expected {expected} coordinates, found {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error(transparent)]
    Sketch(#[from] SketchError),
    #[error(transparent)]
    Forest(#[from] ForestError),
}

/// Anything that carries a sketch word; both sketch kinds go through `phi`.
pub trait Sketch {
    fn word(&self) -> &SketchWord;
}

impl Sketch for AnnotatedSketch {
    fn word(&self) -> &SketchWord {
        AnnotatedSketch::word(self)
    }
}

impl Sketch for SymmetricSketch {
    fn word(&self) -> &SketchWord {
        SymmetricSketch::word(self)
    }
}

/// A point of `R^n` given by exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegionPoint {
    coords: Vec<BigRational>,
}

impl RegionPoint {
    /// Fails if the point lies on a hyperplane of the arrangement.
    pub fn new(coords: Vec<BigRational>) -> Result<RegionPoint, BijectionError> {
        let p = RegionPoint { coords };
        p.sorted_values()?;
        Ok(p)
    }

    /// No hyperplane check; `sigma` will report collisions.
    pub fn unchecked(coords: Vec<BigRational>) -> RegionPoint {
        RegionPoint { coords }
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    /// `x_i` for signed `i`, with `x_{-i} = -x_i`.
    fn x(&self, i: i32) -> BigRational {
        let v = &self.coords[i.unsigned_abs() as usize - 1];
        if i > 0 {
            v.clone()
        } else {
            -v.clone()
        }
    }

    /// All `x_i + s`, ascending, as `(letter, value)`; errors on the first
    /// coinciding pair.
    fn sorted_values(&self) -> Result<Vec<(Letter, BigRational)>, BijectionError> {
        let n = self.n() as i32;
        let mut vals: Vec<(Letter, BigRational)> = (-n..=n)
            .filter(|&i| i != 0)
            .flat_map(|i| {
                let x = self.x(i);
                [
                    (Letter::zero(i), x.clone()),
                    (Letter::one(i), x + BigRational::one()),
                ]
            })
            .collect();
        vals.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
        if let Some(w) = vals.windows(2).find(|w| w[0].1 == w[1].1) {
            return Err(collision(w[0].0, w[1].0));
        }
        Ok(vals)
    }

    /// Half the smallest gap between consecutive values `x_i + s`.
    pub fn half_min_gap(&self) -> Result<BigRational, BijectionError> {
        let vals = self.sorted_values()?;
        let gap = vals
            .windows(2)
            .map(|w| &w[1].1 - &w[0].1)
            .min()
            .expect("at least two values");
        Ok(gap / BigInt::from(2))
    }

    /// Shifts every coordinate by a random rational strictly inside
    /// `(-bound, bound)`.
    pub fn perturb<R: Rng + ?Sized>(&self, bound: &BigRational, rng: &mut R) -> RegionPoint {
        const DENOM: i64 = 1 << 20;
        let coords = self
            .coords
            .iter()
            .map(|c| {
                let k = rng.gen_range(-(DENOM - 1)..DENOM);
                c + bound * BigRational::new(BigInt::from(k), BigInt::from(DENOM))
            })
            .collect();
        RegionPoint { coords }
    }
}

fn collision(a: Letter, b: Letter) -> BijectionError {
    let (i, s) = (a.index(), a.level().as_u8());
    let (j, t) = (b.index(), b.level().as_u8());
    // sign(i) x_|i| - sign(j) x_|j| = t - s, normalized so the term with
    // the smaller index has a positive coefficient
    let mut coef: Vec<(u32, i32)> = Vec::new();
    for (k, c) in [(i, i.signum()), (j, -j.signum())] {
        match coef.iter_mut().find(|(a, _)| *a == k.unsigned_abs()) {
            Some(e) => e.1 += c,
            None => coef.push((k.unsigned_abs(), c)),
        }
    }
    coef.retain(|&(_, c)| c != 0);
    coef.sort();
    let mut rhs = t as i32 - s as i32;
    if coef.first().is_some_and(|&(_, c)| c < 0) {
        coef.iter_mut().for_each(|e| e.1 = -e.1);
        rhs = -rhs;
    }
    let mut hyperplane = String::new();
    for (k, &(a, c)) in coef.iter().enumerate() {
        if k > 0 {
            hyperplane.push_str(if c > 0 { " + " } else { " - " });
        } else if c < 0 {
            hyperplane.push('-');
        }
        match c.abs() {
            1 => hyperplane.push_str(&format!("x{a}")),
            m => hyperplane.push_str(&format!("{m}x{a}")),
        }
    }
    hyperplane.push_str(&format!(" = {rhs}"));
    BijectionError::Collision {
        i,
        s,
        j,
        t,
        hyperplane,
    }
}

impl fmt::Display for RegionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for RegionPoint {
    type Err = BijectionError;

    /// Comma-separated `p/q` or `p`. The hyperplane check is left to the
    /// caller.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let coords = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<BigRational>()
                    .ok()
                    .filter(|_| !tok.is_empty())
                    .ok_or_else(|| BijectionError::BadCoordinate(tok.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RegionPoint { coords })
    }
}

/// The symmetric annotated 1-sketch listing the letters `i^s` in increasing
/// order of `x_i + s`.
pub fn sigma(x: &RegionPoint) -> Result<SymmetricSketch, BijectionError> {
    let word: SketchWord = x.sorted_values()?.into_iter().map(|(l, _)| l).collect();
    Ok(SymmetricSketch::new_unchecked(word, x.n()))
}

/// An exact point in the region of `w`.
///
/// First tries the uniform walk: with `z_0 = 0`, a level-0 letter `i^0`
/// advances by `1/(2n+1)` and binds `x_i`, a level-1 letter `i^1` sits at
/// `x_i + 1`; the walk is translated so that `z_p + z_{4n+1-p} = 1`. That
/// walk is not increasing for every sketch (a level-0 letter placed just
/// after some `x_k + 1` can overtake the next `x_i + 1`). When it fails,
/// the `r`-th level-0 letter advances by `3^-r / 2` instead, so each step
/// exceeds the sum of all later ones and the walk is increasing; the free
/// values are then symmetrized as `x_i = (y_i - y_{-i}) / 2`, the midpoint
/// of the point and its mirror image, both of which realize `w`.
pub fn representative_point(w: &SymmetricSketch) -> RegionPoint {
    let n = w.n();
    let uniform = BigRational::new(BigInt::one(), BigInt::from(2 * n + 1));
    if let Some(walk) = walk(w, |_| uniform.clone()) {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let shift = &half - (&walk.z[0] + &walk.z[4 * n - 1]) * &half;
        let at = |i: i32| &walk.bound[&i] + &shift;
        if (1..=n as i32).all(|i| at(-i) == -at(i)) {
            return RegionPoint {
                coords: (1..=n as i32).map(at).collect(),
            };
        }
    }
    let walk = walk(w, |r| {
        BigRational::new(
            BigInt::one(),
            BigInt::from(2) * BigInt::from(3).pow(r as u32 + 1),
        )
    })
    .expect("geometric walk is increasing on a valid sketch");
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let coords = (1..=n as i32)
        .map(|i| (&walk.bound[&i] - &walk.bound[&-i]) * &half)
        .collect();
    RegionPoint { coords }
}

struct Walk {
    z: Vec<BigRational>,
    bound: HashMap<i32, BigRational>,
}

/// `None` if the walk fails to increase. `step(r)` is the advance for the
/// `r`-th (0-based) level-0 letter.
fn walk(w: &SymmetricSketch, step: impl Fn(usize) -> BigRational) -> Option<Walk> {
    let mut bound: HashMap<i32, BigRational> = HashMap::new();
    let mut z: Vec<BigRational> = Vec::with_capacity(w.word().len());
    let mut prev = BigRational::zero();
    let mut rank = 0;
    for l in w.word().letters() {
        let zp = match l.level() {
            Level::Zero => {
                let v = &prev + step(rank);
                rank += 1;
                bound.insert(l.index(), v.clone());
                v
            }
            Level::One => &bound[&l.index()] + BigRational::one(),
        };
        if !z.is_empty() && zp <= prev {
            return None;
        }
        prev = zp.clone();
        z.push(zp);
    }
    Some(Walk { z, bound })
}

/// Builds the forest of a sketch: each level-0 letter creates a node, which
/// is the next right sibling of the previous node if the previous letter is
/// level 0, and the leftmost child of `j` if the previous letter is `j^1`.
pub fn phi<S: Sketch>(w: &S) -> OrderedForest {
    phi_word(w.word())
}

pub(crate) fn phi_word(w: &SketchWord) -> OrderedForest {
    let mut labels: Vec<NodeLabel> = Vec::new();
    let mut parent: Vec<Option<usize>> = Vec::new();
    let mut children: Vec<Vec<usize>> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    let mut node_of: HashMap<i32, usize> = HashMap::new();
    let mut prev: Option<Letter> = None;
    for &l in w.letters() {
        if l.is_zero() {
            let id = labels.len();
            labels.push(NodeLabel::new(l.index()));
            children.push(Vec::new());
            node_of.insert(l.index(), id);
            let p = match prev {
                None => None,
                Some(q) if q.is_zero() => parent[node_of[&q.index()]],
                Some(q) => Some(node_of[&q.index()]),
            };
            parent.push(p);
            match (prev, p) {
                (Some(q), Some(p)) if !q.is_zero() => children[p].insert(0, id),
                (_, Some(p)) => children[p].push(id),
                (_, None) => roots.push(id),
            }
        }
        prev = Some(l);
    }
    OrderedForest::from_arena(&labels, &roots, &children)
}

/// Inverse of `phi` on any forest, read off in BFS order.
///
/// Node `e_1` emits `e_1^0`. A next right sibling emits its level-0 letter.
/// The leftmost child of `e_i` first flushes the level-1 letters of the
/// leaves before `e_i` that have not been emitted yet, then emits `e_i^1`
/// and its own level-0 letter. The remaining level-1 letters (the special
/// leaves) close the word in BFS order.
pub fn psi_word(f: &OrderedForest) -> SketchWord {
    let n = f.len();
    let e = f.bfs_order();
    let starts = f.child_starts();
    let counts = f.child_counts();
    let parents = f.parents();
    let mut emitted = vec![false; n];
    let mut flushed = 0;
    let mut out = Vec::with_capacity(2 * n);
    for j in 0..n {
        if let Some(p) = parents[j].filter(|&p| starts[p] == j && counts[p] > 0) {
            while flushed < p {
                if !emitted[flushed] {
                    out.push(Letter::one(e[flushed].value()));
                    emitted[flushed] = true;
                }
                flushed += 1;
            }
            out.push(Letter::one(e[p].value()));
            emitted[p] = true;
        }
        out.push(Letter::zero(e[j].value()));
    }
    for k in 0..n {
        if !emitted[k] {
            out.push(Letter::one(e[k].value()));
        }
    }
    SketchWord::new(out)
}

/// `psi` on a labeled forest of size `n`.
pub fn psi_labeled(f: &OrderedForest) -> Result<AnnotatedSketch, BijectionError> {
    f.require_labeled()?;
    Ok(AnnotatedSketch::new_unchecked(psi_word(f), f.len()))
}

/// `psi` on a symmetric forest of size `2n`.
pub fn psi_symmetric(f: &OrderedForest) -> Result<SymmetricSketch, BijectionError> {
    let n = f.len() / 2;
    if let ForestReport::Violation(v) = validate_symmetric_forest(f, n)? {
        return Err(ForestError::Invalid(v).into());
    }
    Ok(SymmetricSketch::new_unchecked(psi_word(f), n))
}

/// `phi(sigma(x))`.
pub fn region_to_forest(x: &RegionPoint) -> Result<OrderedForest, BijectionError> {
    Ok(phi(&sigma(x)?))
}

/// Inverse of `region_to_forest` up to choice of point in the region.
pub fn forest_to_point(f: &OrderedForest) -> Result<RegionPoint, BijectionError> {
    Ok(representative_point(&psi_symmetric(f)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::enumerate_symmetric_sketches;

    const OMEGA: &str = "-2^0 1^0 -2^1 3^0 -3^0 1^1 -1^0 3^1 -3^1 2^0 -1^1 2^1";

    fn point(s: &str) -> RegionPoint {
        s.parse().unwrap()
    }

    fn f(s: &str) -> OrderedForest {
        s.parse().unwrap()
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(
            sigma(&point("1/6")).unwrap().to_string(),
            "-1^0 1^0 -1^1 1^1"
        );
        assert_eq!(
            sigma(&point("3/4")).unwrap().to_string(),
            "-1^0 -1^1 1^0 1^1"
        );
        match sigma(&point("1/2")) {
            Err(BijectionError::Collision { hyperplane, .. }) => assert_eq!(hyperplane, "2x1 = 1"),
            other => panic!("expected collision, got {other:?}"),
        }
    }

    #[test]
    fn collision_names_hyperplane() {
        let h = |s: &str| match sigma(&point(s)) {
            Err(BijectionError::Collision { hyperplane, .. }) => hyperplane,
            other => panic!("expected collision, got {other:?}"),
        };
        assert_eq!(h("0"), "2x1 = 0");
        assert_eq!(h("-1/2"), "2x1 = -1");
        assert_eq!(h("1/3,1/3"), "x1 - x2 = 0");
        assert_eq!(h("1/3,2/3"), "x1 + x2 = 1");
        assert_eq!(h("1/7,8/7"), "x1 - x2 = -1");
        assert!(RegionPoint::new(vec![BigRational::zero()]).is_err());
    }

    #[test]
    fn representative_point_examples() {
        let x = representative_point(&SymmetricSketch::parse("-1^0 1^0 -1^1 1^1").unwrap());
        assert_eq!(x.to_string(), "1/6");
        let w = SymmetricSketch::parse("1^0 1^1 -1^0 -1^1").unwrap();
        let x = representative_point(&w);
        assert_eq!(sigma(&x).unwrap(), w);
        assert!(x.coords()[0] < -BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn sigma_inverts_representative_point_n2() {
        for w in enumerate_symmetric_sketches(2) {
            let x = representative_point(&w);
            assert_eq!(sigma(&x).unwrap(), w);
        }
    }

    #[test]
    fn uniform_walk_collision_falls_back() {
        // uniform steps put 1^0 and -1^1 both at 7/5
        let w = SymmetricSketch::parse("-2^0 -1^0 -2^1 1^0 -1^1 2^0 1^1 2^1").unwrap();
        assert_eq!(sigma(&representative_point(&w)).unwrap(), w);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(
            phi(&SymmetricSketch::parse(OMEGA).unwrap()),
            f("-2(3,-3(2)),1(-1)")
        );
        let w1 = AnnotatedSketch::parse("-2^0 1^0 -2^1 3^0 1^1 3^1").unwrap();
        let t = phi(&w1);
        assert_eq!(t, f("-2(3),1"));
        assert_eq!(
            t.special_leaves(),
            vec![NodeLabel::new(1), NodeLabel::new(3)]
        );
        assert_eq!(phi(&AnnotatedSketch::parse("1^0 1^1").unwrap()), f("1"));
    }

    #[test]
    fn psi_examples() {
        assert_eq!(
            psi_symmetric(&f("-2(3,-3(2)),1(-1)")).unwrap().to_string(),
            OMEGA
        );
        assert_eq!(
            psi_labeled(&f("1(2,3(4))")).unwrap().to_string(),
            "1^0 1^1 2^0 3^0 2^1 3^1 4^0 4^1"
        );
        assert_eq!(psi_labeled(&f("1")).unwrap().to_string(), "1^0 1^1");
        assert!(psi_symmetric(&f("1,2,-1,-2")).is_err());
        assert!(psi_labeled(&f("1,3")).is_err());
    }

    #[test]
    fn region_to_forest_examples() {
        assert_eq!(region_to_forest(&point("1/6")).unwrap(), f("-1,1"));
        assert_eq!(region_to_forest(&point("3/4")).unwrap(), f("-1(1)"));
        assert_eq!(
            region_to_forest(&point("1/6")).unwrap(),
            region_to_forest(&point("1/5")).unwrap()
        );
        assert!(region_to_forest(&point("1/2")).is_err());
    }

    #[test]
    fn point_parsing() {
        assert_eq!(point(" -7/6 , 2 ").to_string(), "-7/6,2");
        assert!("1/0".parse::<RegionPoint>().is_err());
        assert!("a".parse::<RegionPoint>().is_err());
        assert!("".parse::<RegionPoint>().is_err());
    }
}
