//! Brute-force oracles and the named check suites.
//!
//! The oracles here do not go through the constructions they check: they
//! filter exhaustive candidate sets by the defining conditions.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::bijections::{phi, psi_labeled, psi_symmetric, representative_point, sigma};
use crate::counting::{
    c_ns, catalan, check_recurrence, count_paths_with_tail, dominating_rotations, region_count,
    region_count_via_sum, LatticePath, Step,
};
use crate::forests::{
    count_forests_by_special_leaves, decompose_symmetric_forest, enumerate_forests, forest_shapes,
    forest_shuffles, signed_permutations, symmetric_forest, validate_symmetric_forest, NodeLabel,
    OrderedForest,
};
use crate::words::{
    alphabet, enumerate_annotated_sketches, enumerate_symmetric_sketches, sketch_shuffles,
    validate_symmetric_sketch, SketchWord, SymmetricSketch,
};

/// Every ordering of the `4n` letters that satisfies the symmetric-sketch
/// conditions. `(4n)!` candidates, so only for `n <= 2`.
pub fn symmetric_sketches_by_permutation(n: usize) -> BTreeSet<SketchWord> {
    let letters = alphabet(n);
    let len = letters.len();
    letters
        .into_iter()
        .permutations(len)
        .map(SketchWord::new)
        .filter(|w| {
            validate_symmetric_sketch(w, n)
                .expect("well formed")
                .is_ok()
        })
        .collect()
}

/// Every shape on `2n` nodes with every admissible labeling (first half a
/// signed permutation, second half its negated reverse), filtered by the
/// symmetric-forest conditions.
pub fn symmetric_forests_by_filter(n: usize) -> (usize, HashSet<OrderedForest>) {
    let perms = signed_permutations(n);
    let mut examined = 0;
    let mut out = HashSet::new();
    for (roots, counts) in forest_shapes(2 * n) {
        for p in &perms {
            let mut labels = p.clone();
            labels.extend(p.iter().rev().map(|&l| -l));
            let f = OrderedForest::from_shape(roots, counts.clone(), labels).expect("valid shape");
            examined += 1;
            if validate_symmetric_forest(&f, n)
                .expect("right size")
                .is_ok()
            {
                out.insert(f);
            }
        }
    }
    (examined, out)
}

fn sub_descendant_pairs(f: &OrderedForest) -> HashSet<(NodeLabel, NodeLabel)> {
    let e = f.bfs_order();
    let starts = f.child_starts();
    let mut out = HashSet::new();
    for j in 0..f.len() {
        for i in j + 1..starts[j] {
            out.insert((e[i], e[j]));
        }
    }
    out
}

/// Searches all shapes on the labels `-e_n, ..., -e_1` (in BFS order) for
/// forests where `-e_i` is a sub-descendant of `-e_j` exactly when `e_j` is
/// a sub-descendant of `e_i`.
pub fn symmetric_forests_by_relation(f: &OrderedForest) -> Vec<OrderedForest> {
    let n = f.len();
    let want: HashSet<(NodeLabel, NodeLabel)> = sub_descendant_pairs(f)
        .into_iter()
        .map(|(i, j)| (-j, -i))
        .collect();
    let labels: Vec<NodeLabel> = f.bfs_order().iter().rev().map(|&l| -l).collect();
    forest_shapes(n)
        .into_iter()
        .map(|(r, c)| OrderedForest::from_shape(r, c, labels.clone()).expect("valid shape"))
        .filter(|g| sub_descendant_pairs(g) == want)
        .collect()
}

/// Shuffles of `f` and `fbar` built edge by edge: each of the first `s`
/// nodes of `fbar` is attached below one of the last internal node of `f`
/// (or the super-root when `f` has none) and the special leaves of `f`;
/// candidates are kept when the BFS order is `e_1..e_n, -e_n..-e_1` and
/// every source/target pair satisfies the sub-descendant property.
pub fn forest_shuffles_by_edges(f: &OrderedForest, fbar: &OrderedForest) -> HashSet<OrderedForest> {
    let n = f.len();
    let s = f.special_leaves().len();
    let mut labels: Vec<NodeLabel> = f.bfs_order().to_vec();
    labels.extend_from_slice(fbar.bfs_order());
    let base_children = |g: &OrderedForest, offset: usize| -> Vec<Vec<usize>> {
        let starts = g.child_starts();
        (0..g.len())
            .map(|k| {
                (starts[k]..starts[k] + g.child_counts()[k])
                    .map(|c| c + offset)
                    .collect()
            })
            .collect()
    };
    let mut children = base_children(f, 0);
    children.extend(base_children(fbar, n));
    let f_roots: Vec<usize> = (0..f.root_count()).collect();
    let fbar_roots: Vec<usize> = (0..fbar.root_count()).map(|k| k + n).collect();
    let sources: Vec<usize> = (n..n + s).collect();
    // None is the super-root.
    let last_internal = if s < n { Some(n - s - 1) } else { None };
    let targets: Vec<Option<usize>> = std::iter::once(last_internal)
        .chain((n - s..n).map(Some))
        .collect();
    let target_nodes: Vec<usize> = targets.iter().flatten().copied().collect();
    let expected_order: Vec<NodeLabel> = labels.clone();

    let mut out = HashSet::new();
    for choice in (0..sources.len())
        .map(|_| targets.iter())
        .multi_cartesian_product()
    {
        let mut ch = children.clone();
        let mut roots = f_roots.clone();
        let mut detached: HashSet<usize> = HashSet::new();
        for (&src, tgt) in sources.iter().zip(&choice) {
            detached.insert(src);
            match tgt {
                Some(t) => ch[*t].push(src),
                None => roots.push(src),
            }
        }
        // a source that already had a parent in fbar loses that edge
        for list in ch.iter_mut().skip(n) {
            list.retain(|c| !detached.contains(c));
        }
        roots.extend(fbar_roots.iter().filter(|r| !detached.contains(r)));
        let g = OrderedForest::from_arena(&labels, &roots, &ch);
        if g.bfs_order() != expected_order.as_slice() {
            continue;
        }
        let starts = g.child_starts();
        let pos: HashMap<NodeLabel, usize> = g
            .bfs_order()
            .iter()
            .enumerate()
            .map(|(k, &l)| (l, k))
            .collect();
        let sdp = |a: usize, b: usize| {
            // a sub-descendant of b implies -b sub-descendant of -a
            let (la, lb) = (g.bfs_order()[a], g.bfs_order()[b]);
            !g.is_sub_descendant_at(a, b, &starts)
                || g.is_sub_descendant_at(pos[&-lb], pos[&-la], &starts)
        };
        let ok = sources
            .iter()
            .all(|&u| target_nodes.iter().all(|&v| sdp(u, v) && sdp(v, u)));
        if ok {
            out.insert(g);
        }
    }
    out
}

/// Result of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
}

impl Check {
    fn new(
        name: impl Into<String>,
        passed: bool,
        cases: usize,
        detail: impl Into<String>,
    ) -> Check {
        Check {
            name: name.into(),
            passed,
            cases,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} cases={}", self.name, self.cases)?;
        if !self.detail.is_empty() {
            write!(f, " {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Counts,
    Bijection,
    Shuffles,
    Oracle,
    All,
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "counts" => Ok(Suite::Counts),
            "bijection" => Ok(Suite::Bijection),
            "shuffles" => Ok(Suite::Shuffles),
            "oracle" => Ok(Suite::Oracle),
            "all" => Ok(Suite::All),
            other => Err(format!("unknown suite `{other}`")),
        }
    }
}

/// Largest `n_max` each suite accepts.
pub fn max_n(suite: Suite) -> usize {
    match suite {
        Suite::Counts => 400,
        Suite::Bijection => 4,
        Suite::Shuffles => 4,
        Suite::Oracle => 3,
        Suite::All => 3,
    }
}

pub fn run_suite(suite: Suite, n_max: usize) -> Vec<Check> {
    match suite {
        Suite::Counts => counts_suite(n_max),
        Suite::Bijection => bijection_suite(n_max),
        Suite::Shuffles => shuffles_suite(n_max),
        Suite::Oracle => oracle_suite(n_max),
        Suite::All => {
            let mut out = counts_suite(n_max);
            out.extend(bijection_suite(n_max));
            out.extend(shuffles_suite(n_max));
            out.extend(oracle_suite(n_max));
            out
        }
    }
}

/// Every path over `{U, D}` of length `1..=max_len` with positive excess.
pub fn paths_with_positive_excess(max_len: usize) -> Vec<LatticePath> {
    (1..=max_len)
        .flat_map(|len| {
            (0u32..1 << len).map(move |bits| {
                (0..len)
                    .map(|k| if bits >> k & 1 == 0 { Step::U } else { Step::D })
                    .collect::<LatticePath>()
            })
        })
        .filter(|p| p.excess() > 0)
        .collect()
}

pub fn counts_suite(n_max: usize) -> Vec<Check> {
    let mut out = Vec::new();
    let small = [4u32, 48, 960, 26880];
    let ok = small
        .iter()
        .enumerate()
        .all(|(k, &v)| region_count(k + 1) == BigUint::from(v));
    out.push(Check::new("region-count-small-values", ok, 4, "n=1..4"));

    let ns: Vec<usize> = (1..=n_max).collect();
    let bad = ns
        .iter()
        .find(|&&n| region_count(n) != region_count_via_sum(n));
    out.push(Check::new(
        "region-count-formula-equals-sum",
        bad.is_none(),
        ns.len(),
        bad.map_or(String::new(), |n| format!("first-failure n={n}")),
    ));

    let bad = (2..=n_max).find(|&n| !check_recurrence(n));
    out.push(Check::new(
        "special-leaf-recurrence",
        bad.is_none(),
        n_max.saturating_sub(1),
        bad.map_or(String::new(), |n| format!("first-failure n={n}")),
    ));

    let bad = ns.iter().find(|&&n| {
        let sum: BigUint = (1..=n).map(|s| c_ns(n, s).expect("in range")).sum();
        sum != catalan(n)
    });
    out.push(Check::new(
        "special-leaf-sum-is-catalan",
        bad.is_none(),
        ns.len(),
        bad.map_or(String::new(), |n| format!("first-failure n={n}")),
    ));

    let brute_max = n_max.min(8);
    let mut cases = 0;
    let mut failure = None;
    for n in 1..=brute_max {
        let table = count_forests_by_special_leaves(n);
        for s in 1..=n {
            cases += 1;
            let formula = c_ns(n, s).expect("in range");
            let forests = table.entries.get(&s).cloned().unwrap_or_default();
            let paths = count_paths_with_tail(n, s).expect("in range");
            if formula != forests || formula != paths {
                failure.get_or_insert((n, s));
            }
        }
    }
    out.push(Check::new(
        "special-leaves-formula-forests-paths",
        failure.is_none(),
        cases,
        failure.map_or(format!("n<={brute_max}"), |(n, s)| {
            format!("first-failure n={n} s={s}")
        }),
    ));

    let max_len = n_max.min(14);
    let paths = paths_with_positive_excess(max_len);
    let bad = paths
        .iter()
        .find(|p| dominating_rotations(p).ok() != usize::try_from(p.excess()).ok());
    out.push(Check::new(
        "cycle-lemma",
        bad.is_none(),
        paths.len(),
        bad.map_or(format!("length<={max_len}"), |p| {
            format!("first-failure {p}")
        }),
    ));
    out
}

pub fn bijection_suite(n_max: usize) -> Vec<Check> {
    let mut out = Vec::new();
    let sym_max = n_max.min(3);

    let mut cases = 0;
    let mut bad = None;
    for n in 1..=sym_max {
        for w in enumerate_symmetric_sketches(n) {
            cases += 1;
            let f = phi(&w);
            let back = psi_symmetric(&f);
            if back.as_ref() != Ok(&w) || phi(&back.expect("checked")) != f {
                bad.get_or_insert(w);
            }
        }
    }
    out.push(Check::new(
        "symmetric-sketch-round-trips",
        bad.is_none(),
        cases,
        bad.map_or(format!("n<={sym_max}"), |w| format!("first-failure {w}")),
    ));

    let ann_max = (n_max + 1).min(4);
    let mut cases = 0;
    let mut bad = None;
    for n in 1..=ann_max {
        for w in enumerate_annotated_sketches(n) {
            cases += 1;
            let f = phi(&w);
            let back = psi_labeled(&f);
            if back.as_ref() != Ok(&w) || phi(&back.expect("checked")) != f {
                bad.get_or_insert(w);
            }
        }
    }
    out.push(Check::new(
        "annotated-sketch-round-trips",
        bad.is_none(),
        cases,
        bad.map_or(format!("n<={ann_max}"), |w| format!("first-failure {w}")),
    ));

    // phi maps A_{n,s} onto F_{n,2n-s}.
    let mut cases = 0;
    let mut bad = None;
    for n in 1..=ann_max {
        let mut images: HashMap<usize, HashSet<OrderedForest>> = HashMap::new();
        let mut sizes: HashMap<usize, usize> = HashMap::new();
        for w in enumerate_annotated_sketches(n) {
            let s = w.rightmost_zero_position();
            images.entry(s).or_default().insert(phi(&w));
            *sizes.entry(s).or_default() += 1;
        }
        let mut by_special: HashMap<usize, HashSet<OrderedForest>> = HashMap::new();
        for f in enumerate_forests(n, true) {
            by_special
                .entry(f.special_leaves().len())
                .or_default()
                .insert(f);
        }
        for s in n..2 * n {
            cases += 1;
            let img = images.remove(&s).unwrap_or_default();
            let target = by_special.remove(&(2 * n - s)).unwrap_or_default();
            if img.len() != sizes.get(&s).copied().unwrap_or(0) || img != target {
                bad.get_or_insert((n, s));
            }
        }
    }
    out.push(Check::new(
        "phi-maps-sketch-classes-onto-special-leaf-classes",
        bad.is_none(),
        cases,
        bad.map_or(format!("n<={ann_max}"), |(n, s)| {
            format!("first-failure n={n} s={s}")
        }),
    ));

    let mut cases = 0;
    let mut bad = None;
    let mut rng = StdRng::seed_from_u64(0x7C47);
    for n in 1..=sym_max {
        for w in enumerate_symmetric_sketches(n) {
            cases += 1;
            let x = representative_point(&w);
            let round = sigma(&x).ok().as_ref() == Some(&w);
            let stable = x.half_min_gap().is_ok_and(|g| {
                (0..20).all(|_| sigma(&x.perturb(&g, &mut rng)).ok().as_ref() == Some(&w))
            });
            if !round || !stable {
                bad.get_or_insert(w);
            }
        }
    }
    out.push(Check::new(
        "representative-point-round-trips-and-perturbation",
        bad.is_none(),
        cases,
        bad.map_or(format!("n<={sym_max} perturbations=20"), |w| {
            format!("first-failure {w}")
        }),
    ));
    out
}

pub fn shuffles_suite(n_max: usize) -> Vec<Check> {
    let mut out = Vec::new();
    let w_max = n_max.min(3);

    let mut cases = 0;
    let mut bad = None;
    for n in 1..=w_max {
        for w1 in enumerate_annotated_sketches(n) {
            cases += 1;
            let sh = sketch_shuffles(&w1);
            let words: HashSet<&SymmetricSketch> = sh.iter().collect();
            let images: HashSet<OrderedForest> = sh.iter().map(phi).collect();
            let f = phi(&w1);
            let direct = forest_shuffles_by_edges(&f, &phi(&w1.symmetric()));
            let size_ok = sh.len() == 1 << f.special_leaves().len() && words.len() == sh.len();
            let decomp_ok = sh
                .iter()
                .all(|g| g.decompose() == (w1.clone(), w1.symmetric()));
            let sym_ok = phi(&w1.symmetric()) == symmetric_forest(&f).expect("labeled");
            if !(size_ok && decomp_ok && sym_ok && images == direct) {
                bad.get_or_insert(w1);
            }
        }
    }
    out.push(Check::new(
        "shuffle-compatibility",
        bad.is_none(),
        cases,
        bad.map_or(format!("n<={w_max}"), |w| format!("first-failure {w}")),
    ));

    let f_max = n_max.min(4);
    let mut cases = 0;
    let mut bad = None;
    for n in 1..=f_max {
        for f in enumerate_forests(n, true) {
            cases += 1;
            let fbar = symmetric_forest(&f).expect("labeled");
            let involution = symmetric_forest(&fbar).as_ref() == Ok(&f);
            let relation = n > 3 || symmetric_forests_by_relation(&f) == vec![fbar.clone()];
            let sh = forest_shuffles(&f).expect("labeled");
            let all_valid = sh
                .iter()
                .all(|g| validate_symmetric_forest(g, n).is_ok_and(|r| r.is_ok()));
            let decomp = sh
                .iter()
                .all(|g| decompose_symmetric_forest(g).as_ref() == Ok(&(f.clone(), fbar.clone())));
            if !(involution
                && relation
                && all_valid
                && decomp
                && sh.len() == 1 << f.special_leaves().len())
            {
                bad.get_or_insert(f);
            }
        }
    }
    out.push(Check::new(
        "forest-symmetric-and-shuffles",
        bad.is_none(),
        cases,
        bad.map_or(format!("n<={f_max}"), |f| format!("first-failure {f}")),
    ));
    out
}

pub fn oracle_suite(n_max: usize) -> Vec<Check> {
    let mut out = Vec::new();
    let a_max = n_max.min(2);
    for n in 1..=a_max {
        let filtered = symmetric_sketches_by_permutation(n);
        let enumerated: BTreeSet<SketchWord> = enumerate_symmetric_sketches(n)
            .into_iter()
            .map(SymmetricSketch::into_word)
            .collect();
        out.push(Check::new(
            format!("permutation-filter-equals-enumeration-n{n}"),
            filtered == enumerated && BigUint::from(filtered.len()) == region_count(n),
            (1..=4 * n).product(),
            format!("count={}", filtered.len()),
        ));
    }
    let b_max = n_max.min(3);
    for n in 1..=b_max {
        let (examined, filtered) = symmetric_forests_by_filter(n);
        let images: HashSet<OrderedForest> =
            enumerate_symmetric_sketches(n).iter().map(phi).collect();
        out.push(Check::new(
            format!("forest-filter-equals-phi-image-n{n}"),
            filtered == images && BigUint::from(filtered.len()) == region_count(n),
            examined,
            format!("count={}", filtered.len()),
        ));
    }
    out
}
