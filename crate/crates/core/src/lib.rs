//! Regions of the type C Catalan arrangement, symmetric annotated
//! 1-sketches and symmetric forests, with the bijections between them and
//! the exact counts they yield.
//!
//! The arrangement in `R^n` consists of the hyperplanes `x_i - x_j = s`,
//! `x_i + x_j = s` and `2x_i = s` for `s` in `{-1, 0, 1}`. It has
//! `2^n n! C(2n, n)` regions.

pub mod bijections;
pub mod counting;
pub mod forests;
pub mod verify;
pub mod words;

pub use bijections::{
    phi, psi_labeled, psi_symmetric, region_to_forest, representative_point, sigma, BijectionError,
    RegionPoint,
};
pub use counting::{
    c_ns, check_recurrence, count_paths_with_tail, d_ns, dominating_rotations, region_count,
    region_count_via_sum, CountTable, LatticePath, Step,
};
pub use forests::{
    count_forests_by_special_leaves, decompose_symmetric_forest, enumerate_forests,
    forest_shuffles, symmetric_forest, validate_symmetric_forest, ForestError, NodeLabel,
    OrderedForest,
};
pub use words::{
    enumerate_annotated_sketches, enumerate_symmetric_sketches, sketch_shuffles, symmetric_word,
    tail_shuffles, validate_annotated_sketch, validate_symmetric_sketch, AnnotatedSketch, Letter,
    Level, SketchError, SketchWord, SymmetricSketch,
};
