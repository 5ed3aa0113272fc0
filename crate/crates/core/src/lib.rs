//! Exact combinatorics of stability conditions for universal compactified
//! Jacobians over moduli of marked curves: stability polytopes, the unique
//! stable multidegree on tree-like dual graphs, and the divisor classes of
//! pulled-back theta divisors.

pub mod divisor_classes;
pub mod error;
pub mod graphs;
pub mod json;
pub mod multidegrees;
pub mod rational;
pub mod stability;

pub use divisor_classes::{
    class_algebra, hain_class, mueller_class, mueller_comparison, stable_pairs_class, theta_pullback,
    twist_divisor_coeffs, wall_crossing, wall_crossing_closed_form, wall_crossing_single, DivisorClass,
    MuellerComparison,
};
pub use error::{Error, Result};
pub use graphs::{
    admissible_pairs, enumerate_tree_type_graphs, two_vertex_graph, BoundaryPair, MarkedGraph, RootedTree, VertexSet,
};
pub use multidegrees::{
    all_stable_multidegrees_bruteforce, is_semistable, is_semistable_symmetric, is_stable, stable_multidegree,
    Multidegree, SubgraphMode, TorsionFreeDegree,
};
pub use rational::Rational;
pub use stability::{
    check_compatibility, connecting_twist, flat_labels, GraphParameter, PolytopeLabel, StabilityParameter, Twist, Wall,
};
