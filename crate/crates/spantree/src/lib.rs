//! Exact rational toolkit for spanning-tree aggregates of weighted graphs
//! and the subtour elimination LP.
//!
//! Everything here computes over arbitrary-precision rationals; there is
//! no floating point and no tolerance anywhere. The central fact the
//! toolkit checks on concrete instances: any point satisfying the subtour
//! cut constraints (every cut has weight at least 2) has aggregate
//! spanning-tree weight at least `n`, i.e. `det(L(X)_{-1}) >= n`.
//!
//! The pieces:
//!
//! * [`linalg`] — exact rationals and dense matrix kernels
//!   (fraction-free determinant, principal-minor deletion, linear solve).
//! * [`graph`] — weighted simple graphs, multigraphs, cuts, and the JSON
//!   interchange format.
//! * [`tree`] — aggregate spanning-tree weight by the matrix-tree
//!   determinant and by deletion-contraction, edge splitting, LCM
//!   expansion to unweighted multigraphs, and the edge-connectivity
//!   tree-count bound.
//! * [`connectivity`] — deterministic Stoer-Wagner global minimum cut,
//!   multigraph edge connectivity, subtour feasibility checking.
//! * [`lp`] — exact bounded-variable simplex and the cutting-plane loop
//!   for the subtour LP.
//! * [`verify`] — the verification pipeline and structured reports.

pub mod connectivity;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod lp;
pub mod tree;
pub mod verify;

pub use connectivity::{
    check_subtour_feasible, cut_only_feasible, edge_connectivity, global_min_cut,
    FeasibilityReport, MinCutResult,
};
pub use error::{Error, Result};
pub use graph::{
    edge_index, edge_order, parse_graph, serialize_graph, CutSide, Multigraph, WeightedGraph,
    WeightedMultigraph,
};
pub use linalg::{Rational, RationalMatrix};
pub use lp::{
    convex_combine, random_instance, simplex_solve, solve_subtour_lp, subtour_cut_constraint,
    Constraint, ExtremePoint, LpModel, Relation, TightConstraint, DEFAULT_CUT_CAP,
};
pub use tree::{
    count_trees_multigraph, expand_to_multigraph, multigraph_tree_weight_enumerate,
    multigraph_tree_weight_kirchhoff, ok_thomassen_bound, split_edge, tree_weight_enumerate,
    tree_weight_kirchhoff, ExpansionResult, DEFAULT_ENUMERATION_CAP, DEFAULT_EXPANSION_CAP,
};
pub use verify::{
    check_convex_combination, check_mtt_constraint, run_trials, CombinationReport, Mode,
    MttOptions, TrialOptions, TrialsReport, VerificationReport,
};
