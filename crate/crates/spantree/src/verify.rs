//! The verification pipeline: checks the spanning-tree aggregate lower
//! bound `det(L(X)_{-1}) >= n` on concrete points, convex combinations,
//! and randomized sweeps over sampled extreme points.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::connectivity::{check_subtour_feasible, edge_connectivity, FeasibilityReport};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::linalg::{Rational, RationalMatrix};
use crate::lp::{random_instance, solve_subtour_lp};
use crate::tree::{
    count_trees_multigraph, expand_to_multigraph, ok_thomassen_bound, tree_weight_enumerate,
    DEFAULT_ENUMERATION_CAP, DEFAULT_EXPANSION_CAP,
};
use crate::DEFAULT_CUT_CAP;

/// Which hypothesis the verdict is conditioned on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    /// All weighted degrees are exactly 2 (full subtour feasibility is the
    /// hypothesis). The Laplacian then equals 2I - X, which is asserted.
    #[serde(rename = "degree-feasible")]
    DegreeFeasible,
    /// Only the cut constraints and box bounds are hypothesized; degree
    /// equalities are ignored and the 2I - X identity is not asserted.
    #[serde(rename = "cut-only")]
    CutOnly,
}

/// Options for [`check_mtt_constraint`].
#[derive(Debug, Clone)]
pub struct MttOptions {
    pub oracle: bool,
    pub expand: bool,
    /// 1-based vertex whose Laplacian row/column is deleted.
    pub minor_index: usize,
    /// Force the cut-only hypothesis.
    pub cut_only: bool,
    pub enum_cap: usize,
    pub max_scale: u64,
}

impl Default for MttOptions {
    fn default() -> Self {
        MttOptions {
            oracle: false,
            expand: false,
            minor_index: 1,
            cut_only: false,
            enum_cap: DEFAULT_ENUMERATION_CAP,
            max_scale: DEFAULT_EXPANSION_CAP,
        }
    }
}

/// Independent recomputation of the minor determinant by spanning-tree
/// enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSection {
    pub enumeration_value: Rational,
    pub matches: bool,
}

/// The multigraph expansion chain: scale, tree count, connectivity, and
/// the tree-count lower bound, with the identities that tie them
/// together.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionSection {
    pub scale: u64,
    /// Spanning-tree count of the expanded multigraph, as a decimal
    /// string (it can be astronomically large).
    pub tree_count: String,
    /// count = scale^(n-1) * mtt_lhs, an unconditional identity.
    pub count_identity_ok: bool,
    pub connectivity: u64,
    /// connectivity >= 2 * scale; implied by cut feasibility.
    pub connectivity_ok: bool,
    pub tree_count_bound: Rational,
    /// count >= n * scale^(n-1); implied by cut feasibility.
    pub bound_ok: bool,
}

/// Structured outcome of one constraint check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n: usize,
    pub edge_count: usize,
    pub total_weight: Rational,
    pub mode: Mode,
    pub feasibility: FeasibilityReport,
    /// `Some` exactly in degree-feasible mode: the entrywise identity
    /// L(X) = 2I - X.
    pub laplacian_is_two_i_minus_x: Option<bool>,
    pub minor_index: usize,
    pub mtt_lhs: Rational,
    pub threshold: usize,
    pub satisfied: bool,
    pub tight: bool,
    pub oracle: Option<OracleSection>,
    pub expansion: Option<ExpansionSection>,
}

impl VerificationReport {
    /// Whether the hypothesis of the checked implication holds for this
    /// input.
    pub fn hypothesis_holds(&self) -> bool {
        match self.mode {
            Mode::DegreeFeasible => self.feasibility.feasible(),
            Mode::CutOnly => self.feasibility.bounds_feasible() && self.feasibility.cut_ok,
        }
    }

    /// True when some mathematical invariant this build promises has
    /// failed: the bound fails under its hypothesis, the two
    /// tree-weight routes disagree, the Laplacian identity breaks, or an
    /// expansion-chain identity breaks.
    pub fn violation(&self) -> bool {
        if self.hypothesis_holds() && !self.satisfied {
            return true;
        }
        if let Some(oracle) = &self.oracle {
            if !oracle.matches {
                return true;
            }
        }
        if self.laplacian_is_two_i_minus_x == Some(false) {
            return true;
        }
        if let Some(exp) = &self.expansion {
            if !exp.count_identity_ok {
                return true;
            }
            if self.feasibility.cut_ok && (!exp.connectivity_ok || !exp.bound_ok) {
                return true;
            }
        }
        false
    }
}

/// Checks the spanning-tree aggregate bound on a concrete point.
///
/// The Laplacian is always built from the definition (never assumed to be
/// 2I - X); in degree-feasible mode the identity L(X) = 2I - X is
/// additionally asserted entrywise. Optional sections recompute the
/// minor determinant by enumeration and replay the multigraph expansion
/// chain.
pub fn check_mtt_constraint(g: &WeightedGraph, opts: &MttOptions) -> Result<VerificationReport> {
    let n = g.vertex_count();
    if n < 3 {
        return Err(Error::TooFewVertices { n, min: 3 });
    }
    if opts.minor_index < 1 || opts.minor_index > n {
        return Err(Error::VertexOutOfRange {
            v: opts.minor_index,
            n,
        });
    }

    let feasibility = check_subtour_feasible(g);
    let degrees_are_two = feasibility.degree_ok.iter().all(|&f| f);
    let mode = if opts.cut_only || !degrees_are_two {
        Mode::CutOnly
    } else {
        Mode::DegreeFeasible
    };

    let laplacian = g.laplacian();
    let laplacian_is_two_i_minus_x = match mode {
        Mode::DegreeFeasible => {
            let two_i_minus_x = RationalMatrix::identity(n)
                .scale(&Rational::from(2i64))
                .add(&g.adjacency_matrix().scale(&-Rational::one()))
                .expect("orders match");
            Some(laplacian == two_i_minus_x)
        }
        Mode::CutOnly => None,
    };

    let mtt_lhs = laplacian
        .delete_row_col(opts.minor_index - 1)?
        .determinant();
    let threshold = Rational::from(n);
    let satisfied = mtt_lhs >= threshold;
    let tight = mtt_lhs == threshold;

    let oracle = if opts.oracle {
        let enumeration_value = tree_weight_enumerate(g, opts.enum_cap)?;
        let matches = enumeration_value == mtt_lhs;
        Some(OracleSection {
            enumeration_value,
            matches,
        })
    } else {
        None
    };

    let expansion = if opts.expand {
        let exp = expand_to_multigraph(g, opts.max_scale)?;
        let count = count_trees_multigraph(&exp.multigraph);
        let scale_pow = Rational::from(exp.scale).pow((n - 1) as u32);
        let count_identity_ok = Rational::from_bigint(count.clone()) == &scale_pow * &mtt_lhs;
        let connectivity = edge_connectivity(&exp.multigraph)?;
        let connectivity_ok = connectivity >= 2 * exp.scale;
        let tree_count_bound = ok_thomassen_bound(n, 2 * exp.scale);
        let bound_ok = Rational::from_bigint(count.clone()) >= tree_count_bound;
        Some(ExpansionSection {
            scale: exp.scale,
            tree_count: count.to_string(),
            count_identity_ok,
            connectivity,
            connectivity_ok,
            tree_count_bound,
            bound_ok,
        })
    } else {
        None
    };

    Ok(VerificationReport {
        n,
        edge_count: g.edge_count(),
        total_weight: g.total_weight(),
        mode,
        feasibility,
        laplacian_is_two_i_minus_x,
        minor_index: opts.minor_index,
        mtt_lhs,
        threshold: n,
        satisfied,
        tight,
        oracle,
        expansion,
    })
}

/// Outcome of checking the bound on a convex combination of two points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CombinationReport {
    pub n: usize,
    pub t: Rational,
    pub det_a: Rational,
    pub det_b: Rational,
    pub det_combination: Rational,
    pub threshold: usize,
    pub satisfied: bool,
    /// Present exactly at t = 1/2: the exact squared form of
    /// determinant log-concavity,
    /// det(((L(A)+L(B))/2)_{-1})^2 >= det(L(A)_{-1}) * det(L(B)_{-1}).
    pub log_concavity: Option<LogConcavitySection>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogConcavitySection {
    pub lhs_squared: Rational,
    pub rhs_product: Rational,
    pub ok: bool,
}

impl CombinationReport {
    pub fn violation(&self) -> bool {
        !self.satisfied || self.log_concavity.as_ref().is_some_and(|l| !l.ok)
    }
}

/// Verifies `det((t L(A) + (1-t) L(B))_{-1}) >= n` for two
/// subtour-feasible points, plus the exact squared log-concavity
/// instance at t = 1/2.
pub fn check_convex_combination(
    a: &WeightedGraph,
    b: &WeightedGraph,
    t: &Rational,
) -> Result<CombinationReport> {
    let n = a.vertex_count();
    if b.vertex_count() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: b.vertex_count(),
        });
    }
    if t.is_negative() || *t > Rational::one() {
        return Err(Error::ParameterOutOfRange { t: t.to_string() });
    }
    for (name, g) in [("a", a), ("b", b)] {
        if !check_subtour_feasible(g).feasible() {
            return Err(Error::InfeasibleInput { which: name.into() });
        }
    }

    let la = a.laplacian();
    let lb = b.laplacian();
    let det_a = la.delete_row_col(0)?.determinant();
    let det_b = lb.delete_row_col(0)?.determinant();

    let s = Rational::one() - t;
    let combined = la.scale(t).add(&lb.scale(&s))?;
    let det_combination = combined.delete_row_col(0)?.determinant();
    let satisfied = det_combination >= Rational::from(n);

    let log_concavity = if *t == Rational::new(1, 2) {
        let lhs_squared = &det_combination * &det_combination;
        let rhs_product = &det_a * &det_b;
        let ok = lhs_squared >= rhs_product;
        Some(LogConcavitySection {
            lhs_squared,
            rhs_product,
            ok,
        })
    } else {
        None
    };

    Ok(CombinationReport {
        n,
        t: t.clone(),
        det_a,
        det_b,
        det_combination,
        threshold: n,
        satisfied,
        log_concavity,
    })
}

/// Options for [`run_trials`].
#[derive(Debug, Clone)]
pub struct TrialOptions {
    pub oracle: bool,
    pub enum_cap: usize,
    pub cut_cap: usize,
}

impl Default for TrialOptions {
    fn default() -> Self {
        TrialOptions {
            oracle: false,
            enum_cap: DEFAULT_ENUMERATION_CAP,
            cut_cap: DEFAULT_CUT_CAP,
        }
    }
}

/// One sampled extreme point and its verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub trial: usize,
    pub seed: u64,
    pub cuts_added: usize,
    pub support_edges: usize,
    pub mtt_lhs: Rational,
    pub satisfied: bool,
    pub tight: bool,
    pub oracle_checked: bool,
    pub oracle_matches: bool,
}

/// Aggregate over a deterministic sweep of sampled extreme points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialsReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub satisfied_count: usize,
    pub tight_count: usize,
    pub min_mtt_lhs: Rational,
    pub median_mtt_lhs: Rational,
    pub oracle_checked: usize,
    pub oracle_mismatches: usize,
    pub failures: Vec<usize>,
    pub outcomes: Vec<TrialOutcome>,
}

impl TrialsReport {
    pub fn violation(&self) -> bool {
        !self.failures.is_empty() || self.oracle_mismatches > 0
    }
}

/// splitmix64 finalizer; derives per-trial seeds from the master seed.
fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Samples `trials` extreme points of the subtour LP on `K_n` by solving
/// random-cost instances, and checks the bound on each.
///
/// Fully deterministic given `(n, trials, seed)`: trial seeds derive
/// from the master seed and the trial index, trials run in parallel,
/// and aggregation is by trial index.
pub fn run_trials(n: usize, trials: usize, seed: u64, opts: &TrialOptions) -> Result<TrialsReport> {
    if n < 3 {
        return Err(Error::TooFewVertices { n, min: 3 });
    }
    if trials < 1 {
        return Err(Error::Usage("trials must be at least 1".into()));
    }

    let results: Vec<Result<TrialOutcome>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let trial_seed = derive_seed(seed, trial as u64);
            let costs = random_instance(n, trial_seed);
            let (point, cuts_added) = solve_subtour_lp(n, &costs, opts.cut_cap)?;
            let g = WeightedGraph::from_edge_vector(n, &point.x)?;
            let support_edges = g.edge_count();
            let use_oracle = opts.oracle && support_edges <= opts.enum_cap;
            let report = check_mtt_constraint(
                &g,
                &MttOptions {
                    oracle: use_oracle,
                    ..MttOptions::default()
                },
            )?;
            Ok(TrialOutcome {
                trial,
                seed: trial_seed,
                cuts_added,
                support_edges,
                mtt_lhs: report.mtt_lhs.clone(),
                satisfied: report.satisfied,
                tight: report.tight,
                oracle_checked: use_oracle,
                oracle_matches: report.oracle.as_ref().map(|o| o.matches).unwrap_or(true),
            })
        })
        .collect();
    let mut outcomes = Vec::with_capacity(trials);
    for r in results {
        outcomes.push(r?);
    }

    let satisfied_count = outcomes.iter().filter(|o| o.satisfied).count();
    let tight_count = outcomes.iter().filter(|o| o.tight).count();
    let failures: Vec<usize> = outcomes
        .iter()
        .filter(|o| !o.satisfied)
        .map(|o| o.trial)
        .collect();
    let oracle_checked = outcomes.iter().filter(|o| o.oracle_checked).count();
    let oracle_mismatches = outcomes
        .iter()
        .filter(|o| o.oracle_checked && !o.oracle_matches)
        .count();

    let mut values: Vec<Rational> = outcomes.iter().map(|o| o.mtt_lhs.clone()).collect();
    values.sort();
    let min_mtt_lhs = values.first().expect("trials >= 1").clone();
    let median_mtt_lhs = if values.len() % 2 == 1 {
        values[values.len() / 2].clone()
    } else {
        let hi = values.len() / 2;
        (&values[hi - 1] + &values[hi]) / Rational::from(2i64)
    };

    Ok(TrialsReport {
        n,
        trials,
        seed,
        satisfied_count,
        tight_count,
        min_mtt_lhs,
        median_mtt_lhs,
        oracle_checked,
        oracle_mismatches,
        failures,
        outcomes,
    })
}
