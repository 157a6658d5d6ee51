//! Exact rational simplex and the cutting-plane loop for the subtour
//! elimination LP.
//!
//! The solver is a bounded-variable primal simplex over [`Rational`]
//! arithmetic. Bland's rule (smallest index entering, smallest blocking
//! variable leaving) rules out cycling; variable bounds are handled as
//! bound flips rather than explicit rows; infeasibility is detected by a
//! phase that minimizes the total artificial infeasibility. There are no
//! tolerances anywhere: every comparison is exact.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::connectivity::global_min_cut;
use crate::error::{Error, Result};
use crate::graph::{edge_order, CutSide, WeightedGraph};
use crate::linalg::Rational;

/// Default cap on cutting-plane rounds.
pub const DEFAULT_CUT_CAP: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Eq,
    Ge,
    Le,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// A linear program: minimize `objective . x` subject to the constraint
/// rows and per-variable bounds.
///
/// Subtour models built by [`LpModel::subtour`] always carry the n degree
/// equalities and box bounds `0 <= x_e <= 1`; subtour cuts are appended
/// incrementally by the separation loop.
#[derive(Debug, Clone)]
pub struct LpModel {
    num_vars: usize,
    objective: Vec<Rational>,
    bounds: Vec<(Rational, Option<Rational>)>,
    constraints: Vec<Constraint>,
}

impl LpModel {
    pub fn new(
        objective: Vec<Rational>,
        bounds: Vec<(Rational, Option<Rational>)>,
    ) -> Result<Self> {
        if objective.len() != bounds.len() {
            return Err(Error::DimensionMismatch {
                left: objective.len(),
                right: bounds.len(),
            });
        }
        for (l, u) in &bounds {
            if let Some(u) = u {
                if u < l {
                    return Err(Error::Usage(format!("empty bound interval [{l}, {u}]")));
                }
            }
        }
        Ok(LpModel {
            num_vars: objective.len(),
            objective,
            bounds,
            constraints: Vec::new(),
        })
    }

    /// The subtour LP base model on `K_n`: one variable per edge in
    /// canonical order, box bounds [0, 1], and the n degree equalities
    /// `x(delta(v)) = 2`.
    pub fn subtour(n: usize, costs: &[Rational]) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooFewVertices { n, min: 3 });
        }
        let m = n * (n - 1) / 2;
        if costs.len() != m {
            return Err(Error::DimensionMismatch {
                left: m,
                right: costs.len(),
            });
        }
        let mut model = Self::new(
            costs.to_vec(),
            vec![(Rational::zero(), Some(Rational::one())); m],
        )?;
        for v in 1..=n {
            let mut coeffs = vec![Rational::zero(); m];
            for (k, (a, b)) in edge_order(n).enumerate() {
                if a == v || b == v {
                    coeffs[k] = Rational::one();
                }
            }
            model.add_constraint(Constraint {
                coeffs,
                relation: Relation::Eq,
                rhs: Rational::from(2i64),
            })?;
        }
        Ok(model)
    }

    pub fn add_constraint(&mut self, c: Constraint) -> Result<()> {
        if c.coeffs.len() != self.num_vars {
            return Err(Error::DimensionMismatch {
                left: self.num_vars,
                right: c.coeffs.len(),
            });
        }
        self.constraints.push(c);
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }
}

/// The subtour constraint `x(delta(side)) >= 2` as a row over the
/// canonical edge variables of `K_n`.
pub fn subtour_cut_constraint(n: usize, side: &CutSide) -> Constraint {
    let m = n * (n - 1) / 2;
    let mut coeffs = vec![Rational::zero(); m];
    for (k, (a, b)) in edge_order(n).enumerate() {
        if side.contains(a) != side.contains(b) {
            coeffs[k] = Rational::one();
        }
    }
    Constraint {
        coeffs,
        relation: Relation::Ge,
        rhs: Rational::from(2i64),
    }
}

/// One of the constraints holding with equality at a vertex of the
/// feasible polytope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TightConstraint {
    /// Constraint row by index into the model.
    Row(usize),
    /// Variable at its lower bound.
    Lower(usize),
    /// Variable at its upper bound.
    Upper(usize),
}

/// An optimal basic feasible solution: exact coordinates, objective
/// value, and the defining set of tight constraints (always exactly
/// `num_vars` of them, and linearly independent).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremePoint {
    pub x: Vec<Rational>,
    pub objective_value: Rational,
    pub basis: Vec<TightConstraint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VarState {
    Basic,
    AtLower,
    AtUpper,
}

struct Simplex {
    num_structural: usize,
    num_artificial_start: usize,
    tableau: Vec<Vec<Rational>>,
    beta: Vec<Rational>,
    basis: Vec<usize>,
    state: Vec<VarState>,
    lower: Vec<Rational>,
    upper: Vec<Option<Rational>>,
    reduced: Vec<Rational>,
    allowed: Vec<bool>,
    row_constraint: Vec<usize>,
    slack_of_constraint: Vec<Option<usize>>,
}

enum StepOutcome {
    Optimal,
    Unbounded,
}

impl Simplex {
    fn build(model: &LpModel) -> Simplex {
        let ns = model.num_vars;
        let rows = model.constraints.len();

        let mut lower: Vec<Rational> = model.bounds.iter().map(|(l, _)| l.clone()).collect();
        let mut upper: Vec<Option<Rational>> =
            model.bounds.iter().map(|(_, u)| u.clone()).collect();
        let mut state = vec![VarState::AtLower; ns];

        // structural variables start at their lower bounds
        let value: Vec<Rational> = lower.clone();
        let residual: Vec<Rational> = model
            .constraints
            .iter()
            .map(|c| {
                let dot: Rational = c.coeffs.iter().zip(&value).map(|(a, v)| a * v).sum();
                &c.rhs - dot
            })
            .collect();

        let mut slack_of_constraint = vec![None; rows];
        let mut total = ns;
        for (i, c) in model.constraints.iter().enumerate() {
            if matches!(c.relation, Relation::Ge | Relation::Le) {
                slack_of_constraint[i] = Some(total);
                total += 1;
            }
        }
        let num_artificial_start = total;

        // decide a starting basic variable per row
        let mut basis = Vec::with_capacity(rows);
        let mut beta = Vec::with_capacity(rows);
        let mut row_sign: Vec<i8> = Vec::with_capacity(rows);
        let mut artificial_rows: Vec<usize> = Vec::new();
        for (i, c) in model.constraints.iter().enumerate() {
            let r = residual[i].clone();
            match c.relation {
                Relation::Le if !r.is_negative() => {
                    basis.push(slack_of_constraint[i].expect("Le has a slack"));
                    beta.push(r);
                    row_sign.push(1);
                }
                Relation::Ge if !r.is_positive() => {
                    // slack enters with -1; flip the row so its coefficient is +1
                    basis.push(slack_of_constraint[i].expect("Ge has a slack"));
                    beta.push(-r);
                    row_sign.push(-1);
                }
                _ => {
                    artificial_rows.push(i);
                    basis.push(usize::MAX); // patched below once columns are numbered
                    if r.is_negative() {
                        beta.push(-r);
                        row_sign.push(-1);
                    } else {
                        beta.push(r);
                        row_sign.push(1);
                    }
                }
            }
        }
        for (k, &i) in artificial_rows.iter().enumerate() {
            basis[i] = num_artificial_start + k;
        }
        total = num_artificial_start + artificial_rows.len();

        // assemble the tableau with basis columns forming the identity
        let mut tableau = vec![vec![Rational::zero(); total]; rows];
        for (i, c) in model.constraints.iter().enumerate() {
            let sign = Rational::from(row_sign[i] as i64);
            for (j, a) in c.coeffs.iter().enumerate() {
                tableau[i][j] = a * &sign;
            }
            if let Some(s) = slack_of_constraint[i] {
                let coeff = match c.relation {
                    Relation::Le => Rational::one(),
                    Relation::Ge => -Rational::one(),
                    Relation::Eq => unreachable!("Eq rows have no slack"),
                };
                tableau[i][s] = coeff * &sign;
            }
        }
        for (r, &col) in basis.iter().enumerate() {
            if col >= num_artificial_start {
                tableau[r][col] = Rational::one();
            }
        }

        // slack and artificial columns live in [0, infinity)
        for _ in ns..total {
            lower.push(Rational::zero());
            upper.push(None);
            state.push(VarState::AtLower);
        }
        for &col in &basis {
            state[col] = VarState::Basic;
        }

        Simplex {
            num_structural: ns,
            num_artificial_start,
            tableau,
            beta,
            basis,
            state,
            lower,
            upper,
            reduced: vec![Rational::zero(); total],
            allowed: vec![true; total],
            row_constraint: (0..rows).collect(),
            slack_of_constraint,
        }
    }

    fn total_cols(&self) -> usize {
        self.reduced.len()
    }

    fn nonbasic_value(&self, j: usize) -> Rational {
        match self.state[j] {
            VarState::AtLower => self.lower[j].clone(),
            VarState::AtUpper => self.upper[j].clone().expect("AtUpper implies finite upper"),
            VarState::Basic => unreachable!("nonbasic_value on a basic variable"),
        }
    }

    /// Recomputes the reduced-cost row `c - c_B^T T` for the given column
    /// costs.
    fn load_costs(&mut self, cost: &[Rational]) {
        let rows = self.basis.len();
        let mut reduced = cost.to_vec();
        for r in 0..rows {
            let cb = &cost[self.basis[r]];
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.total_cols() {
                if self.tableau[r][j].is_zero() {
                    continue;
                }
                let delta = cb * &self.tableau[r][j];
                reduced[j] -= delta;
            }
        }
        self.reduced = reduced;
    }

    /// Primal simplex iterations under Bland's rule until optimal or
    /// unbounded.
    fn optimize(&mut self) -> StepOutcome {
        loop {
            // entering: smallest eligible index
            let mut entering: Option<(usize, i8)> = None;
            for j in 0..self.total_cols() {
                if !self.allowed[j] || self.state[j] == VarState::Basic {
                    continue;
                }
                match self.state[j] {
                    VarState::AtLower if self.reduced[j].is_negative() => {
                        entering = Some((j, 1));
                    }
                    VarState::AtUpper if self.reduced[j].is_positive() => {
                        entering = Some((j, -1));
                    }
                    _ => continue,
                }
                break;
            }
            let Some((j, dir)) = entering else {
                return StepOutcome::Optimal;
            };

            // ratio test: how far can x_j move?
            enum Blocker {
                OwnBound,
                Row(usize),
            }
            let mut best_t: Option<Rational> = self.upper[j]
                .as_ref()
                .map(|u| u - &self.lower[j]);
            let mut blocker = Blocker::OwnBound;
            let mut blocker_var = j;
            for r in 0..self.basis.len() {
                let coeff = &self.tableau[r][j];
                if coeff.is_zero() {
                    continue;
                }
                // basic value moves by g per unit of t
                let g = -(coeff * Rational::from(dir as i64));
                let k = self.basis[r];
                let t_r = if g.is_negative() {
                    (&self.beta[r] - &self.lower[k]) / -g
                } else {
                    match &self.upper[k] {
                        Some(u) => (u - &self.beta[r]) / g,
                        None => continue,
                    }
                };
                let replace = match &best_t {
                    None => true,
                    Some(t) => t_r < *t || (t_r == *t && k < blocker_var),
                };
                if replace {
                    best_t = Some(t_r);
                    blocker = Blocker::Row(r);
                    blocker_var = k;
                }
            }

            let Some(t) = best_t else {
                return StepOutcome::Unbounded;
            };
            debug_assert!(!t.is_negative());

            let step = Rational::from(dir as i64) * &t;
            match blocker {
                Blocker::OwnBound => {
                    for r in 0..self.basis.len() {
                        if self.tableau[r][j].is_zero() {
                            continue;
                        }
                        let delta = &self.tableau[r][j] * &step;
                        self.beta[r] -= delta;
                    }
                    self.state[j] = match self.state[j] {
                        VarState::AtLower => VarState::AtUpper,
                        VarState::AtUpper => VarState::AtLower,
                        VarState::Basic => unreachable!("entering variable is nonbasic"),
                    };
                }
                Blocker::Row(r) => {
                    let new_value = self.nonbasic_value(j) + &step;
                    for i in 0..self.basis.len() {
                        if self.tableau[i][j].is_zero() {
                            continue;
                        }
                        let delta = &self.tableau[i][j] * &step;
                        self.beta[i] -= delta;
                    }
                    let leaving = self.basis[r];
                    // which bound did the leaving variable hit?
                    let g_sign_negative = {
                        let g = -(&self.tableau[r][j] * Rational::from(dir as i64));
                        g.is_negative()
                    };
                    self.state[leaving] = if g_sign_negative {
                        VarState::AtLower
                    } else {
                        VarState::AtUpper
                    };
                    self.basis[r] = j;
                    self.state[j] = VarState::Basic;
                    self.beta[r] = new_value;
                    self.eliminate_column(r, j);
                }
            }
        }
    }

    /// Normalizes row `r` on column `j` and clears `j` from all other rows
    /// and from the reduced-cost row.
    fn eliminate_column(&mut self, r: usize, j: usize) {
        let pivot = self.tableau[r][j].clone();
        debug_assert!(!pivot.is_zero());
        if pivot != Rational::one() {
            for v in self.tableau[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &pivot;
                }
            }
        }
        let pivot_row = self.tableau[r].clone();
        for (i, row) in self.tableau.iter_mut().enumerate() {
            if i == r || row[j].is_zero() {
                continue;
            }
            let factor = row[j].clone();
            for (a, b) in row.iter_mut().zip(&pivot_row) {
                if !b.is_zero() {
                    *a -= &factor * b;
                }
            }
        }
        if !self.reduced[j].is_zero() {
            let factor = self.reduced[j].clone();
            for (a, b) in self.reduced.iter_mut().zip(&pivot_row) {
                if !b.is_zero() {
                    *a -= &factor * b;
                }
            }
        }
    }

    /// Sum of artificial variable values (the phase-1 objective).
    fn infeasibility(&self) -> Rational {
        self.basis
            .iter()
            .zip(&self.beta)
            .filter(|(&col, _)| col >= self.num_artificial_start)
            .map(|(_, v)| v.clone())
            .sum()
    }

    /// Pivots artificial variables out of the basis (they all sit at zero
    /// once phase 1 succeeds); rows with no usable pivot are redundant and
    /// dropped.
    fn evict_artificials(&mut self) {
        let mut r = 0;
        while r < self.basis.len() {
            if self.basis[r] < self.num_artificial_start {
                r += 1;
                continue;
            }
            debug_assert!(self.beta[r].is_zero());
            let pivot_col = (0..self.num_artificial_start)
                .find(|&j| self.state[j] != VarState::Basic && !self.tableau[r][j].is_zero());
            match pivot_col {
                Some(j) => {
                    let leaving = self.basis[r];
                    self.state[leaving] = VarState::AtLower;
                    self.basis[r] = j;
                    let value = self.nonbasic_value(j);
                    self.state[j] = VarState::Basic;
                    self.beta[r] = value;
                    self.eliminate_column(r, j);
                    r += 1;
                }
                None => {
                    let leaving = self.basis[r];
                    self.state[leaving] = VarState::AtLower;
                    self.tableau.remove(r);
                    self.beta.remove(r);
                    self.basis.remove(r);
                    self.row_constraint.remove(r);
                }
            }
        }
        for j in self.num_artificial_start..self.total_cols() {
            self.allowed[j] = false;
        }
    }

    fn structural_values(&self) -> Vec<Rational> {
        let mut x: Vec<Rational> = (0..self.num_structural)
            .map(|j| match self.state[j] {
                VarState::AtLower => self.lower[j].clone(),
                VarState::AtUpper => self.upper[j].clone().expect("finite upper"),
                VarState::Basic => Rational::zero(), // patched below
            })
            .collect();
        for (r, &col) in self.basis.iter().enumerate() {
            if col < self.num_structural {
                x[col] = self.beta[r].clone();
            }
        }
        x
    }

    fn tight_constraints(&self, model: &LpModel) -> Vec<TightConstraint> {
        let mut tight = Vec::new();
        for j in 0..self.num_structural {
            match self.state[j] {
                VarState::AtLower => tight.push(TightConstraint::Lower(j)),
                VarState::AtUpper => tight.push(TightConstraint::Upper(j)),
                VarState::Basic => {}
            }
        }
        let live_rows: std::collections::BTreeSet<usize> =
            self.row_constraint.iter().copied().collect();
        for (i, c) in model.constraints.iter().enumerate() {
            if !live_rows.contains(&i) {
                continue;
            }
            let row_tight = match c.relation {
                Relation::Eq => true,
                Relation::Ge | Relation::Le => {
                    let s = self.slack_of_constraint[i].expect("inequality has a slack");
                    self.state[s] != VarState::Basic
                }
            };
            if row_tight {
                tight.push(TightConstraint::Row(i));
            }
        }
        tight
    }
}

/// Solves the model exactly, returning an optimal basic feasible
/// solution. Optimality is certified by the sign of the reduced costs;
/// infeasibility carries the positive phase-1 optimum.
pub fn simplex_solve(model: &LpModel) -> Result<ExtremePoint> {
    let mut s = Simplex::build(model);

    // phase 1: minimize total infeasibility
    let total = s.total_cols();
    let phase1_cost: Vec<Rational> = (0..total)
        .map(|j| {
            if j >= s.num_artificial_start {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    s.load_costs(&phase1_cost);
    match s.optimize() {
        StepOutcome::Optimal => {}
        StepOutcome::Unbounded => return Err(Error::Unbounded),
    }
    let infeasibility = s.infeasibility();
    if !infeasibility.is_zero() {
        return Err(Error::Infeasible {
            infeasibility: infeasibility.to_string(),
        });
    }
    s.evict_artificials();

    // phase 2: the real objective
    let mut phase2_cost = vec![Rational::zero(); total];
    phase2_cost[..model.num_vars].clone_from_slice(&model.objective);
    s.load_costs(&phase2_cost);
    match s.optimize() {
        StepOutcome::Optimal => {}
        StepOutcome::Unbounded => return Err(Error::Unbounded),
    }

    let x = s.structural_values();
    let objective_value: Rational = model.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    let basis = s.tight_constraints(model);
    debug_assert_eq!(basis.len(), model.num_vars);
    Ok(ExtremePoint {
        x,
        objective_value,
        basis,
    })
}

/// Solves the full subtour elimination LP by cutting planes.
///
/// Each round solves the current model and separates with a global
/// minimum cut on the solution's support; a cut below 2 yields a new
/// violated constraint. Returns the optimal extreme point of the full LP
/// and the number of cuts added. The loop terminates because each round
/// adds a constraint over a subset not yet present.
pub fn solve_subtour_lp(
    n: usize,
    costs: &[Rational],
    cut_cap: usize,
) -> Result<(ExtremePoint, usize)> {
    let mut model = LpModel::subtour(n, costs)?;
    let two = Rational::from(2i64);
    let mut cuts_added = 0usize;
    loop {
        let point = simplex_solve(&model)?;
        let support = WeightedGraph::from_edge_vector(n, &point.x)?;
        let cut = global_min_cut(&support)?;
        if cut.value >= two {
            return Ok((point, cuts_added));
        }
        if cuts_added >= cut_cap {
            return Err(Error::CutCapExceeded { cap: cut_cap });
        }
        model.add_constraint(subtour_cut_constraint(n, &cut.side))?;
        cuts_added += 1;
    }
}

/// Deterministic pseudo-random integer costs in [1, 1000], one per edge
/// of `K_n` in canonical order.
pub fn random_instance(n: usize, seed: u64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = n * (n - 1) / 2;
    (0..m)
        .map(|_| Rational::from(rng.next_u64() % 1000 + 1))
        .collect()
}

/// The exact convex combination `t * a + (1 - t) * b` of two points over
/// the same edge set.
pub fn convex_combine(a: &ExtremePoint, b: &ExtremePoint, t: &Rational) -> Result<Vec<Rational>> {
    if a.x.len() != b.x.len() {
        return Err(Error::DimensionMismatch {
            left: a.x.len(),
            right: b.x.len(),
        });
    }
    if t.is_negative() || *t > Rational::one() {
        return Err(Error::ParameterOutOfRange { t: t.to_string() });
    }
    let s = Rational::one() - t;
    Ok(a.x
        .iter()
        .zip(&b.x)
        .map(|(xa, xb)| t * xa + &s * xb)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::check_subtour_feasible;
    use crate::linalg::RationalMatrix;

    fn rat(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn one_variable_with_shifted_bounds() {
        // min x subject to 2 <= x <= 3
        let model = LpModel::new(vec![rat(1, 1)], vec![(rat(2, 1), Some(rat(3, 1)))]).unwrap();
        let pt = simplex_solve(&model).unwrap();
        assert_eq!(pt.x, vec![rat(2, 1)]);
        assert_eq!(pt.objective_value, rat(2, 1));

        // max x via negated costs
        let model = LpModel::new(vec![rat(-1, 1)], vec![(rat(2, 1), Some(rat(3, 1)))]).unwrap();
        let pt = simplex_solve(&model).unwrap();
        assert_eq!(pt.x, vec![rat(3, 1)]);
    }

    #[test]
    fn degree_only_triangle_has_unique_point() {
        for costs in [
            vec![rat(1, 1), rat(2, 1), rat(3, 1)],
            vec![rat(5, 1), rat(5, 1), rat(5, 1)],
            vec![rat(0, 1), rat(-7, 2), rat(1, 3)],
        ] {
            let model = LpModel::subtour(3, &costs).unwrap();
            let pt = simplex_solve(&model).unwrap();
            assert_eq!(pt.x, vec![rat(1, 1); 3]);
            let expected: Rational = costs.iter().sum();
            assert_eq!(pt.objective_value, expected);
        }
    }

    #[test]
    fn all_unit_costs_give_value_n() {
        // any feasible point has sum x = n, so the optimum under unit
        // costs is n
        for n in [5usize, 6] {
            let costs = vec![rat(1, 1); n * (n - 1) / 2];
            let (pt, _) = solve_subtour_lp(n, &costs, DEFAULT_CUT_CAP).unwrap();
            assert_eq!(pt.objective_value, Rational::from(n));
        }
    }

    #[test]
    fn infeasible_model_is_reported() {
        // x1 + x2 = 3 with x in [0,1]^2 is infeasible
        let mut model =
            LpModel::new(vec![rat(1, 1), rat(1, 1)], vec![(rat(0, 1), Some(rat(1, 1))); 2])
                .unwrap();
        model
            .add_constraint(Constraint {
                coeffs: vec![rat(1, 1), rat(1, 1)],
                relation: Relation::Eq,
                rhs: rat(3, 1),
            })
            .unwrap();
        match simplex_solve(&model) {
            Err(Error::Infeasible { infeasibility }) => {
                assert_eq!(infeasibility, "1");
            }
            other => panic!("expected infeasibility, got {other:?}"),
        }
    }

    #[test]
    fn unbounded_model_is_reported() {
        // min -x with x >= 0 unbounded above
        let model = LpModel::new(vec![rat(-1, 1)], vec![(rat(0, 1), None)]).unwrap();
        assert_eq!(simplex_solve(&model), Err(Error::Unbounded));
    }

    #[test]
    fn cheap_triangles_force_a_cut() {
        // zero costs on two disjoint triangles, expensive elsewhere: the
        // degree-only optimum is the disconnected two-triangle point
        let n = 6;
        let triangle_edges = [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)];
        let costs: Vec<Rational> = edge_order(n)
            .map(|(u, v)| {
                if triangle_edges.contains(&(u, v)) {
                    Rational::zero()
                } else {
                    Rational::one()
                }
            })
            .collect();
        let (pt, cuts) = solve_subtour_lp(n, &costs, DEFAULT_CUT_CAP).unwrap();
        assert!(cuts >= 1, "separation must fire at least once");
        let g = WeightedGraph::from_edge_vector(n, &pt.x).unwrap();
        assert!(check_subtour_feasible(&g).feasible());
    }

    #[test]
    fn fixture_support_costs_reach_zero_optimum() {
        // zero costs on the fractional fixture's nine support edges and 1
        // elsewhere: the optimum is 0
        let n = 6;
        let support = [
            (1, 2),
            (2, 3),
            (1, 3),
            (4, 5),
            (5, 6),
            (4, 6),
            (1, 4),
            (2, 5),
            (3, 6),
        ];
        let costs: Vec<Rational> = edge_order(n)
            .map(|(u, v)| {
                if support.contains(&(u, v)) {
                    Rational::zero()
                } else {
                    Rational::one()
                }
            })
            .collect();
        let (pt, _) = solve_subtour_lp(n, &costs, DEFAULT_CUT_CAP).unwrap();
        assert!(pt.objective_value.is_zero());
        let g = WeightedGraph::from_edge_vector(n, &pt.x).unwrap();
        assert!(check_subtour_feasible(&g).feasible());
    }

    #[test]
    fn returned_points_are_vertices() {
        // The tight-constraint set at the returned point has exactly
        // num_vars members and full rank. The separation loop is driven
        // here by hand so the final model (with its cut rows) is in scope.
        for seed in [1u64, 2, 3, 4] {
            let n = 5;
            let costs = random_instance(n, seed);
            let m = n * (n - 1) / 2;
            let mut model = LpModel::subtour(n, &costs).unwrap();
            let pt = loop {
                let pt = simplex_solve(&model).unwrap();
                let support = WeightedGraph::from_edge_vector(n, &pt.x).unwrap();
                let cut = global_min_cut(&support).unwrap();
                if cut.value >= rat(2, 1) {
                    break pt;
                }
                model
                    .add_constraint(subtour_cut_constraint(n, &cut.side))
                    .unwrap();
            };
            assert_eq!(pt.basis.len(), m);
            let rows: Vec<Vec<Rational>> = pt
                .basis
                .iter()
                .map(|tc| match tc {
                    TightConstraint::Lower(j) | TightConstraint::Upper(j) => {
                        let mut row = vec![Rational::zero(); m];
                        row[*j] = Rational::one();
                        row
                    }
                    TightConstraint::Row(i) => model.constraints()[*i].coeffs.clone(),
                })
                .collect();
            let det = RationalMatrix::from_rows(rows).unwrap().determinant();
            assert!(!det.is_zero(), "tight constraint set must be independent");
            // every tight row really is tight at the point
            for tc in &pt.basis {
                match tc {
                    TightConstraint::Lower(j) => assert!(pt.x[*j].is_zero()),
                    TightConstraint::Upper(j) => assert_eq!(pt.x[*j], Rational::one()),
                    TightConstraint::Row(i) => {
                        let c = &model.constraints()[*i];
                        let dot: Rational =
                            c.coeffs.iter().zip(&pt.x).map(|(a, v)| a * v).sum();
                        assert_eq!(dot, c.rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn random_instances_are_deterministic() {
        assert_eq!(random_instance(5, 42), random_instance(5, 42));
        assert_ne!(random_instance(5, 42), random_instance(5, 43));
        assert_eq!(random_instance(3, 7).len(), 3);
        for c in random_instance(6, 7) {
            assert!(c >= Rational::one() && c <= Rational::from(1000i64));
            assert!(c.is_integer());
        }
    }

    #[test]
    fn convex_combination_endpoints_and_degrees() {
        let n = 6;
        let (a, _) = solve_subtour_lp(n, &random_instance(n, 10), DEFAULT_CUT_CAP).unwrap();
        let (b, _) = solve_subtour_lp(n, &random_instance(n, 11), DEFAULT_CUT_CAP).unwrap();
        assert_eq!(convex_combine(&a, &b, &Rational::one()).unwrap(), a.x);
        assert_eq!(convex_combine(&a, &b, &Rational::zero()).unwrap(), b.x);
        let mid = convex_combine(&a, &b, &rat(1, 2)).unwrap();
        let g = WeightedGraph::from_edge_vector(n, &mid).unwrap();
        for v in 1..=n {
            assert_eq!(g.weighted_degree(v), rat(2, 1));
        }
        assert!(convex_combine(&a, &b, &rat(3, 2)).is_err());
    }

    #[test]
    fn solver_is_deterministic() {
        let n = 6;
        let costs = random_instance(n, 99);
        let (p1, c1) = solve_subtour_lp(n, &costs, DEFAULT_CUT_CAP).unwrap();
        let (p2, c2) = solve_subtour_lp(n, &costs, DEFAULT_CUT_CAP).unwrap();
        assert_eq!(p1, p2);
        assert_eq!(c1, c2);
    }

    #[test]
    fn usage_errors() {
        assert!(matches!(
            LpModel::subtour(2, &[rat(1, 1)]),
            Err(Error::TooFewVertices { .. })
        ));
        assert!(matches!(
            LpModel::subtour(4, &vec![rat(1, 1); 3]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            solve_subtour_lp(6, &random_instance(6, 1), 0),
            Ok(_) | Err(Error::CutCapExceeded { cap: 0 })
        ));
    }
}
