//! Global minimum weighted cut, multigraph edge connectivity, and
//! subtour-LP feasibility checking.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{CutSide, Multigraph, WeightedGraph};
use crate::linalg::Rational;

/// A minimizing cut side together with its exact weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinCutResult {
    pub side: CutSide,
    pub value: Rational,
}

/// Outcome of checking the three subtour constraint families on a point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    /// Per-vertex flags for weighted degree exactly 2, indexed by vertex - 1.
    pub degree_ok: Vec<bool>,
    /// Per stored edge: endpoints and the flag for weight <= 1
    /// (nonnegativity holds by construction).
    pub bounds_ok: Vec<EdgeBound>,
    /// Global minimum cut; `None` only when n < 2, where no cut exists.
    pub min_cut: Option<MinCutResult>,
    /// Minimum cut weight >= 2, which certifies every subtour constraint.
    pub cut_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeBound {
    pub u: usize,
    pub v: usize,
    pub ok: bool,
}

impl FeasibilityReport {
    /// Feasible for the full subtour LP: degrees, bounds, and cuts.
    pub fn feasible(&self) -> bool {
        self.degree_ok.iter().all(|&f| f)
            && self.bounds_ok.iter().all(|b| b.ok)
            && self.cut_ok
    }

    pub fn bounds_feasible(&self) -> bool {
        self.bounds_ok.iter().all(|b| b.ok)
    }
}

/// Deterministic Stoer-Wagner global minimum cut over exact rational
/// weights.
///
/// Ties in the maximum-adjacency ordering break toward the smallest
/// vertex index, so the returned certificate is reproducible.
/// Disconnected inputs short-circuit to value 0 with a connected
/// component as the certificate.
pub fn global_min_cut(g: &WeightedGraph) -> Result<MinCutResult> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::TooFewVertices { n, min: 2 });
    }

    if let Some(component) = disconnected_component(g) {
        let side = CutSide::new(component);
        debug_assert!(g.cut_weight(&side).expect("valid side").is_zero());
        return Ok(MinCutResult {
            side,
            value: Rational::zero(),
        });
    }

    // Working weights between supervertices, 0-indexed.
    let mut weight = vec![vec![Rational::zero(); n]; n];
    for (u, v, w) in g.edges() {
        weight[u - 1][v - 1] = w.clone();
        weight[v - 1][u - 1] = w.clone();
    }
    // groups[v] = original vertices merged into supervertex v.
    let mut groups: Vec<Vec<usize>> = (1..=n).map(|v| vec![v]).collect();
    let mut active: Vec<usize> = (0..n).collect();

    let mut best: Option<MinCutResult> = None;

    while active.len() > 1 {
        // Maximum-adjacency ordering from the smallest active vertex.
        let start = active[0];
        let mut in_a = vec![false; n];
        in_a[start] = true;
        let mut attachment: Vec<Rational> = (0..n).map(|v| weight[start][v].clone()).collect();
        let mut order = vec![start];
        while order.len() < active.len() {
            let mut pick: Option<usize> = None;
            for &v in &active {
                if in_a[v] {
                    continue;
                }
                match pick {
                    None => pick = Some(v),
                    Some(p) => {
                        // strict > keeps the smallest index among maxima
                        if attachment[v] > attachment[p] {
                            pick = Some(v);
                        }
                    }
                }
            }
            let v = pick.expect("active vertices remain");
            in_a[v] = true;
            order.push(v);
            for &u in &active {
                if !in_a[u] {
                    attachment[u] += &weight[v][u];
                }
            }
        }

        let t = *order.last().expect("order nonempty");
        let s = order[order.len() - 2];
        let phase_value = attachment[t].clone();
        let phase_side = CutSide::new(groups[t].iter().copied());

        let better = match &best {
            None => true,
            Some(b) => phase_value < b.value,
        };
        if better {
            best = Some(MinCutResult {
                side: phase_side,
                value: phase_value,
            });
        }

        // Merge t into s.
        let t_group = std::mem::take(&mut groups[t]);
        groups[s].extend(t_group);
        for &v in &active {
            if v == s || v == t {
                continue;
            }
            let merged = &weight[s][v] + &weight[t][v];
            weight[s][v] = merged.clone();
            weight[v][s] = merged;
        }
        weight[s][t] = Rational::zero();
        weight[t][s] = Rational::zero();
        active.retain(|&v| v != t);
    }

    let result = best.expect("n >= 2 runs at least one phase");
    debug_assert_eq!(
        g.cut_weight(&result.side).expect("valid certificate"),
        result.value
    );
    Ok(result)
}

/// When `g` is disconnected over nonzero edges, returns one connected
/// component as a proper subset of the vertices.
fn disconnected_component(g: &WeightedGraph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n + 1];
    seen[1] = true;
    let mut stack = vec![1usize];
    while let Some(u) = stack.pop() {
        for (a, b, _) in g.edges() {
            let other = if a == u {
                b
            } else if b == u {
                a
            } else {
                continue;
            };
            if !seen[other] {
                seen[other] = true;
                stack.push(other);
            }
        }
    }
    let component: Vec<usize> = (1..=n).filter(|&v| seen[v]).collect();
    if component.len() < n {
        Some(component)
    } else {
        None
    }
}

/// Edge connectivity of a multigraph: the global minimum cut with
/// multiplicities as integer weights.
pub fn edge_connectivity(m: &Multigraph) -> Result<u64> {
    let n = m.vertex_count();
    if n < 2 {
        return Err(Error::TooFewVertices { n, min: 2 });
    }
    let cut = global_min_cut(&m.to_weighted())?;
    Ok(cut
        .value
        .to_u64()
        .expect("integer multiplicities yield an integer cut"))
}

/// Checks all three subtour constraint families exactly: degree
/// equalities, box bounds, and the cut family (certified at once by the
/// global minimum cut).
pub fn check_subtour_feasible(g: &WeightedGraph) -> FeasibilityReport {
    let n = g.vertex_count();
    let two = Rational::from(2i64);
    let one = Rational::one();

    let degree_ok = (1..=n).map(|v| g.weighted_degree(v) == two).collect();
    let bounds_ok = g
        .edges()
        .map(|(u, v, w)| EdgeBound {
            u,
            v,
            ok: *w <= one,
        })
        .collect();
    let min_cut = if n >= 2 {
        Some(global_min_cut(g).expect("n >= 2 checked"))
    } else {
        None
    };
    let cut_ok = match &min_cut {
        Some(c) => c.value >= two,
        // no nonempty proper subset exists, so the family is vacuous
        None => true,
    };
    FeasibilityReport {
        degree_ok,
        bounds_ok,
        min_cut,
        cut_ok,
    }
}

/// The weaker hypothesis: every cut has weight >= 2 and the box bounds
/// hold, with no degree requirement.
pub fn cut_only_feasible(g: &WeightedGraph) -> bool {
    let report = check_subtour_feasible(g);
    report.bounds_feasible() && report.cut_ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{exhaustive_min_cut, fractional_fixture, two_triangles};

    fn rat(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn disconnected_cut_is_zero_with_component_certificate() {
        let g = two_triangles();
        let cut = global_min_cut(&g).unwrap();
        assert!(cut.value.is_zero());
        assert_eq!(g.cut_weight(&cut.side).unwrap(), Rational::zero());
        assert_eq!(cut.side.len(), 3);
    }

    #[test]
    fn cycle_min_cut_is_two() {
        let g = WeightedGraph::cycle(6).unwrap();
        let cut = global_min_cut(&g).unwrap();
        assert_eq!(cut.value, rat(2, 1));
        assert_eq!(g.cut_weight(&cut.side).unwrap(), cut.value);
    }

    #[test]
    fn fixture_min_cut_is_two() {
        let g = fractional_fixture();
        let cut = global_min_cut(&g).unwrap();
        assert_eq!(cut.value, rat(2, 1));
        assert_eq!(exhaustive_min_cut(&g), rat(2, 1));
    }

    #[test]
    fn matches_exhaustive_enumeration() {
        // Deterministic pseudo-random small graphs against the 2^(n-1)-1
        // subset oracle.
        let mut state = 7u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        for trial in 0..60 {
            let n = 3 + (trial % 7) as usize; // 3..=9
            let mut g = WeightedGraph::new(n).unwrap();
            for u in 1..=n {
                for v in u + 1..=n {
                    if next() % 3 == 0 {
                        continue; // leave some pairs absent
                    }
                    let p = (next() % 8) as i64;
                    let q = (next() % 4) as i64 + 1;
                    g.add_edge(u, v, rat(p, q)).unwrap();
                }
            }
            let fast = global_min_cut(&g).unwrap();
            assert_eq!(fast.value, exhaustive_min_cut(&g));
            assert_eq!(g.cut_weight(&fast.side).unwrap(), fast.value);
        }
    }

    #[test]
    fn multigraph_connectivity() {
        for n in [3usize, 5, 8] {
            let cn = Multigraph::from_multiplicities(n, (1..=n).map(|v| (v, v % n + 1, 1)))
                .unwrap();
            assert_eq!(edge_connectivity(&cn).unwrap(), 2);
        }
        let parallel = Multigraph::from_multiplicities(2, [(1, 2, 9)]).unwrap();
        assert_eq!(edge_connectivity(&parallel).unwrap(), 9);

        // expanded fixture: 2R = 4
        let exp = crate::tree::expand_to_multigraph(
            &fractional_fixture(),
            crate::tree::DEFAULT_EXPANSION_CAP,
        )
        .unwrap();
        assert_eq!(edge_connectivity(&exp.multigraph).unwrap(), 4);
    }

    #[test]
    fn feasibility_of_cycles_and_fixture() {
        for n in 3..=8 {
            let report = check_subtour_feasible(&WeightedGraph::cycle(n).unwrap());
            assert!(report.feasible());
        }
        let report = check_subtour_feasible(&fractional_fixture());
        assert!(report.feasible());
        assert_eq!(report.min_cut.as_ref().unwrap().value, rat(2, 1));
    }

    #[test]
    fn infeasibility_certificate_for_two_triangles() {
        let report = check_subtour_feasible(&two_triangles());
        assert!(!report.feasible());
        assert!(report.degree_ok.iter().all(|&f| f));
        assert!(report.bounds_feasible());
        assert!(!report.cut_ok);
        let cut = report.min_cut.unwrap();
        assert!(cut.value.is_zero());
        assert_eq!(cut.side.len(), 3);
    }

    #[test]
    fn cut_only_hypothesis() {
        // K_4 all weights 1: cut-only feasible, degree-infeasible.
        let k4 = WeightedGraph::from_edges(
            4,
            [
                (1, 2, rat(1, 1)),
                (1, 3, rat(1, 1)),
                (1, 4, rat(1, 1)),
                (2, 3, rat(1, 1)),
                (2, 4, rat(1, 1)),
                (3, 4, rat(1, 1)),
            ],
        )
        .unwrap();
        assert!(cut_only_feasible(&k4));
        assert!(!check_subtour_feasible(&k4).feasible());

        assert!(cut_only_feasible(&WeightedGraph::cycle(5).unwrap()));

        // Path: the leaf cut has weight 1.
        let path = WeightedGraph::from_edges(3, [(1, 2, rat(1, 1)), (2, 3, rat(1, 1))]).unwrap();
        assert!(!cut_only_feasible(&path));
    }

    #[test]
    fn feasible_implies_cut_only() {
        for g in [
            WeightedGraph::cycle(4).unwrap(),
            WeightedGraph::cycle(7).unwrap(),
            fractional_fixture(),
        ] {
            if check_subtour_feasible(&g).feasible() {
                assert!(cut_only_feasible(&g));
            }
        }
    }

    #[test]
    fn min_cut_requires_two_vertices() {
        let lone = WeightedGraph::new(1).unwrap();
        assert!(matches!(
            global_min_cut(&lone),
            Err(Error::TooFewVertices { .. })
        ));
    }
}
