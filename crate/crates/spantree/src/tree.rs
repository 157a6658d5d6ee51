//! Aggregate spanning-tree weight by two independent routes, edge
//! splitting, multigraph expansion, and the edge-connectivity tree-count
//! bound.
//!
//! The aggregate spanning-tree weight of a weighted graph is the sum over
//! all spanning trees of the product of the tree's edge weights. By the
//! matrix-tree theorem it equals any principal minor of the Laplacian;
//! [`tree_weight_enumerate`] recomputes it independently by
//! deletion-contraction so the two routes can be checked against each
//! other.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::graph::{Multigraph, WeightedGraph, WeightedMultigraph};
use crate::linalg::Rational;

/// Default cap on the number of nonzero edges deletion-contraction will
/// recurse over.
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

/// Default cap on the expansion scale `R`.
pub const DEFAULT_EXPANSION_CAP: u64 = 1_000_000;

/// A weighted graph rescaled to an unweighted multigraph.
///
/// The multiplicity of `{i,j}` is exactly `scale * w(i,j)`, and `scale` is
/// the least common multiple of the lowest-terms denominators of all
/// nonzero weights.
#[derive(Debug, Clone)]
pub struct ExpansionResult {
    pub multigraph: Multigraph,
    pub scale: u64,
    pub original: WeightedGraph,
}

/// Aggregate spanning-tree weight via the matrix-tree theorem: the
/// determinant of the Laplacian with row and column of vertex `i`
/// (1-based) deleted. Independent of `i`.
pub fn tree_weight_kirchhoff(g: &WeightedGraph, i: usize) -> Result<Rational> {
    let n = g.vertex_count();
    if i < 1 || i > n {
        return Err(Error::VertexOutOfRange { v: i, n });
    }
    Ok(g.laplacian().delete_row_col(i - 1)?.determinant())
}

/// Matrix-tree route for weighted multigraphs; parallel weights sum into
/// the Laplacian.
pub fn multigraph_tree_weight_kirchhoff(g: &WeightedMultigraph, i: usize) -> Result<Rational> {
    let n = g.vertex_count();
    if i < 1 || i > n {
        return Err(Error::VertexOutOfRange { v: i, n });
    }
    Ok(g.laplacian().delete_row_col(i - 1)?.determinant())
}

/// Aggregate spanning-tree weight by deletion-contraction over nonzero
/// edges. Exact; errors when the nonzero edge count exceeds `cap`.
pub fn tree_weight_enumerate(g: &WeightedGraph, cap: usize) -> Result<Rational> {
    multigraph_tree_weight_enumerate(&WeightedMultigraph::from(g), cap)
}

/// Deletion-contraction on a weighted loopless multigraph.
///
/// Zero-weight edges are treated as absent. Contraction merges the edge's
/// endpoints and sums any parallel edges that arise, which leaves the
/// aggregate unchanged by multilinearity.
pub fn multigraph_tree_weight_enumerate(g: &WeightedMultigraph, cap: usize) -> Result<Rational> {
    let live: Vec<(usize, usize, Rational)> = g
        .edges()
        .filter(|(_, _, w)| !w.is_zero())
        .cloned()
        .collect();
    if live.len() > cap {
        return Err(Error::EnumerationCapExceeded {
            edges: live.len(),
            cap,
        });
    }
    let mut edges: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    for (u, v, w) in live {
        *edges.entry((u, v)).or_insert_with(Rational::zero) += w;
    }
    Ok(deletion_contraction(g.vertex_count(), edges))
}

fn connected(n_vertices: usize, labels: &[usize], edges: &BTreeMap<(usize, usize), Rational>) -> bool {
    if n_vertices <= 1 {
        return true;
    }
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(u, v) in edges.keys() {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    let start = labels[0];
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(start);
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        if let Some(neighbors) = adj.get(&u) {
            for &v in neighbors {
                if seen.insert(v) {
                    stack.push(v);
                }
            }
        }
    }
    seen.len() == n_vertices
}

/// Core recursion. Vertices are the distinct labels appearing in `edges`
/// plus isolated ones counted via `vertex_count`; parallel edges have been
/// pre-summed into the map.
fn deletion_contraction(vertex_count: usize, edges: BTreeMap<(usize, usize), Rational>) -> Rational {
    fn labels_of(edges: &BTreeMap<(usize, usize), Rational>) -> Vec<usize> {
        let mut set = std::collections::BTreeSet::new();
        for &(u, v) in edges.keys() {
            set.insert(u);
            set.insert(v);
        }
        set.into_iter().collect()
    }

    fn recurse(n: usize, edges: BTreeMap<(usize, usize), Rational>) -> Rational {
        if n <= 1 {
            return Rational::one();
        }
        if edges.len() < n - 1 {
            return Rational::zero();
        }
        // A vertex without any edge cannot be spanned; otherwise require
        // one connected component over the present labels.
        let labels = labels_of(&edges);
        if labels.len() < n || !connected(n, &labels, &edges) {
            return Rational::zero();
        }
        // Branch on the first edge in key order: keep it (contract) or
        // drop it (delete).
        let (&(u, v), _) = edges.iter().next().expect("nonempty by the count check");
        let mut deleted = edges.clone();
        let w = deleted.remove(&(u, v)).expect("key just observed");

        // Contract v into u: relabel, drop the loop, sum new parallels.
        let mut contracted: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (&(a, b), wt) in deleted.iter() {
            let a2 = if a == v { u } else { a };
            let b2 = if b == v { u } else { b };
            if a2 == b2 {
                continue;
            }
            let key = (a2.min(b2), a2.max(b2));
            *contracted.entry(key).or_insert_with(Rational::zero) += wt;
        }

        w * recurse(n - 1, contracted) + recurse(n, deleted)
    }

    recurse(vertex_count, edges)
}

/// Splits edge `edge` (by index) into two parallel copies with weights
/// `w1` and `w2`. Requires `w1 + w2` to equal the original weight; the
/// aggregate spanning-tree weight is preserved.
pub fn split_edge(
    g: &WeightedMultigraph,
    edge: usize,
    w1: Rational,
    w2: Rational,
) -> Result<WeightedMultigraph> {
    let (u, v, w) = g
        .edge(edge)
        .cloned()
        .ok_or(Error::EdgeNotFound { index: edge })?;
    if w1.is_negative() || w2.is_negative() {
        return Err(Error::NegativeWeight {
            u,
            v,
            w: if w1.is_negative() { w1.to_string() } else { w2.to_string() },
        });
    }
    if &w1 + &w2 != w {
        return Err(Error::BadSplit {
            w1: w1.to_string(),
            w2: w2.to_string(),
            w: w.to_string(),
        });
    }
    let mut out = WeightedMultigraph::new(g.vertex_count())?;
    for (i, (a, b, wt)) in g.edges().enumerate() {
        if i == edge {
            out.add_edge(*a, *b, w1.clone())?;
            out.add_edge(*a, *b, w2.clone())?;
        } else {
            out.add_edge(*a, *b, wt.clone())?;
        }
    }
    Ok(out)
}

/// Scales a weighted graph to an unweighted multigraph: `R` is the LCM of
/// the denominators of the nonzero weights and edge `{i,j}` receives
/// `R * w(i,j)` parallel copies.
pub fn expand_to_multigraph(g: &WeightedGraph, max_scale: u64) -> Result<ExpansionResult> {
    let mut scale = BigInt::one();
    for (_, _, w) in g.edges() {
        scale = scale.lcm(w.denom());
    }
    let scale_u64 = scale.to_u64().filter(|&r| r <= max_scale).ok_or_else(|| {
        Error::ExpansionCapExceeded {
            scale: scale.to_string(),
            cap: max_scale,
        }
    })?;
    let mut multigraph = Multigraph::new(g.vertex_count())?;
    for (u, v, w) in g.edges() {
        let count = (&scale / w.denom()) * w.numer();
        debug_assert!(!count.is_negative());
        let count = count.to_u64().ok_or_else(|| Error::MultiplicityOverflow {
            u,
            v,
            mult: count.to_string(),
        })?;
        multigraph.add_edges(u, v, count)?;
    }
    Ok(ExpansionResult {
        multigraph,
        scale: scale_u64,
        original: g.clone(),
    })
}

/// Exact spanning-tree count of a multigraph: the matrix-tree determinant
/// of the multiplicity Laplacian.
pub fn count_trees_multigraph(m: &Multigraph) -> BigInt {
    let weighted = m.to_weighted();
    let count = tree_weight_kirchhoff(&weighted, 1).expect("vertex 1 exists: n >= 1 invariant");
    count
        .to_bigint()
        .expect("integer Laplacian yields an integer determinant")
}

/// Lower bound on the spanning-tree count of a k-edge-connected multigraph
/// on n vertices: `n * (k/2)^(n-1)`.
pub fn ok_thomassen_bound(n: usize, k: u64) -> Rational {
    assert!(n >= 1, "bound requires n >= 1");
    Rational::from(n) * Rational::new(k as i64, 2).pow((n - 1) as u32)
}
