//! Weighted simple graphs, multigraphs, cuts, and the on-disk graph format.
//!
//! Vertices are labeled `1..=n`. A missing edge and an explicit weight-0
//! edge are semantically identical everywhere: zero weights are dropped on
//! insertion and omitted from the serialized form.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Rational, RationalMatrix};

/// Simple undirected graph on `n` vertices with nonnegative rational edge
/// weights. Keys are normalized to `u < v`; only positive weights are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: std::collections::BTreeMap<(usize, usize), Rational>,
}

fn normalize_pair(n: usize, u: usize, v: usize) -> Result<(usize, usize)> {
    if u == v {
        return Err(Error::LoopEdge { v });
    }
    for w in [u, v] {
        if w < 1 || w > n {
            return Err(Error::VertexOutOfRange { v: w, n });
        }
    }
    Ok((u.min(v), u.max(v)))
}

impl WeightedGraph {
    pub fn new(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::TooFewVertices { n, min: 1 });
        }
        Ok(WeightedGraph {
            n,
            edges: Default::default(),
        })
    }

    /// Adds edge `{u,v}` with weight `w >= 0`. Weight 0 is a no-op; adding
    /// an edge twice is an error (the graph is simple).
    pub fn add_edge(&mut self, u: usize, v: usize, w: Rational) -> Result<()> {
        let key = normalize_pair(self.n, u, v)?;
        if w.is_negative() {
            return Err(Error::NegativeWeight {
                u: key.0,
                v: key.1,
                w: w.to_string(),
            });
        }
        if self.edges.contains_key(&key) {
            return Err(Error::DuplicateEdge { u: key.0, v: key.1 });
        }
        if !w.is_zero() {
            self.edges.insert(key, w);
        }
        Ok(())
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize, Rational)>) -> Result<Self> {
        let mut g = Self::new(n)?;
        for (u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    /// Weight-1 cycle 1-2-...-n-1.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooFewVertices { n, min: 3 });
        }
        Self::from_edges(
            n,
            (1..=n).map(|v| (v, v % n + 1, Rational::one())),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Nonzero-weight edge count.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// The weight of `{u,v}`, 0 when the edge is absent.
    pub fn weight(&self, u: usize, v: usize) -> Rational {
        match normalize_pair(self.n, u, v) {
            Ok(key) => self.edges.get(&key).cloned().unwrap_or_else(Rational::zero),
            Err(_) => Rational::zero(),
        }
    }

    /// Iterates nonzero edges as `(u, v, weight)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.edges.iter().map(|(&(u, v), w)| (u, v, w))
    }

    pub fn total_weight(&self) -> Rational {
        self.edges.values().sum()
    }

    pub fn weighted_degree(&self, v: usize) -> Rational {
        self.edges()
            .filter(|&(a, b, _)| a == v || b == v)
            .map(|(_, _, w)| w)
            .sum()
    }

    /// Symmetric weighted adjacency matrix with zero diagonal.
    pub fn adjacency_matrix(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zero(self.n);
        for (u, v, w) in self.edges() {
            m.set(u - 1, v - 1, w.clone());
            m.set(v - 1, u - 1, w.clone());
        }
        m
    }

    /// Laplacian: `-w(u,v)` off the diagonal, weighted degree on it.
    /// Rows sum to zero.
    pub fn laplacian(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zero(self.n);
        for (u, v, w) in self.edges() {
            m.set(u - 1, v - 1, -w);
            m.set(v - 1, u - 1, -w);
            let du = m.get(u - 1, u - 1) + w;
            m.set(u - 1, u - 1, du);
            let dv = m.get(v - 1, v - 1) + w;
            m.set(v - 1, v - 1, dv);
        }
        m
    }

    /// Sum of weights of edges with exactly one endpoint in `side`.
    pub fn cut_weight(&self, side: &CutSide) -> Result<Rational> {
        side.validate(self.n)?;
        Ok(self
            .edges()
            .filter(|&(u, v, _)| side.contains(u) != side.contains(v))
            .map(|(_, _, w)| w)
            .sum())
    }

    /// Builds a graph from a dense edge-weight vector in canonical edge
    /// order (see [`edge_order`]).
    pub fn from_edge_vector(n: usize, x: &[Rational]) -> Result<Self> {
        let m = n * (n - 1) / 2;
        if x.len() != m {
            return Err(Error::DimensionMismatch {
                left: m,
                right: x.len(),
            });
        }
        let mut g = Self::new(n)?;
        for ((u, v), w) in edge_order(n).zip(x) {
            g.add_edge(u, v, w.clone())?;
        }
        Ok(g)

    }

    /// Connectivity over nonzero-weight edges (singleton graphs are
    /// connected).
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n + 1];
        let mut stack = vec![1usize];
        seen[1] = true;
        while let Some(u) = stack.pop() {
            for (a, b, _) in self.edges() {
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
        (1..=self.n).all(|v| seen[v])
    }
}

/// Canonical edge order of the complete graph `K_n`:
/// (1,2), (1,3), ..., (1,n), (2,3), ..., (n-1,n).
pub fn edge_order(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |u| (u + 1..=n).map(move |v| (u, v)))
}

/// Index of edge `{u,v}` in the canonical order.
pub fn edge_index(n: usize, u: usize, v: usize) -> Result<usize> {
    let (a, b) = normalize_pair(n, u, v)?;
    // edges with first endpoint < a: (a-1) blocks of sizes (n-1), (n-2), ...
    Ok((a - 1) * n - a * (a - 1) / 2 + (b - a - 1))
}

/// One side of a cut: a set of vertices. Validity against a concrete
/// vertex count happens at the point of use.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CutSide {
    vertices: BTreeSet<usize>,
}

impl CutSide {
    pub fn new(vertices: impl IntoIterator<Item = usize>) -> Self {
        CutSide {
            vertices: vertices.into_iter().collect(),
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices.iter().copied()
    }

    /// Complement within `1..=n`.
    pub fn complement(&self, n: usize) -> CutSide {
        CutSide::new((1..=n).filter(|v| !self.contains(*v)))
    }

    /// Checks the invariant `{} != S != V` against vertex count `n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(Error::InvalidCutSide {
                reason: "empty side".into(),
            });
        }
        if let Some(&v) = self.vertices.iter().find(|&&v| v < 1 || v > n) {
            return Err(Error::InvalidCutSide {
                reason: format!("vertex {v} out of range 1..={n}"),
            });
        }
        if self.vertices.len() >= n {
            return Err(Error::InvalidCutSide {
                reason: "side covers every vertex".into(),
            });
        }
        Ok(())
    }
}

/// Loopless unweighted undirected multigraph with integer edge
/// multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    mult: std::collections::BTreeMap<(usize, usize), u64>,
}

impl Multigraph {
    pub fn new(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::TooFewVertices { n, min: 1 });
        }
        Ok(Multigraph {
            n,
            mult: Default::default(),
        })
    }

    /// Adds `count` parallel copies of `{u,v}` (accumulates).
    pub fn add_edges(&mut self, u: usize, v: usize, count: u64) -> Result<()> {
        let key = normalize_pair(self.n, u, v)?;
        if count > 0 {
            *self.mult.entry(key).or_insert(0) += count;
        }
        Ok(())
    }

    pub fn from_multiplicities(
        n: usize,
        entries: impl IntoIterator<Item = (usize, usize, u64)>,
    ) -> Result<Self> {
        let mut m = Self::new(n)?;
        for (u, v, c) in entries {
            m.add_edges(u, v, c)?;
        }
        Ok(m)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u64 {
        match normalize_pair(self.n, u, v) {
            Ok(key) => self.mult.get(&key).copied().unwrap_or(0),
            Err(_) => 0,
        }
    }

    /// Iterates distinct edges as `(u, v, multiplicity)`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.mult.iter().map(|(&(u, v), &m)| (u, v, m))
    }

    /// Total number of parallel edges.
    pub fn edge_count(&self) -> u64 {
        self.mult.values().sum()
    }

    /// The weighted simple graph with multiplicities as weights; its
    /// spanning-tree aggregate equals this multigraph's tree count.
    pub fn to_weighted(&self) -> WeightedGraph {
        let mut g = WeightedGraph::new(self.n).expect("n >= 1 invariant");
        for (u, v, m) in self.edges() {
            g.add_edge(u, v, Rational::from(m)).expect("valid edge by construction");
        }
        g
    }
}

/// Weighted loopless multigraph: parallel edges keep separate identities.
/// Edges are addressed by their index in insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedMultigraph {
    n: usize,
    edges: Vec<(usize, usize, Rational)>,
}

impl WeightedMultigraph {
    pub fn new(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::TooFewVertices { n, min: 1 });
        }
        Ok(WeightedMultigraph { n, edges: Vec::new() })
    }

    pub fn add_edge(&mut self, u: usize, v: usize, w: Rational) -> Result<usize> {
        let (a, b) = normalize_pair(self.n, u, v)?;
        if w.is_negative() {
            return Err(Error::NegativeWeight {
                u: a,
                v: b,
                w: w.to_string(),
            });
        }
        self.edges.push((a, b, w));
        Ok(self.edges.len() - 1)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, index: usize) -> Option<&(usize, usize, Rational)> {
        self.edges.get(index)
    }

    pub fn edges(&self) -> impl Iterator<Item = &(usize, usize, Rational)> {
        self.edges.iter()
    }

    /// Laplacian built from summed parallel weights.
    pub fn laplacian(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zero(self.n);
        for (u, v, w) in &self.edges {
            let off = m.get(u - 1, v - 1) - w;
            m.set(u - 1, v - 1, off.clone());
            m.set(v - 1, u - 1, off);
            let du = m.get(u - 1, u - 1) + w;
            m.set(u - 1, u - 1, du);
            let dv = m.get(v - 1, v - 1) + w;
            m.set(v - 1, v - 1, dv);
        }
        m
    }
}

impl From<&WeightedGraph> for WeightedMultigraph {
    fn from(g: &WeightedGraph) -> Self {
        let mut m = WeightedMultigraph::new(g.vertex_count()).expect("n >= 1 invariant");
        for (u, v, w) in g.edges() {
            m.add_edge(u, v, w.clone()).expect("valid edge by construction");
        }
        m
    }
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    n: u64,
    edges: Vec<EdgeRecord>,
}

#[derive(Serialize, Deserialize)]
struct EdgeRecord {
    u: u64,
    v: u64,
    w: String,
}

/// Parses the graph interchange format: `{"n": N, "edges": [{"u","v","w"}...]}`
/// with weights as fraction strings. Duplicate pairs, loops, out-of-range
/// vertices, and negative or malformed weights are errors with field
/// context.
pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    let file: GraphFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("graph file: {e}")))?;
    if file.n < 1 {
        return Err(Error::Parse("graph file: \"n\" must be at least 1".into()));
    }
    let n = file.n as usize;
    let mut g = WeightedGraph::new(n)?;
    for (i, rec) in file.edges.iter().enumerate() {
        let w: Rational = rec
            .w
            .parse()
            .map_err(|e| Error::Parse(format!("edges[{i}].w: {e}")))?;
        g.add_edge(rec.u as usize, rec.v as usize, w)
            .map_err(|e| Error::Parse(format!("edges[{i}]: {e}")))?;
    }
    Ok(g)
}

/// Serializes a graph canonically: edges sorted by `(u, v)`, zero-weight
/// edges omitted, weights as fraction strings.
pub fn serialize_graph(g: &WeightedGraph) -> String {
    let file = GraphFile {
        n: g.vertex_count() as u64,
        edges: g
            .edges()
            .map(|(u, v, w)| EdgeRecord {
                u: u as u64,
                v: v as u64,
                w: w.to_string(),
            })
            .collect(),
    };
    serde_json::to_string(&file).expect("graph serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    fn triangle() -> WeightedGraph {
        WeightedGraph::from_edges(
            3,
            [
                (1, 2, Rational::one()),
                (2, 3, Rational::one()),
                (1, 3, Rational::one()),
            ],
        )
        .unwrap()
    }

    /// The 6-vertex fractional fixture: two triangles with weight-1/2 edges
    /// joined by three weight-1 cross edges.
    pub(crate) fn fractional_fixture() -> WeightedGraph {
        WeightedGraph::from_edges(
            6,
            [
                (1, 2, rat(1, 2)),
                (2, 3, rat(1, 2)),
                (1, 3, rat(1, 2)),
                (4, 5, rat(1, 2)),
                (5, 6, rat(1, 2)),
                (4, 6, rat(1, 2)),
                (1, 4, rat(1, 1)),
                (2, 5, rat(1, 1)),
                (3, 6, rat(1, 1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn adjacency_matrix_cases() {
        let m = triangle().adjacency_matrix();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j { Rational::zero() } else { Rational::one() };
                assert_eq!(*m.get(i, j), expected);
            }
        }
        let empty = WeightedGraph::new(3).unwrap().adjacency_matrix();
        assert_eq!(empty, RationalMatrix::zero(3));

        // every row of the fractional fixture sums to 2
        let a = fractional_fixture().adjacency_matrix();
        for i in 0..6 {
            let row_sum: Rational = (0..6).map(|j| a.get(i, j).clone()).sum();
            assert_eq!(row_sum, rat(2, 1));
        }
        assert!(a.is_symmetric());
    }

    #[test]
    fn laplacian_cases() {
        let l = triangle().laplacian();
        let expected = RationalMatrix::from_rows(vec![
            vec![rat(2, 1), rat(-1, 1), rat(-1, 1)],
            vec![rat(-1, 1), rat(2, 1), rat(-1, 1)],
            vec![rat(-1, 1), rat(-1, 1), rat(2, 1)],
        ])
        .unwrap();
        assert_eq!(l, expected);

        let g = WeightedGraph::from_edges(2, [(1, 2, rat(5, 3))]).unwrap();
        let l = g.laplacian();
        assert_eq!(*l.get(0, 0), rat(5, 3));
        assert_eq!(*l.get(0, 1), rat(-5, 3));
        assert_eq!(*l.get(1, 0), rat(-5, 3));
        assert_eq!(*l.get(1, 1), rat(5, 3));
    }

    #[test]
    fn laplacian_is_two_i_minus_adjacency_when_degrees_are_two() {
        let g = fractional_fixture();
        let l = g.laplacian();
        let two_i_minus_x = RationalMatrix::identity(6)
            .scale(&rat(2, 1))
            .add(&g.adjacency_matrix().scale(&rat(-1, 1)))
            .unwrap();
        assert_eq!(l, two_i_minus_x);
    }

    #[test]
    fn laplacian_rows_sum_to_zero() {
        let g = fractional_fixture();
        let l = g.laplacian();
        for i in 0..6 {
            let s: Rational = (0..6).map(|j| l.get(i, j).clone()).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn cut_weight_cases() {
        let g = fractional_fixture();
        let s = CutSide::new([1, 2, 3]);
        assert_eq!(g.cut_weight(&s).unwrap(), rat(3, 1));
        assert_eq!(
            g.cut_weight(&s.complement(6)).unwrap(),
            g.cut_weight(&s).unwrap()
        );

        let two_triangles = WeightedGraph::from_edges(
            6,
            [
                (1, 2, rat(1, 1)),
                (2, 3, rat(1, 1)),
                (1, 3, rat(1, 1)),
                (4, 5, rat(1, 1)),
                (5, 6, rat(1, 1)),
                (4, 6, rat(1, 1)),
            ],
        )
        .unwrap();
        assert!(two_triangles
            .cut_weight(&CutSide::new([1, 2, 3]))
            .unwrap()
            .is_zero());

        assert!(g.cut_weight(&CutSide::new([])).is_err());
        assert!(g.cut_weight(&CutSide::new(1..=6)).is_err());
    }

    #[test]
    fn cut_bookkeeping_identity() {
        // cut(S) + 2*inside(S) + 2*inside(V\S) = 2*total
        let g = fractional_fixture();
        let s = CutSide::new([1, 4, 5]);
        let inside = |side: &CutSide| -> Rational {
            g.edges()
                .filter(|&(u, v, _)| side.contains(u) && side.contains(v))
                .map(|(_, _, w)| w)
                .sum()
        };
        let lhs = g.cut_weight(&s).unwrap()
            + rat(2, 1) * inside(&s)
            + rat(2, 1) * inside(&s.complement(6));
        assert_eq!(lhs, rat(2, 1) * g.total_weight());
    }

    #[test]
    fn zero_weight_edges_change_nothing() {
        let g = fractional_fixture();
        let mut extended = g.clone();
        extended.add_edge(1, 5, Rational::zero()).unwrap();
        extended.add_edge(2, 6, Rational::zero()).unwrap();
        assert_eq!(extended.laplacian(), g.laplacian());
        assert_eq!(extended.adjacency_matrix(), g.adjacency_matrix());
        assert_eq!(serialize_graph(&extended), serialize_graph(&g));
    }

    #[test]
    fn graph_construction_errors() {
        let mut g = WeightedGraph::new(3).unwrap();
        assert!(matches!(
            g.add_edge(1, 1, Rational::one()),
            Err(Error::LoopEdge { .. })
        ));
        assert!(matches!(
            g.add_edge(1, 4, Rational::one()),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert!(matches!(
            g.add_edge(1, 2, rat(-1, 2)),
            Err(Error::NegativeWeight { .. })
        ));
        g.add_edge(1, 2, Rational::one()).unwrap();
        assert!(matches!(
            g.add_edge(2, 1, Rational::one()),
            Err(Error::DuplicateEdge { .. })
        ));
    }

    #[test]
    fn parse_and_serialize_roundtrip() {
        let text = r#"{"n":3,"edges":[{"u":1,"v":2,"w":"1"},{"u":2,"v":3,"w":"1"},{"u":1,"v":3,"w":"1"}]}"#;
        let g = parse_graph(text).unwrap();
        assert_eq!(g, triangle());
        let back = parse_graph(&serialize_graph(&g)).unwrap();
        assert_eq!(back, g);

        let half = parse_graph(r#"{"n":2,"edges":[{"u":1,"v":2,"w":"1/2"}]}"#).unwrap();
        assert_eq!(half.weight(1, 2), rat(1, 2));
    }

    #[test]
    fn parse_errors_carry_context() {
        let loop_edge = parse_graph(r#"{"n":2,"edges":[{"u":1,"v":1,"w":"1"}]}"#);
        match loop_edge {
            Err(Error::Parse(msg)) => assert!(msg.contains("edges[0]"), "{msg}"),
            other => panic!("expected parse error, got {other:?}"),
        }
        let bad_weight = parse_graph(r#"{"n":2,"edges":[{"u":1,"v":2,"w":"0.5"}]}"#);
        assert!(matches!(bad_weight, Err(Error::Parse(_))));
        let negative = parse_graph(r#"{"n":2,"edges":[{"u":1,"v":2,"w":"-1"}]}"#);
        assert!(matches!(negative, Err(Error::Parse(_))));
        let dup = parse_graph(
            r#"{"n":3,"edges":[{"u":1,"v":2,"w":"1"},{"u":2,"v":1,"w":"1"}]}"#,
        );
        match dup {
            Err(Error::Parse(msg)) => assert!(msg.contains("edges[1]"), "{msg}"),
            other => panic!("expected parse error, got {other:?}"),
        }
        let syntax = parse_graph("{n: 3");
        assert!(matches!(syntax, Err(Error::Parse(_))));
    }

    #[test]
    fn edge_order_and_index_agree() {
        for n in [2usize, 3, 5, 8] {
            for (k, (u, v)) in edge_order(n).enumerate() {
                assert_eq!(edge_index(n, u, v).unwrap(), k);
                assert_eq!(edge_index(n, v, u).unwrap(), k);
            }
            assert_eq!(edge_order(n).count(), n * (n - 1) / 2);
        }
    }

    #[test]
    fn multigraph_basics() {
        let mut m = Multigraph::new(2).unwrap();
        m.add_edges(1, 2, 3).unwrap();
        m.add_edges(2, 1, 2).unwrap();
        assert_eq!(m.multiplicity(1, 2), 5);
        assert_eq!(m.edge_count(), 5);
        assert_eq!(m.to_weighted().weight(1, 2), rat(5, 1));
    }

    #[test]
    fn weighted_multigraph_parallel_edges() {
        let mut m = WeightedMultigraph::new(2).unwrap();
        m.add_edge(1, 2, rat(1, 2)).unwrap();
        m.add_edge(1, 2, rat(1, 3)).unwrap();
        assert_eq!(m.edge_count(), 2);
        let l = m.laplacian();
        assert_eq!(*l.get(0, 1), rat(-5, 6));
        assert_eq!(*l.get(0, 0), rat(5, 6));
    }
}
