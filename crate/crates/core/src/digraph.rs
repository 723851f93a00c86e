//! Finite multidigraphs with loops and parallel edges.
//!
//! Vertex and edge order is insertion order and is load-bearing: it fixes the
//! basis order of ℤV and ℤE for every matrix built downstream.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multidigraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl Multidigraph {
    pub fn new(vertices: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = vertices.len();
        let edges = edges
            .into_iter()
            .map(|(tail, head)| {
                for index in [tail, head] {
                    if index >= n {
                        return Err(Error::InvalidVertex { index, count: n });
                    }
                }
                Ok(Edge { tail, head })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { vertices, edges })
    }

    /// Graph on vertices named `"0"`, `"1"`, ...
    pub fn with_vertex_count(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: usize) -> Result<&str> {
        self.check_vertex(v)?;
        Ok(&self.vertices[v])
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Result<Edge> {
        self.edges.get(e).copied().ok_or(Error::InvalidEdge {
            index: e,
            count: self.edges.len(),
        })
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertices.len() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                index: v,
                count: self.vertices.len(),
            })
        }
    }

    /// Indices of the edges leaving `v`, in edge order.
    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.tail == v)
            .map(|(i, _)| i)
    }

    pub fn out_degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.edges.iter().filter(|e| e.tail == v).count())
    }

    pub fn in_degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.edges.iter().filter(|e| e.head == v).count())
    }

    fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for e in &self.edges {
            deg[e.head] += 1;
        }
        deg
    }

    fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for e in &self.edges {
            deg[e.tail] += 1;
        }
        deg
    }

    /// Directed line graph. Vertex `i` is edge `i` of `self`; there is an edge
    /// `(e, f)` for every ordered pair with `head(e) == tail(f)`, listed
    /// lexicographically in `(e, f)`.
    pub fn line_graph(&self) -> Multidigraph {
        let vertices = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| format!("{}>{}#{i}", self.vertices[e.tail], self.vertices[e.head]))
            .collect();
        let mut edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            for (j, f) in self.edges.iter().enumerate() {
                if e.head == f.tail {
                    edges.push(Edge { tail: i, head: j });
                }
            }
        }
        Multidigraph { vertices, edges }
    }

    /// `Some(k)` if every vertex has out-degree `k >= 1`.
    pub fn is_k_out_regular(&self) -> Result<Option<usize>> {
        let degrees = self.out_degrees();
        let Some(&k) = degrees.first() else {
            return Err(Error::EmptyGraph);
        };
        Ok((k > 0 && degrees.iter().all(|&d| d == k)).then_some(k))
    }

    /// Vertices with a directed path to `w` (including `w`), by reverse BFS.
    pub fn reachable_to(&self, w: usize) -> Result<Vec<usize>> {
        self.check_vertex(w)?;
        let mut preds = vec![Vec::new(); self.vertex_count()];
        for e in &self.edges {
            preds[e.head].push(e.tail);
        }
        let mut seen = vec![false; self.vertex_count()];
        seen[w] = true;
        let mut queue = VecDeque::from([w]);
        while let Some(v) = queue.pop_front() {
            for &u in &preds[v] {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        Ok((0..self.vertex_count()).filter(|&v| seen[v]).collect())
    }

    pub fn check_hypotheses(&self, bp: &BasePoint) -> Result<HypothesisCheck> {
        bp.validate(self)?;
        let indeg = self.in_degrees();
        let mut reasons = Vec::new();
        for (v, &d) in indeg.iter().enumerate() {
            if d == 0 {
                reasons.push(format!("vertex {} has in-degree 0", self.vertices[v]));
            }
        }
        if indeg[bp.target] < 2 {
            reasons.push(format!(
                "target vertex {} has in-degree {} < 2",
                self.vertices[bp.target], indeg[bp.target]
            ));
        }
        Ok(HypothesisCheck {
            ok: reasons.is_empty(),
            reasons,
        })
    }
}

/// The distinguished edge `e* = (w*, v*)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasePoint {
    pub sink: usize,
    pub base_edge: usize,
    pub target: usize,
}

impl BasePoint {
    pub fn from_edge(g: &Multidigraph, base_edge: usize) -> Result<Self> {
        let e = g.edge(base_edge)?;
        Ok(Self {
            sink: e.tail,
            base_edge,
            target: e.head,
        })
    }

    pub fn validate(&self, g: &Multidigraph) -> Result<()> {
        let e = g
            .edge(self.base_edge)
            .map_err(|err| Error::InconsistentBasePoint(err.to_string()))?;
        if e.tail != self.sink || e.head != self.target {
            return Err(Error::InconsistentBasePoint(format!(
                "edge {} is ({}, {}), base point claims ({}, {})",
                self.base_edge, e.tail, e.head, self.sink, self.target
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisCheck {
    pub ok: bool,
    pub reasons: Vec<String>,
}

const GENERATION_ATTEMPTS: usize = 1000;

/// Random k-out-regular multidigraph satisfying the in-degree hypotheses.
///
/// Each vertex draws `k` heads uniformly with replacement, so loops and
/// parallel edges occur. Draws are rejected until every in-degree is at least
/// 1 and some edge points at a vertex of in-degree at least 2; the first such
/// edge becomes the base edge.
pub fn random_k_out_regular(n: usize, k: usize, seed: u64) -> Result<(Multidigraph, BasePoint)> {
    if n < 2 || k < 2 {
        return Err(Error::InvalidArgument(format!(
            "need n >= 2 and k >= 2, got n = {n}, k = {k}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GENERATION_ATTEMPTS {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|v| std::iter::repeat_n(v, k))
            .map(|v| (v, rng.random_range(0..n)))
            .collect();
        let g = Multidigraph::with_vertex_count(n, edges)?;
        let indeg = g.in_degrees();
        if indeg.contains(&0) {
            continue;
        }
        if let Some(e) = g.edges.iter().position(|e| indeg[e.head] >= 2) {
            let bp = BasePoint::from_edge(&g, e)?;
            return Ok((g, bp));
        }
    }
    Err(Error::Generation(format!(
        "no eligible graph after {GENERATION_ATTEMPTS} attempts (n = {n}, k = {k})"
    )))
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn degrees() {
        let g1 = two_cycle();
        assert_eq!(g1.out_degree(0).unwrap(), 1);
        assert_eq!(g1.in_degree(0).unwrap(), 1);
        let g3 = single_loop();
        assert_eq!(g3.out_degree(0).unwrap(), 1);
        assert_eq!(g3.in_degree(0).unwrap(), 1);
        let g2 = triangle();
        for v in 0..3 {
            assert_eq!(g2.out_degree(v).unwrap(), 2);
            assert_eq!(g2.in_degree(v).unwrap(), 2);
        }
        assert_eq!(g2.out_degree(3), Err(Error::InvalidVertex { index: 3, count: 3 }));
    }

    #[test]
    fn rejects_dangling_edges() {
        assert!(Multidigraph::with_vertex_count(2, vec![(0, 2)]).is_err());
    }

    #[test]
    fn line_graph_examples() {
        let lg = single_loop().line_graph();
        assert_eq!(lg.vertex_count(), 1);
        assert_eq!(lg.edges(), &[Edge { tail: 0, head: 0 }]);

        let lg = two_cycle().line_graph();
        assert_eq!(lg.vertex_names(), &["u>w#0", "w>u#1"]);
        assert_eq!(lg.edges(), &[Edge { tail: 0, head: 1 }, Edge { tail: 1, head: 0 }]);

        let lg = triangle().line_graph();
        assert_eq!(lg.vertex_count(), 6);
        assert_eq!(lg.edge_count(), 12);
        assert_eq!(lg.is_k_out_regular().unwrap(), Some(2));
    }

    #[test]
    fn out_regularity() {
        assert_eq!(triangle().is_k_out_regular().unwrap(), Some(2));
        assert_eq!(two_cycle().is_k_out_regular().unwrap(), Some(1));
        let g = Multidigraph::with_vertex_count(2, vec![(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.is_k_out_regular().unwrap(), None);
        let empty = Multidigraph::with_vertex_count(0, vec![]).unwrap();
        assert_eq!(empty.is_k_out_regular(), Err(Error::EmptyGraph));
    }

    #[test]
    fn hypothesis_examples() {
        let g2 = triangle();
        for e in 0..6 {
            let bp = BasePoint::from_edge(&g2, e).unwrap();
            assert!(g2.check_hypotheses(&bp).unwrap().ok);
        }
        let g1 = two_cycle();
        let check = g1.check_hypotheses(&BasePoint::from_edge(&g1, 1).unwrap()).unwrap();
        assert!(!check.ok);
        assert_eq!(check.reasons.len(), 1);
        assert!(check.reasons[0].contains('u'));
        let g3 = single_loop();
        assert!(!g3.check_hypotheses(&BasePoint::from_edge(&g3, 0).unwrap()).unwrap().ok);

        let bad = BasePoint { sink: 0, base_edge: 1, target: 0 };
        assert!(matches!(g1.check_hypotheses(&bad), Err(Error::InconsistentBasePoint(_))));
    }

    #[test]
    fn reachability() {
        assert_eq!(two_cycle().reachable_to(1).unwrap(), vec![0, 1]);
        assert_eq!(triangle().reachable_to(2).unwrap(), vec![0, 1, 2]);
        // G1 (vertices 0, 1) disjoint from G3 (vertex 2).
        let g = Multidigraph::with_vertex_count(3, vec![(0, 1), (1, 0), (2, 2)]).unwrap();
        assert_eq!(g.reachable_to(1).unwrap(), vec![0, 1]);
        assert!(g.reachable_to(3).is_err());
    }

    #[test]
    fn generator_contract() {
        for seed in 0..20 {
            let (g, bp) = random_k_out_regular(5, 2, seed).unwrap();
            assert_eq!(g.vertex_count(), 5);
            assert_eq!(g.edge_count(), 10);
            assert_eq!(g.is_k_out_regular().unwrap(), Some(2));
            assert!(g.check_hypotheses(&bp).unwrap().ok);

            let (g, bp) = random_k_out_regular(2, 2, seed).unwrap();
            assert_eq!(g.edge_count(), 4);
            assert!(g.check_hypotheses(&bp).unwrap().ok);
        }
        assert_eq!(random_k_out_regular(6, 3, 42), random_k_out_regular(6, 3, 42));
        assert!(random_k_out_regular(1, 2, 0).is_err());
        assert!(random_k_out_regular(3, 1, 0).is_err());
    }
}
