//! Weighted decorated dual graphs of curves on a smooth surface.
//!
//! Vertices carry `weight = -E^2`, arithmetic genus, a decoration (contact with
//! the non-exceptional part of the boundary, used in germ mode) and a boundary
//! coefficient. Edge multiplicities are intersection numbers of distinct
//! components; self-loops are not representable (snc only).

use crate::linalg::{self, IntMatrix};
use crate::rational::{in_unit_interval, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use thiserror::Error;

pub type VertexSet = BTreeSet<usize>;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub String);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: VertexId,
    /// Negative of the self-intersection number.
    pub weight: i64,
    pub genus: u32,
    pub decoration: Rational,
    pub boundary: Rational,
}

impl Vertex {
    pub fn new(id: impl Into<String>, weight: i64) -> Self {
        Vertex {
            id: VertexId(id.into()),
            weight,
            genus: 0,
            decoration: Rational::zero(),
            boundary: Rational::zero(),
        }
    }

    pub fn with_genus(mut self, genus: u32) -> Self {
        self.genus = genus;
        self
    }

    pub fn with_decoration(mut self, decoration: Rational) -> Self {
        self.decoration = decoration;
        self
    }

    pub fn with_boundary(mut self, coeff: Rational) -> Self {
        self.boundary = coeff;
        self
    }

    pub fn is_rational(&self) -> bool {
        self.genus == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub a: VertexId,
    pub b: VertexId,
    pub multiplicity: u32,
}

impl Edge {
    pub fn new(a: impl Into<String>, b: impl Into<String>, multiplicity: u32) -> Self {
        Edge {
            a: VertexId(a.into()),
            b: VertexId(b.into()),
            multiplicity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex id {0}")]
    DuplicateId(String),
    #[error("edge {a}-{b} references unknown vertex {missing}")]
    DanglingEdge {
        a: String,
        b: String,
        missing: String,
    },
    #[error("self-loop at {0} (only snc graphs are supported)")]
    SelfLoop(String),
    #[error("more than one edge between {0} and {1}")]
    DuplicateEdge(String, String),
    #[error("edge {0}-{1} has multiplicity 0")]
    ZeroMultiplicity(String, String),
    #[error("boundary coefficient {value} of {id} is outside [0,1]")]
    CoeffOutOfRange { id: String, value: String },
    #[error("decoration {value} of {id} is negative")]
    NegativeDecoration { id: String, value: String },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("invalid blowup site: {0}")]
    InvalidSite(String),
}

/// A point to blow up: a free point on one curve or one of the points where
/// two curves meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Site {
    Free(usize),
    Edge(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    vertices: Vec<Vertex>,
    index: HashMap<VertexId, usize>,
    adjacency: Vec<BTreeMap<usize, u32>>,
}

impl DualGraph {
    /// Builds and validates a graph.
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id.clone(), i).is_some() {
                return Err(GraphError::DuplicateId(v.id.0.clone()));
            }
            if !in_unit_interval(&v.boundary) {
                return Err(GraphError::CoeffOutOfRange {
                    id: v.id.0.clone(),
                    value: crate::rational::format_rational(&v.boundary),
                });
            }
            if v.decoration.is_negative() {
                return Err(GraphError::NegativeDecoration {
                    id: v.id.0.clone(),
                    value: crate::rational::format_rational(&v.decoration),
                });
            }
        }
        let mut adjacency = vec![BTreeMap::new(); vertices.len()];
        for e in &edges {
            let lookup = |id: &VertexId| {
                index
                    .get(id)
                    .copied()
                    .ok_or_else(|| GraphError::DanglingEdge {
                        a: e.a.0.clone(),
                        b: e.b.0.clone(),
                        missing: id.0.clone(),
                    })
            };
            let (i, j) = (lookup(&e.a)?, lookup(&e.b)?);
            if i == j {
                return Err(GraphError::SelfLoop(e.a.0.clone()));
            }
            if e.multiplicity == 0 {
                return Err(GraphError::ZeroMultiplicity(e.a.0.clone(), e.b.0.clone()));
            }
            if adjacency[i].insert(j, e.multiplicity).is_some() {
                return Err(GraphError::DuplicateEdge(e.a.0.clone(), e.b.0.clone()));
            }
            adjacency[j].insert(i, e.multiplicity);
        }
        Ok(DualGraph {
            vertices,
            index,
            adjacency,
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &Vertex {
        &self.vertices[v]
    }

    pub fn id(&self, v: usize) -> &str {
        &self.vertices[v].id.0
    }

    pub fn weight(&self, v: usize) -> i64 {
        self.vertices[v].weight
    }

    pub fn index_of(&self, id: &str) -> Result<usize, GraphError> {
        self.index
            .get(&VertexId::from(id))
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
    }

    pub fn indices(&self, ids: &[&str]) -> Result<Vec<usize>, GraphError> {
        ids.iter().map(|id| self.index_of(id)).collect()
    }

    pub fn set_of(&self, ids: &[&str]) -> Result<VertexSet, GraphError> {
        ids.iter().map(|id| self.index_of(id)).collect()
    }

    pub fn all(&self) -> VertexSet {
        (0..self.len()).collect()
    }

    /// Edges with `a` before `b` in vertex order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for (i, nbrs) in self.adjacency.iter().enumerate() {
            for (&j, &m) in nbrs.range(i + 1..) {
                out.push(Edge {
                    a: self.vertices[i].id.clone(),
                    b: self.vertices[j].id.clone(),
                    multiplicity: m,
                });
            }
        }
        out
    }

    pub fn multiplicity(&self, a: usize, b: usize) -> u32 {
        self.adjacency[a].get(&b).copied().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.adjacency[v].iter().map(|(&j, &m)| (j, m))
    }

    pub fn degree_in(&self, v: usize, within: &VertexSet) -> u32 {
        self.neighbors(v)
            .filter(|(j, _)| within.contains(j))
            .map(|(_, m)| m)
            .sum()
    }

    /// Intersection number `E_a . E_b` on the smooth model.
    pub fn intersection(&self, a: usize, b: usize) -> i64 {
        if a == b {
            -self.vertices[a].weight
        } else {
            i64::from(self.multiplicity(a, b))
        }
    }

    /// `K . E_v = 2g - 2 - E_v^2` by adjunction.
    pub fn canonical_degree(&self, v: usize) -> i64 {
        let vx = &self.vertices[v];
        2 * i64::from(vx.genus) - 2 + vx.weight
    }

    /// `-Q` restricted to `subset`, rows in the given order.
    pub fn negated_form(&self, subset: &[usize]) -> IntMatrix {
        subset
            .iter()
            .map(|&a| {
                subset
                    .iter()
                    .map(|&b| BigInt::from(-self.intersection(a, b)))
                    .collect()
            })
            .collect()
    }

    /// Branching number `T . (D - T)`: edge multiplicity from `t` into `d \ t`.
    pub fn branching_in(&self, t: &VertexSet, d: &VertexSet) -> u32 {
        t.iter()
            .flat_map(|&v| self.neighbors(v))
            .filter(|(j, _)| d.contains(j) && !t.contains(j))
            .map(|(_, m)| m)
            .sum()
    }

    /// Branching number of `t` relative to the whole graph.
    pub fn branching_number(&self, t: &VertexSet) -> Result<u32, GraphError> {
        if let Some(&bad) = t.iter().find(|&&v| v >= self.len()) {
            return Err(GraphError::UnknownVertex(format!("#{bad}")));
        }
        Ok(self.branching_in(t, &self.all()))
    }

    /// Sylvester test on `-Q|subset` (input order). The empty set counts as
    /// negative definite.
    pub fn is_negative_definite(&self, subset: &VertexSet) -> bool {
        let order: Vec<usize> = subset.iter().copied().collect();
        linalg::is_positive_definite(&self.negated_form(&order))
    }

    /// Connected components of the subgraph induced on `subset`.
    pub fn components(&self, subset: &VertexSet) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for &start in subset {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for (j, _) in self.neighbors(v) {
                    if subset.contains(&j) && seen.insert(j) {
                        stack.push(j);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self, subset: &VertexSet) -> bool {
        self.components(subset).len() <= 1
    }

    /// Whether the induced subgraph is a tree with simple edges.
    pub fn is_tree(&self, subset: &VertexSet) -> bool {
        let mut edges = 0u32;
        for &v in subset {
            for (j, m) in self.neighbors(v) {
                if subset.contains(&j) && j > v {
                    if m > 1 {
                        return false;
                    }
                    edges += 1;
                }
            }
        }
        !subset.is_empty() && self.is_connected(subset) && edges as usize + 1 == subset.len()
    }

    /// Vertices of the unique path between `a` and `b` inside a tree `subset`.
    pub fn tree_path(&self, subset: &VertexSet, a: usize, b: usize) -> Option<VertexSet> {
        let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
        let mut stack = vec![a];
        parent.insert(a, a);
        while let Some(v) = stack.pop() {
            if v == b {
                break;
            }
            for (j, _) in self.neighbors(v) {
                if subset.contains(&j) && !parent.contains_key(&j) {
                    parent.insert(j, v);
                    stack.push(j);
                }
            }
        }
        if !parent.contains_key(&b) {
            return None;
        }
        let mut path = VertexSet::new();
        let mut cur = b;
        path.insert(cur);
        while cur != a {
            cur = parent[&cur];
            path.insert(cur);
        }
        Some(path)
    }

    /// A copy of the graph with vertex data rewritten by `f`.
    pub fn map_vertices(
        &self,
        mut f: impl FnMut(usize, &Vertex) -> Vertex,
    ) -> Result<Self, GraphError> {
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| f(i, v))
            .collect();
        DualGraph::new(vertices, self.edges())
    }

    /// Induced subgraph on `subset`, keeping vertex data. Returns the new graph
    /// and the map from old to new indices.
    pub fn induced(&self, subset: &VertexSet) -> (DualGraph, BTreeMap<usize, usize>) {
        let map: BTreeMap<usize, usize> = subset.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let vertices = subset.iter().map(|&v| self.vertices[v].clone()).collect();
        let edges = self
            .edges()
            .into_iter()
            .filter(|e| subset.contains(&self.index[&e.a]) && subset.contains(&self.index[&e.b]))
            .collect();
        let g =
            DualGraph::new(vertices, edges).expect("induced subgraph of a valid graph is valid");
        (g, map)
    }

    /// Blows up a point. The new curve has weight 1; every curve through the
    /// point gains one in weight.
    pub fn blow_up(&self, site: Site, new_id: &str) -> Result<(DualGraph, usize), GraphError> {
        if self.index.contains_key(&VertexId::from(new_id)) {
            return Err(GraphError::DuplicateId(new_id.to_string()));
        }
        let mut vertices = self.vertices.clone();
        let mut edges = self.edges();
        let n = vertices.len();
        match site {
            Site::Free(v) => {
                if v >= n {
                    return Err(GraphError::InvalidSite(format!("no vertex #{v}")));
                }
                vertices[v].weight += 1;
                edges.push(Edge::new(self.id(v), new_id, 1));
            }
            Site::Edge(a, b) => {
                if a >= n || b >= n || self.multiplicity(a, b) == 0 {
                    return Err(GraphError::InvalidSite(format!(
                        "no intersection point between #{a} and #{b}"
                    )));
                }
                vertices[a].weight += 1;
                vertices[b].weight += 1;
                let (ia, ib) = (&vertices[a].id, &vertices[b].id);
                edges.retain_mut(|e| {
                    let hit = (&e.a == ia && &e.b == ib) || (&e.a == ib && &e.b == ia);
                    if hit {
                        e.multiplicity -= 1;
                    }
                    e.multiplicity > 0
                });
                edges.push(Edge::new(self.id(a), new_id, 1));
                edges.push(Edge::new(self.id(b), new_id, 1));
            }
        }
        vertices.push(Vertex::new(new_id, 1));
        Ok((DualGraph::new(vertices, edges)?, n))
    }
}

/// Chain `[w_1, ..., w_n]` with vertices `E1..En`.
pub fn chain(weights: &[i64]) -> DualGraph {
    let vertices = weights
        .iter()
        .enumerate()
        .map(|(i, &w)| Vertex::new(format!("E{}", i + 1), w))
        .collect();
    let edges = (1..weights.len())
        .map(|i| Edge::new(format!("E{i}"), format!("E{}", i + 1), 1))
        .collect();
    DualGraph::new(vertices, edges).expect("chain is a valid graph")
}

/// Fork with center weight `center` and three twigs listed from the center
/// outwards. Vertex ids: `B`, then `T{i}_{j}`.
pub fn fork(center: i64, twigs: [&[i64]; 3]) -> DualGraph {
    let mut vertices = vec![Vertex::new("B", center)];
    let mut edges = Vec::new();
    for (i, twig) in twigs.iter().enumerate() {
        let mut prev = "B".to_string();
        for (j, &w) in twig.iter().enumerate() {
            let id = format!("T{}_{}", i + 1, j + 1);
            vertices.push(Vertex::new(id.clone(), w));
            edges.push(Edge::new(prev, id.clone(), 1));
            prev = id;
        }
    }
    DualGraph::new(vertices, edges).expect("fork is a valid graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn d4() -> DualGraph {
        fork(2, [&[2], &[2], &[2]])
    }

    #[test]
    fn validation_errors() {
        assert!(DualGraph::new(vec![Vertex::new("E1", 2)], vec![]).is_ok());
        let dangling = DualGraph::new(vec![Vertex::new("E1", 2)], vec![Edge::new("E1", "E9", 1)]);
        assert!(matches!(dangling, Err(GraphError::DanglingEdge { .. })));
        let coeff = DualGraph::new(vec![Vertex::new("E1", 2).with_boundary(rat(3, 2))], vec![]);
        assert!(matches!(coeff, Err(GraphError::CoeffOutOfRange { .. })));
        let dup = DualGraph::new(vec![Vertex::new("A", 1), Vertex::new("A", 2)], vec![]);
        assert!(matches!(dup, Err(GraphError::DuplicateId(_))));
        let lp = DualGraph::new(vec![Vertex::new("A", 1)], vec![Edge::new("A", "A", 1)]);
        assert!(matches!(lp, Err(GraphError::SelfLoop(_))));
    }

    #[test]
    fn branching_numbers() {
        let g = chain(&[2, 2, 2]);
        assert_eq!(g.branching_number(&[0].into()).unwrap(), 1);
        assert_eq!(g.branching_number(&[1].into()).unwrap(), 2);
        assert_eq!(d4().branching_number(&[0].into()).unwrap(), 3);
        assert!(g.branching_number(&[7].into()).is_err());
    }

    #[test]
    fn negative_definiteness_examples() {
        assert!(chain(&[2, 2]).is_negative_definite(&[0, 1].into()));
        let g = d4();
        assert!(g.is_negative_definite(&g.all()));
        let mut vs = vec![Vertex::new("C", 2)];
        let mut es = Vec::new();
        for i in 0..4 {
            vs.push(Vertex::new(format!("T{i}"), 2));
            es.push(Edge::new("C", format!("T{i}"), 1));
        }
        let bench = DualGraph::new(vs, es).unwrap();
        assert!(!bench.is_negative_definite(&bench.all()));
    }

    #[test]
    fn blowups() {
        let (g, new) = chain(&[2, 2]).blow_up(Site::Edge(0, 1), "X").unwrap();
        assert_eq!([g.weight(0), g.weight(new), g.weight(1)], [3, 1, 3]);
        assert_eq!(g.multiplicity(0, 1), 0);
        assert_eq!(g.multiplicity(0, new), 1);

        let (g, new) = chain(&[1]).blow_up(Site::Free(0), "X").unwrap();
        assert_eq!((g.weight(0), g.weight(new)), (2, 1));

        let (g, new) = chain(&[1, 1]).blow_up(Site::Edge(0, 1), "X").unwrap();
        assert_eq!([g.weight(0), g.weight(new), g.weight(1)], [2, 1, 2]);
        assert!(chain(&[1, 1]).blow_up(Site::Edge(0, 0), "X").is_err());
    }

    #[test]
    fn tree_paths() {
        let g = d4();
        let all = g.all();
        assert!(g.is_tree(&all));
        assert_eq!(g.tree_path(&all, 1, 2).unwrap(), [0, 1, 2].into());
    }

    /// Positive definite iff every principal minor (not only leading) is positive.
    fn all_principal_minors_positive(g: &DualGraph, subset: &VertexSet) -> bool {
        let items: Vec<usize> = subset.iter().copied().collect();
        (1u32..(1 << items.len())).all(|mask| {
            let pick: Vec<usize> = items
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            linalg::determinant(&g.negated_form(&pick)).is_positive()
        })
    }

    pub(crate) fn random_graph(max_n: usize, max_w: i64) -> impl Strategy<Value = DualGraph> {
        (1..=max_n)
            .prop_flat_map(move |n| {
                (
                    proptest::collection::vec(1..=max_w, n),
                    proptest::collection::vec(0u32..=2, n * (n - 1) / 2),
                )
            })
            .prop_map(|(weights, mults)| {
                let n = weights.len();
                let vertices = weights
                    .iter()
                    .enumerate()
                    .map(|(i, &w)| Vertex::new(format!("V{i}"), w))
                    .collect();
                let mut edges = Vec::new();
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        // Bias towards sparse graphs: only multiplicity 2 draws become edges of multiplicity 1.
                        if mults[k] == 2 {
                            edges.push(Edge::new(format!("V{i}"), format!("V{j}"), 1));
                        }
                        k += 1;
                    }
                }
                DualGraph::new(vertices, edges).unwrap()
            })
    }

    proptest! {
        #[test]
        fn sylvester_agrees_with_principal_minor_oracle(g in random_graph(7, 5)) {
            let all = g.all();
            prop_assert_eq!(g.is_negative_definite(&all), all_principal_minors_positive(&g, &all));
        }

        #[test]
        fn blowup_keeps_discriminant(g in random_graph(6, 5), pick in 0usize..64) {
            let all = g.all();
            let before = linalg::determinant(&g.negated_form(&all.iter().copied().collect::<Vec<_>>()));
            let edges = g.edges();
            let site = if pick % 2 == 0 || edges.is_empty() {
                Site::Free(pick % g.len())
            } else {
                let e = &edges[pick % edges.len()];
                Site::Edge(g.index_of(&e.a.0).unwrap(), g.index_of(&e.b.0).unwrap())
            };
            let (h, _) = g.blow_up(site, "NEW").unwrap();
            let after = linalg::determinant(&h.negated_form(&(0..h.len()).collect::<Vec<_>>()));
            prop_assert_eq!(before, after);
        }
    }
}
