use crate::bitset::ObjSet;
use crate::error::{Error, Result};

/// Hard representation limit: every bitset in the crate is one `u64` word, so
/// a graph may carry at most 64 game objects (vertices plus edges).
pub const HARD_OBJECT_CAP: u32 = 64;

/// Default configured object cap; `GGC_OBJECT_CAP` can lower it (or restore it
/// up to the hard limit).
pub const DEFAULT_OBJECT_CAP: u32 = 64;

/// Largest vertex count encodable in the short graph6 form.
pub const MAX_VERTICES: u32 = 62;

/// Undirected simple graph with canonical indexing: vertices `0..n`, edges
/// sorted lexicographically by endpoint pair so that edge `j` is a stable
/// label shared by every derived structure.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: u32,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
}

impl SimpleGraph {
    /// Builds a graph from unordered endpoint pairs. Rejects self-loops,
    /// duplicate edges, out-of-range endpoints, and graphs over the hard
    /// object cap.
    pub fn new(n: u32, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<SimpleGraph> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!(
                "n = {n} exceeds the {MAX_VERTICES}-vertex limit of the short graph6 form"
            )));
        }
        let mut list: Vec<(u32, u32)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a},{b}) has an endpoint outside 0..{n}"
                )));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if list.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph("duplicate edge".into()));
        }
        let objects = n as usize + list.len();
        if objects > HARD_OBJECT_CAP as usize {
            return Err(Error::CapExceeded {
                objects,
                cap: HARD_OBJECT_CAP,
            });
        }
        let mut adj = vec![Vec::new(); n as usize];
        for &(a, b) in &list {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        Ok(SimpleGraph {
            n,
            edges: list,
            adj,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.edges.len() as u32
    }

    /// Total game-object count `n + m`.
    pub fn objects(&self) -> u32 {
        self.n + self.m()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> u32 {
        self.adj[v as usize].len() as u32
    }

    /// Maximum vertex degree; 0 for edgeless graphs.
    pub fn max_degree(&self) -> u32 {
        self.adj.iter().map(|l| l.len() as u32).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.edge_index(a, b).is_some()
    }

    /// Index of edge `{a,b}` in the lexicographic edge order.
    pub fn edge_index(&self, a: u32, b: u32) -> Option<u32> {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).ok().map(|i| i as u32)
    }

    /// Edge indices incident to `v`, ascending.
    pub fn incident_edges(&self, v: u32) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .adj[v as usize]
            .iter()
            .map(|&u| self.edge_index(v, u).expect("adjacency matches edge list"))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = ObjSet::singleton(0);
        let mut stack = vec![0u32];
        while let Some(v) = stack.pop() {
            for &u in self.neighbors(v) {
                if !seen.contains(u) {
                    seen.insert(u);
                    stack.push(u);
                }
            }
        }
        seen.len() == self.n
    }

    /// Copy of the graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[u32]) -> Result<SimpleGraph> {
        if perm.len() != self.n as usize {
            return Err(Error::InvalidGraph("permutation length != n".into()));
        }
        let mut seen = ObjSet::EMPTY;
        for &p in perm {
            if p >= self.n || seen.contains(p) {
                return Err(Error::InvalidGraph("not a permutation".into()));
            }
            seen.insert(p);
        }
        SimpleGraph::new(
            self.n,
            self.edges
                .iter()
                .map(|&(a, b)| (perm[a as usize], perm[b as usize])),
        )
    }

    /// Disjoint union; vertices of `other` are shifted past `self`.
    pub fn disjoint_union(&self, other: &SimpleGraph) -> Result<SimpleGraph> {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(a, b)| (a + shift, b + shift)));
        SimpleGraph::new(self.n + other.n, edges)
    }

    pub fn object_from_flat(&self, flat: u32) -> Result<ObjectRef> {
        if flat < self.n {
            Ok(ObjectRef::Vertex(flat))
        } else if flat < self.objects() {
            Ok(ObjectRef::Edge(flat - self.n))
        } else {
            Err(Error::NoSuchObject(flat))
        }
    }

    pub fn flat_of(&self, obj: ObjectRef) -> u32 {
        match obj {
            ObjectRef::Vertex(i) => i,
            ObjectRef::Edge(j) => self.n + j,
        }
    }
}

impl std::fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SimpleGraph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// A game object of a graph: a vertex or an edge, identified by its ordinal
/// within its kind. The flat index lays out vertices first (`0..n`), then
/// edges (`n..n+m`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ObjectRef {
    Vertex(u32),
    Edge(u32),
}

impl ObjectRef {
    pub fn is_vertex(self) -> bool {
        matches!(self, ObjectRef::Vertex(_))
    }

    pub fn is_edge(self) -> bool {
        matches!(self, ObjectRef::Edge(_))
    }

    /// Parses the `v3` / `e5` display form.
    pub fn parse(s: &str) -> Option<ObjectRef> {
        let (kind, rest) = s.split_at(1);
        let idx: u32 = rest.parse().ok()?;
        match kind {
            "v" => Some(ObjectRef::Vertex(idx)),
            "e" => Some(ObjectRef::Edge(idx)),
            _ => None,
        }
    }
}

impl std::fmt::Display for ObjectRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ObjectRef::Vertex(i) => write!(f, "v{i}"),
            ObjectRef::Edge(j) => write!(f, "e{j}"),
        }
    }
}

/// How a conflict graph is derived from its source graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConflictMode {
    /// The source graph itself; objects are its vertices.
    Identity,
    /// Line graph: objects are source edges, adjacent iff they share an endpoint.
    Line,
    /// Total graph: objects are all vertices and edges, adjacent iff incident
    /// (vertex-vertex, vertex-edge, or edge-edge).
    Total,
}

impl std::fmt::Display for ConflictMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConflictMode::Identity => write!(f, "vertex"),
            ConflictMode::Line => write!(f, "edge"),
            ConflictMode::Total => write!(f, "total"),
        }
    }
}

/// The arena every game is played on: a derived simple graph whose vertices
/// are labeled game objects of the source graph. All marking and coloring
/// games here are vertex games on a `ConflictGraph`.
#[derive(Clone)]
pub struct ConflictGraph {
    mode: ConflictMode,
    labels: Vec<ObjectRef>,
    adj: Vec<Vec<u32>>,
    adj_mask: Vec<ObjSet>,
    source: SimpleGraph,
}

impl ConflictGraph {
    fn from_parts(
        mode: ConflictMode,
        labels: Vec<ObjectRef>,
        mut adj: Vec<Vec<u32>>,
        source: SimpleGraph,
    ) -> ConflictGraph {
        for l in &mut adj {
            l.sort_unstable();
        }
        let adj_mask = adj
            .iter()
            .map(|l| {
                let mut s = ObjSet::EMPTY;
                for &u in l {
                    s.insert(u);
                }
                s
            })
            .collect();
        ConflictGraph {
            mode,
            labels,
            adj,
            adj_mask,
            source,
        }
    }

    /// The source graph as its own conflict graph (vertex games).
    pub fn identity(g: &SimpleGraph) -> ConflictGraph {
        let labels = (0..g.n()).map(ObjectRef::Vertex).collect();
        let adj = (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect();
        ConflictGraph::from_parts(ConflictMode::Identity, labels, adj, g.clone())
    }

    /// Line graph of `g` (edge games).
    pub fn line(g: &SimpleGraph) -> ConflictGraph {
        let m = g.m() as usize;
        let labels = (0..g.m()).map(ObjectRef::Edge).collect();
        let mut adj = vec![Vec::new(); m];
        for i in 0..m {
            for j in (i + 1)..m {
                let (a, b) = g.edges()[i];
                let (c, d) = g.edges()[j];
                if a == c || a == d || b == c || b == d {
                    adj[i].push(j as u32);
                    adj[j].push(i as u32);
                }
            }
        }
        ConflictGraph::from_parts(ConflictMode::Line, labels, adj, g.clone())
    }

    /// Total graph of `g` (total games): one object per vertex and per edge,
    /// adjacent iff the pair is incident in `g`.
    pub fn total(g: &SimpleGraph) -> ConflictGraph {
        let n = g.n();
        let count = g.objects() as usize;
        let mut labels = Vec::with_capacity(count);
        labels.extend((0..n).map(ObjectRef::Vertex));
        labels.extend((0..g.m()).map(ObjectRef::Edge));
        let mut adj = vec![Vec::new(); count];
        // vertex-vertex
        for &(a, b) in g.edges() {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for (j, &(a, b)) in g.edges().iter().enumerate() {
            let ej = n + j as u32;
            // vertex-edge incidences
            adj[a as usize].push(ej);
            adj[b as usize].push(ej);
            adj[ej as usize].push(a);
            adj[ej as usize].push(b);
            // edge-edge adjacencies
            for (i, &(c, d)) in g.edges().iter().enumerate().take(j) {
                if a == c || a == d || b == c || b == d {
                    let ei = n + i as u32;
                    adj[ej as usize].push(ei);
                    adj[ei as usize].push(ej);
                }
            }
        }
        ConflictGraph::from_parts(ConflictMode::Total, labels, adj, g.clone())
    }

    pub fn build(g: &SimpleGraph, mode: ConflictMode) -> ConflictGraph {
        match mode {
            ConflictMode::Identity => ConflictGraph::identity(g),
            ConflictMode::Line => ConflictGraph::line(g),
            ConflictMode::Total => ConflictGraph::total(g),
        }
    }

    pub fn mode(&self) -> ConflictMode {
        self.mode
    }

    /// Number of game objects (vertices of the conflict graph).
    pub fn order(&self) -> u32 {
        self.labels.len() as u32
    }

    pub fn label(&self, i: u32) -> ObjectRef {
        self.labels[i as usize]
    }

    pub fn labels(&self) -> &[ObjectRef] {
        &self.labels
    }

    pub fn index_of_label(&self, obj: ObjectRef) -> Option<u32> {
        self.labels.iter().position(|&l| l == obj).map(|i| i as u32)
    }

    pub fn neighbors(&self, i: u32) -> &[u32] {
        &self.adj[i as usize]
    }

    pub fn neighbor_mask(&self, i: u32) -> ObjSet {
        self.adj_mask[i as usize]
    }

    pub fn degree(&self, i: u32) -> u32 {
        self.adj[i as usize].len() as u32
    }

    pub fn max_degree(&self) -> u32 {
        self.adj.iter().map(|l| l.len() as u32).max().unwrap_or(0)
    }

    pub fn are_adjacent(&self, i: u32, j: u32) -> bool {
        self.adj_mask[i as usize].contains(j)
    }

    pub fn source(&self) -> &SimpleGraph {
        &self.source
    }
}

impl std::fmt::Debug for ConflictGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ConflictGraph(mode={:?}, order={}, source={:?})",
            self.mode,
            self.order(),
            self.source
        )
    }
}

/// Line graph of `g` as a labeled conflict graph.
pub fn line_graph(g: &SimpleGraph) -> ConflictGraph {
    ConflictGraph::line(g)
}

/// Total graph of `g` as a labeled conflict graph.
pub fn total_graph(g: &SimpleGraph) -> ConflictGraph {
    ConflictGraph::total(g)
}

/// Maximum degree of `g`.
pub fn max_degree(g: &SimpleGraph) -> u32 {
    g.max_degree()
}
