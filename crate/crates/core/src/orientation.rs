//! Edge orientations with bounded maximum outdegree.
//!
//! Feasibility of "orient every edge so each vertex keeps outdegree <= k" is
//! a unit flow problem: one unit per edge must be routed to one of its two
//! endpoints, and each vertex absorbs at most k units. When the flow is
//! short, the source side of a minimum cut yields a vertex set H with
//! |E(G[H])| > k|H|, certifying that no such orientation exists.

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// A direction for every edge of a graph, with per-vertex out/in edge lists.
#[derive(Clone, Debug)]
pub struct Orientation {
    graph: SimpleGraph,
    tail: Vec<u32>,
    out_edges: Vec<Vec<u32>>,
    in_edges: Vec<Vec<u32>>,
}

impl Orientation {
    /// Builds an orientation from per-edge tail vertices.
    pub fn new(graph: &SimpleGraph, tail: Vec<u32>) -> Result<Orientation> {
        if tail.len() != graph.m() as usize {
            return Err(Error::OrientationMismatch(format!(
                "{} tails for {} edges",
                tail.len(),
                graph.m()
            )));
        }
        let mut out_edges = vec![Vec::new(); graph.n() as usize];
        let mut in_edges = vec![Vec::new(); graph.n() as usize];
        for (j, &t) in tail.iter().enumerate() {
            let (a, b) = graph.edges()[j];
            if t != a && t != b {
                return Err(Error::OrientationMismatch(format!(
                    "tail {t} is not an endpoint of edge {j} = ({a},{b})"
                )));
            }
            let h = if t == a { b } else { a };
            out_edges[t as usize].push(j as u32);
            in_edges[h as usize].push(j as u32);
        }
        Ok(Orientation {
            graph: graph.clone(),
            tail,
            out_edges,
            in_edges,
        })
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn tail(&self, edge: u32) -> u32 {
        self.tail[edge as usize]
    }

    pub fn head(&self, edge: u32) -> u32 {
        let (a, b) = self.graph.edges()[edge as usize];
        if self.tail[edge as usize] == a {
            b
        } else {
            a
        }
    }

    /// Out-edge indices of `v`, ascending.
    pub fn out_edges(&self, v: u32) -> &[u32] {
        &self.out_edges[v as usize]
    }

    /// In-edge indices of `v`, ascending.
    pub fn in_edges(&self, v: u32) -> &[u32] {
        &self.in_edges[v as usize]
    }

    pub fn outdegree(&self, v: u32) -> u32 {
        self.out_edges[v as usize].len() as u32
    }

    /// Maximum outdegree over all vertices.
    pub fn max_outdegree(&self) -> u32 {
        self.out_edges.iter().map(|l| l.len() as u32).max().unwrap_or(0)
    }

    /// `tail>head` pairs in edge-index order.
    pub fn arc_string(&self) -> String {
        (0..self.graph.m())
            .map(|j| format!("{}>{}", self.tail(j), self.head(j)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn matches_graph(&self, g: &SimpleGraph) -> bool {
        self.graph.n() == g.n() && self.graph.edges() == g.edges()
    }
}

/// Vertex set whose induced subgraph is too dense to orient within
/// outdegree k: `|E(G[H])| > k * |H|`.
#[derive(Clone, Debug)]
pub struct DensityCertificate {
    pub vertices: Vec<u32>,
    pub induced_edges: u32,
}

impl DensityCertificate {
    /// Recounts the induced edges directly and checks the density inequality.
    pub fn validates(&self, g: &SimpleGraph, k: u32) -> bool {
        let inside = |v: u32| self.vertices.contains(&v);
        let count = g
            .edges()
            .iter()
            .filter(|&&(a, b)| inside(a) && inside(b))
            .count() as u32;
        count == self.induced_edges && count as u64 > k as u64 * self.vertices.len() as u64
    }
}

#[derive(Clone, Debug)]
pub enum OrientationResult {
    Oriented(Orientation),
    Infeasible(DensityCertificate),
}

impl OrientationResult {
    pub fn oriented(self) -> Option<Orientation> {
        match self {
            OrientationResult::Oriented(o) => Some(o),
            OrientationResult::Infeasible(_) => None,
        }
    }

    pub fn certificate(self) -> Option<DensityCertificate> {
        match self {
            OrientationResult::Oriented(_) => None,
            OrientationResult::Infeasible(c) => Some(c),
        }
    }
}

struct FlowNet {
    // arcs stored pairwise: arc 2i and its reverse 2i+1
    to: Vec<u32>,
    cap: Vec<i64>,
    head: Vec<Vec<u32>>, // per-node arc ids, in insertion order
}

impl FlowNet {
    fn new(nodes: usize) -> FlowNet {
        FlowNet {
            to: Vec::new(),
            cap: Vec::new(),
            head: vec![Vec::new(); nodes],
        }
    }

    fn arc(&mut self, from: u32, to: u32, cap: i64) -> usize {
        let id = self.to.len();
        self.to.push(to);
        self.cap.push(cap);
        self.head[from as usize].push(id as u32);
        self.to.push(from);
        self.cap.push(0);
        self.head[to as usize].push(id as u32 + 1);
        id
    }

    /// Edmonds-Karp with fixed arc order, so identical inputs route
    /// identically run-to-run.
    fn max_flow(&mut self, source: u32, sink: u32) -> i64 {
        let mut total = 0;
        loop {
            let mut parent: Vec<Option<u32>> = vec![None; self.head.len()];
            parent[source as usize] = Some(u32::MAX);
            let mut queue = std::collections::VecDeque::from([source]);
            'bfs: while let Some(u) = queue.pop_front() {
                for &aid in &self.head[u as usize] {
                    let v = self.to[aid as usize];
                    if self.cap[aid as usize] > 0 && parent[v as usize].is_none() {
                        parent[v as usize] = Some(aid);
                        if v == sink {
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            if parent[sink as usize].is_none() {
                return total;
            }
            // bottleneck along the path
            let mut bottleneck = i64::MAX;
            let mut v = sink;
            while v != source {
                let aid = parent[v as usize].unwrap() as usize;
                bottleneck = bottleneck.min(self.cap[aid]);
                v = self.to[aid ^ 1];
            }
            let mut v = sink;
            while v != source {
                let aid = parent[v as usize].unwrap() as usize;
                self.cap[aid] -= bottleneck;
                self.cap[aid ^ 1] += bottleneck;
                v = self.to[aid ^ 1];
            }
            total += bottleneck;
        }
    }

    fn residual_reachable(&self, source: u32) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[source as usize] = true;
        let mut stack = vec![source];
        while let Some(u) = stack.pop() {
            for &aid in &self.head[u as usize] {
                let v = self.to[aid as usize] as usize;
                if self.cap[aid as usize] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v as u32);
                }
            }
        }
        seen
    }
}

/// Orients `g` with maximum outdegree at most `k`, or returns a density
/// certificate proving no such orientation exists.
pub fn feasible_orientation(g: &SimpleGraph, k: u32) -> OrientationResult {
    let n = g.n() as usize;
    let m = g.m() as usize;
    // nodes: 0 = source, 1..=m edges, m+1..=m+n vertices, m+n+1 = sink
    let source = 0u32;
    let sink = (m + n + 1) as u32;
    let edge_node = |j: usize| (1 + j) as u32;
    let vertex_node = |v: u32| (1 + m) as u32 + v;
    let big = m as i64 + 1;

    let mut net = FlowNet::new(m + n + 2);
    let mut source_arcs = Vec::with_capacity(m);
    let mut endpoint_arcs = Vec::with_capacity(m);
    for (j, &(a, b)) in g.edges().iter().enumerate() {
        source_arcs.push(net.arc(source, edge_node(j), 1));
        endpoint_arcs.push((
            net.arc(edge_node(j), vertex_node(a), big),
            net.arc(edge_node(j), vertex_node(b), big),
        ));
    }
    for v in 0..g.n() {
        net.arc(vertex_node(v), sink, k as i64);
    }

    let flow = net.max_flow(source, sink);
    if flow == m as i64 {
        let mut tails = Vec::with_capacity(m);
        for (j, &(a, b)) in g.edges().iter().enumerate() {
            let (arc_a, _) = endpoint_arcs[j];
            // residual below `big` means the unit went through this endpoint
            let used_a = net.cap[arc_a] < big;
            tails.push(if used_a { a } else { b });
            debug_assert_eq!(net.cap[source_arcs[j]], 0);
        }
        OrientationResult::Oriented(
            Orientation::new(g, tails).expect("flow tails are endpoints"),
        )
    } else {
        let reach = net.residual_reachable(source);
        let vertices: Vec<u32> = (0..g.n())
            .filter(|&v| reach[vertex_node(v) as usize])
            .collect();
        let inside = |v: u32| vertices.contains(&v);
        let induced_edges = g
            .edges()
            .iter()
            .filter(|&&(a, b)| inside(a) && inside(b))
            .count() as u32;
        let cert = DensityCertificate {
            vertices,
            induced_edges,
        };
        debug_assert!(cert.validates(g, k));
        OrientationResult::Infeasible(cert)
    }
}

/// Orientation achieving the minimum possible maximum outdegree, found by
/// binary search on k over flow feasibility. The optimum equals the maximum
/// over nonempty subgraphs H of ceil(|E(H)| / |V(H)|).
pub fn min_max_outdegree_orientation(g: &SimpleGraph) -> Orientation {
    if g.m() == 0 {
        return Orientation::new(g, Vec::new()).expect("edgeless orientation");
    }
    let mut lo = g.m().div_ceil(g.n()); // density lower bound
    let mut hi = g.max_degree(); // always feasible
    let mut best: Option<Orientation> = None;
    while lo < hi {
        let mid = (lo + hi) / 2;
        match feasible_orientation(g, mid) {
            OrientationResult::Oriented(o) => {
                best = Some(o);
                hi = mid;
            }
            OrientationResult::Infeasible(_) => lo = mid + 1,
        }
    }
    match best {
        Some(o) if o.max_outdegree() <= lo => o,
        _ => feasible_orientation(g, lo)
            .oriented()
            .expect("binary search ended on a feasible k"),
    }
}

/// True iff `d` orients `g` with maximum outdegree at most `k`.
pub fn verify_orientation(g: &SimpleGraph, d: &Orientation, k: u32) -> Result<bool> {
    if !d.matches_graph(g) {
        return Err(Error::OrientationMismatch(
            "orientation was built for a different graph".into(),
        ));
    }
    Ok(d.max_outdegree() <= k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    /// Brute-force maximum subgraph density: max over nonempty vertex subsets
    /// of ceil(|E(H)| / |H|). Independent of the flow construction.
    fn brute_density_bound(g: &SimpleGraph) -> u32 {
        let n = g.n();
        let mut best = 0;
        for mask in 1u64..(1 << n) {
            let inside = |v: u32| mask >> v & 1 == 1;
            let edges = g
                .edges()
                .iter()
                .filter(|&&(a, b)| inside(a) && inside(b))
                .count() as u32;
            let size = mask.count_ones();
            best = best.max(edges.div_ceil(size));
        }
        best
    }

    #[test]
    fn path_is_one_orientable() {
        let p3 = families::path(3).unwrap();
        let o = feasible_orientation(&p3, 1).oriented().expect("feasible");
        assert!(o.max_outdegree() <= 1);
        assert!(verify_orientation(&p3, &o, 1).unwrap());
    }

    #[test]
    fn triangle_is_one_orientable() {
        let k3 = families::complete(3).unwrap();
        let o = feasible_orientation(&k3, 1).oriented().expect("feasible");
        assert_eq!(o.max_outdegree(), 1); // m = n forces a cyclic orientation
    }

    #[test]
    fn k4_at_one_is_infeasible_with_full_certificate() {
        let k4 = families::complete(4).unwrap();
        let cert = feasible_orientation(&k4, 1).certificate().expect("infeasible");
        assert!(cert.validates(&k4, 1));
        assert_eq!(cert.vertices, vec![0, 1, 2, 3]);
        assert_eq!(cert.induced_edges, 6); // 6 > 1 * 4
    }

    #[test]
    fn optimizer_spot_values() {
        assert_eq!(
            min_max_outdegree_orientation(&families::complete(4).unwrap()).max_outdegree(),
            2
        );
        assert_eq!(
            min_max_outdegree_orientation(&families::cycle(5).unwrap()).max_outdegree(),
            1
        );
        assert_eq!(
            min_max_outdegree_orientation(&families::star(5).unwrap()).max_outdegree(),
            1
        );
        // trees
        for spec in ["path:6", "star:3"] {
            let t = families::generate(spec, 64).unwrap();
            assert_eq!(min_max_outdegree_orientation(&t).max_outdegree(), 1, "{spec}");
        }
        // edgeless
        assert_eq!(
            min_max_outdegree_orientation(&families::empty(4).unwrap()).max_outdegree(),
            0
        );
    }

    #[test]
    fn optimizer_matches_density_oracle_and_certifies() {
        for spec in [
            "complete:4",
            "complete:5",
            "cycle:5",
            "path:4",
            "star:4",
            "gnp:6:0.6:seed=1",
            "gnp:6:0.3:seed=2",
            "gnp:7:0.5:seed=3",
            "union:complete:3,complete:1",
        ] {
            let g = families::generate(spec, 64).unwrap();
            let o = min_max_outdegree_orientation(&g);
            let k = o.max_outdegree();
            assert_eq!(k, brute_density_bound(&g), "density mismatch for {spec}");
            if k > 0 {
                let cert = feasible_orientation(&g, k - 1)
                    .certificate()
                    .unwrap_or_else(|| panic!("{spec} should be infeasible at k-1"));
                assert!(cert.validates(&g, k - 1), "bad certificate for {spec}");
            }
        }
    }

    #[test]
    fn outdegree_sum_is_edge_count() {
        for spec in ["complete:5", "gnp:7:0.5:seed=9", "path:6"] {
            let g = families::generate(spec, 64).unwrap();
            let o = min_max_outdegree_orientation(&g);
            let total: u32 = (0..g.n()).map(|v| o.outdegree(v)).sum();
            assert_eq!(total, g.m(), "{spec}");
        }
    }

    #[test]
    fn verify_rejects_foreign_graph() {
        let p3 = families::path(3).unwrap();
        let k3 = families::complete(3).unwrap();
        let o = min_max_outdegree_orientation(&p3);
        assert!(verify_orientation(&k3, &o, 1).is_err());
    }

    #[test]
    fn verify_examples() {
        let p3 = families::path(3).unwrap();
        // a->b->c
        let chain = Orientation::new(&p3, vec![0, 1]).unwrap();
        assert!(verify_orientation(&p3, &chain, 1).unwrap());
        // a->b<-c
        let inward = Orientation::new(&p3, vec![0, 2]).unwrap();
        assert!(verify_orientation(&p3, &inward, 1).unwrap());
        let k3 = families::complete(3).unwrap();
        let cyclic = feasible_orientation(&k3, 1).oriented().unwrap();
        assert!(!verify_orientation(&k3, &cyclic, 0).unwrap());
    }

    #[test]
    fn arc_string_is_edge_ordered() {
        let p3 = families::path(3).unwrap();
        let o = Orientation::new(&p3, vec![0, 1]).unwrap();
        assert_eq!(o.arc_string(), "0>1 1>2");
        assert_eq!(o.out_edges(1), &[1]);
        assert_eq!(o.in_edges(1), &[0]);
    }

    #[test]
    fn deterministic_routing() {
        let g = families::generate("gnp:7:0.5:seed=4", 64).unwrap();
        let a = min_max_outdegree_orientation(&g);
        let b = min_max_outdegree_orientation(&g);
        assert_eq!(a.arc_string(), b.arc_string());
    }
}
