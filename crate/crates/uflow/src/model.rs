//! Problem model: capacitated graphs, tasks, instances, routings and the
//! solution verifier.
//!
//! All types are immutable after construction and every operation here is a
//! pure function, so shared instances can be used concurrently.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple undirected graph with a non-negative capacity on every edge.
///
/// Edges are stored normalized (`u < v`), sorted, and addressed by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacitatedGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, usize)>>, // vertex -> (neighbor, edge index), sorted by neighbor
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub capacity: u64,
}

impl CapacitatedGraph {
    /// Builds a graph from `(u, v, capacity)` triples.
    ///
    /// Rejects self-loops, duplicate edges and out-of-range endpoints.
    pub fn new(n: usize, edge_list: &[(usize, usize, u64)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(a, b, cap) in edge_list {
            if a == b {
                return Err(Error::input(format!("self-loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::input(format!(
                    "edge ({a}, {b}) has an endpoint outside 0..{n}"
                )));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            edges.push(Edge { u, v, capacity: cap });
        }
        edges.sort_by_key(|e| (e.u, e.v));
        if edges.windows(2).any(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v)) {
            return Err(Error::input("duplicate edge".to_string()));
        }
        let mut adj = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            adj[e.u].push((e.v, i));
            adj[e.v].push((e.u, i));
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(CapacitatedGraph { n, edges, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> Edge {
        self.edges[idx]
    }

    /// Index of the edge between `a` and `b`, if present.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        self.edges
            .binary_search_by_key(&(u, v), |e| (e.u, e.v))
            .ok()
    }

    /// Neighbors of `v` as `(neighbor, edge index)` pairs, ascending by neighbor.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Maximum degree over all vertices (0 for the empty graph).
    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Maximum edge capacity (0 if there are no edges).
    pub fn max_capacity(&self) -> u64 {
        self.edges.iter().map(|e| e.capacity).max().unwrap_or(0)
    }
}

/// A routing request: route `demand` units from `source` to `target` for
/// `profit`. Degenerate tasks with `source == target` are rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Task {
    pub source: usize,
    pub target: usize,
    pub demand: u64,
    pub profit: u64,
}

impl Task {
    pub fn new(source: usize, target: usize, demand: u64, profit: u64) -> Self {
        Task {
            source,
            target,
            demand,
            profit,
        }
    }

    pub fn is_endpoint(&self, v: usize) -> bool {
        self.source == v || self.target == v
    }
}

/// A full problem instance: graph, tasks, profit target and route length bound.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: CapacitatedGraph,
    pub tasks: Vec<Task>,
    pub target: u64,
    pub max_route_length: usize,
    /// Free-form provenance note (e.g. generator parameters); round-trips
    /// through the serialized form.
    pub comment: Option<String>,
}

impl Instance {
    /// Builds an instance. When `max_route_length` is absent it defaults to
    /// the vertex count, which never constrains a simple path.
    pub fn new(
        graph: CapacitatedGraph,
        tasks: Vec<Task>,
        target: u64,
        max_route_length: Option<usize>,
    ) -> Result<Self> {
        let n = graph.vertex_count();
        for (i, t) in tasks.iter().enumerate() {
            if t.source >= n || t.target >= n {
                return Err(Error::input(format!(
                    "task {i} has an endpoint outside 0..{n}"
                )));
            }
            if t.source == t.target {
                return Err(Error::input(format!(
                    "task {i} has equal source and target {}",
                    t.source
                )));
            }
        }
        let ell = match max_route_length {
            Some(0) => return Err(Error::input("max_route_length must be positive")),
            Some(l) => l,
            None => n,
        };
        Ok(Instance {
            graph,
            tasks,
            target,
            max_route_length: ell,
            comment: None,
        })
    }

    pub fn with_comment(mut self, comment: impl Into<String>) -> Self {
        self.comment = Some(comment.into());
        self
    }

    pub fn max_capacity(&self) -> u64 {
        self.graph.max_capacity()
    }

    pub fn max_degree(&self) -> usize {
        self.graph.max_degree()
    }
}

/// A witness: selected tasks mapped to simple paths given as vertex sequences.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Routing {
    pub routes: BTreeMap<usize, Vec<usize>>,
}

impl Routing {
    pub fn empty() -> Self {
        Routing::default()
    }

    pub fn insert(&mut self, task: usize, path: Vec<usize>) {
        self.routes.insert(task, path);
    }

    pub fn profit(&self, instance: &Instance) -> u64 {
        self.routes
            .keys()
            .map(|&i| instance.tasks[i].profit)
            .sum()
    }
}

/// A single structural reason a routing fails verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EdgeOverload {
        u: usize,
        v: usize,
        load: u64,
        capacity: u64,
    },
    PathTooLong {
        task: usize,
        length: usize,
        limit: usize,
    },
    EndpointMismatch {
        task: usize,
    },
    NonEdgeStep {
        task: usize,
        u: usize,
        v: usize,
    },
    RepeatedVertex {
        task: usize,
        vertex: usize,
    },
    EmptyPath {
        task: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EdgeOverload { u, v, load, capacity } => {
                write!(f, "edge ({u}, {v}) overloaded: load {load} > capacity {capacity}")
            }
            Violation::PathTooLong { task, length, limit } => {
                write!(f, "task {task}: path length {length} exceeds bound {limit}")
            }
            Violation::EndpointMismatch { task } => {
                write!(f, "task {task}: path endpoints do not match the task")
            }
            Violation::NonEdgeStep { task, u, v } => {
                write!(f, "task {task}: step ({u}, {v}) is not an edge")
            }
            Violation::RepeatedVertex { task, vertex } => {
                write!(f, "task {task}: vertex {vertex} repeated on path")
            }
            Violation::EmptyPath { task } => write!(f, "task {task}: empty path"),
        }
    }
}

/// Outcome of [`verify_routing`]: `valid` iff `violations` is empty; `profit`
/// sums the routed tasks' profits regardless of validity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub valid: bool,
    pub profit: u64,
    pub violations: Vec<Violation>,
}

fn check_indices(instance: &Instance, routing: &Routing) -> Result<()> {
    let n = instance.graph.vertex_count();
    for (&task, path) in &routing.routes {
        if task >= instance.tasks.len() {
            return Err(Error::input(format!("routing references task {task}")));
        }
        if let Some(&v) = path.iter().find(|&&v| v >= n) {
            return Err(Error::input(format!(
                "routing for task {task} references vertex {v}"
            )));
        }
    }
    Ok(())
}

/// Per-edge flow load of a routing: the demand sum over all routes using the
/// edge, indexed by edge id. Unused edges map to 0.
pub fn edge_loads(instance: &Instance, routing: &Routing) -> Result<Vec<u64>> {
    check_indices(instance, routing)?;
    let mut loads = vec![0u64; instance.graph.edge_count()];
    for (&task, path) in &routing.routes {
        let demand = instance.tasks[task].demand;
        for w in path.windows(2) {
            if let Some(e) = instance.graph.edge_between(w[0], w[1]) {
                loads[e] += demand;
            }
        }
    }
    Ok(loads)
}

/// Checks a routing against the instance: endpoints, simplicity, edge
/// existence, the length bound, and every per-edge capacity.
pub fn verify_routing(instance: &Instance, routing: &Routing) -> Result<VerificationReport> {
    check_indices(instance, routing)?;
    let mut violations = Vec::new();
    let mut loads = vec![0u64; instance.graph.edge_count()];
    let mut profit = 0u64;

    for (&ti, path) in &routing.routes {
        let task = instance.tasks[ti];
        profit += task.profit;
        if path.is_empty() {
            violations.push(Violation::EmptyPath { task: ti });
            continue;
        }
        if path[0] != task.source || *path.last().unwrap() != task.target {
            violations.push(Violation::EndpointMismatch { task: ti });
        }
        let mut seen = std::collections::BTreeSet::new();
        for &v in path {
            if !seen.insert(v) {
                violations.push(Violation::RepeatedVertex { task: ti, vertex: v });
            }
        }
        let length = path.len() - 1;
        if length > instance.max_route_length {
            violations.push(Violation::PathTooLong {
                task: ti,
                length,
                limit: instance.max_route_length,
            });
        }
        for w in path.windows(2) {
            match instance.graph.edge_between(w[0], w[1]) {
                Some(e) => loads[e] += task.demand,
                None => violations.push(Violation::NonEdgeStep {
                    task: ti,
                    u: w[0],
                    v: w[1],
                }),
            }
        }
    }

    for (i, e) in instance.graph.edges().iter().enumerate() {
        if loads[i] > e.capacity {
            violations.push(Violation::EdgeOverload {
                u: e.u,
                v: e.v,
                load: loads[i],
                capacity: e.capacity,
            });
        }
    }

    Ok(VerificationReport {
        valid: violations.is_empty(),
        profit,
        violations,
    })
}

// --- serialized formats -----------------------------------------------------

#[derive(Serialize, Deserialize)]
struct InstanceDoc {
    num_vertices: usize,
    edges: Vec<(usize, usize, u64)>,
    tasks: Vec<(usize, usize, u64, u64)>,
    target: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    max_route_length: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    comment: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct RouteDoc {
    task: usize,
    path: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RoutingDoc {
    routes: Vec<RouteDoc>,
}

impl Instance {
    pub fn to_json(&self) -> String {
        let doc = InstanceDoc {
            num_vertices: self.graph.vertex_count(),
            edges: self
                .graph
                .edges()
                .iter()
                .map(|e| (e.u, e.v, e.capacity))
                .collect(),
            tasks: self
                .tasks
                .iter()
                .map(|t| (t.source, t.target, t.demand, t.profit))
                .collect(),
            target: self.target,
            max_route_length: Some(self.max_route_length),
            comment: self.comment.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("instance serialization")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: InstanceDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let graph = CapacitatedGraph::new(doc.num_vertices, &doc.edges)?;
        let tasks = doc
            .tasks
            .iter()
            .map(|&(s, t, d, w)| Task::new(s, t, d, w))
            .collect();
        let mut inst = Instance::new(graph, tasks, doc.target, doc.max_route_length)?;
        inst.comment = doc.comment;
        Ok(inst)
    }
}

impl Routing {
    pub fn to_json(&self) -> String {
        let doc = RoutingDoc {
            routes: self
                .routes
                .iter()
                .map(|(&task, path)| RouteDoc {
                    task,
                    path: path.clone(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("routing serialization")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: RoutingDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut routing = Routing::empty();
        for r in doc.routes {
            if routing.routes.insert(r.task, r.path).is_some() {
                return Err(Error::input(format!("duplicate route for task {}", r.task)));
            }
        }
        Ok(routing)
    }
}
