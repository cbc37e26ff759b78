//! Tree decompositions: construction (min-fill heuristic and exact search for
//! small graphs), validation, conversion to nice form, boundary/visibility
//! sets, and the PACE `.td` text format.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::model::CapacitatedGraph;

/// Largest vertex count accepted by the exact minimum-width search.
pub const EXACT_SMALL_LIMIT: usize = 16;

/// A rooted tree decomposition: one bag of vertices per node.
#[derive(Debug, Clone)]
pub struct TreeDecomposition {
    pub bags: Vec<BTreeSet<usize>>,
    pub children: Vec<Vec<usize>>,
    pub parent: Vec<Option<usize>>,
    pub root: usize,
}

impl TreeDecomposition {
    /// Builds a rooted decomposition from bags and undirected tree edges.
    pub fn from_tree(bags: Vec<BTreeSet<usize>>, tree_edges: &[(usize, usize)], root: usize) -> Result<Self> {
        let n = bags.len();
        if n == 0 {
            return Err(Error::input("decomposition has no nodes"));
        }
        if root >= n {
            return Err(Error::input("root out of range"));
        }
        if tree_edges.len() != n - 1 {
            return Err(Error::input(format!(
                "expected {} tree edges, got {}",
                n - 1,
                tree_edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in tree_edges {
            if a >= n || b >= n {
                return Err(Error::input("tree edge out of range"));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        // Root by BFS; n-1 edges + full reachability means it is a tree.
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(t) = queue.pop_front() {
            for &c in &adj[t] {
                if !seen[c] {
                    seen[c] = true;
                    parent[c] = Some(t);
                    children[t].push(c);
                    queue.push_back(c);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::input("decomposition tree is disconnected"));
        }
        Ok(TreeDecomposition {
            bags,
            children,
            parent,
            root,
        })
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    /// Width: largest bag size minus one.
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0).saturating_sub(1)
    }

    /// Node ids in post order (children before parents).
    pub fn postorder(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.node_count());
        let mut stack = vec![(self.root, false)];
        while let Some((t, expanded)) = stack.pop() {
            if expanded {
                order.push(t);
            } else {
                stack.push((t, true));
                for &c in &self.children[t] {
                    stack.push((c, false));
                }
            }
        }
        order
    }
}

/// A violated decomposition axiom, reported by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TdViolation {
    /// Some graph edge has no bag containing both endpoints.
    EdgeNotCovered { u: usize, v: usize },
    /// The bags containing a vertex do not form a nonempty connected subtree.
    DisconnectedVertex { vertex: usize },
    /// A bag mentions a vertex outside the graph.
    VertexOutOfRange { node: usize, vertex: usize },
    /// Nice-form node kind constraint broken at a node.
    BadNodeKind { node: usize, reason: String },
}

/// Checks both decomposition axioms. Violations are reported, not thrown.
pub fn validate(graph: &CapacitatedGraph, td: &TreeDecomposition) -> Vec<TdViolation> {
    let n = graph.vertex_count();
    let mut violations = Vec::new();

    for (node, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                violations.push(TdViolation::VertexOutOfRange { node, vertex: v });
            }
        }
    }

    for e in graph.edges() {
        if !td.bags.iter().any(|b| b.contains(&e.u) && b.contains(&e.v)) {
            violations.push(TdViolation::EdgeNotCovered { u: e.u, v: e.v });
        }
    }

    // Connectivity: the occurrence set of each vertex must be one nonempty
    // connected component of the tree.
    for v in 0..n {
        let occ: Vec<usize> = (0..td.node_count())
            .filter(|&t| td.bags[t].contains(&v))
            .collect();
        if occ.is_empty() {
            violations.push(TdViolation::DisconnectedVertex { vertex: v });
            continue;
        }
        let occ_set: BTreeSet<usize> = occ.iter().copied().collect();
        let mut seen = BTreeSet::from([occ[0]]);
        let mut queue = VecDeque::from([occ[0]]);
        while let Some(t) = queue.pop_front() {
            let mut nbrs: Vec<usize> = td.children[t].clone();
            if let Some(p) = td.parent[t] {
                nbrs.push(p);
            }
            for c in nbrs {
                if occ_set.contains(&c) && seen.insert(c) {
                    queue.push_back(c);
                }
            }
        }
        if seen.len() != occ.len() {
            violations.push(TdViolation::DisconnectedVertex { vertex: v });
        }
    }

    violations
}

// --- construction -----------------------------------------------------------

/// How [`compute_decomposition`] finds the decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompositionMode {
    /// Min-fill elimination; fast, not always optimal.
    Heuristic,
    /// Exhaustive elimination-order search; minimum width, needs
    /// `vertex_count <= EXACT_SMALL_LIMIT`.
    ExactSmall,
}

/// Computes a valid tree decomposition of the graph.
pub fn compute_decomposition(
    graph: &CapacitatedGraph,
    mode: DecompositionMode,
) -> Result<TreeDecomposition> {
    let n = graph.vertex_count();
    if n == 0 {
        return Err(Error::input("cannot decompose the empty graph"));
    }
    let order = match mode {
        DecompositionMode::Heuristic => min_fill_order(graph),
        DecompositionMode::ExactSmall => {
            if n > EXACT_SMALL_LIMIT {
                return Err(Error::limit(format!(
                    "exact decomposition supports at most {EXACT_SMALL_LIMIT} vertices, got {n}"
                )));
            }
            exact_elimination_order(graph)
        }
    };
    Ok(decomposition_from_order(graph, &order))
}

fn adjacency_sets(graph: &CapacitatedGraph) -> Vec<BTreeSet<usize>> {
    (0..graph.vertex_count())
        .map(|v| graph.neighbors(v).iter().map(|&(w, _)| w).collect())
        .collect()
}

/// Greedy elimination order minimizing fill edges, ties by degree then index.
fn min_fill_order(graph: &CapacitatedGraph) -> Vec<usize> {
    let n = graph.vertex_count();
    let mut adj = adjacency_sets(graph);
    let mut alive: BTreeSet<usize> = (0..n).collect();
    let mut order = Vec::with_capacity(n);

    while !alive.is_empty() {
        let mut best: Option<(usize, usize, usize)> = None; // (fill, degree, vertex)
        for &v in &alive {
            let nbrs: Vec<usize> = adj[v].iter().copied().collect();
            let mut fill = 0;
            for i in 0..nbrs.len() {
                for j in i + 1..nbrs.len() {
                    if !adj[nbrs[i]].contains(&nbrs[j]) {
                        fill += 1;
                    }
                }
            }
            let key = (fill, nbrs.len(), v);
            if best.map_or(true, |b| key < b) {
                best = Some(key);
            }
        }
        let (_, _, v) = best.unwrap();
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for i in 0..nbrs.len() {
            for j in i + 1..nbrs.len() {
                adj[nbrs[i]].insert(nbrs[j]);
                adj[nbrs[j]].insert(nbrs[i]);
            }
        }
        for &w in &nbrs {
            adj[w].remove(&v);
        }
        adj[v].clear();
        alive.remove(&v);
        order.push(v);
    }
    order
}

/// Exact minimum-width elimination order via dynamic programming over vertex
/// subsets. `dp[s]` is the best achievable maximum elimination degree over
/// orders of the vertices in `s`.
fn exact_elimination_order(graph: &CapacitatedGraph) -> Vec<usize> {
    let n = graph.vertex_count();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut dp = vec![u8::MAX; (full as usize) + 1];
    dp[0] = 0;

    // Elimination degree of v after the vertices in `s` were eliminated:
    // vertices outside s reachable from v through s.
    let elim_degree = |v: usize, s: u32| -> u8 {
        let mut seen_in_s = 0u32;
        let mut reached = BTreeSet::new();
        let mut stack = vec![v];
        let mut visited = 1u32 << v;
        while let Some(x) = stack.pop() {
            for &(w, _) in graph.neighbors(x) {
                if visited & (1 << w) != 0 {
                    continue;
                }
                visited |= 1 << w;
                if s & (1 << w) != 0 {
                    seen_in_s |= 1 << w;
                    let _ = seen_in_s;
                    stack.push(w);
                } else {
                    reached.insert(w);
                }
            }
        }
        reached.len() as u8
    };

    for s in 0..=full {
        if dp[s as usize] == u8::MAX {
            continue;
        }
        for v in 0..n {
            if s & (1 << v) != 0 {
                continue;
            }
            let ns = s | (1 << v);
            let cand = dp[s as usize].max(elim_degree(v, s));
            if cand < dp[ns as usize] {
                dp[ns as usize] = cand;
            }
        }
    }

    // Reconstruct an order achieving dp[full] by walking backwards.
    let mut order = vec![0usize; n];
    let mut s = full;
    let target = dp[full as usize];
    for pos in (0..n).rev() {
        let mut chosen = None;
        for v in 0..n {
            if s & (1 << v) == 0 {
                continue;
            }
            let prev = s & !(1 << v);
            if dp[prev as usize] != u8::MAX
                && dp[prev as usize].max(elim_degree(v, prev)) <= target
            {
                chosen = Some(v);
                break;
            }
        }
        let v = chosen.expect("dp reconstruction");
        order[pos] = v;
        s &= !(1 << v);
    }
    order
}

/// Standard bag construction from an elimination order with fill-in: the bag
/// of `v` is `v` plus its neighbors at elimination time; it attaches to the
/// bag of the earliest-eliminated such neighbor.
fn decomposition_from_order(graph: &CapacitatedGraph, order: &[usize]) -> TreeDecomposition {
    let n = graph.vertex_count();
    let mut position = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut adj = adjacency_sets(graph);
    let mut bags: Vec<BTreeSet<usize>> = Vec::with_capacity(n);
    let mut later_neighbor: Vec<Option<usize>> = Vec::with_capacity(n);

    for &v in order {
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        let mut bag = BTreeSet::from([v]);
        bag.extend(nbrs.iter().copied());
        bags.push(bag);
        later_neighbor.push(nbrs.iter().copied().min_by_key(|&w| position[w]));
        for i in 0..nbrs.len() {
            for j in i + 1..nbrs.len() {
                adj[nbrs[i]].insert(nbrs[j]);
                adj[nbrs[j]].insert(nbrs[i]);
            }
        }
        for &w in &nbrs {
            adj[w].remove(&v);
        }
        adj[v].clear();
    }

    // Bag i (for order[i]) connects to the bag of its earliest-eliminated
    // remaining neighbor, or to the next bag in order if isolated.
    let mut tree_edges = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n {
        let parent_bag = match later_neighbor[i] {
            Some(w) => position[w],
            None => {
                if i + 1 < n {
                    i + 1
                } else {
                    continue; // last bag is the root
                }
            }
        };
        tree_edges.push((i, parent_bag));
    }
    TreeDecomposition::from_tree(bags, &tree_edges, n - 1).expect("order-based decomposition")
}

// --- nice form --------------------------------------------------------------

/// Node kinds of a nice tree decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

/// A nice decomposition: leaf bags of size one, empty root bag, and only
/// introduce/forget/join internal nodes.
#[derive(Debug, Clone)]
pub struct NiceTreeDecomposition {
    pub td: TreeDecomposition,
    pub kinds: Vec<NodeKind>,
}

impl NiceTreeDecomposition {
    pub fn width(&self) -> usize {
        self.td.width()
    }

    pub fn node_count(&self) -> usize {
        self.td.node_count()
    }
}

/// Checks the nice-form node kind constraints on top of [`validate`].
pub fn validate_nice(graph: &CapacitatedGraph, nice: &NiceTreeDecomposition) -> Vec<TdViolation> {
    let mut violations = validate(graph, &nice.td);
    let td = &nice.td;
    if !td.bags[td.root].is_empty() {
        violations.push(TdViolation::BadNodeKind {
            node: td.root,
            reason: "root bag is not empty".into(),
        });
    }
    for t in 0..td.node_count() {
        let bag = &td.bags[t];
        let kids = &td.children[t];
        let bad = |reason: &str| TdViolation::BadNodeKind {
            node: t,
            reason: reason.into(),
        };
        match nice.kinds[t] {
            NodeKind::Leaf => {
                if !kids.is_empty() {
                    violations.push(bad("leaf with children"));
                }
                if bag.len() != 1 {
                    violations.push(bad("leaf bag size is not 1"));
                }
            }
            NodeKind::Introduce(v) => {
                if kids.len() != 1 {
                    violations.push(bad("introduce without exactly one child"));
                } else {
                    let child = &td.bags[kids[0]];
                    let mut expect = child.clone();
                    if !expect.insert(v) || &expect != bag {
                        violations.push(bad("introduce bag is not child plus vertex"));
                    }
                }
            }
            NodeKind::Forget(v) => {
                if kids.len() != 1 {
                    violations.push(bad("forget without exactly one child"));
                } else {
                    let child = &td.bags[kids[0]];
                    let mut expect = child.clone();
                    if !expect.remove(&v) || &expect != bag {
                        violations.push(bad("forget bag is not child minus vertex"));
                    }
                }
            }
            NodeKind::Join => {
                if kids.len() != 2 {
                    violations.push(bad("join without exactly two children"));
                } else if td.bags[kids[0]] != *bag || td.bags[kids[1]] != *bag {
                    violations.push(bad("join children bags differ from the node bag"));
                }
            }
        }
    }
    violations
}

struct NiceBuilder {
    bags: Vec<BTreeSet<usize>>,
    kinds: Vec<NodeKind>,
    children: Vec<Vec<usize>>,
}

impl NiceBuilder {
    fn add(&mut self, bag: BTreeSet<usize>, kind: NodeKind, kids: Vec<usize>) -> usize {
        self.bags.push(bag);
        self.kinds.push(kind);
        self.children.push(kids);
        self.bags.len() - 1
    }

    /// Chain from `below` (bag `from`) up to bag `to`: forgets then introduces.
    fn transition(&mut self, mut below: usize, from: &BTreeSet<usize>, to: &BTreeSet<usize>) -> usize {
        let mut bag = from.clone();
        for &v in from.difference(to) {
            bag.remove(&v);
            below = self.add(bag.clone(), NodeKind::Forget(v), vec![below]);
        }
        for &v in to.difference(from) {
            bag.insert(v);
            below = self.add(bag.clone(), NodeKind::Introduce(v), vec![below]);
        }
        below
    }

    /// Leaf chain: a size-one leaf bag introduced up to `bag`.
    fn leaf_chain(&mut self, bag: &BTreeSet<usize>) -> usize {
        let first = *bag.iter().next().expect("nonempty leaf bag");
        let mut cur = BTreeSet::from([first]);
        let mut node = self.add(cur.clone(), NodeKind::Leaf, vec![]);
        for &v in bag.iter().skip(1) {
            cur.insert(v);
            node = self.add(cur.clone(), NodeKind::Introduce(v), vec![node]);
        }
        node
    }
}

/// Converts a valid decomposition into nice form of the same width.
pub fn to_nice(graph: &CapacitatedGraph, td: &TreeDecomposition) -> Result<NiceTreeDecomposition> {
    if !validate(graph, td).is_empty() {
        return Err(Error::input("decomposition fails validation"));
    }
    if graph.vertex_count() == 0 {
        return Err(Error::input("cannot build a nice decomposition of the empty graph"));
    }

    // Drop empty-bag leaves; every vertex still occurs somewhere.
    let mut keep: Vec<bool> = (0..td.node_count()).map(|_| true).collect();
    loop {
        let mut changed = false;
        for t in 0..td.node_count() {
            if !keep[t] || !td.bags[t].is_empty() {
                continue;
            }
            let live_children = td.children[t].iter().filter(|&&c| keep[c]).count();
            let is_leaf = live_children == 0;
            let is_root_like = td.parent[t].map_or(true, |p| !keep[p]);
            if is_leaf && !is_root_like {
                keep[t] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let mut builder = NiceBuilder {
        bags: Vec::new(),
        kinds: Vec::new(),
        children: Vec::new(),
    };

    // Iterative postorder over kept nodes; returns the nice node whose bag
    // equals the original node's bag.
    fn build(
        td: &TreeDecomposition,
        keep: &[bool],
        builder: &mut NiceBuilder,
        t: usize,
    ) -> usize {
        let kids: Vec<usize> = td.children[t].iter().copied().filter(|&c| keep[c]).collect();
        let bag = &td.bags[t];
        if kids.is_empty() {
            if bag.is_empty() {
                // Root-like empty node over nothing: give it a throwaway leaf.
                let v = 0;
                let leaf = builder.add(BTreeSet::from([v]), NodeKind::Leaf, vec![]);
                return builder.add(BTreeSet::new(), NodeKind::Forget(v), vec![leaf]);
            }
            return builder.leaf_chain(bag);
        }
        let mut tops: Vec<usize> = kids
            .iter()
            .map(|&c| {
                let sub = build(td, keep, builder, c);
                builder.transition(sub, &td.bags[c], bag)
            })
            .collect();
        let mut acc = tops.remove(0);
        for next in tops {
            acc = builder.add(bag.clone(), NodeKind::Join, vec![acc, next]);
        }
        acc
    }

    let top = build(td, &keep, &mut builder, td.root);
    // Forget chain down to the empty root bag.
    let root_bag = builder.bags[top].clone();
    let root = builder.transition(top, &root_bag, &BTreeSet::new());

    let node_count = builder.bags.len();
    let mut tree_edges = Vec::with_capacity(node_count.saturating_sub(1));
    for (t, kids) in builder.children.iter().enumerate() {
        for &c in kids {
            tree_edges.push((t, c));
        }
    }
    let td_out = TreeDecomposition::from_tree(builder.bags, &tree_edges, root)?;
    Ok(NiceTreeDecomposition {
        td: td_out,
        kinds: builder.kinds,
    })
}

// --- boundary and visibility sets -------------------------------------------

/// Per-node boundary and visibility information consumed by the solvers.
#[derive(Debug, Clone)]
pub struct BoundaryView {
    /// Vertices strictly below the bag: union of subtree bags minus the bag.
    pub past: Vec<BTreeSet<usize>>,
    /// Edge ids with exactly one endpoint in `past`, sorted.
    pub present: Vec<Vec<usize>>,
    /// Vertices within hop distance `ell` of the bag.
    pub vis: Vec<BTreeSet<usize>>,
    /// Edge ids with both endpoints in `vis`, sorted.
    pub e_vis: Vec<Vec<usize>>,
    pub ell: usize,
}

/// Computes past/present/vis/e_vis for every node of a nice decomposition.
pub fn boundary_view(
    graph: &CapacitatedGraph,
    nice: &NiceTreeDecomposition,
    ell: usize,
) -> BoundaryView {
    let td = &nice.td;
    let count = td.node_count();
    let mut subtree_union: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); count];
    let mut past = vec![BTreeSet::new(); count];
    let mut present = vec![Vec::new(); count];
    let mut vis = vec![BTreeSet::new(); count];
    let mut e_vis = vec![Vec::new(); count];

    for t in td.postorder() {
        let mut union = td.bags[t].clone();
        for &c in &td.children[t] {
            union.extend(subtree_union[c].iter().copied());
        }
        past[t] = union.difference(&td.bags[t]).copied().collect();
        subtree_union[t] = union;

        present[t] = graph
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| past[t].contains(&e.u) != past[t].contains(&e.v))
            .map(|(i, _)| i)
            .collect();

        // Multi-source BFS from the bag, up to ell hops.
        let mut dist = vec![usize::MAX; graph.vertex_count()];
        let mut queue = VecDeque::new();
        for &v in &td.bags[t] {
            dist[v] = 0;
            queue.push_back(v);
        }
        while let Some(v) = queue.pop_front() {
            if dist[v] == ell {
                continue;
            }
            for &(w, _) in graph.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        vis[t] = dist
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d != usize::MAX)
            .map(|(v, _)| v)
            .collect();
        e_vis[t] = graph
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| vis[t].contains(&e.u) && vis[t].contains(&e.v))
            .map(|(i, _)| i)
            .collect();
    }

    BoundaryView {
        past,
        present,
        vis,
        e_vis,
        ell,
    }
}

// --- PACE .td format --------------------------------------------------------

/// Parses the PACE 2017 `.td` format; vertex ids are converted to 0-based.
pub fn parse_td(text: &str) -> Result<TreeDecomposition> {
    let mut bags: Vec<Option<BTreeSet<usize>>> = Vec::new();
    let mut tree_edges: Vec<(usize, usize)> = Vec::new();
    let mut declared: Option<(usize, usize, usize)> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let head = parts.next().unwrap();
        let bad = |msg: &str| Error::Parse(format!("line {}: {}", lineno + 1, msg));
        match head {
            "s" => {
                if parts.next() != Some("td") {
                    return Err(bad("expected 's td ...'"));
                }
                let nums: Vec<usize> = parts
                    .map(|p| p.parse().map_err(|_| bad("bad number in header")))
                    .collect::<Result<_>>()?;
                if nums.len() != 3 {
                    return Err(bad("header needs three numbers"));
                }
                declared = Some((nums[0], nums[1], nums[2]));
                bags = vec![None; nums[0]];
            }
            "b" => {
                let nums: Vec<usize> = parts
                    .map(|p| p.parse().map_err(|_| bad("bad number in bag line")))
                    .collect::<Result<_>>()?;
                let (&id, verts) = nums
                    .split_first()
                    .ok_or_else(|| bad("bag line without id"))?;
                if id == 0 || id > bags.len() {
                    return Err(bad("bag id out of range"));
                }
                if verts.iter().any(|&v| v == 0) {
                    return Err(bad("vertex ids are 1-based"));
                }
                bags[id - 1] = Some(verts.iter().map(|&v| v - 1).collect());
            }
            _ => {
                let a: usize = head.parse().map_err(|_| bad("bad tree edge"))?;
                let b: usize = parts
                    .next()
                    .ok_or_else(|| bad("tree edge needs two ids"))?
                    .parse()
                    .map_err(|_| bad("bad tree edge"))?;
                if a == 0 || b == 0 || a > bags.len() || b > bags.len() {
                    return Err(bad("tree edge id out of range"));
                }
                tree_edges.push((a - 1, b - 1));
            }
        }
    }

    let (num_bags, _, _) = declared.ok_or_else(|| Error::Parse("missing 's td' header".into()))?;
    let bags: Vec<BTreeSet<usize>> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::Parse(format!("bag {} not declared", i + 1))))
        .collect::<Result<_>>()?;
    debug_assert_eq!(bags.len(), num_bags);
    TreeDecomposition::from_tree(bags, &tree_edges, 0)
}

/// Emits a decomposition in the PACE 2017 `.td` format (1-based ids).
pub fn emit_td(td: &TreeDecomposition, num_graph_vertices: usize) -> String {
    let max_bag = td.bags.iter().map(|b| b.len()).max().unwrap_or(0);
    let mut out = format!("s td {} {} {}\n", td.node_count(), max_bag, num_graph_vertices);
    for (i, bag) in td.bags.iter().enumerate() {
        out.push_str(&format!("b {}", i + 1));
        for &v in bag {
            out.push_str(&format!(" {}", v + 1));
        }
        out.push('\n');
    }
    for t in 0..td.node_count() {
        for &c in &td.children[t] {
            out.push_str(&format!("{} {}\n", t + 1, c + 1));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> CapacitatedGraph {
        let with_caps: Vec<(usize, usize, u64)> = edges.iter().map(|&(u, v)| (u, v, 1)).collect();
        CapacitatedGraph::new(n, &with_caps).unwrap()
    }

    fn path_graph(n: usize) -> CapacitatedGraph {
        let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        graph(n, &edges)
    }

    fn complete_graph(n: usize) -> CapacitatedGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        graph(n, &edges)
    }

    fn cycle_graph(n: usize) -> CapacitatedGraph {
        let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, n - 1));
        graph(n, &edges)
    }

    #[test]
    fn single_bag_decomposition_is_valid() {
        let g = complete_graph(4);
        let td = TreeDecomposition::from_tree(vec![(0..4).collect()], &[], 0).unwrap();
        assert!(validate(&g, &td).is_empty());
        assert_eq!(td.width(), 3);
    }

    #[test]
    fn missing_edge_coverage_is_reported() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let td = TreeDecomposition::from_tree(
            vec![BTreeSet::from([0, 1]), BTreeSet::from([2])],
            &[(0, 1)],
            0,
        )
        .unwrap();
        let violations = validate(&g, &td);
        assert!(violations.contains(&TdViolation::EdgeNotCovered { u: 1, v: 2 }));
    }

    #[test]
    fn disconnected_vertex_occurrences_are_reported() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let td = TreeDecomposition::from_tree(
            vec![
                BTreeSet::from([0, 1]),
                BTreeSet::from([1]),
                BTreeSet::from([1, 2]),
                BTreeSet::from([0, 2]),
            ],
            &[(0, 1), (1, 2), (2, 3)],
            0,
        )
        .unwrap();
        let violations = validate(&g, &td);
        assert!(violations.contains(&TdViolation::DisconnectedVertex { vertex: 0 }));
    }

    #[test]
    fn exact_width_on_known_graphs() {
        let tree = graph(5, &[(0, 1), (0, 2), (2, 3), (2, 4)]);
        let td = compute_decomposition(&tree, DecompositionMode::ExactSmall).unwrap();
        assert_eq!(td.width(), 1);
        assert!(validate(&tree, &td).is_empty());

        let k4 = complete_graph(4);
        let td = compute_decomposition(&k4, DecompositionMode::ExactSmall).unwrap();
        assert_eq!(td.width(), 3);

        let c5 = cycle_graph(5);
        let td = compute_decomposition(&c5, DecompositionMode::ExactSmall).unwrap();
        assert_eq!(td.width(), 2);
        assert!(validate(&c5, &td).is_empty());
    }

    #[test]
    fn exact_rejects_large_graphs() {
        let g = path_graph(EXACT_SMALL_LIMIT + 1);
        assert!(matches!(
            compute_decomposition(&g, DecompositionMode::ExactSmall),
            Err(Error::LimitExceeded(_))
        ));
    }

    #[test]
    fn nice_form_of_single_vertex() {
        let g = graph(1, &[]);
        let td = compute_decomposition(&g, DecompositionMode::Heuristic).unwrap();
        let nice = to_nice(&g, &td).unwrap();
        assert!(validate_nice(&g, &nice).is_empty());
        assert!(nice.td.bags[nice.td.root].is_empty());
        assert!(matches!(nice.kinds[nice.td.root], NodeKind::Forget(0)));
    }

    #[test]
    fn nice_form_preserves_width_on_path() {
        let g = path_graph(6);
        let td = compute_decomposition(&g, DecompositionMode::ExactSmall).unwrap();
        let nice = to_nice(&g, &td).unwrap();
        assert_eq!(nice.width(), td.width());
        assert!(validate_nice(&g, &nice).is_empty());
    }

    #[test]
    fn boundary_sets_on_p3() {
        // P3 (0-1-2); look at the forget node of vertex 0.
        let g = path_graph(3);
        let td = compute_decomposition(&g, DecompositionMode::ExactSmall).unwrap();
        let nice = to_nice(&g, &td).unwrap();
        let view = boundary_view(&g, &nice, 3);

        // Root: present must be empty.
        assert!(view.present[nice.td.root].is_empty());
        // Leaves: past empty, hence present empty.
        for t in 0..nice.node_count() {
            if matches!(nice.kinds[t], NodeKind::Leaf) {
                assert!(view.past[t].is_empty());
                assert!(view.present[t].is_empty());
            }
        }
        // Some forget node has past {v} and present = edges at v crossing out.
        let found = (0..nice.node_count()).any(|t| {
            matches!(nice.kinds[t], NodeKind::Forget(_))
                && view.past[t].len() == 1
                && view.present[t].len() == 1
        });
        assert!(found);
    }

    #[test]
    fn visibility_shrinks_with_ell() {
        let g = path_graph(6);
        let td = compute_decomposition(&g, DecompositionMode::Heuristic).unwrap();
        let nice = to_nice(&g, &td).unwrap();
        let near = boundary_view(&g, &nice, 1);
        let far = boundary_view(&g, &nice, 5);
        for t in 0..nice.node_count() {
            assert!(near.vis[t].is_subset(&far.vis[t]));
            assert!(near.e_vis[t].iter().all(|e| far.e_vis[t].contains(e)));
            // |vis(t)| <= |bag| * Delta^ell, checked with Delta = 2, ell = 1.
            let bound = nice.td.bags[t].len() * g.max_degree() + nice.td.bags[t].len();
            assert!(near.vis[t].len() <= bound.max(1));
        }
    }

    #[test]
    fn td_format_round_trip() {
        let g = path_graph(4);
        let td = compute_decomposition(&g, DecompositionMode::Heuristic).unwrap();
        let text = emit_td(&td, 4);
        let back = parse_td(&text).unwrap();
        assert!(validate(&g, &back).is_empty());
        assert_eq!(back.width(), td.width());
    }

    #[test]
    fn td_parse_rejects_garbage() {
        assert!(parse_td("b 1 2\n").is_err());
        assert!(parse_td("s td 1 1 1\nb 1 0\n").is_err());
        assert!(parse_td("s td 2 1 2\nb 1 1\nb 2 2\n").is_err()); // no tree edge
    }
}
