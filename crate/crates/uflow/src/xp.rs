//! Exact dynamic program over a nice tree decomposition whose records track,
//! per boundary edge, the set of tasks routed through it, together with each
//! active task's accumulated route length and a half-profit account.
//!
//! Runs in time polynomial for fixed maximum capacity, width and degree, and
//! is valid for any route length bound (including the unconstrained default).

use std::collections::BTreeMap;
use std::rc::Rc;

use crate::decomp::{boundary_view, validate_nice, BoundaryView, NiceTreeDecomposition, NodeKind};

use crate::error::{Error, Result};
use crate::model::{Instance, Routing};
use crate::oracle::OptimalResult;

/// Tunables for [`solve_xp`].
#[derive(Debug, Clone)]
pub struct XpConfig {
    /// Hard cap on any per-node table; exceeding it is an explicit error.
    pub max_table_size: usize,
    /// Re-verify table invariants after every node (slower; used by tests).
    pub audit: bool,
}

impl Default for XpConfig {
    fn default() -> Self {
        XpConfig {
            max_table_size: 2_000_000,
            audit: false,
        }
    }
}

/// Counters reported alongside a solve.
#[derive(Debug, Clone, Default)]
pub struct SolveStats {
    pub nodes: usize,
    pub max_table_size: usize,
    pub audit_violations: usize,
}

/// Dedup key of a record: the per-edge task sets and the per-task length
/// account. Profits are folded by keeping the maximum per key.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct RecordKey {
    /// `(edge id, tasks routed through it)`, sorted, nonempty sets only.
    lambda: Vec<(u32, Vec<u32>)>,
    /// `(task id, edges used so far)`, sorted; domain = tasks in `lambda`.
    theta: Vec<(u32, u32)>,
}

impl RecordKey {
    fn empty() -> Self {
        RecordKey {
            lambda: Vec::new(),
            theta: Vec::new(),
        }
    }

    fn tasks_on(&self, edge: u32) -> &[u32] {
        match self.lambda.binary_search_by_key(&edge, |&(e, _)| e) {
            Ok(i) => &self.lambda[i].1,
            Err(_) => &[],
        }
    }

    fn theta_of(&self, task: u32) -> Option<u32> {
        self.theta
            .binary_search_by_key(&task, |&(z, _)| z)
            .ok()
            .map(|i| self.theta[i].1)
    }

    /// All tasks appearing on at least one edge.
    fn active_tasks(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .lambda
            .iter()
            .flat_map(|(_, tasks)| tasks.iter().copied())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Provenance of a record, for witness reconstruction.
#[derive(Debug)]
enum Prov {
    Leaf,
    /// Forget step: the chosen mapping of boundary edges gained at this node.
    Forget {
        parent: Rc<Prov>,
        assignment: Vec<(u32, Vec<u32>)>,
    },
    Join(Rc<Prov>, Rc<Prov>),
}

type Table = BTreeMap<RecordKey, (u64, Rc<Prov>)>;

fn insert_max(table: &mut Table, key: RecordKey, omega: u64, prov: Rc<Prov>) {
    match table.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert((omega, prov));
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            // Strict improvement only: ties keep the first (deterministic).
            if omega > e.get().0 {
                e.insert((omega, prov));
            }
        }
    }
}

/// Static per-solve context.
struct Ctx<'a> {
    instance: &'a Instance,
    view: BoundaryView,
    /// For each graph edge: the two endpoints.
    ends: Vec<(usize, usize)>,
    config: XpConfig,
}

impl Ctx<'_> {
    fn is_endpoint(&self, task: u32, v: usize) -> bool {
        self.instance.tasks[task as usize].is_endpoint(v)
    }

    /// Boundary endpoint of a present edge at node `t` (the endpoint outside
    /// `past(t)`; it always lies in the bag).
    fn bag_end(&self, t: usize, edge: u32) -> usize {
        let (u, v) = self.ends[edge as usize];
        if self.view.past[t].contains(&u) {
            v
        } else {
            u
        }
    }
}

/// Per-bag-vertex routing multiplicity check: a task may cross a boundary
/// vertex on at most two edges, or one if the vertex is its endpoint.
fn degree_check(ctx: &Ctx, t: usize, key: &RecordKey) -> bool {
    let mut counts: BTreeMap<(usize, u32), u32> = BTreeMap::new();
    for (edge, tasks) in &key.lambda {
        let v = ctx.bag_end(t, *edge);
        for &z in tasks {
            *counts.entry((v, z)).or_insert(0) += 1;
        }
    }
    counts.iter().all(|(&(v, z), &c)| {
        let limit = if ctx.is_endpoint(z, v) { 1 } else { 2 };
        c <= limit
    })
}

/// Decides whether `cand` supersedes `other` (equal profits required): `cand`
/// must arise from `other` by stripping tasks from whole boundary-vertex
/// stars that carry the task twice, with a strictly smaller length account
/// for every stripped task.
fn supersedes(ctx: &Ctx, t: usize, cand: &RecordKey, other: &RecordKey) -> bool {
    if cand == other {
        return false;
    }
    // Lambda may only shrink.
    for (edge, c_tasks) in &cand.lambda {
        let o_tasks = other.tasks_on(*edge);
        if !c_tasks.iter().all(|z| o_tasks.contains(z)) {
            return false;
        }
    }
    // Pending removals per task, and the per-vertex incidence of `other`.
    let mut pending: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    let mut star: BTreeMap<(usize, u32), Vec<u32>> = BTreeMap::new();
    for (edge, o_tasks) in &other.lambda {
        let kept = cand.tasks_on(*edge);
        let v = ctx.bag_end(t, *edge);
        for &z in o_tasks {
            star.entry((v, z)).or_default().push(*edge);
            if !kept.contains(&z) {
                pending.entry(z).or_default().push(*edge);
            }
        }
    }
    // Each stripped edge must sit at a vertex carrying the task at least
    // twice, with that vertex's whole star stripped together.
    for (&z, edges) in &pending {
        for &edge in edges {
            let v = ctx.bag_end(t, edge);
            let s = &star[&(v, z)];
            if s.len() < 2 || !s.iter().all(|e| edges.contains(e)) {
                return false;
            }
        }
    }
    // Length accounts: never larger, strictly smaller when stripped, absent
    // when fully stripped.
    let cand_active = cand.active_tasks();
    for &(z, o_len) in &other.theta {
        match cand.theta_of(z) {
            Some(c_len) => {
                if c_len > o_len {
                    return false;
                }
                if pending.contains_key(&z) && c_len >= o_len {
                    return false;
                }
            }
            None => {
                if cand_active.contains(&z) {
                    return false;
                }
            }
        }
    }
    // No new tasks may appear.
    cand.theta.iter().all(|&(z, _)| other.theta_of(z).is_some())
}

/// Applies both optimality conditions to a candidate table: per-key maxima
/// are already folded; here records superseded by an equal-profit record are
/// removed.
fn prune(ctx: &Ctx, t: usize, table: Table) -> Table {
    let records: Vec<(RecordKey, (u64, Rc<Prov>))> = table.into_iter().collect();
    let mut by_omega: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (i, (_, (omega, _))) in records.iter().enumerate() {
        by_omega.entry(*omega).or_default().push(i);
    }
    let mut dead = vec![false; records.len()];
    for group in by_omega.values() {
        for &a in group {
            for &b in group {
                if a != b && !dead[a] && supersedes(ctx, t, &records[a].0, &records[b].0) {
                    dead[b] = true;
                }
            }
        }
    }
    records
        .into_iter()
        .enumerate()
        .filter(|(i, _)| !dead[*i])
        .map(|(_, r)| r)
        .collect()
}

// --- forget node ------------------------------------------------------------

struct ForgetCtx {
    /// The forgotten vertex.
    u: usize,
    /// Boundary edges gained at this node (all incident to `u`), sorted.
    new_edges: Vec<u32>,
    /// Boundary edges lost at this node (all incident to `u`), sorted.
    removed_edges: Vec<u32>,
    /// Remaining capacity of each new edge during assignment search.
    new_caps: Vec<u64>,
}

/// One task's placement obligation on the new edges.
#[derive(Debug, Clone, Copy)]
struct Need {
    task: u32,
    count: u32,
    optional: bool,
}

fn forget_candidates(
    ctx: &Ctx,
    t: usize,
    child: usize,
    fc: &ForgetCtx,
    key: &RecordKey,
    omega: u64,
    prov: &Rc<Prov>,
    out: &mut Table,
) {
    let tasks = &ctx.instance.tasks;
    // Count how often each task crosses the edges collapsing at `u`.
    let mut old_at_u: BTreeMap<u32, u32> = BTreeMap::new();
    for &e in &fc.removed_edges {
        for &z in key.tasks_on(e) {
            *old_at_u.entry(z).or_insert(0) += 1;
        }
    }

    let mut needs: Vec<Need> = Vec::new();
    for (&z, &k_old) in &old_at_u {
        let required = if ctx.is_endpoint(z, fc.u) { 1 } else { 2 };
        if k_old > required {
            return; // no assignment can balance the flow at u
        }
        needs.push(Need {
            task: z,
            count: required - k_old,
            optional: false,
        });
    }
    // Any other task may newly route through u, using exactly as many new
    // edges as flow conservation demands.
    for z in 0..tasks.len() as u32 {
        if old_at_u.contains_key(&z) {
            continue;
        }
        let required = if ctx.is_endpoint(z, fc.u) { 1 } else { 2 };
        if required as usize <= fc.new_edges.len() {
            needs.push(Need {
                task: z,
                count: required,
                optional: true,
            });
        }
    }

    let mut caps: Vec<u64> = fc.new_caps.clone();
    let mut assignment: Vec<Vec<u32>> = vec![Vec::new(); fc.new_edges.len()];
    assign(
        ctx, t, child, fc, key, omega, prov, &needs, 0, &mut caps, &mut assignment, out,
    );
}

/// Backtracking placement of tasks on the new edges, capacity-pruned.
#[allow(clippy::too_many_arguments)]
fn assign(
    ctx: &Ctx,
    t: usize,
    child: usize,
    fc: &ForgetCtx,
    key: &RecordKey,
    omega: u64,
    prov: &Rc<Prov>,
    needs: &[Need],
    idx: usize,
    caps: &mut Vec<u64>,
    assignment: &mut Vec<Vec<u32>>,
    out: &mut Table,
) {
    if idx == needs.len() {
        finish_forget(ctx, t, child, fc, key, omega, prov, assignment, out);
        return;
    }
    let need = needs[idx];
    if need.optional {
        // Absent branch first (keeps candidate order deterministic).
        assign(ctx, t, child, fc, key, omega, prov, needs, idx + 1, caps, assignment, out);
    }
    if need.count == 0 {
        if !need.optional {
            assign(ctx, t, child, fc, key, omega, prov, needs, idx + 1, caps, assignment, out);
        }
        return;
    }
    let demand = ctx.instance.tasks[need.task as usize].demand;
    let slots: Vec<usize> = (0..fc.new_edges.len())
        .filter(|&i| caps[i] >= demand)
        .collect();
    let k = need.count as usize;
    if slots.len() < k {
        return;
    }
    // Enumerate k-subsets of the feasible slots.
    let mut pick = vec![0usize; k];
    enumerate_subsets(&slots, k, 0, 0, &mut pick, &mut |chosen: &[usize]| {
        for &i in chosen {
            caps[i] -= demand;
            assignment[i].push(need.task);
        }
        assign(ctx, t, child, fc, key, omega, prov, needs, idx + 1, caps, assignment, out);
        for &i in chosen {
            caps[i] += demand;
            assignment[i].pop();
        }
    });
}

fn enumerate_subsets(
    slots: &[usize],
    k: usize,
    start: usize,
    depth: usize,
    pick: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if depth == k {
        f(pick);
        return;
    }
    for i in start..slots.len() {
        pick[depth] = slots[i];
        enumerate_subsets(slots, k, i + 1, depth + 1, pick, f);
    }
}

#[allow(clippy::too_many_arguments)]
fn finish_forget(
    ctx: &Ctx,
    t: usize,
    child: usize,
    fc: &ForgetCtx,
    key: &RecordKey,
    omega: u64,
    prov: &Rc<Prov>,
    assignment: &[Vec<u32>],
    out: &mut Table,
) {
    let ell = ctx.instance.max_route_length as u32;

    // New boundary mapping: child entries minus the collapsed edges, plus the
    // chosen assignment of the new edges.
    let mut lambda: Vec<(u32, Vec<u32>)> = key
        .lambda
        .iter()
        .filter(|(e, _)| fc.removed_edges.binary_search(e).is_err())
        .cloned()
        .collect();
    let mut delta: BTreeMap<u32, u32> = BTreeMap::new();
    for (i, chosen) in assignment.iter().enumerate() {
        if chosen.is_empty() {
            continue;
        }
        let mut sorted = chosen.clone();
        sorted.sort_unstable();
        lambda.push((fc.new_edges[i], sorted));
        for &z in chosen {
            *delta.entry(z).or_insert(0) += 1;
        }
    }
    lambda.sort_by_key(|&(e, _)| e);

    // Profit gained at u: half the profit (stored doubled) of every task with
    // endpoint u that is routed through an edge at u.
    let mut new_omega = omega;
    let mut routed_at_u: Vec<u32> = delta.keys().copied().collect();
    for &e in &fc.removed_edges {
        routed_at_u.extend_from_slice(key.tasks_on(e));
    }
    routed_at_u.sort_unstable();
    routed_at_u.dedup();
    for &z in &routed_at_u {
        if ctx.is_endpoint(z, fc.u) {
            new_omega += ctx.instance.tasks[z as usize].profit;
        }
    }

    // Length accounts: extend by the new edges, check the bound on the full
    // update, then restrict to tasks still on the boundary.
    let mut theta: BTreeMap<u32, u32> = key.theta.iter().copied().collect();
    for (&z, &d) in &delta {
        *theta.entry(z).or_insert(0) += d;
    }
    if theta.values().any(|&len| len > ell) {
        return;
    }
    let active: Vec<u32> = {
        let mut v: Vec<u32> = lambda.iter().flat_map(|(_, ts)| ts.iter().copied()).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let theta: Vec<(u32, u32)> = active.iter().map(|&z| (z, theta[&z])).collect();

    // A task on the boundary with an endpoint already strictly below the
    // child must have crossed the child's boundary too.
    let child_active = key.active_tasks();
    for &z in &active {
        let task = ctx.instance.tasks[z as usize];
        let below = ctx.view.past[child].contains(&task.source)
            || ctx.view.past[child].contains(&task.target);
        if below && !child_active.contains(&z) {
            return;
        }
    }

    let cand = RecordKey { lambda, theta };
    if !degree_check(ctx, t, &cand) {
        return;
    }
    let assignment_prov: Vec<(u32, Vec<u32>)> = assignment
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_empty())
        .map(|(i, c)| {
            let mut s = c.clone();
            s.sort_unstable();
            (fc.new_edges[i], s)
        })
        .collect();
    let prov = Rc::new(Prov::Forget {
        parent: Rc::clone(prov),
        assignment: assignment_prov,
    });
    insert_max(out, cand, new_omega, prov);
}

// --- driver -----------------------------------------------------------------

/// Runs the dynamic program and reconstructs a witness routing.
pub fn solve_xp(instance: &Instance, nice: &NiceTreeDecomposition) -> Result<OptimalResult> {
    solve_xp_with(instance, nice, &XpConfig::default()).map(|(r, _)| r)
}

pub fn solve_xp_with(
    instance: &Instance,
    nice: &NiceTreeDecomposition,
    config: &XpConfig,
) -> Result<(OptimalResult, SolveStats)> {
    if !validate_nice(&instance.graph, nice).is_empty() {
        return Err(Error::input("nice decomposition fails validation"));
    }
    let view = boundary_view(&instance.graph, nice, instance.max_route_length);
    let ends: Vec<(usize, usize)> = instance.graph.edges().iter().map(|e| (e.u, e.v)).collect();
    let ctx = Ctx {
        instance,
        view,
        ends,
        config: config.clone(),
    };

    let mut stats = SolveStats::default();
    let node_count = nice.node_count();
    let mut tables: Vec<Option<Table>> = (0..node_count).map(|_| None).collect();

    for t in nice.td.postorder() {
        stats.nodes += 1;
        let table = match nice.kinds[t] {
            NodeKind::Leaf => {
                let mut table = Table::new();
                insert_max(&mut table, RecordKey::empty(), 0, Rc::new(Prov::Leaf));
                table
            }
            NodeKind::Introduce(_) => {
                // Boundary unchanged; the table carries over verbatim.
                let child = nice.td.children[t][0];
                tables[child].take().expect("child table")
            }
            NodeKind::Forget(u) => {
                let child = nice.td.children[t][0];
                let child_table = tables[child].take().expect("child table");
                let present_t = &ctx.view.present[t];
                let present_c = &ctx.view.present[child];
                let new_edges: Vec<u32> = present_t
                    .iter()
                    .filter(|&&e| !present_c.contains(&e))
                    .map(|&e| e as u32)
                    .collect();
                let removed_edges: Vec<u32> = present_c
                    .iter()
                    .filter(|&&e| !present_t.contains(&e))
                    .map(|&e| e as u32)
                    .collect();
                let new_caps: Vec<u64> = new_edges
                    .iter()
                    .map(|&e| instance.graph.edge(e as usize).capacity)
                    .collect();
                let fc = ForgetCtx {
                    u,
                    new_edges,
                    removed_edges,
                    new_caps,
                };
                let mut out = Table::new();
                for (key, (omega, prov)) in &child_table {
                    forget_candidates(&ctx, t, child, &fc, key, *omega, prov, &mut out);
                }
                prune(&ctx, t, out)
            }
            NodeKind::Join => {
                let c1 = nice.td.children[t][0];
                let c2 = nice.td.children[t][1];
                let t1 = tables[c1].take().expect("child table");
                let t2 = tables[c2].take().expect("child table");
                let ell = instance.max_route_length as u32;
                let mut out = Table::new();
                for (k1, (o1, p1)) in &t1 {
                    'pair: for (k2, (o2, p2)) in &t2 {
                        // Boundary edge domains are disjoint at a join.
                        let mut lambda = k1.lambda.clone();
                        lambda.extend(k2.lambda.iter().cloned());
                        lambda.sort_by_key(|&(e, _)| e);
                        let mut theta: BTreeMap<u32, u32> = k1.theta.iter().copied().collect();
                        for &(z, len) in &k2.theta {
                            *theta.entry(z).or_insert(0) += len;
                        }
                        if theta.values().any(|&len| len > ell) {
                            continue 'pair;
                        }
                        let cand = RecordKey {
                            lambda,
                            theta: theta.into_iter().collect(),
                        };
                        if !degree_check(&ctx, t, &cand) {
                            continue 'pair;
                        }
                        let prov = Rc::new(Prov::Join(Rc::clone(p1), Rc::clone(p2)));
                        insert_max(&mut out, cand, o1 + o2, prov);
                    }
                }
                prune(&ctx, t, out)
            }
        };

        stats.max_table_size = stats.max_table_size.max(table.len());
        if table.len() > ctx.config.max_table_size {
            return Err(Error::limit(format!(
                "table at node {t} holds {} records (cap {})",
                table.len(),
                ctx.config.max_table_size
            )));
        }
        if ctx.config.audit {
            stats.audit_violations += audit_table(&ctx, t, &table);
        }
        tables[t] = Some(table);
    }

    let root_table = tables[nice.td.root].take().expect("root table");
    if root_table.len() != 1 {
        return Err(Error::input(format!(
            "root table has {} entries, expected 1",
            root_table.len()
        )));
    }
    let (key, (omega, prov)) = root_table.into_iter().next().unwrap();
    debug_assert!(key.lambda.is_empty() && key.theta.is_empty());
    debug_assert!(omega % 2 == 0, "root profit must be even in doubled units");
    let optimum = omega / 2;
    let witness = reconstruct_witness(&ctx, &prov)?;

    Ok((
        OptimalResult {
            optimum,
            decision: optimum >= instance.target,
            witness,
        },
        stats,
    ))
}

/// Independent re-check of the table invariants; returns the violation count.
fn audit_table(ctx: &Ctx, t: usize, table: &Table) -> usize {
    let mut violations = 0;
    let records: Vec<(&RecordKey, u64)> = table.iter().map(|(k, (o, _))| (k, *o)).collect();
    for (key, _) in &records {
        // Per-edge demand within capacity.
        for (edge, tasks) in &key.lambda {
            let cap = ctx.instance.graph.edge(*edge as usize).capacity;
            let demand: u64 = tasks
                .iter()
                .map(|&z| ctx.instance.tasks[z as usize].demand)
                .sum();
            if demand > cap {
                violations += 1;
            }
        }
        // Theta domain is exactly the active task set, within bounds.
        let active = key.active_tasks();
        let dom: Vec<u32> = key.theta.iter().map(|&(z, _)| z).collect();
        if active != dom {
            violations += 1;
        }
        if key
            .theta
            .iter()
            .any(|&(_, len)| len == 0 || len > ctx.instance.max_route_length as u32)
        {
            violations += 1;
        }
    }
    // Pairwise supersession-freeness among equal profits.
    for (i, (ka, oa)) in records.iter().enumerate() {
        for (j, (kb, ob)) in records.iter().enumerate() {
            if i != j && oa == ob && supersedes(ctx, t, ka, kb) {
                violations += 1;
            }
        }
    }
    violations
}

/// Collects the per-task edge choices recorded along the provenance chain and
/// extracts each selected task's path.
fn reconstruct_witness(ctx: &Ctx, root: &Rc<Prov>) -> Result<Routing> {
    let mut task_edges: Vec<Vec<u32>> = vec![Vec::new(); ctx.instance.tasks.len()];
    let mut stack: Vec<&Rc<Prov>> = vec![root];
    while let Some(p) = stack.pop() {
        match p.as_ref() {
            Prov::Leaf => {}
            Prov::Forget { parent, assignment } => {
                for (edge, tasks) in assignment {
                    for &z in tasks {
                        task_edges[z as usize].push(*edge);
                    }
                }
                stack.push(parent);
            }
            Prov::Join(a, b) => {
                stack.push(a);
                stack.push(b);
            }
        }
    }

    let mut routing = Routing::empty();
    for (z, edges) in task_edges.iter().enumerate() {
        if edges.is_empty() {
            continue;
        }
        let task = ctx.instance.tasks[z];
        // Walk from the source along the chosen edges; interior vertices
        // carry exactly two of them. Leftover cycle fragments, if the table
        // retained any, only over-reserve capacity and are ignored.
        let mut incident: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for &e in edges {
            let (a, b) = ctx.ends[e as usize];
            incident.entry(a).or_default().push(e);
            incident.entry(b).or_default().push(e);
        }
        if !incident.contains_key(&task.source) {
            continue; // task not selected
        }
        let mut path = vec![task.source];
        let mut used: Vec<u32> = Vec::new();
        let mut cur = task.source;
        while cur != task.target {
            let next_edge = incident[&cur]
                .iter()
                .find(|e| !used.contains(e))
                .copied()
                .ok_or_else(|| Error::input("witness reconstruction: dead end"))?;
            used.push(next_edge);
            let (a, b) = ctx.ends[next_edge as usize];
            cur = if a == cur { b } else { a };
            path.push(cur);
        }
        routing.insert(z, path);
    }
    Ok(routing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{compute_decomposition, to_nice, DecompositionMode};
    use crate::model::{verify_routing, CapacitatedGraph, Task};
    use crate::oracle::solve_exhaustive;

    fn solve(instance: &Instance) -> OptimalResult {
        let td = compute_decomposition(&instance.graph, DecompositionMode::ExactSmall).unwrap();
        let nice = to_nice(&instance.graph, &td).unwrap();
        let cfg = XpConfig {
            audit: true,
            ..XpConfig::default()
        };
        let (res, stats) = solve_xp_with(instance, &nice, &cfg).unwrap();
        assert_eq!(stats.audit_violations, 0);
        res
    }

    fn graph(n: usize, edges: &[(usize, usize, u64)]) -> CapacitatedGraph {
        CapacitatedGraph::new(n, edges).unwrap()
    }

    #[test]
    fn zero_tasks() {
        let g = graph(3, &[(0, 1, 1), (1, 2, 1)]);
        let inst = Instance::new(g, vec![], 1, None).unwrap();
        let res = solve(&inst);
        assert_eq!(res.optimum, 0);
        assert!(!res.decision);
    }

    #[test]
    fn k2_knapsack() {
        let g = graph(2, &[(0, 1, 5)]);
        let inst = Instance::new(
            g,
            vec![Task::new(0, 1, 3, 7), Task::new(0, 1, 3, 4)],
            7,
            None,
        )
        .unwrap();
        let res = solve(&inst);
        assert_eq!(res.optimum, 7);
        assert!(res.decision);
        let report = verify_routing(&inst, &res.witness).unwrap();
        assert!(report.valid);
        assert_eq!(report.profit, 7);
    }

    #[test]
    fn triangle_detour() {
        let g = graph(3, &[(0, 1, 1), (0, 2, 1), (1, 2, 1)]);
        let inst = Instance::new(
            g,
            vec![Task::new(0, 1, 1, 1), Task::new(0, 1, 1, 1)],
            2,
            Some(2),
        )
        .unwrap();
        let res = solve(&inst);
        assert_eq!(res.optimum, 2);
        assert!(verify_routing(&inst, &res.witness).unwrap().valid);
    }

    #[test]
    fn agrees_with_oracle_on_small_seeds() {
        use crate::generate::{gen_random, RandomParams};
        for seed in 0..30 {
            let inst = gen_random(
                &RandomParams {
                    n: 6,
                    max_degree: 3,
                    max_capacity: 3,
                    task_count: 4,
                    demand_range: (0, 2),
                    profit_range: (0, 5),
                    max_route_length: None,
                },
                seed,
            )
            .unwrap();
            let brute = solve_exhaustive(&inst).unwrap();
            let res = solve(&inst);
            assert_eq!(res.optimum, brute.optimum, "seed {seed}");
            let report = verify_routing(&inst, &res.witness).unwrap();
            assert!(report.valid, "seed {seed}");
            assert_eq!(report.profit, res.optimum, "seed {seed}");
        }
    }
}
