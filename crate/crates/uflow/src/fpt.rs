//! Exact dynamic program whose records track only the consumed capacity on
//! edges visible from the current bag (the ball of radius `ell`). Each task is
//! routed atomically — its whole path chosen at once — at the unique node
//! where both endpoints first lie strictly below the bag.
//!
//! Efficient when the route length bound, capacity, width and degree are all
//! small: the table is bounded by `(c+1)^|visible edges|`.

use std::collections::BTreeMap;
use std::rc::Rc;

use crate::decomp::{boundary_view, validate_nice, BoundaryView, NiceTreeDecomposition, NodeKind};
use crate::error::{Error, Result};
use crate::model::{Instance, Routing};
use crate::oracle::{enumerate_paths_in, OptimalResult};
use crate::xp::SolveStats;

/// Tunables for [`solve_fpt`].
#[derive(Debug, Clone)]
pub struct FptConfig {
    /// Hard cap on any per-node table; exceeding it is an explicit error.
    pub max_table_size: usize,
    /// Refuse instances where some node sees more visible edges than this.
    pub max_visible_edges: usize,
    /// Cap on the candidate paths enumerated for a single task.
    pub max_paths_per_task: usize,
    /// Re-verify table invariants after every node (slower; used by tests).
    pub audit: bool,
}

impl Default for FptConfig {
    fn default() -> Self {
        FptConfig {
            max_table_size: 2_000_000,
            max_visible_edges: 64,
            max_paths_per_task: 1_000_000,
            audit: false,
        }
    }
}

/// Record key: consumed capacity per visible edge, one column per edge of the
/// node's visible edge set in ascending edge id order.
type Key = Vec<u64>;

#[derive(Debug)]
enum Prov {
    Leaf,
    Route {
        parent: Rc<Prov>,
        task: u32,
        path: Vec<usize>,
    },
    Join(Rc<Prov>, Rc<Prov>),
}

type Table = BTreeMap<Key, (u64, Rc<Prov>)>;

fn insert_max(table: &mut Table, key: Key, omega: u64, prov: Rc<Prov>) {
    match table.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert((omega, prov));
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            if omega > e.get().0 {
                e.insert((omega, prov));
            }
        }
    }
}

struct Ctx<'a> {
    instance: &'a Instance,
    view: BoundaryView,
    config: FptConfig,
}

/// Routes one task on top of an existing table: for every record, either skip
/// the task or extend by a feasible path inside the visible edge set, paying
/// its demand on every edge used.
fn rank_step(ctx: &Ctx, domain: &[usize], table: Table, task_id: u32) -> Result<Table> {
    let graph = &ctx.instance.graph;
    let task = ctx.instance.tasks[task_id as usize];
    let mut allowed = vec![false; graph.edge_count()];
    for &e in domain {
        allowed[e] = true;
    }
    let paths = enumerate_paths_in(
        graph,
        task.source,
        task.target,
        ctx.instance.max_route_length,
        Some(&allowed),
    )?;
    if paths.len() > ctx.config.max_paths_per_task {
        return Err(Error::limit(format!(
            "task {task_id} admits {} candidate paths (cap {})",
            paths.len(),
            ctx.config.max_paths_per_task
        )));
    }
    // Column index of each path, precomputed once.
    let path_cols: Vec<Vec<usize>> = paths
        .iter()
        .map(|p| {
            p.windows(2)
                .map(|w| {
                    let e = graph.edge_between(w[0], w[1]).expect("path edge");
                    domain.binary_search(&e).expect("visible edge")
                })
                .collect()
        })
        .collect();

    let mut out = Table::new();
    for (key, (omega, prov)) in table {
        for (pi, cols) in path_cols.iter().enumerate() {
            let fits = cols
                .iter()
                .all(|&c| key[c] + task.demand <= graph.edge(domain[c]).capacity);
            if !fits {
                continue;
            }
            let mut new_key = key.clone();
            for &c in cols {
                new_key[c] += task.demand;
            }
            let new_prov = Rc::new(Prov::Route {
                parent: Rc::clone(&prov),
                task: task_id,
                path: paths[pi].clone(),
            });
            insert_max(&mut out, new_key, omega + task.profit, new_prov);
        }
        // Skip branch last so a routed record with equal profit is kept only
        // if strictly better elsewhere; witnesses stay deterministic.
        insert_max(&mut out, key, omega, prov);
    }
    Ok(out)
}

/// Tasks to be routed at node `t` (ascending id): at a forget, tasks with the
/// forgotten vertex as one endpoint and the other already strictly below the
/// child; at a join, tasks straddling the two subtrees.
fn tasks_routed_at(ctx: &Ctx, nice: &NiceTreeDecomposition, t: usize) -> Vec<u32> {
    let mut out = Vec::new();
    match nice.kinds[t] {
        NodeKind::Forget(u) => {
            let child = nice.td.children[t][0];
            let past = &ctx.view.past[child];
            for (z, task) in ctx.instance.tasks.iter().enumerate() {
                let other = if task.source == u {
                    task.target
                } else if task.target == u {
                    task.source
                } else {
                    continue;
                };
                if past.contains(&other) {
                    out.push(z as u32);
                }
            }
        }
        NodeKind::Join => {
            let (c1, c2) = (nice.td.children[t][0], nice.td.children[t][1]);
            let (p1, p2) = (&ctx.view.past[c1], &ctx.view.past[c2]);
            for (z, task) in ctx.instance.tasks.iter().enumerate() {
                let straddles = (p1.contains(&task.source) && p2.contains(&task.target))
                    || (p2.contains(&task.source) && p1.contains(&task.target));
                if straddles {
                    out.push(z as u32);
                }
            }
        }
        _ => {}
    }
    out
}

pub fn solve_fpt(instance: &Instance, nice: &NiceTreeDecomposition) -> Result<OptimalResult> {
    solve_fpt_with(instance, nice, &FptConfig::default()).map(|(r, _)| r)
}

pub fn solve_fpt_with(
    instance: &Instance,
    nice: &NiceTreeDecomposition,
    config: &FptConfig,
) -> Result<(OptimalResult, SolveStats)> {
    if !validate_nice(&instance.graph, nice).is_empty() {
        return Err(Error::input("nice decomposition fails validation"));
    }
    let view = boundary_view(&instance.graph, nice, instance.max_route_length);
    let ctx = Ctx {
        instance,
        view,
        config: config.clone(),
    };

    let mut stats = SolveStats::default();
    let node_count = nice.node_count();
    let mut tables: Vec<Option<Table>> = (0..node_count).map(|_| None).collect();

    for t in nice.td.postorder() {
        stats.nodes += 1;
        let domain = &ctx.view.e_vis[t];
        if domain.len() > ctx.config.max_visible_edges {
            return Err(Error::limit(format!(
                "node {t} sees {} edges (cap {}); the instance is out of range \
                 for this algorithm",
                domain.len(),
                ctx.config.max_visible_edges
            )));
        }

        let mut table = match nice.kinds[t] {
            NodeKind::Leaf => {
                let mut table = Table::new();
                table.insert(vec![0; domain.len()], (0, Rc::new(Prov::Leaf)));
                table
            }
            NodeKind::Introduce(_) => {
                // Visibility grows: copy columns, new edges start unused.
                let child = nice.td.children[t][0];
                let child_table = tables[child].take().expect("child table");
                let child_dom = &ctx.view.e_vis[child];
                let cols: Vec<Option<usize>> = domain
                    .iter()
                    .map(|e| child_dom.binary_search(e).ok())
                    .collect();
                let mut out = Table::new();
                for (key, val) in child_table {
                    let new_key: Key = cols
                        .iter()
                        .map(|c| c.map_or(0, |i| key[i]))
                        .collect();
                    out.insert(new_key, val);
                }
                out
            }
            NodeKind::Forget(_) => {
                let child = nice.td.children[t][0];
                let mut table = tables[child].take().expect("child table");
                let child_dom = ctx.view.e_vis[child].clone();
                // Route everything decided here while the child's wider
                // visibility is still available, then project.
                for z in tasks_routed_at(&ctx, nice, t) {
                    table = rank_step(&ctx, &child_dom, table, z)?;
                    if table.len() > ctx.config.max_table_size {
                        return Err(Error::limit(format!(
                            "table at node {t} holds {} records (cap {})",
                            table.len(),
                            ctx.config.max_table_size
                        )));
                    }
                }
                let cols: Vec<usize> = domain
                    .iter()
                    .map(|e| child_dom.binary_search(e).expect("shrinking visibility"))
                    .collect();
                let mut out = Table::new();
                for (key, (omega, prov)) in table {
                    let new_key: Key = cols.iter().map(|&i| key[i]).collect();
                    insert_max(&mut out, new_key, omega, prov);
                }
                out
            }
            NodeKind::Join => {
                let (c1, c2) = (nice.td.children[t][0], nice.td.children[t][1]);
                let t1 = tables[c1].take().expect("child table");
                let t2 = tables[c2].take().expect("child table");
                // Equal bags mean equal visibility on both sides.
                debug_assert_eq!(&ctx.view.e_vis[c1], domain);
                debug_assert_eq!(&ctx.view.e_vis[c2], domain);
                let caps: Vec<u64> = domain
                    .iter()
                    .map(|&e| instance.graph.edge(e).capacity)
                    .collect();
                let mut out = Table::new();
                for (k1, (o1, p1)) in &t1 {
                    'pair: for (k2, (o2, p2)) in &t2 {
                        let mut key = Vec::with_capacity(domain.len());
                        for i in 0..domain.len() {
                            let load = k1[i] + k2[i];
                            if load > caps[i] {
                                continue 'pair;
                            }
                            key.push(load);
                        }
                        let prov = Rc::new(Prov::Join(Rc::clone(p1), Rc::clone(p2)));
                        insert_max(&mut out, key, o1 + o2, prov);
                    }
                }
                let mut table = out;
                for z in tasks_routed_at(&ctx, nice, t) {
                    table = rank_step(&ctx, domain, table, z)?;
                    if table.len() > ctx.config.max_table_size {
                        return Err(Error::limit(format!(
                            "table at node {t} holds {} records (cap {})",
                            table.len(),
                            ctx.config.max_table_size
                        )));
                    }
                }
                table
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
            stats.audit_violations += audit_table(&ctx, domain, &table);
        }
        tables[t] = Some(std::mem::take(&mut table));
    }

    let root_table = tables[nice.td.root].take().expect("root table");
    // The root bag is empty, so nothing is visible and one record remains.
    if root_table.len() != 1 {
        return Err(Error::input(format!(
            "root table has {} entries, expected 1",
            root_table.len()
        )));
    }
    let (key, (omega, prov)) = root_table.into_iter().next().unwrap();
    debug_assert!(key.is_empty());
    let witness = reconstruct_witness(&prov);

    Ok((
        OptimalResult {
            optimum: omega,
            decision: omega >= instance.target,
            witness,
        },
        stats,
    ))
}

/// Independent re-check of the table invariants; returns the violation count.
fn audit_table(ctx: &Ctx, domain: &[usize], table: &Table) -> usize {
    let mut violations = 0;
    for (key, (omega, prov)) in table {
        if key.len() != domain.len() {
            violations += 1;
            continue;
        }
        for (i, &e) in domain.iter().enumerate() {
            if key[i] > ctx.instance.graph.edge(e).capacity {
                violations += 1;
            }
        }
        // The provenance must pay for exactly the claimed profit, and its
        // routes must load the visible edges exactly as the key states.
        let routing = reconstruct_witness(prov);
        if routing.profit(ctx.instance) != *omega {
            violations += 1;
        }
        let mut loads: BTreeMap<usize, u64> = BTreeMap::new();
        for (&z, path) in &routing.routes {
            let demand = ctx.instance.tasks[z].demand;
            for w in path.windows(2) {
                let e = ctx.instance.graph.edge_between(w[0], w[1]).expect("route edge");
                *loads.entry(e).or_insert(0) += demand;
            }
        }
        for (i, &e) in domain.iter().enumerate() {
            // A newly visible edge can never already carry load from a routed
            // task, so the key must equal the provenance's loads exactly.
            if loads.get(&e).copied().unwrap_or(0) != key[i] {
                violations += 1;
            }
        }
    }
    violations
}

fn reconstruct_witness(root: &Rc<Prov>) -> Routing {
    let mut routing = Routing::empty();
    let mut stack: Vec<&Rc<Prov>> = vec![root];
    while let Some(p) = stack.pop() {
        match p.as_ref() {
            Prov::Leaf => {}
            Prov::Route { parent, task, path } => {
                routing.insert(*task as usize, path.clone());
                stack.push(parent);
            }
            Prov::Join(a, b) => {
                stack.push(a);
                stack.push(b);
            }
        }
    }
    routing
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
        let cfg = FptConfig {
            audit: true,
            ..FptConfig::default()
        };
        let (res, stats) = solve_fpt_with(instance, &nice, &cfg).unwrap();
        assert_eq!(stats.audit_violations, 0);
        res
    }

    fn graph(n: usize, edges: &[(usize, usize, u64)]) -> CapacitatedGraph {
        CapacitatedGraph::new(n, edges).unwrap()
    }

    #[test]
    fn zero_tasks() {
        let g = graph(3, &[(0, 1, 1), (1, 2, 1)]);
        let inst = Instance::new(g, vec![], 1, Some(2)).unwrap();
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
            Some(1),
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
    fn two_bins_star() {
        // s and t joined through two middle vertices of capacity 3 each;
        // items 2, 2, 2 cannot all fit, 2 + 1 + 3 can.
        let g = graph(
            4,
            &[(0, 2, 3), (0, 3, 3), (1, 2, 3), (1, 3, 3)],
        );
        let tasks = vec![
            Task::new(0, 1, 2, 1),
            Task::new(0, 1, 1, 1),
            Task::new(0, 1, 3, 1),
        ];
        let inst = Instance::new(g, tasks, 3, Some(2)).unwrap();
        let res = solve(&inst);
        assert_eq!(res.optimum, 3);
        assert!(res.decision);
        assert!(verify_routing(&inst, &res.witness).unwrap().valid);
    }

    #[test]
    fn agrees_with_oracle_on_small_seeds() {
        use crate::generate::{gen_random, RandomParams};
        for seed in 0..30 {
            for ell in [2usize, 3] {
                let inst = gen_random(
                    &RandomParams {
                        n: 6,
                        max_degree: 3,
                        max_capacity: 3,
                        task_count: 4,
                        demand_range: (0, 2),
                        profit_range: (0, 5),
                        max_route_length: Some(ell),
                    },
                    seed,
                )
                .unwrap();
                let brute = solve_exhaustive(&inst).unwrap();
                let res = solve(&inst);
                assert_eq!(res.optimum, brute.optimum, "seed {seed} ell {ell}");
                let report = verify_routing(&inst, &res.witness).unwrap();
                assert!(report.valid, "seed {seed} ell {ell}");
                assert_eq!(report.profit, res.optimum, "seed {seed} ell {ell}");
            }
        }
    }
}
