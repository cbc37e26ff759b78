//! Brute-force exact solver and bounded-length simple path enumeration.
//!
//! This is the ground-truth oracle the dynamic programs are checked against:
//! it enumerates every subset of tasks and every feasible path assignment.

use crate::error::{Error, Result};
use crate::model::{CapacitatedGraph, Instance, Routing};

/// Default cap on the product of per-task path choices in [`solve_exhaustive`].
pub const DEFAULT_SEARCH_BUDGET: u128 = 100_000_000;

/// Result of an exact solve: the optimum, a witness routing achieving it, and
/// the decision against the instance's profit target.
#[derive(Debug, Clone)]
pub struct OptimalResult {
    pub optimum: u64,
    pub witness: Routing,
    pub decision: bool,
}

/// All simple `s`-`t` paths with at most `ell` edges, in lexicographic order
/// of their vertex sequences.
pub fn enumerate_paths(
    graph: &CapacitatedGraph,
    s: usize,
    t: usize,
    ell: usize,
) -> Result<Vec<Vec<usize>>> {
    enumerate_paths_in(graph, s, t, ell, None)
}

/// Path enumeration restricted to an allowed edge set (`None` = all edges).
pub fn enumerate_paths_in(
    graph: &CapacitatedGraph,
    s: usize,
    t: usize,
    ell: usize,
    allowed_edges: Option<&[bool]>,
) -> Result<Vec<Vec<usize>>> {
    let n = graph.vertex_count();
    if s >= n || t >= n {
        return Err(Error::input(format!("path endpoints ({s}, {t}) out of range")));
    }
    if s == t {
        return Err(Error::input("path endpoints coincide"));
    }
    let mut paths = Vec::new();
    let mut on_path = vec![false; n];
    let mut current = vec![s];
    on_path[s] = true;
    dfs(graph, t, ell, allowed_edges, &mut on_path, &mut current, &mut paths);
    Ok(paths)
}

fn dfs(
    graph: &CapacitatedGraph,
    t: usize,
    ell: usize,
    allowed: Option<&[bool]>,
    on_path: &mut Vec<bool>,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let v = *current.last().unwrap();
    if v == t {
        out.push(current.clone());
        return;
    }
    if current.len() > ell {
        return; // already used ell edges
    }
    for &(w, e) in graph.neighbors(v) {
        if on_path[w] {
            continue;
        }
        if let Some(mask) = allowed {
            if !mask[e] {
                continue;
            }
        }
        on_path[w] = true;
        current.push(w);
        dfs(graph, t, ell, allowed, on_path, current, out);
        current.pop();
        on_path[w] = false;
    }
}

/// Exact optimum by exhaustive search over subsets and path assignments.
///
/// Guarded by the multiplicative budget: if the product over tasks of
/// `1 + #paths` exceeds it, the call fails rather than truncating the search.
pub fn solve_exhaustive(instance: &Instance) -> Result<OptimalResult> {
    solve_exhaustive_with_budget(instance, DEFAULT_SEARCH_BUDGET)
}

pub fn solve_exhaustive_with_budget(instance: &Instance, budget: u128) -> Result<OptimalResult> {
    let ell = instance.max_route_length;
    let mut task_paths: Vec<Vec<Vec<usize>>> = Vec::with_capacity(instance.tasks.len());
    let mut space: u128 = 1;
    for task in &instance.tasks {
        let paths = enumerate_paths(&instance.graph, task.source, task.target, ell)?;
        space = space.saturating_mul(1 + paths.len() as u128);
        if space > budget {
            return Err(Error::limit(format!(
                "search space exceeds budget {budget}"
            )));
        }
        task_paths.push(paths);
    }

    let mut loads = vec![0u64; instance.graph.edge_count()];
    let mut chosen: Vec<Option<usize>> = vec![None; instance.tasks.len()];
    let mut best: Option<(u64, Vec<Option<usize>>)> = None;
    // Profit still reachable from task i onward, for pruning.
    let mut suffix_profit = vec![0u64; instance.tasks.len() + 1];
    for i in (0..instance.tasks.len()).rev() {
        suffix_profit[i] = suffix_profit[i + 1] + instance.tasks[i].profit;
    }

    search(
        instance,
        &task_paths,
        &suffix_profit,
        0,
        0,
        &mut loads,
        &mut chosen,
        &mut best,
    );

    let (best_profit, best_choice) = best.expect("skip-everything assignment always exists");
    let mut witness = Routing::empty();
    for (task, choice) in best_choice.iter().enumerate() {
        if let Some(p) = choice {
            witness.insert(task, task_paths[task][*p].clone());
        }
    }
    Ok(OptimalResult {
        optimum: best_profit,
        decision: best_profit >= instance.target,
        witness,
    })
}

#[allow(clippy::too_many_arguments)]
fn search(
    instance: &Instance,
    task_paths: &[Vec<Vec<usize>>],
    suffix_profit: &[u64],
    task: usize,
    profit: u64,
    loads: &mut Vec<u64>,
    chosen: &mut Vec<Option<usize>>,
    best: &mut Option<(u64, Vec<Option<usize>>)>,
) {
    if let Some((bp, _)) = best {
        if profit + suffix_profit[task] <= *bp {
            return; // cannot improve strictly; first-found witness kept on ties
        }
    }
    if task == instance.tasks.len() {
        if best.as_ref().map_or(true, |(bp, _)| profit > *bp) {
            *best = Some((profit, chosen.clone()));
        }
        return;
    }

    let demand = instance.tasks[task].demand;
    let w = instance.tasks[task].profit;
    for (pi, path) in task_paths[task].iter().enumerate() {
        let mut feasible = true;
        for win in path.windows(2) {
            let e = instance.graph.edge_between(win[0], win[1]).unwrap();
            if loads[e] + demand > instance.graph.edge(e).capacity {
                feasible = false;
                break;
            }
        }
        if !feasible {
            continue;
        }
        for win in path.windows(2) {
            let e = instance.graph.edge_between(win[0], win[1]).unwrap();
            loads[e] += demand;
        }
        chosen[task] = Some(pi);
        search(
            instance,
            task_paths,
            suffix_profit,
            task + 1,
            profit + w,
            loads,
            chosen,
            best,
        );
        chosen[task] = None;
        for win in path.windows(2) {
            let e = instance.graph.edge_between(win[0], win[1]).unwrap();
            loads[e] -= demand;
        }
    }
    // Skip branch.
    search(
        instance,
        task_paths,
        suffix_profit,
        task + 1,
        profit,
        loads,
        chosen,
        best,
    );
}
