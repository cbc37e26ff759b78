//! Instance constructors: the clique-to-path reduction, the bin-packing
//! reduction, seeded random instances, and small brute-force checkers for the
//! two source problems (used as cross-oracles in the tests).

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{CapacitatedGraph, Instance, Task};

/// Default cap on the enumeration size of the brute-force checkers.
pub const DEFAULT_CHECK_BUDGET: u128 = 10_000_000;

// --- multicolored clique ----------------------------------------------------

/// A multicolored-clique instance: `colors[v]` is the color class of vertex
/// `v` (classes must be `0..k`, each nonempty) and `edges` connect vertices
/// of different colors. Same-color edges are permitted but never relevant.
#[derive(Debug, Clone)]
pub struct MccInput {
    pub colors: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl MccInput {
    pub fn num_colors(&self) -> usize {
        self.colors.iter().max().map_or(0, |&c| c + 1)
    }

    fn validate(&self) -> Result<()> {
        let n = self.colors.len();
        if n == 0 {
            return Err(Error::input("no vertices"));
        }
        let k = self.num_colors();
        let mut seen = vec![false; k];
        for &c in &self.colors {
            seen[c] = true;
        }
        if let Some(c) = seen.iter().position(|&s| !s) {
            return Err(Error::input(format!("color class {c} is empty")));
        }
        for &(u, v) in &self.edges {
            if u >= n || v >= n {
                return Err(Error::input(format!("edge ({u}, {v}) out of range")));
            }
            if u == v {
                return Err(Error::input(format!("self-loop at vertex {u}")));
            }
        }
        Ok(())
    }
}

/// Partial sum `Σ_{j=1..i} max(0, k−2j+1)` — the capacity of the i-th control
/// edge. The full sum over all `j` equals `(k/2)²` for even `k`.
pub fn control_capacity(k: u64, i: u64) -> u64 {
    (1..=i).map(|j| (k + 1).saturating_sub(2 * j)).sum()
}

/// Reduces a multicolored-clique instance to unsplittable flow on a path.
///
/// The path consists of `k` control vertices, the pairs `v_js, v_jt` for each
/// graph vertex in color order, and `k` closing control vertices. Every task's
/// profit equals its demand times the distance between its endpoints, and the
/// target is the sum of all capacities — so the answer is YES exactly when a
/// routing saturates every edge, which encodes picking one vertex per color
/// plus all the cross edges of a clique.
///
/// An odd number of colors is first evened out by adding a universal
/// single-vertex class. With `drop_zero_demand`, tasks of demand zero (which
/// also have profit zero) are omitted; this never changes the optimum.
pub fn reduce_mcc(input: &MccInput, drop_zero_demand: bool) -> Result<Instance> {
    input.validate()?;
    let mut colors = input.colors.clone();
    let mut edges = input.edges.clone();
    let mut k = input.num_colors();
    if k % 2 == 1 {
        // Universal extra vertex in its own class keeps the answer unchanged.
        let u = colors.len();
        for v in 0..u {
            edges.push((v, u));
        }
        colors.push(k);
        k += 1;
    }
    let n = colors.len();

    // Path order: vertices grouped by color, original order within a color.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (colors[v], v));
    let mut rank = vec![0usize; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }

    // Path vertex ids double as positions: s_i -> i-1, the pair of the rank-j
    // vertex -> k+2j and k+2j+1, t_i -> k+2n+i-1.
    let s = |i: usize| i - 1;
    let vs = |j: usize| k + 2 * j;
    let vt = |j: usize| k + 2 * j + 1;
    let t = |i: usize| k + 2 * n + i - 1;
    let total = 2 * n + 2 * k;

    let ku = k as u64;
    let p_sq = (ku / 2) * (ku / 2);
    let mut edge_list: Vec<(usize, usize, u64)> = Vec::with_capacity(total - 1);
    for a in 0..total - 1 {
        let cap = if a + 1 < k {
            control_capacity(ku, (a + 1) as u64) // edge (s_{a+1}, s_{a+2})
        } else if a >= k + 2 * n {
            control_capacity(ku, (k - (a - k - 2 * n) - 1) as u64) // mirrored
        } else {
            p_sq
        };
        edge_list.push((a, a + 1, cap));
    }
    let target: u64 = edge_list.iter().map(|&(_, _, c)| c).sum();
    let graph = CapacitatedGraph::new(total, &edge_list)?;

    let dist = |a: usize, b: usize| (a.abs_diff(b)) as u64;
    let mut tasks = Vec::new();
    let mut add = |src: usize, dst: usize, demand: u64| {
        if demand == 0 && drop_zero_demand {
            return;
        }
        tasks.push(Task::new(src, dst, demand, demand * dist(src, dst)));
    };
    for (j, &v) in order.iter().enumerate() {
        let i = (colors[v] + 1) as u64; // 1-based color class
        add(s(i as usize), vs(j), (ku + 1).saturating_sub(2 * i));
        add(vs(j), vt(j), (ku - i).max(i - 1));
        add(vt(j), t(i as usize), (2 * i).saturating_sub(ku + 1));
    }
    for &(a, b) in &edges {
        if colors[a] == colors[b] {
            continue;
        }
        let (lo, hi) = if rank[a] < rank[b] {
            (rank[a], rank[b])
        } else {
            (rank[b], rank[a])
        };
        add(vt(lo), vs(hi), 1);
    }

    Instance::new(graph, tasks, target, Some(total)).map(|inst| {
        inst.with_comment(format!(
            "reduce_mcc k={} n={} drop_zero={}",
            k, n, drop_zero_demand
        ))
    })
}

pub fn check_mcc_bruteforce(input: &MccInput) -> Result<bool> {
    check_mcc_bruteforce_with_budget(input, DEFAULT_CHECK_BUDGET)
}

/// Exhaustively tries every choice of one vertex per color class.
pub fn check_mcc_bruteforce_with_budget(input: &MccInput, budget: u128) -> Result<bool> {
    input.validate()?;
    let n = input.colors.len();
    let k = input.num_colors();
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (v, &c) in input.colors.iter().enumerate() {
        classes[c].push(v);
    }
    let space: u128 = classes.iter().map(|c| c.len() as u128).product();
    if space > budget {
        return Err(Error::limit(format!(
            "{space} color-class combinations exceed budget {budget}"
        )));
    }
    let mut adjacent = vec![false; n * n];
    for &(u, v) in &input.edges {
        adjacent[u * n + v] = true;
        adjacent[v * n + u] = true;
    }

    let mut choice = vec![0usize; k];
    'outer: loop {
        let picked: Vec<usize> = (0..k).map(|c| classes[c][choice[c]]).collect();
        let is_clique = (0..k)
            .all(|a| (a + 1..k).all(|b| adjacent[picked[a] * n + picked[b]]));
        if is_clique {
            return Ok(true);
        }
        // Mixed-radix increment.
        for c in 0..k {
            choice[c] += 1;
            if choice[c] < classes[c].len() {
                continue 'outer;
            }
            choice[c] = 0;
        }
        return Ok(false);
    }
}

// --- unary bin packing ------------------------------------------------------

/// A unary bin-packing instance: `bins` bins of capacity `bin_capacity`, and
/// item sizes summing to exactly `bins * bin_capacity`.
#[derive(Debug, Clone)]
pub struct BinPackingInput {
    pub bins: u64,
    pub bin_capacity: u64,
    pub items: Vec<u64>,
}

impl BinPackingInput {
    fn validate(&self) -> Result<()> {
        if self.bins == 0 {
            return Err(Error::input("need at least one bin"));
        }
        if self.items.iter().any(|&h| h == 0) {
            return Err(Error::input("item sizes must be positive"));
        }
        let sum: u64 = self.items.iter().sum();
        let want = self.bins * self.bin_capacity;
        if sum != want {
            return Err(Error::input(format!(
                "item sizes sum to {sum}, expected bins * capacity = {want}"
            )));
        }
        Ok(())
    }
}

/// Reduces bin packing to unsplittable flow on `K_{2,k}`: one middle vertex
/// per bin joined to non-adjacent `s` and `t` by capacity-`m` edges, one
/// unit-profit task `(s, t, h_i)` per item, target = number of items, route
/// length 2. Packing all items exactly corresponds to routing every task.
pub fn reduce_binpacking(input: &BinPackingInput) -> Result<Instance> {
    input.validate()?;
    let k = input.bins as usize;
    let m = input.bin_capacity;
    let mut edge_list = Vec::with_capacity(2 * k);
    for b in 0..k {
        edge_list.push((0, 2 + b, m));
        edge_list.push((1, 2 + b, m));
    }
    let graph = CapacitatedGraph::new(k + 2, &edge_list)?;
    let tasks: Vec<Task> = input.items.iter().map(|&h| Task::new(0, 1, h, 1)).collect();
    let target = input.items.len() as u64;
    Instance::new(graph, tasks, target, Some(2)).map(|inst| {
        inst.with_comment(format!("reduce_binpacking k={} m={}", input.bins, m))
    })
}

pub fn check_binpacking_bruteforce(input: &BinPackingInput) -> Result<bool> {
    check_binpacking_bruteforce_with_budget(input, DEFAULT_CHECK_BUDGET)
}

/// Exhaustively tries every assignment of items to bins.
pub fn check_binpacking_bruteforce_with_budget(
    input: &BinPackingInput,
    budget: u128,
) -> Result<bool> {
    input.validate()?;
    let k = input.bins as usize;
    let p = input.items.len();
    let space = (k as u128).saturating_pow(p as u32);
    if space > budget {
        return Err(Error::limit(format!(
            "{space} bin assignments exceed budget {budget}"
        )));
    }
    let mut assign = vec![0usize; p];
    'outer: loop {
        let mut sums = vec![0u64; k];
        for (item, &bin) in assign.iter().enumerate() {
            sums[bin] += input.items[item];
        }
        if sums.iter().all(|&s| s == input.bin_capacity) {
            return Ok(true);
        }
        for slot in 0..p {
            assign[slot] += 1;
            if assign[slot] < k {
                continue 'outer;
            }
            assign[slot] = 0;
        }
        return Ok(false);
    }
}

// --- random instances -------------------------------------------------------

/// Parameters for [`gen_random`]; all ranges are inclusive.
#[derive(Debug, Clone)]
pub struct RandomParams {
    pub n: usize,
    pub max_degree: usize,
    pub max_capacity: u64,
    pub task_count: usize,
    pub demand_range: (u64, u64),
    pub profit_range: (u64, u64),
    pub max_route_length: Option<usize>,
}

/// Deterministic seeded instance generator. The same parameters and seed
/// always serialize to identical bytes; the seed is recorded in the comment.
pub fn gen_random(params: &RandomParams, seed: u64) -> Result<Instance> {
    if params.n == 0 {
        return Err(Error::input("need at least one vertex"));
    }
    if params.max_degree == 0 || params.max_capacity == 0 {
        return Err(Error::input("degree and capacity bounds must be positive"));
    }
    if params.demand_range.0 > params.demand_range.1
        || params.profit_range.0 > params.profit_range.1
    {
        return Err(Error::input("empty parameter range"));
    }
    if params.task_count > 0 && params.n < 2 {
        return Err(Error::input("tasks need at least two vertices"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = params.n;
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(&mut rng);
    let mut degree = vec![0usize; n];
    let mut edge_list = Vec::new();
    for (u, v) in pairs {
        if degree[u] >= params.max_degree || degree[v] >= params.max_degree {
            continue;
        }
        if rng.gen_bool(0.6) {
            degree[u] += 1;
            degree[v] += 1;
            edge_list.push((u, v, rng.gen_range(1..=params.max_capacity)));
        }
    }
    let graph = CapacitatedGraph::new(n, &edge_list)?;

    let mut tasks = Vec::with_capacity(params.task_count);
    let mut total_profit = 0u64;
    for _ in 0..params.task_count {
        let source = rng.gen_range(0..n);
        let mut target = rng.gen_range(0..n - 1);
        if target >= source {
            target += 1;
        }
        let demand = rng.gen_range(params.demand_range.0..=params.demand_range.1);
        let profit = rng.gen_range(params.profit_range.0..=params.profit_range.1);
        total_profit += profit;
        tasks.push(Task::new(source, target, demand, profit));
    }
    let target = if total_profit == 0 {
        1
    } else {
        rng.gen_range(1..=total_profit)
    };

    Instance::new(graph, tasks, target, params.max_route_length).map(|inst| {
        inst.with_comment(format!(
            "gen_random rng=chacha8 seed={} n={} max_degree={} max_capacity={} tasks={}",
            seed, n, params.max_degree, params.max_capacity, params.task_count
        ))
    })
}

// --- minimal text formats ---------------------------------------------------

/// Parses a colors file: one class id per vertex line; blank lines and lines
/// starting with `#` are skipped.
pub fn parse_colors(text: &str) -> Result<Vec<usize>> {
    let mut colors = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let c = line
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: bad color id", lineno + 1)))?;
        colors.push(c);
    }
    Ok(colors)
}

/// Parses an edge list: two vertex ids per line.
pub fn parse_edge_list(text: &str) -> Result<Vec<(usize, usize)>> {
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Error::Parse(format!("line {}: expected two vertex ids", lineno + 1));
        let mut parts = line.split_whitespace();
        let u = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let v = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if parts.next().is_some() {
            return Err(bad());
        }
        edges.push((u, v));
    }
    Ok(edges)
}

/// Parses a whitespace-separated list of item sizes.
pub fn parse_items(text: &str) -> Result<Vec<u64>> {
    text.split_whitespace()
        .map(|p| {
            p.parse()
                .map_err(|_| Error::Parse(format!("bad item size {p:?}")))
        })
        .collect()
}
