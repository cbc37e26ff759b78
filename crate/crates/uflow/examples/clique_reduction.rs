//! Reduce multicolored clique to unsplittable flow on a path and check the
//! reduction both ways: the flow instance reaches its target exactly when the
//! brute-force clique checker succeeds.

use std::time::Instant;

use uflow::decomp::{compute_decomposition, to_nice, DecompositionMode};
use uflow::generate::{check_mcc_bruteforce, reduce_mcc, MccInput};
use uflow::xp::{solve_xp_with, XpConfig};

fn main() -> uflow::Result<()> {
    // Four color classes with two vertices each; v0,v2,v4,v6 form a clique.
    let clique = [(0, 2), (0, 4), (0, 6), (2, 4), (2, 6), (4, 6)];
    let noise = [(1, 3), (1, 5), (3, 7)];
    let input = MccInput {
        colors: vec![0, 0, 1, 1, 2, 2, 3, 3],
        edges: clique.iter().chain(noise.iter()).copied().collect(),
    };

    let has_clique = check_mcc_bruteforce(&input)?;
    println!("brute-force clique search: {has_clique}");

    let instance = reduce_mcc(&input, true)?;
    println!(
        "reduced instance: {} path vertices, {} tasks, target {}",
        instance.graph.vertex_count(),
        instance.tasks.len(),
        instance.target
    );

    let td = compute_decomposition(&instance.graph, DecompositionMode::Heuristic)?;
    assert_eq!(td.width(), 1, "a path has treewidth 1");
    let nice = to_nice(&instance.graph, &td)?;

    let start = Instant::now();
    let (result, stats) = solve_xp_with(&instance, &nice, &XpConfig::default())?;
    println!(
        "xp solve: profit={} decision={} ({} nodes, max table {}, {:?})",
        result.optimum,
        if result.decision { "yes" } else { "no" },
        stats.nodes,
        stats.max_table_size,
        start.elapsed()
    );
    assert_eq!(result.decision, has_clique);

    // Remove one clique edge: no multicolored clique survives, and the flow
    // instance can no longer saturate the path.
    let weaker = MccInput {
        colors: input.colors.clone(),
        edges: input.edges[1..].to_vec(),
    };
    assert!(!check_mcc_bruteforce(&weaker)?);
    let instance = reduce_mcc(&weaker, true)?;
    let nice = to_nice(
        &instance.graph,
        &compute_decomposition(&instance.graph, DecompositionMode::Heuristic)?,
    )?;
    let (result, _) = solve_xp_with(&instance, &nice, &XpConfig::default())?;
    println!(
        "without one clique edge: profit={} of target {} -> decision={}",
        result.optimum,
        instance.target,
        if result.decision { "yes" } else { "no" }
    );
    assert!(!result.decision);

    Ok(())
}
