//! Generate a seeded random instance and solve it with all three exact
//! algorithms; they must agree on the optimum, and every witness must pass
//! the verifier with exactly that profit.

use uflow::decomp::{compute_decomposition, to_nice, DecompositionMode};
use uflow::fpt::solve_fpt;
use uflow::generate::{gen_random, RandomParams};
use uflow::model::verify_routing;
use uflow::oracle::solve_exhaustive;
use uflow::xp::solve_xp;

fn main() -> uflow::Result<()> {
    let params = RandomParams {
        n: 7,
        max_degree: 3,
        max_capacity: 3,
        task_count: 4,
        demand_range: (1, 2),
        profit_range: (1, 5),
        max_route_length: Some(3),
    };
    let instance = gen_random(&params, 42)?;
    println!("{}", instance.comment.as_deref().unwrap_or(""));

    let td = compute_decomposition(&instance.graph, DecompositionMode::ExactSmall)?;
    let nice = to_nice(&instance.graph, &td)?;
    println!("treewidth (exact) = {}", td.width());

    let brute = solve_exhaustive(&instance)?;
    let xp = solve_xp(&instance, &nice)?;
    let fpt = solve_fpt(&instance, &nice)?;

    for (name, result) in [("brute", &brute), ("xp", &xp), ("fpt", &fpt)] {
        let report = verify_routing(&instance, &result.witness)?;
        assert!(report.valid && report.profit == result.optimum);
        println!(
            "{name:>5}: profit={} decision={} routed {} task(s)",
            result.optimum,
            if result.decision { "yes" } else { "no" },
            result.witness.routes.len()
        );
    }
    assert_eq!(brute.optimum, xp.optimum);
    assert_eq!(brute.optimum, fpt.optimum);
    println!("all three solvers agree");

    Ok(())
}
