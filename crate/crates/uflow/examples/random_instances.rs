//! Produce seeded random instances, show that generation is deterministic,
//! and print one instance in the JSON interchange format.

use uflow::generate::{gen_random, RandomParams};
use uflow::oracle::solve_exhaustive;
use uflow::Instance;

fn main() -> uflow::Result<()> {
    let params = RandomParams {
        n: 6,
        max_degree: 3,
        max_capacity: 2,
        task_count: 3,
        demand_range: (1, 2),
        profit_range: (1, 4),
        max_route_length: None,
    };

    for seed in 0..4 {
        let instance = gen_random(&params, seed)?;
        let again = gen_random(&params, seed)?;
        assert_eq!(instance.to_json(), again.to_json(), "same seed, same bytes");
        let optimum = solve_exhaustive(&instance)?.optimum;
        println!(
            "seed {seed}: {} edges, optimum {optimum} (target {})",
            instance.graph.edge_count(),
            instance.target
        );
    }

    // The JSON form round-trips losslessly, comment included.
    let instance = gen_random(&params, 7)?;
    let text = instance.to_json();
    assert_eq!(Instance::from_json(&text)?.to_json(), text);
    println!("\n{text}");

    Ok(())
}
