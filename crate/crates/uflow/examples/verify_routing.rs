//! Build a small instance by hand, route its tasks, and run the verifier —
//! once on a valid routing and once on an overloaded one.

use uflow::model::{verify_routing, CapacitatedGraph, Routing, Task};
use uflow::Instance;

fn main() -> uflow::Result<()> {
    // A triangle with unit capacities and two unit tasks from 0 to 1.
    let graph = CapacitatedGraph::new(3, &[(0, 1, 1), (0, 2, 1), (1, 2, 1)])?;
    let tasks = vec![Task::new(0, 1, 1, 3), Task::new(0, 1, 1, 2)];
    let instance = Instance::new(graph, tasks, 5, Some(2))?;

    // Route one task directly and the other around the back of the triangle.
    let mut good = Routing::empty();
    good.insert(0, vec![0, 1]);
    good.insert(1, vec![0, 2, 1]);
    let report = verify_routing(&instance, &good)?;
    println!("disjoint routing: valid={} profit={}", report.valid, report.profit);

    // Sending both down the direct edge overloads it.
    let mut bad = Routing::empty();
    bad.insert(0, vec![0, 1]);
    bad.insert(1, vec![0, 1]);
    let report = verify_routing(&instance, &bad)?;
    println!("shared-edge routing: valid={} profit={}", report.valid, report.profit);
    for v in &report.violations {
        println!("  {v}");
    }

    Ok(())
}
