//! Reduce unary bin packing to unsplittable flow on K_{2,k} and solve it with
//! the visibility-based dynamic program (route length 2 keeps its tables
//! tiny), cross-checking against direct assignment enumeration.

use uflow::decomp::{compute_decomposition, to_nice, DecompositionMode};
use uflow::fpt::solve_fpt;
use uflow::generate::{check_binpacking_bruteforce, reduce_binpacking, BinPackingInput};

fn main() -> uflow::Result<()> {
    let cases = [
        (2, 5, vec![2, 3, 4, 1]),  // perfect packing {2,3} {4,1}
        (2, 6, vec![4, 4, 4]),     // no exact split of three 4s into 6+6
        (3, 4, vec![1, 1, 2, 4, 2, 2]),
    ];

    for (bins, capacity, items) in cases {
        let input = BinPackingInput {
            bins,
            bin_capacity: capacity,
            items: items.clone(),
        };
        let packable = check_binpacking_bruteforce(&input)?;

        let instance = reduce_binpacking(&input)?;
        let td = compute_decomposition(&instance.graph, DecompositionMode::ExactSmall)?;
        let nice = to_nice(&instance.graph, &td)?;
        let result = solve_fpt(&instance, &nice)?;

        // All items routable <=> every bin fillable to exactly its capacity.
        assert_eq!(result.decision, packable);
        println!(
            "k={bins} m={capacity} items {items:?}: packable={packable}, \
             routed {}/{} tasks (treewidth {})",
            result.optimum,
            items.len(),
            td.width()
        );
    }

    Ok(())
}
