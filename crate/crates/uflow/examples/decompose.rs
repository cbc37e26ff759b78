//! Compute tree decompositions of a few known graphs, convert one to nice
//! form, and emit it in the PACE .td text format.

use uflow::decomp::{
    boundary_view, compute_decomposition, emit_td, to_nice, validate, DecompositionMode, NodeKind,
};
use uflow::model::CapacitatedGraph;

fn unit_graph(n: usize, edges: &[(usize, usize)]) -> uflow::Result<CapacitatedGraph> {
    let with_caps: Vec<(usize, usize, u64)> = edges.iter().map(|&(u, v)| (u, v, 1)).collect();
    CapacitatedGraph::new(n, &with_caps)
}

fn main() -> uflow::Result<()> {
    // A 5-cycle has treewidth 2; the exact search proves it.
    let c5 = unit_graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])?;
    let td = compute_decomposition(&c5, DecompositionMode::ExactSmall)?;
    assert!(validate(&c5, &td).is_empty());
    println!("C5: width {} with {} bags", td.width(), td.node_count());
    print!("{}", emit_td(&td, 5));

    let nice = to_nice(&c5, &td)?;
    let mut counts = [0usize; 4];
    for kind in &nice.kinds {
        let slot = match kind {
            NodeKind::Leaf => 0,
            NodeKind::Introduce(_) => 1,
            NodeKind::Forget(_) => 2,
            NodeKind::Join => 3,
        };
        counts[slot] += 1;
    }
    println!(
        "nice form: width {}, {} leaves / {} introduces / {} forgets / {} joins",
        nice.width(),
        counts[0],
        counts[1],
        counts[2],
        counts[3]
    );

    // The boundary view drives the solvers: per node, the vertices already
    // processed, the edges crossing out of them, and the ell-visible region.
    let view = boundary_view(&c5, &nice, 2);
    let root = nice.td.root;
    println!(
        "root: past {:?}, present edges {:?}, visible vertices {:?}",
        view.past[root], view.present[root], view.vis[root]
    );

    Ok(())
}
