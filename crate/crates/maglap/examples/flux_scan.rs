//! Search for the angles that maximize the sum of the lowest eigenvalues.
//! The half-band bound caps what any angle choice can reach.
//!
//! ```bash
//! cargo run --example flux_scan
//! ```

use maglap::bounds::{flux_phase_scan, DEFAULT_SCAN_BUDGET};
use maglap::flux::walk_flux;
use maglap::graph::{cycle_graph, DirectedGraph};
use maglap::operator::ThetaAssignment;

fn main() {
    // On a triangle the best flux is pi: the signless point, lambda_0 = 1.
    let k3 = cycle_graph(3);
    let result = flux_phase_scan(&k3, 1, 4, DEFAULT_SCAN_BUDGET, true).unwrap();
    let theta = ThetaAssignment::new(&k3, result.theta.clone()).unwrap();
    let flux = walk_flux(&k3, &theta, &[0, 1, 2, 0]).unwrap();
    println!(
        "K3, k = 1, 4-point grid: best sum {:.9} at flux {:+.6} ({} evaluations)",
        result.best_sum,
        flux.angle(),
        result.evaluations
    );

    // On C4 with k = 2 the zero assignment already attains the cap 2(d - 1).
    let c4 = cycle_graph(4);
    let result = flux_phase_scan(&c4, 2, 8, DEFAULT_SCAN_BUDGET, true).unwrap();
    println!(
        "C4, k = 2, 8-point grid: best sum {:.9} (cap 2), exhaustive: {}",
        result.best_sum, result.exhaustive
    );

    // Large grids fall back to coordinate ascent when the budget is tight.
    let dense = DirectedGraph::from_edge_list(
        6,
        &[
            (0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5),
            (0, 2), (1, 3), (2, 4), (3, 5),
        ],
    )
    .unwrap();
    let result = flux_phase_scan(&dense, 3, 8, 10_000, true).unwrap();
    println!(
        "dense 6-vertex graph, k = 3: best sum {:.9} by {} ({} evaluations)",
        result.best_sum,
        if result.exhaustive { "full grid" } else { "coordinate ascent" },
        result.evaluations
    );
}
