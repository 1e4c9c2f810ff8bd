//! The two packaged eigenvalue-sum bounds, at their sharp examples and on a
//! small random campaign.
//!
//! ```bash
//! cargo run --example eigenvalue_bounds
//! ```

use std::f64::consts::PI;

use maglap::bounds::{half_band_check, degree_bound_check};
use maglap::graph::{complete_graph, cycle_graph, min_regular_degree, petersen, random_graph};
use maglap::operator::ThetaAssignment;

fn main() {
    // C4 at k = 2: the mean of {0, 2} meets Z_G/(2|E|) - 1 = 1 exactly.
    let c4 = cycle_graph(4);
    let report = degree_bound_check(&c4, &ThetaAssignment::zero(&c4), 2, 2).unwrap();
    println!(
        "C4, k = 2:       mean {:.9}  bound {:.9}  sharp: {}",
        report.mean, report.bound, report.sharp
    );

    // K3 at k = 1 with the signless angle: lambda_0 = 1 meets the bound.
    let k3 = complete_graph(3);
    let signless = ThetaAssignment::constant(&k3, PI).unwrap();
    let report = degree_bound_check(&k3, &signless, 2, 1).unwrap();
    println!(
        "K3, k = 1, pi:   mean {:.9}  bound {:.9}  sharp: {}",
        report.mean, report.bound, report.sharp
    );

    // Half band of the Petersen graph: mean of the lowest five is 1.6 <= 2.
    let p = petersen();
    let report = half_band_check(&p, &ThetaAssignment::zero(&p), &p, 5).unwrap();
    println!(
        "Petersen, k = 5: mean {:.9}  bound {:.9}  slack {:.9}",
        report.mean, report.bound, report.slack
    );

    // Random campaign: every admissible k on every graph must hold.
    println!("\nrandom campaign (20 graphs, all admissible k):");
    let mut worst_slack = f64::INFINITY;
    for seed in 0..20 {
        let g = random_graph(8, 0.5, seed).unwrap();
        let theta = ThetaAssignment::random(&g, seed + 100);
        let (d0, _) = min_regular_degree(&g).unwrap();
        for k in 1..=g.edge_count() / d0 {
            let report = degree_bound_check(&g, &theta, d0, k).unwrap();
            worst_slack = worst_slack.min(report.slack);
        }
    }
    println!("  all hold; tightest slack observed: {:.6}", worst_slack);
}
