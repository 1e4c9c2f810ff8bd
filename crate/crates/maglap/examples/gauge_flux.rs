//! Fluxes decide everything: two angle assignments on the same graph are
//! gauge equivalent exactly when their cycle fluxes agree.
//!
//! ```bash
//! cargo run --example gauge_flux
//! ```

use std::f64::consts::PI;

use maglap::flux::{basis_fluxes, construct_gauge, equivalent_to_standard, gauge_equivalent};
use maglap::graph::cycle_graph;
use maglap::operator::{gauge_conjugate, laplacian, ThetaAssignment};

fn main() {
    let c4 = cycle_graph(4);

    // The same quarter-turn flux, spread evenly or lumped on one edge.
    let spread = ThetaAssignment::constant(&c4, PI / 8.0).unwrap();
    let lumped = ThetaAssignment::new(&c4, vec![PI / 2.0, 0.0, 0.0, 0.0]).unwrap();
    println!(
        "spread fluxes: {:?}",
        basis_fluxes(&c4, &spread)
            .unwrap()
            .iter()
            .map(|f| f.angle())
            .collect::<Vec<_>>()
    );
    println!(
        "lumped fluxes: {:?}",
        basis_fluxes(&c4, &lumped)
            .unwrap()
            .iter()
            .map(|f| f.angle())
            .collect::<Vec<_>>()
    );
    println!(
        "gauge equivalent: {}",
        gauge_equivalent(&c4, &spread, &lumped).unwrap()
    );

    // The equivalence is effective: build the vertex phase and verify it.
    let phase = construct_gauge(&c4, &spread, &lumped).unwrap().unwrap();
    let conjugated = gauge_conjugate(&c4, &spread, &phase).unwrap();
    println!(
        "conjugated angles:  {:?}",
        conjugated.angles().iter().map(|a| format!("{:+.4}", a)).collect::<Vec<_>>()
    );
    println!(
        "target angles:      {:?}",
        lumped.angles().iter().map(|a| format!("{:+.4}", a)).collect::<Vec<_>>()
    );

    // Flux pi is a genuinely different operator; its spectrum moves.
    let half_turn = ThetaAssignment::new(&c4, vec![PI, 0.0, 0.0, 0.0]).unwrap();
    println!(
        "flux pi equivalent to standard: {}",
        equivalent_to_standard(&c4, &half_turn).unwrap()
    );
    let twisted = laplacian(&c4, &half_turn).unwrap().eigh().unwrap().eigenvalues;
    println!(
        "flux pi spectrum: {:?} (2 -+ sqrt2, doubled)",
        twisted.iter().map(|x| format!("{:.6}", x)).collect::<Vec<_>>()
    );
}
