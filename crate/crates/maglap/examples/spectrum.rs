//! Build magnetic Laplacians and print their spectra.
//!
//! ```bash
//! cargo run --example spectrum
//! ```

use std::f64::consts::PI;

use maglap::graph::{complete_graph, cycle_graph, DirectedGraph};
use maglap::operator::{laplacian, ThetaAssignment};

fn print_spectrum(label: &str, g: &DirectedGraph, theta: &ThetaAssignment) {
    let eigenvalues = laplacian(g, theta)
        .expect("valid operator")
        .eigh()
        .expect("convergence")
        .eigenvalues;
    let formatted: Vec<String> = eigenvalues.iter().map(|x| format!("{:.6}", x)).collect();
    println!("{:<36} [{}]", label, formatted.join(", "));
}

fn main() {
    let c4 = cycle_graph(4);
    print_spectrum("C4, standard (theta = 0):", &c4, &ThetaAssignment::zero(&c4));
    print_spectrum(
        "C4, signless (theta = pi):",
        &c4,
        &ThetaAssignment::constant(&c4, PI).unwrap(),
    );
    print_spectrum(
        "C4, quarter flux per edge:",
        &c4,
        &ThetaAssignment::constant(&c4, PI / 8.0).unwrap(),
    );

    let k3 = complete_graph(3);
    print_spectrum("K3, standard:", &k3, &ThetaAssignment::zero(&k3));
    print_spectrum(
        "K3, signless:",
        &k3,
        &ThetaAssignment::constant(&k3, PI).unwrap(),
    );

    // A single edge has spectrum {0, 2} for every angle: one gauge class.
    let edge = DirectedGraph::from_edge_list(2, &[(0, 1)]).unwrap();
    for angle in [0.0, 1.0, -2.5] {
        print_spectrum(
            &format!("single edge, theta = {:+.1}:", angle),
            &edge,
            &ThetaAssignment::constant(&edge, angle).unwrap(),
        );
    }
}
