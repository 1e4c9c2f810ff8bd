//! Colorability from determinants: bipartite iff the signless Laplacian is
//! singular, tripartite iff some orientation kills the angle-2pi/3 operator.
//!
//! ```bash
//! cargo run --example coloring
//! ```

use maglap::coloring::{
    bipartite_oracle, is_bipartite_spectral, is_tripartite_spectral, three_color_oracle,
};
use maglap::graph::{complete_graph, cycle_graph, petersen, DirectedGraph, DEFAULT_ENUMERATION_BUDGET};

fn report(name: &str, g: &DirectedGraph) {
    let bip = is_bipartite_spectral(g).unwrap();
    let (bip_oracle, _) = bipartite_oracle(g);
    let tri = is_tripartite_spectral(g, DEFAULT_ENUMERATION_BUDGET).unwrap();
    let (tri_oracle, _) = three_color_oracle(g, 12).unwrap();
    println!(
        "{:<10} bipartite: spectral {:<5} oracle {:<5} | tripartite: spectral {:<5} oracle {:<5} ({} orientations)",
        name, bip.colorable, bip_oracle, tri.colorable, tri_oracle, tri.orientations_checked
    );
    if let Some(witness) = tri.witness {
        println!("{:<10} 3-coloring witness: {:?}", "", witness.classes());
    }
}

fn main() {
    report("C4", &cycle_graph(4));
    report("C5", &cycle_graph(5));
    report("K3", &complete_graph(3));
    report("K4", &complete_graph(4));
    report("Petersen", &petersen());
}
