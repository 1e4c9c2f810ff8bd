//! Fluxes through closed walks, gauge equivalence, explicit gauge
//! construction, and the determinant-zero criterion for equivalence to the
//! standard Laplacian.
//!
//! The flux of a closed walk is the sum of edge angles along it, taken
//! mod 2 pi, with reversed traversals contributing the negated angle. Two
//! angle assignments on a connected graph are gauge equivalent exactly when
//! they induce the same fluxes, and it suffices to compare them on a
//! fundamental cycle basis.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::operator::{
    angle_distance, gauge_conjugate, laplacian, unit_phase, wrap_angle, ThetaAssignment,
    VertexFunction,
};

/// Fluxes agree when their circle distance is below this.
pub const ANGULAR_TOL: f64 = 1e-9;

/// An angle mod 2 pi, stored canonically in `(-pi, pi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Flux(f64);

impl Flux {
    pub fn new(angle: f64) -> Self {
        Flux(wrap_angle(angle))
    }

    pub fn angle(self) -> f64 {
        self.0
    }

    pub fn is_zero(self, tol: f64) -> bool {
        self.0.abs() <= tol
    }
}

/// Relative threshold under which the smallest eigenvalue counts as zero.
pub fn spectral_zero_threshold(eigenvalues: &[f64]) -> f64 {
    let lambda_max = eigenvalues.last().copied().unwrap_or(0.0);
    1e-8 * f64::max(1.0, lambda_max)
}

/// Flux of the closed walk `v_0, ..., v_m = v_0`.
///
/// A step along an edge contributes its angle; a step against an edge
/// contributes the negated angle.
pub fn walk_flux(g: &DirectedGraph, theta: &ThetaAssignment, walk: &[usize]) -> Result<Flux> {
    if theta.len() != g.edge_count() {
        return Err(Error::ThetaKeyMismatch {
            expected: g.edge_count(),
            got: theta.len(),
        });
    }
    let (first, last) = match (walk.first(), walk.last()) {
        (Some(&f), Some(&l)) => (f, l),
        _ => return Err(Error::OpenWalk { start: 0, end: 0 }),
    };
    for &v in walk {
        if v >= g.vertex_count() {
            return Err(Error::VertexOutOfRange {
                id: v,
                n: g.vertex_count(),
            });
        }
    }
    if first != last {
        return Err(Error::OpenWalk {
            start: first,
            end: last,
        });
    }
    let mut total = 0.0;
    for step in walk.windows(2) {
        let (x, y) = (step[0], step[1]);
        if let Some(e) = g.edge_index(x, y) {
            total += theta.angle(e);
        } else if let Some(e) = g.edge_index(y, x) {
            total -= theta.angle(e);
        } else {
            return Err(Error::NonAdjacentStep { from: x, to: y });
        }
    }
    Ok(Flux::new(total))
}

/// Fluxes through the fundamental cycles of the BFS cycle basis, in basis
/// order.
pub fn basis_fluxes(g: &DirectedGraph, theta: &ThetaAssignment) -> Result<Vec<Flux>> {
    let basis = g.cycle_basis()?;
    basis
        .fundamental_cycles
        .iter()
        .map(|c| walk_flux(g, theta, &c.walk))
        .collect()
}

/// True iff the two assignments induce the same fluxes on the cycle basis.
pub fn gauge_equivalent(
    g: &DirectedGraph,
    theta1: &ThetaAssignment,
    theta2: &ThetaAssignment,
) -> Result<bool> {
    let f1 = basis_fluxes(g, theta1)?;
    let f2 = basis_fluxes(g, theta2)?;
    Ok(f1
        .iter()
        .zip(&f2)
        .all(|(a, b)| angle_distance(a.angle(), b.angle()) <= ANGULAR_TOL))
}

/// Construct the unimodular vertex phase carrying `theta1` to `theta2`, or
/// `None` when the fluxes differ.
///
/// The phase is fixed to 1 at vertex 0 and propagated along a BFS spanning
/// tree; flux equality makes the non-tree edges consistent automatically.
pub fn construct_gauge(
    g: &DirectedGraph,
    theta1: &ThetaAssignment,
    theta2: &ThetaAssignment,
) -> Result<Option<VertexFunction>> {
    if !gauge_equivalent(g, theta1, theta2)? {
        return Ok(None);
    }
    let n = g.vertex_count();
    let view = g.undirected();
    let mut arg = vec![0.0f64; n];
    let mut visited = vec![false; n];
    if n > 0 {
        visited[0] = true;
    }
    let mut queue = VecDeque::new();
    queue.push_back(0usize);
    while let Some(v) = queue.pop_front() {
        for &w in view.neighbors(v) {
            if visited[w] {
                continue;
            }
            visited[w] = true;
            // theta2(e) - theta1(e) = arg(target) - arg(source) on tree edges.
            if let Some(e) = g.edge_index(v, w) {
                arg[w] = arg[v] + theta2.angle(e) - theta1.angle(e);
            } else {
                let e = g.edge_index(w, v).expect("adjacency implies an edge");
                arg[w] = arg[v] - (theta2.angle(e) - theta1.angle(e));
            }
            queue.push_back(w);
        }
    }
    let phase: VertexFunction = arg.iter().map(|&a| unit_phase(a)).collect();

    let conjugated = gauge_conjugate(g, theta1, &phase)?;
    for e in 0..g.edge_count() {
        let deviation = angle_distance(conjugated.angle(e), theta2.angle(e));
        if deviation > ANGULAR_TOL {
            return Err(Error::GaugeVerificationFailed { edge: e, deviation });
        }
    }
    Ok(Some(phase))
}

/// Decide gauge equivalence to the standard Laplacian by two independent
/// routes and cross-check them.
///
/// Route A: the smallest eigenvalue of `Delta_theta` vanishes (relative
/// threshold). Route B: every basis flux is zero mod 2 pi. The routes must
/// agree; the returned verdict is route B's.
pub fn equivalent_to_standard(g: &DirectedGraph, theta: &ThetaAssignment) -> Result<bool> {
    let fluxes = basis_fluxes(g, theta)?;
    let max_flux = fluxes
        .iter()
        .map(|f| f.angle().abs())
        .fold(0.0f64, f64::max);
    let route_b = max_flux <= ANGULAR_TOL;

    let eigenvalues = laplacian(g, theta)?.eigh()?.eigenvalues;
    let lambda_min = eigenvalues.first().copied().unwrap_or(0.0);
    let route_a = lambda_min <= spectral_zero_threshold(&eigenvalues);

    if route_a != route_b {
        return Err(Error::RouteDisagreement {
            lambda_min,
            max_flux,
        });
    }
    Ok(route_b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_graph, random_graph, DirectedGraph};
    use num_complex::Complex64;
    use crate::operator::quadratic_form;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn triangle_fluxes() {
        let k3 = cycle_graph(3);
        let walk = [0, 1, 2, 0];
        let t = ThetaAssignment::constant(&k3, 2.0 * PI / 3.0).unwrap();
        assert!(walk_flux(&k3, &t, &walk).unwrap().is_zero(1e-12));
        let t = ThetaAssignment::constant(&k3, PI).unwrap();
        let f = walk_flux(&k3, &t, &walk).unwrap();
        assert!(angle_distance(f.angle(), PI) < 1e-12);
    }

    #[test]
    fn reversed_traversal_negates_angles() {
        let k3 = cycle_graph(3);
        let t = ThetaAssignment::new(&k3, vec![0.3, 0.0, 0.0]).unwrap();
        let forward = walk_flux(&k3, &t, &[0, 1, 2, 0]).unwrap();
        let backward = walk_flux(&k3, &t, &[0, 2, 1, 0]).unwrap();
        assert!((forward.angle() - 0.3).abs() < 1e-12);
        assert!((backward.angle() + 0.3).abs() < 1e-12);
    }

    #[test]
    fn walk_errors() {
        let k3 = cycle_graph(3);
        let t = ThetaAssignment::zero(&k3);
        assert!(matches!(
            walk_flux(&k3, &t, &[0, 1, 2]),
            Err(Error::OpenWalk { start: 0, end: 2 })
        ));
        let square = cycle_graph(4);
        let t4 = ThetaAssignment::zero(&square);
        assert!(matches!(
            walk_flux(&square, &t4, &[0, 2, 0]),
            Err(Error::NonAdjacentStep { from: 0, to: 2 })
        ));
    }

    #[test]
    fn basis_fluxes_on_trees_and_cycles() {
        let tree = DirectedGraph::from_edge_list(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let t = ThetaAssignment::random(&tree, 3);
        assert!(basis_fluxes(&tree, &t).unwrap().is_empty());

        let c4 = cycle_graph(4);
        let spread = ThetaAssignment::constant(&c4, PI / 8.0).unwrap();
        let fluxes = basis_fluxes(&c4, &spread).unwrap();
        assert_eq!(fluxes.len(), 1);
        assert!(angle_distance(fluxes[0].angle(), PI / 2.0) < 1e-12);

        let lumped = ThetaAssignment::new(&c4, vec![PI / 2.0, 0.0, 0.0, 0.0]).unwrap();
        let fluxes = basis_fluxes(&c4, &lumped).unwrap();
        assert!(angle_distance(fluxes[0].angle(), PI / 2.0) < 1e-12);
    }

    #[test]
    fn gauge_equivalence_of_equal_fluxes() {
        let c4 = cycle_graph(4);
        let spread = ThetaAssignment::constant(&c4, PI / 8.0).unwrap();
        let lumped = ThetaAssignment::new(&c4, vec![PI / 2.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(gauge_equivalent(&c4, &spread, &lumped).unwrap());
        let phase = construct_gauge(&c4, &spread, &lumped).unwrap().unwrap();
        let conj = gauge_conjugate(&c4, &spread, &phase).unwrap();
        for e in 0..4 {
            assert!(angle_distance(conj.angle(e), lumped.angle(e)) <= 1e-9);
        }
    }

    #[test]
    fn flux_pi_square_is_not_standard() {
        let c4 = cycle_graph(4);
        let zero = ThetaAssignment::zero(&c4);
        let half = ThetaAssignment::new(&c4, vec![PI, 0.0, 0.0, 0.0]).unwrap();
        assert!(!gauge_equivalent(&c4, &zero, &half).unwrap());
        assert!(construct_gauge(&c4, &zero, &half).unwrap().is_none());
        assert!(!equivalent_to_standard(&c4, &half).unwrap());

        let eig = laplacian(&c4, &half).unwrap().eigh().unwrap().eigenvalues;
        let r2 = 2.0f64.sqrt();
        let expected = [2.0 - r2, 2.0 - r2, 2.0 + r2, 2.0 + r2];
        for (a, b) in eig.iter().zip(expected) {
            assert!((a - b).abs() < 1e-9, "{} vs {}", a, b);
        }
        let det = laplacian(&c4, &half).unwrap().determinant().unwrap();
        assert!((det - 4.0).abs() < 1e-9);
    }

    #[test]
    fn trees_are_always_standard() {
        let tree = DirectedGraph::from_edge_list(5, &[(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap();
        for seed in 0..20 {
            let t1 = ThetaAssignment::random(&tree, seed);
            let t2 = ThetaAssignment::random(&tree, seed + 1000);
            assert!(gauge_equivalent(&tree, &t1, &t2).unwrap());
            assert!(equivalent_to_standard(&tree, &t1).unwrap());
        }
    }

    #[test]
    fn tree_gauge_against_zero_conjugates_the_matrix() {
        let tree = DirectedGraph::from_edge_list(5, &[(0, 1), (2, 1), (2, 3), (3, 4)]).unwrap();
        let t1 = ThetaAssignment::random(&tree, 77);
        let zero = ThetaAssignment::zero(&tree);
        let phase = construct_gauge(&tree, &t1, &zero).unwrap().unwrap();
        let lap1 = laplacian(&tree, &t1).unwrap();
        let lap0 = laplacian(&tree, &zero).unwrap();
        let n = tree.vertex_count();
        for i in 0..n {
            for j in 0..n {
                let conj = phase[i] * lap1.get(i, j) * phase[j].conj();
                assert!((conj - lap0.get(i, j)).norm() <= 1e-9);
            }
        }
    }

    #[test]
    fn identity_gauge_for_equal_assignments() {
        let c4 = cycle_graph(4);
        let t = ThetaAssignment::random(&c4, 9);
        let phase = construct_gauge(&c4, &t, &t).unwrap().unwrap();
        for z in &phase {
            assert!((z - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn flux_invariant_under_gauge_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for seed in 0..15 {
            let g = random_graph(6, 0.5, seed).unwrap();
            let theta = ThetaAssignment::random(&g, seed + 5);
            let phase: Vec<Complex64> = (0..6)
                .map(|_| unit_phase(rng.gen_range(-PI..PI)))
                .collect();
            let conj = gauge_conjugate(&g, &theta, &phase).unwrap();
            let before = basis_fluxes(&g, &theta).unwrap();
            let after = basis_fluxes(&g, &conj).unwrap();
            for (a, b) in before.iter().zip(&after) {
                assert!(angle_distance(a.angle(), b.angle()) <= 1e-9);
            }
        }
    }

    #[test]
    fn closed_walk_flux_is_combination_of_basis_fluxes() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for seed in 0..20 {
            let g = random_graph(7, 0.5, seed).unwrap();
            let theta = ThetaAssignment::random(&g, seed + 11);
            let basis = g.cycle_basis().unwrap();
            let fluxes = basis_fluxes(&g, &theta).unwrap();
            let view = g.undirected();

            // Random walk, then home along a BFS shortest path.
            let mut walk = vec![0usize];
            let steps = rng.gen_range(3..12);
            for _ in 0..steps {
                let v = *walk.last().unwrap();
                let nbrs = view.neighbors(v);
                walk.push(nbrs[rng.gen_range(0..nbrs.len())]);
            }
            let mut prev = vec![usize::MAX; g.vertex_count()];
            let mut queue = VecDeque::from([*walk.last().unwrap()]);
            prev[*walk.last().unwrap()] = *walk.last().unwrap();
            while let Some(v) = queue.pop_front() {
                for &w in view.neighbors(v) {
                    if prev[w] == usize::MAX {
                        prev[w] = v;
                        queue.push_back(w);
                    }
                }
            }
            let mut home = Vec::new();
            let mut v = 0usize;
            while v != *walk.last().unwrap() {
                home.push(v);
                v = prev[v];
            }
            home.reverse();
            walk.extend(home);

            // Signed count of each non-tree edge in the walk.
            let mut combo = 0.0f64;
            for step in walk.windows(2) {
                let (x, y) = (step[0], step[1]);
                let (e, sign) = match g.edge_index(x, y) {
                    Some(e) => (e, 1.0),
                    None => (g.edge_index(y, x).unwrap(), -1.0),
                };
                if let Some(pos) = basis.fundamental_cycles.iter().position(|c| c.edge == e) {
                    combo += sign * fluxes[pos].angle();
                }
            }
            let direct = walk_flux(&g, &theta, &walk).unwrap();
            assert!(
                angle_distance(direct.angle(), combo) <= 1e-9,
                "walk {:?}: {} vs {}",
                walk,
                direct.angle(),
                combo
            );
        }
    }

    #[test]
    fn gauge_equivalence_is_an_equivalence_relation() {
        for seed in 0..50 {
            let g = random_graph(6, 0.5, seed).unwrap();
            let t1 = ThetaAssignment::random(&g, 3 * seed);
            let t2 = ThetaAssignment::random(&g, 3 * seed + 1);
            let t3 = ThetaAssignment::random(&g, 3 * seed + 2);
            assert!(gauge_equivalent(&g, &t1, &t1).unwrap());
            assert_eq!(
                gauge_equivalent(&g, &t1, &t2).unwrap(),
                gauge_equivalent(&g, &t2, &t1).unwrap()
            );
            if gauge_equivalent(&g, &t1, &t2).unwrap() && gauge_equivalent(&g, &t2, &t3).unwrap() {
                assert!(gauge_equivalent(&g, &t1, &t3).unwrap());
            }
        }
    }

    #[test]
    fn conjugates_of_zero_stay_standard() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for seed in 0..20 {
            let g = random_graph(6, 0.5, seed).unwrap();
            let zero = ThetaAssignment::zero(&g);
            let phase: Vec<Complex64> = (0..6)
                .map(|_| unit_phase(rng.gen_range(-PI..PI)))
                .collect();
            let conj = gauge_conjugate(&g, &zero, &phase).unwrap();
            assert!(equivalent_to_standard(&g, &conj).unwrap());
            let e1 = laplacian(&g, &zero).unwrap().eigh().unwrap().eigenvalues;
            let e2 = laplacian(&g, &conj).unwrap().eigh().unwrap().eigenvalues;
            for (a, b) in e1.iter().zip(&e2) {
                assert!((a - b).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn kernel_vector_certifies_the_zero_flux_square() {
        // Flux pi/2 distributed two ways; both quadratic forms vanish on the
        // gauge-transported kernel of neither (sanity via Q >= 0 only).
        let c4 = cycle_graph(4);
        let t = ThetaAssignment::constant(&c4, PI / 2.0).unwrap();
        let f = vec![Complex64::new(1.0, 0.0); 4];
        assert!(quadratic_form(&c4, &t, &f).unwrap() > 0.0);
    }

    #[test]
    fn disconnected_graphs_are_refused() {
        let g = DirectedGraph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        let t = ThetaAssignment::zero(&g);
        assert!(matches!(
            equivalent_to_standard(&g, &t),
            Err(Error::Disconnected)
        ));
    }
}
